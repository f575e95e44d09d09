//! Linear Hopf actions on k⟨x1, …, xr⟩ given by generators.
//!
//! A group-like generator σ acts as the algebra endomorphism extending its
//! matrix. A (σ,τ)-skew-primitive δ acts as a twisted derivation,
//! `δ·(uv) = (δ·u)(σ·v) + (τ·u)(δ·v)`, so on a word
//!
//! ```text
//! δ·(x_{j1}…x_{jn}) = Σ_k τ·(x_{j1}…x_{j(k-1)}) · δ·x_{jk} · σ·(x_{j(k+1)}…x_{jn})
//! ```
//!
//! Matrices use the column convention: entry `(i, j)` is the coefficient of
//! `x_{i+1}` in `h·x_{j+1}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Scalar};
use crate::freealg::{FreePoly, Word};
use crate::linalg;

/// Name reserved for the identity group-like.
pub const IDENTITY: &str = "1";

/// Square matrix over the coefficient field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: Vec<Vec<Scalar>>,
}

impl Matrix {
    /// Rows must all have the same length as the number of rows.
    pub fn new(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(format!(
                "matrix with {n} rows is not square"
            )));
        }
        Ok(Matrix { rows })
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        Self::scalar(n, field.one())
    }

    pub fn scalar(n: usize, s: Scalar) -> Self {
        let field = s.field();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { s.clone() } else { field.zero() })
                    .collect()
            })
            .collect();
        Matrix { rows }
    }

    pub fn diagonal(entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        let field = entries.first().map_or(FieldSpec::Rational, Scalar::field);
        let mut m = Matrix::identity(n, field);
        for (i, e) in entries.into_iter().enumerate() {
            m.rows[i][i] = e;
        }
        m
    }

    /// Parses rows of scalar literals.
    pub fn parse(rows: &[&[&str]], field: FieldSpec) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(rows)
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn field(&self) -> Option<FieldSpec> {
        self.rows.first().and_then(|r| r.first()).map(Scalar::field)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.size();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(self.rows[i][0].field().zero(), |acc, k| {
                            acc + &self.rows[i][k] * &other.rows[k][j]
                        })
                    })
                    .collect()
            })
            .collect();
        Matrix { rows }
    }

    pub fn is_invertible(&self) -> bool {
        match self.field() {
            None => true,
            Some(f) => linalg::rank(&self.rows, f) == self.size(),
        }
    }

    /// `Some(λ)` when the matrix is `λ·I`.
    pub fn scalar_value(&self) -> Option<Scalar> {
        let lambda = self.rows.first()?.first()?.clone();
        let ok = self.rows.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, a)| if i == j { *a == lambda } else { a.is_zero() })
        });
        ok.then_some(lambda)
    }

    /// Image of `x_j` (1-based) as a degree-one polynomial.
    fn column_image(&self, j: usize, field: FieldSpec) -> FreePoly {
        let n = self.size();
        FreePoly::from_terms(
            n,
            field,
            (0..n).map(|i| (Word::new(vec![i + 1]), self.rows[i][j - 1].clone())),
        )
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, a) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLikeGen {
    pub name: String,
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPrimitiveGen {
    pub name: String,
    pub sigma: String,
    pub tau: String,
    pub matrix: Matrix,
}

/// Multiplication table on group-like names, keyed by `(left, right)`.
pub type GroupTable = BTreeMap<(String, String), String>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    pub field: FieldSpec,
    pub rank: usize,
    pub group_likes: Vec<GroupLikeGen>,
    pub skew_primitives: Vec<SkewPrimitiveGen>,
    pub group_table: Option<GroupTable>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub severity: Severity,
    pub message: String,
}

impl Finding {
    fn error(message: impl Into<String>) -> Self {
        Finding {
            severity: Severity::Error,
            message: message.into(),
        }
    }

    fn warning(message: impl Into<String>) -> Self {
        Finding {
            severity: Severity::Warning,
            message: message.into(),
        }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{tag}: {}", self.message)
    }
}

impl ActionSpec {
    /// A spec with no generators: everything is invariant.
    pub fn trivial(rank: usize, field: FieldSpec) -> Self {
        ActionSpec {
            field,
            rank,
            group_likes: Vec::new(),
            skew_primitives: Vec::new(),
            group_table: None,
        }
    }

    pub fn with_group_like(mut self, name: &str, matrix: Matrix) -> Self {
        self.group_likes.push(GroupLikeGen {
            name: name.to_string(),
            matrix,
        });
        self
    }

    pub fn with_skew_primitive(mut self, name: &str, sigma: &str, tau: &str, matrix: Matrix) -> Self {
        self.skew_primitives.push(SkewPrimitiveGen {
            name: name.to_string(),
            sigma: sigma.to_string(),
            tau: tau.to_string(),
            matrix,
        });
        self
    }

    pub fn group_like(&self, name: &str) -> Option<&GroupLikeGen> {
        self.group_likes.iter().find(|g| g.name == name)
    }

    pub fn skew_primitive(&self, name: &str) -> Option<&SkewPrimitiveGen> {
        self.skew_primitives.iter().find(|d| d.name == name)
    }

    /// Matrix of a group-like name, with `"1"` resolving to the identity.
    pub fn group_like_matrix(&self, name: &str) -> Result<Matrix> {
        if name == IDENTITY {
            return Ok(Matrix::identity(self.rank, self.field));
        }
        self.group_like(name)
            .map(|g| g.matrix.clone())
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    fn check_poly(&self, f: &FreePoly) -> Result<()> {
        if f.rank() != self.rank {
            return Err(Error::RankMismatch(self.rank, f.rank()));
        }
        if f.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn apply_group_like(&self, name: &str, f: &FreePoly) -> Result<FreePoly> {
        self.check_poly(f)?;
        let op = GroupLikeOp::new(self, &self.group_like_matrix(name)?);
        Ok(op.apply(f))
    }

    pub fn apply_skew_primitive(&self, name: &str, f: &FreePoly) -> Result<FreePoly> {
        self.check_poly(f)?;
        let op = SkewOp::new(self, name)?;
        Ok(op.apply(f))
    }

    /// `σ·f = f` for every group-like and `δ·f = 0` for every skew-primitive.
    pub fn is_invariant(&self, f: &FreePoly) -> bool {
        if self.check_poly(f).is_err() {
            return false;
        }
        self.group_likes
            .iter()
            .all(|g| GroupLikeOp::new(self, &g.matrix).apply(f) == *f)
            && self.skew_primitives.iter().all(|d| {
                SkewOp::new(self, &d.name)
                    .map(|op| op.apply(f).is_zero())
                    .unwrap_or(false)
            })
    }

    /// Every generator, group-likes first, as `(name, operator)` pairs for
    /// assembling the invariance system.
    pub(crate) fn invariance_operators(&self) -> Result<Vec<(String, Operator)>> {
        let mut out = Vec::new();
        for g in &self.group_likes {
            out.push((
                g.name.clone(),
                Operator::MinusIdentity(GroupLikeOp::new(self, &g.matrix)),
            ));
        }
        for d in &self.skew_primitives {
            out.push((d.name.clone(), Operator::Skew(SkewOp::new(self, &d.name)?)));
        }
        Ok(out)
    }
}

/// Checks the structural requirements on a spec. Findings are data; an
/// empty list of errors means the spec is usable.
pub fn validate_spec(s: &ActionSpec) -> Vec<Finding> {
    let mut findings = Vec::new();
    let r = s.rank;
    if r == 0 {
        findings.push(Finding::error("rank must be at least 1"));
    }

    let mut names = BTreeSet::new();
    let all_names = s
        .group_likes
        .iter()
        .map(|g| &g.name)
        .chain(s.skew_primitives.iter().map(|d| &d.name));
    for name in all_names {
        if name == IDENTITY {
            findings.push(Finding::error(format!(
                "generator name {IDENTITY:?} is reserved for the identity"
            )));
        } else if name.is_empty() {
            findings.push(Finding::error("empty generator name"));
        } else if !names.insert(name.clone()) {
            findings.push(Finding::error(format!("duplicate generator name {name:?}")));
        }
    }

    let check_matrix = |findings: &mut Vec<Finding>, name: &str, m: &Matrix| -> bool {
        if m.size() != r {
            findings.push(Finding::error(format!(
                "matrix of {name:?} is {0}x{0}, expected {r}x{r}",
                m.size()
            )));
            return false;
        }
        if m.rows().iter().flatten().any(|a| a.field() != s.field) {
            findings.push(Finding::error(format!(
                "matrix of {name:?} has entries outside {}",
                s.field.label()
            )));
            return false;
        }
        true
    };

    let mut well_formed = BTreeMap::new();
    for g in &s.group_likes {
        let ok = check_matrix(&mut findings, &g.name, &g.matrix);
        if ok && !g.matrix.is_invertible() {
            findings.push(Finding::error(format!(
                "group-like matrix not invertible: {:?}",
                g.name
            )));
        }
        well_formed.insert(g.name.clone(), ok);
    }
    for d in &s.skew_primitives {
        check_matrix(&mut findings, &d.name, &d.matrix);
        for (role, target) in [("sigma", &d.sigma), ("tau", &d.tau)] {
            if target != IDENTITY && s.group_like(target).is_none() {
                findings.push(Finding::error(format!(
                    "unknown group-like reference: {role} {target:?} of {:?}",
                    d.name
                )));
            }
        }
    }

    match &s.group_table {
        None => findings.push(Finding::warning(
            "faithfulness not verifiable from generator data",
        )),
        Some(table) => {
            let all_ok = well_formed.values().all(|&ok| ok);
            validate_group_table(s, table, all_ok, &mut findings);
        }
    }
    findings
}

fn validate_group_table(s: &ActionSpec, table: &GroupTable, matrices_ok: bool, findings: &mut Vec<Finding>) {
    let mut elements: Vec<String> = vec![IDENTITY.to_string()];
    elements.extend(s.group_likes.iter().map(|g| g.name.clone()));
    let known: BTreeSet<&String> = elements.iter().collect();

    let mut resolvable = true;
    for ((a, b), c) in table {
        for name in [a, b, c] {
            if !known.contains(name) {
                findings.push(Finding::error(format!(
                    "unknown group-like reference in group table: {name:?}"
                )));
                resolvable = false;
            }
        }
    }
    if !resolvable {
        return;
    }

    // Entries involving the identity may be omitted; they are implied.
    let product = |a: &String, b: &String| -> Option<String> {
        if a == IDENTITY {
            return Some(b.clone());
        }
        if b == IDENTITY {
            return Some(a.clone());
        }
        table.get(&(a.clone(), b.clone())).cloned()
    };

    for ((a, b), c) in table {
        if (a == IDENTITY && c != b) || (b == IDENTITY && c != a) {
            findings.push(Finding::error(format!(
                "group table: {a}*{b} = {c} contradicts the identity"
            )));
        }
    }

    let mut complete = true;
    for a in &elements {
        for b in &elements {
            if product(a, b).is_none() {
                findings.push(Finding::error(format!("group table is missing {a},{b}")));
                complete = false;
            }
        }
    }
    if !complete {
        return;
    }
    let mul = |a: &String, b: &String| product(a, b).expect("table is complete");

    for a in &elements {
        for b in &elements {
            for c in &elements {
                if mul(&mul(a, b), c) != mul(a, &mul(b, c)) {
                    findings.push(Finding::error(format!(
                        "group table is not associative at ({a},{b},{c})"
                    )));
                    return;
                }
            }
        }
    }
    for a in &elements {
        if !elements.iter().any(|b| mul(a, b) == IDENTITY && mul(b, a) == IDENTITY) {
            findings.push(Finding::error(format!("group table: {a} has no inverse")));
        }
    }

    if !matrices_ok {
        return;
    }
    for a in &elements {
        for b in &elements {
            let c = mul(a, b);
            let lhs = s.group_like_matrix(a).expect("resolved").mul(&s.group_like_matrix(b).expect("resolved"));
            if lhs != s.group_like_matrix(&c).expect("resolved") {
                findings.push(Finding::error(format!(
                    "representation inconsistent: matrix({a})*matrix({b}) != matrix({c})"
                )));
            }
        }
    }
}

pub fn has_errors(findings: &[Finding]) -> bool {
    findings.iter().any(|f| f.severity == Severity::Error)
}

/// A group-like generator extended multiplicatively.
#[derive(Clone, Debug)]
pub(crate) struct GroupLikeOp {
    images: Vec<FreePoly>,
    rank: usize,
    field: FieldSpec,
    is_identity: bool,
}

impl GroupLikeOp {
    fn new(s: &ActionSpec, m: &Matrix) -> Self {
        GroupLikeOp {
            images: (1..=s.rank).map(|j| m.column_image(j, s.field)).collect(),
            rank: s.rank,
            field: s.field,
            is_identity: *m == Matrix::identity(s.rank, s.field),
        }
    }

    pub(crate) fn apply_word(&self, w: &[usize]) -> FreePoly {
        if self.is_identity {
            return FreePoly::monomial(self.rank, self.field, Word::new(w.to_vec()), self.field.one());
        }
        w.iter().fold(FreePoly::one(self.rank, self.field), |acc, &j| {
            &acc * &self.images[j - 1]
        })
    }

    pub(crate) fn apply(&self, f: &FreePoly) -> FreePoly {
        let mut out = FreePoly::zero(self.rank, self.field);
        for (w, c) in f.terms() {
            for (v, a) in self.apply_word(w.indices()).terms() {
                out.add_term(v.clone(), a * c);
            }
        }
        out
    }
}

/// A (σ,τ)-skew-primitive generator extended as a twisted derivation.
#[derive(Clone, Debug)]
pub(crate) struct SkewOp {
    delta: Vec<FreePoly>,
    sigma: GroupLikeOp,
    tau: GroupLikeOp,
}

impl SkewOp {
    fn new(s: &ActionSpec, name: &str) -> Result<Self> {
        let d = s
            .skew_primitive(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(SkewOp {
            delta: (1..=s.rank).map(|j| d.matrix.column_image(j, s.field)).collect(),
            sigma: GroupLikeOp::new(s, &s.group_like_matrix(&d.sigma)?),
            tau: GroupLikeOp::new(s, &s.group_like_matrix(&d.tau)?),
        })
    }

    pub(crate) fn apply_word(&self, w: &[usize]) -> FreePoly {
        let (rank, field) = (self.sigma.rank, self.sigma.field);
        let n = w.len();
        // suffix[k] = σ·(x_{j(k+1)}…x_{jn})
        let mut suffix = vec![FreePoly::one(rank, field); n + 1];
        for k in (0..n).rev() {
            suffix[k] = &self.sigma.images[w[k] - 1] * &suffix[k + 1];
        }
        let mut out = FreePoly::zero(rank, field);
        let mut prefix = FreePoly::one(rank, field);
        for k in 0..n {
            let term = &(&prefix * &self.delta[w[k] - 1]) * &suffix[k + 1];
            out = &out + &term;
            prefix = &prefix * &self.tau.images[w[k] - 1];
        }
        out
    }

    pub(crate) fn apply(&self, f: &FreePoly) -> FreePoly {
        let (rank, field) = (self.sigma.rank, self.sigma.field);
        let mut out = FreePoly::zero(rank, field);
        for (w, c) in f.terms() {
            for (v, a) in self.apply_word(w.indices()).terms() {
                out.add_term(v.clone(), a * c);
            }
        }
        out
    }
}

/// The linear maps whose common kernel on R_n is R^H_n.
#[derive(Clone, Debug)]
pub(crate) enum Operator {
    /// `σ − id`
    MinusIdentity(GroupLikeOp),
    Skew(SkewOp),
}

impl Operator {
    pub(crate) fn apply_word(&self, w: &Word) -> FreePoly {
        match self {
            Operator::MinusIdentity(g) => {
                let mut image = g.apply_word(w.indices());
                image.add_term(w.clone(), -g.field.one());
                image
            }
            Operator::Skew(d) => d.apply_word(w.indices()),
        }
    }
}
