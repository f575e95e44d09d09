//! Explicit constructions around the finite-generation dichotomy: the
//! polynomial `c_n(Y,Z) = Σ_{i<n} Y^{n−1−i} Z^i`, scalar classification, the
//! minimal invariant degree, the block element with `δ·f ∈ c_n(η,μ)·R`, and
//! prefix pumping through the insert operator.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::action::{ActionSpec, Matrix};
use crate::error::{Error, Result};
use crate::exactfield::Scalar;
use crate::freealg::{insert, FreePoly, Word};
use crate::invariants::{GradedInvariants, SizeCap};

/// `c_n(y, z) = Σ_{i<n} y^{n−1−i} z^i`, by `c_1 = 1`, `c_{k+1} = y·c_k + z^k`.
pub fn cn_eval(n: usize, y: &Scalar, z: &Scalar) -> Result<Scalar> {
    if n == 0 {
        return Err(Error::InvalidArgument("c_n needs n >= 1".into()));
    }
    let mut acc = y.field().one();
    let mut z_power = y.field().one();
    for _ in 1..n {
        z_power = &z_power * z;
        acc = &(&acc * y) + &z_power;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Scalar,
    LinearNonScalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarClassification {
    pub verdict: Verdict,
    /// Generator name → λ with matrix `λ·I`; empty unless scalar.
    pub bases: BTreeMap<String, Scalar>,
}

pub fn classify_action(s: &ActionSpec) -> ScalarClassification {
    let matrices = s
        .group_likes
        .iter()
        .map(|g| (&g.name, &g.matrix))
        .chain(s.skew_primitives.iter().map(|d| (&d.name, &d.matrix)));
    let mut bases = BTreeMap::new();
    for (name, m) in matrices {
        match m.scalar_value() {
            Some(lambda) => {
                bases.insert(name.clone(), lambda);
            }
            None => {
                return ScalarClassification {
                    verdict: Verdict::LinearNonScalar,
                    bases: BTreeMap::new(),
                }
            }
        }
    }
    ScalarClassification {
        verdict: Verdict::Scalar,
        bases,
    }
}

/// Least `t ≤ cap` with `x1^t` invariant. For scalar actions one invariant
/// word of degree `t` makes every word of degree `t` invariant.
pub fn minimal_invariant_degree(s: &ActionSpec, cap: usize) -> Result<Option<usize>> {
    if classify_action(s).verdict != Verdict::Scalar {
        return Err(Error::NotScalar);
    }
    Ok((1..=cap).find(|&t| s.is_invariant(&FreePoly::monomial(s.rank, s.field, Word::power(1, t), s.field.one()))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JordanBlock {
    pub start: usize,
    pub end: usize,
    #[serde(serialize_with = "crate::report::scalar_as_string")]
    pub eigenvalue: Scalar,
}

/// Contiguous Jordan blocks covering `1..=r`, ones on the subdiagonal
/// (column convention: `δ·x_j = λx_j + x_{j+1}` inside a block).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JordanShape {
    pub blocks: Vec<JordanBlock>,
}

impl JordanShape {
    pub fn from_matrix(m: &Matrix) -> std::result::Result<JordanShape, String> {
        let r = m.size();
        for i in 0..r {
            for j in 0..r {
                let a = m.get(i, j);
                let allowed = i == j || (i == j + 1 && (a.is_zero() || a.is_one()));
                if !allowed && !a.is_zero() {
                    return Err(format!("entry ({}, {}) = {a} outside the Jordan pattern", i + 1, j + 1));
                }
            }
        }
        let mut blocks = Vec::new();
        let mut start = 1;
        for j in 1..=r {
            let continues = j < r && m.get(j, j - 1).is_one();
            if continues && m.get(j, j) != m.get(j - 1, j - 1) {
                return Err(format!(
                    "block through x{j}, x{} mixes eigenvalues {} and {}",
                    j + 1,
                    m.get(j - 1, j - 1),
                    m.get(j, j)
                ));
            }
            if !continues {
                blocks.push(JordanBlock {
                    start,
                    end: j,
                    eigenvalue: m.get(j - 1, j - 1).clone(),
                });
                start = j + 1;
            }
        }
        Ok(JordanShape { blocks })
    }

    pub fn block_of(&self, i: usize) -> Option<&JordanBlock> {
        self.blocks.iter().find(|b| b.start <= i && i <= b.end)
    }
}

struct JairSetup {
    eta: Scalar,
    mu: Scalar,
    block: JordanBlock,
}

fn jair_setup(s: &ActionSpec, delta: &str, i: usize) -> Result<JairSetup> {
    let d = s
        .skew_primitive(delta)
        .ok_or_else(|| Error::UnknownGenerator(delta.to_string()))?;
    let base = |name: &str| -> Result<Scalar> {
        s.group_like_matrix(name)?
            .scalar_value()
            .ok_or_else(|| Error::NotScalarSigmaTau(delta.to_string()))
    };
    let eta = base(&d.sigma)?;
    let mu = base(&d.tau)?;
    let shape = JordanShape::from_matrix(&d.matrix).map_err(|e| Error::NotJordanShape(delta.to_string(), e))?;
    if i == 0 || i > s.rank {
        return Err(Error::InvalidIndex(i, s.rank));
    }
    let block = shape.block_of(i).expect("blocks cover 1..=r").clone();
    Ok(JairSetup { eta, mu, block })
}

/// All index sequences of length `n` with entries in `lo..=hi` summing to `total`, in lex order.
fn compositions(n: usize, total: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, total: usize, lo: usize, hi: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for j in lo..=hi {
            let rest = n - 1;
            if j > total || total - j < rest * lo || total - j > rest * hi {
                continue;
            }
            prefix.push(j);
            go(rest, total - j, lo, hi, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, total, lo, hi, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Sum of the words `x_{j1}…x_{jn}` with `j1 + … + jn = i + (n−1)s`, each
/// index in `i..=s`, where `s` ends the Jordan block of δ containing `i`.
pub fn jair_element(s: &ActionSpec, delta: &str, i: usize, n: usize) -> Result<FreePoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let setup = jair_setup(s, delta, i)?;
    let end = setup.block.end;
    let words = compositions(n, i + (n - 1) * end, i, end);
    Ok(FreePoly::from_terms(
        s.rank,
        s.field,
        words.into_iter().map(|w| (Word::new(w), s.field.one())),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrobeniusOutcome {
    NotApplicable(String),
    Computed {
        p: u64,
        /// `δ·f^p`.
        image: FreePoly,
        /// Set when `δ·f^p ≠ 0`, i.e. `f^p` is not δ-invariant even though
        /// `c_n(η,η) = nη^{n−1}` would make it so if `f` commuted with `δ·f`.
        discrepancy: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JairReport {
    pub delta: String,
    pub i: usize,
    pub n: usize,
    pub block_end: usize,
    pub eta: Scalar,
    pub mu: Scalar,
    pub lambda: Scalar,
    pub cn: Scalar,
    pub f: FreePoly,
    pub image: FreePoly,
    /// `x_i` prefixes some word of `supp(f)`.
    pub prefix_ok: bool,
    /// `x_i x_s^{n−1} ∈ supp(f)`.
    pub witness_ok: bool,
    /// When `c_n = 0`: whether `δ·f = 0`.
    pub zero_branch: Option<bool>,
    /// When `c_n ≠ 0`: whether `δ·f − λc_n f` lives on words with indices
    /// `≤ s` and index sum `i + 1 + (n−1)s`.
    pub residual_support_ok: Option<bool>,
    /// When `c_n ≠ 0`: `c_n^{-1}(δ·f − λc_n f)`, so `δ·f = c_n(λf + f'')`.
    pub quotient: Option<FreePoly>,
    pub frobenius: Option<FrobeniusOutcome>,
}

impl JairReport {
    /// Every check that applies to this configuration holds.
    pub fn holds(&self) -> bool {
        self.prefix_ok
            && self.witness_ok
            && self.zero_branch.unwrap_or(true)
            && self.residual_support_ok.unwrap_or(true)
    }
}

pub fn jair_verify(s: &ActionSpec, delta: &str, i: usize, n: usize, frobenius_check: bool) -> Result<JairReport> {
    let f = jair_element(s, delta, i, n)?;
    let JairSetup { eta, mu, block } = jair_setup(s, delta, i)?;
    let end = block.end;
    let lambda = block.eigenvalue.clone();
    let image = s.apply_skew_primitive(delta, &f)?;
    let cn = cn_eval(n, &eta, &mu)?;

    let prefix_ok = f.has_prefix_in_support(&Word::new(vec![i]));
    let mut witness = vec![i];
    witness.extend(std::iter::repeat_n(end, n - 1));
    let witness_ok = !f.coeff(&Word::new(witness)).is_zero();

    let (zero_branch, residual_support_ok, quotient) = if cn.is_zero() {
        (Some(image.is_zero()), None, None)
    } else {
        let residual = &image - &f.scale(&(&lambda * &cn));
        let target = i + 1 + (n - 1) * end;
        let ok = residual.support().all(|w| {
            w.len() == n && w.max_index() <= end && w.indices().iter().sum::<usize>() == target
        });
        let quotient = residual.scale(&cn.inv()?);
        (None, Some(ok), Some(quotient))
    };

    let frobenius = frobenius_check.then(|| {
        let p = s.field.characteristic();
        if p == 0 {
            FrobeniusOutcome::NotApplicable("field has characteristic 0".into())
        } else if eta != mu {
            FrobeniusOutcome::NotApplicable("sigma and tau have different bases".into())
        } else {
            let image = s
                .apply_skew_primitive(delta, &f.pow(p as usize))
                .expect("generator resolved above");
            let discrepancy = !image.is_zero();
            FrobeniusOutcome::Computed { p, image, discrepancy }
        }
    });

    Ok(JairReport {
        delta: delta.to_string(),
        i,
        n,
        block_end: end,
        eta,
        mu,
        lambda,
        cn,
        f,
        image,
        prefix_ok,
        witness_ok,
        zero_branch,
        residual_support_ok,
        quotient,
        frobenius,
    })
}

/// Starting from a homogeneous invariant `f` with `x` prefixing a word of
/// its support, builds an invariant with `x^k` prefixing a word of its
/// support: `f_1 = f`, `f_k = τ_{k−1, t−k+1, d}(f_{k−1} f)` with
/// `t = deg f_{k−1}` and `d = deg f`.
pub fn build_prefix_invariant(s: &ActionSpec, f: &FreePoly, x: usize, k: usize) -> Result<FreePoly> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if x == 0 || x > s.rank {
        return Err(Error::InvalidIndex(x, s.rank));
    }
    let d = f
        .homogeneous_degree()
        .ok_or_else(|| Error::PreconditionFailed("f must be nonzero and homogeneous".into()))?;
    if !s.is_invariant(f) {
        return Err(Error::PreconditionFailed("f is not invariant".into()));
    }
    if !f.has_prefix_in_support(&Word::new(vec![x])) {
        return Err(Error::PreconditionFailed(format!("no word of supp(f) starts with x{x}")));
    }
    let mut current = f.clone();
    for step in 2..=k {
        let t = current.homogeneous_degree().expect("nonzero by the previous check");
        current = insert(step - 1, t + 1 - step, d, &current, f)?;
        if !current.has_prefix_in_support(&Word::power(x, step)) {
            return Err(Error::CancellationDetected { x, k: step });
        }
    }
    Ok(current)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InsertViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    #[serde(serialize_with = "crate::report::poly_as_string")]
    pub f: FreePoly,
    #[serde(serialize_with = "crate::report::poly_as_string")]
    pub g: FreePoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InsertCheck {
    pub max_degree: usize,
    pub checked: usize,
    pub violations: Vec<InsertViolation>,
}

/// Runs `insert(i, j, k, f, g)` over basis elements `f ∈ R^H_{i+j}`,
/// `g ∈ R^H_k` with `i + j ≥ 1`, `k ≥ 1`, `i + j + k ≤ max_degree`, and
/// records every output that fails `is_invariant`.
pub fn insert_closure_check(s: &ActionSpec, max_degree: usize, cap: SizeCap) -> Result<InsertCheck> {
    let top = max_degree.saturating_sub(1);
    let graded = GradedInvariants::compute(s, top, cap)?;
    let mut checked = 0;
    let mut violations = Vec::new();
    for k in 1..=top {
        for outer in 1..=max_degree - k {
            for f in graded.basis(outer) {
                for g in graded.basis(k) {
                    for i in 0..=outer {
                        let out = insert(i, outer - i, k, f, g)?;
                        checked += 1;
                        if !s.is_invariant(&out) {
                            violations.push(InsertViolation {
                                i,
                                j: outer - i,
                                k,
                                f: f.clone(),
                                g: g.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(InsertCheck {
        max_degree,
        checked,
        violations,
    })
}
