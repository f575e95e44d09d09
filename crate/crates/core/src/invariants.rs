//! Graded invariants, decomposables and the finite-generation probe.
//!
//! `R^H_n` is the common kernel on `R_n` of `σ − id` for each group-like σ
//! and of δ for each skew-primitive δ. New generators in degree `n` are
//! counted against `G_n = Σ_{0<a<n} R^H_a · R^H_{n−a}`.

use serde::Serialize;

use crate::action::ActionSpec;
use crate::constructions::{classify_action, minimal_invariant_degree, ScalarClassification, Verdict};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Scalar};
use crate::freealg::{FreePoly, Word};
use crate::linalg::{self, Echelon, SparseVec, Subspace};

/// Largest number of coordinates `r^n` accepted by default.
pub const DEFAULT_SIZE_CAP: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeCap(pub Option<u128>);

impl SizeCap {
    pub fn unlimited() -> Self {
        SizeCap(None)
    }

    pub fn check(&self, rank: usize, degree: usize) -> Result<usize> {
        let coordinates = (rank as u128).checked_pow(degree as u32);
        match (coordinates, self.0) {
            (Some(c), Some(cap)) if c <= cap => Ok(c as usize),
            (Some(c), None) if c <= usize::MAX as u128 => Ok(c as usize),
            (c, cap) => Err(Error::SizeCapExceeded {
                degree,
                coordinates: c.unwrap_or(u128::MAX),
                cap: cap.unwrap_or(usize::MAX as u128),
            }),
        }
    }
}

impl Default for SizeCap {
    fn default() -> Self {
        SizeCap(Some(DEFAULT_SIZE_CAP))
    }
}

/// Null space of a dense matrix. Each vector ends in a one at its free
/// column and vanishes at the other free columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub vectors: Vec<Vec<Scalar>>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

pub fn kernel_basis(matrix: &[Vec<Scalar>], cols: usize, field: FieldSpec) -> KernelBasis {
    let mut e = Echelon::new(cols, field);
    for row in matrix {
        assert_eq!(row.len(), cols, "ragged matrix");
        e.insert(&linalg::from_dense(row));
    }
    KernelBasis {
        vectors: e.kernel().iter().map(|v| linalg::to_dense(v, cols, field)).collect(),
    }
}

fn invariant_subspace(s: &ActionSpec, n: usize, cap: SizeCap) -> Result<Subspace> {
    let width = cap.check(s.rank, n)?;
    let mut system = Echelon::new(width, s.field);
    for (_, op) in s.invariance_operators()? {
        // Column c holds the image of word c; transpose into rows.
        let mut rows: Vec<SparseVec> = vec![Vec::new(); width];
        for (c, w) in Word::all_of_length(s.rank, n).enumerate() {
            for (v, a) in op.apply_word(&w).terms() {
                rows[v.coordinate(s.rank)].push((c, a.clone()));
            }
        }
        for row in rows.iter().filter(|r| !r.is_empty()) {
            system.insert(row);
        }
    }
    let kernel = system.kernel();
    Ok(Subspace::span(width, s.field, kernel.iter()))
}

fn to_polys(s: &ActionSpec, n: usize, basis: &[SparseVec]) -> Vec<FreePoly> {
    basis
        .iter()
        .map(|v| FreePoly::from_coordinates(s.rank, s.field, n, v.iter().cloned()))
        .collect()
}

/// Basis of the degree-`n` invariants in normal form (see [`linalg`]).
pub fn invariant_basis(s: &ActionSpec, n: usize, cap: SizeCap) -> Result<Vec<FreePoly>> {
    let space = invariant_subspace(s, n, cap)?;
    Ok(to_polys(s, n, &space.basis()))
}

#[derive(Clone, Debug)]
pub struct Decomposables {
    pub degree: usize,
    pub basis: Vec<FreePoly>,
    space: Subspace,
}

impl Decomposables {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, f: &FreePoly) -> bool {
        f.coordinates(self.degree)
            .map(|v| self.space.contains(&v))
            .unwrap_or(false)
    }
}

/// Span of all products `f·g` with `f`, `g` invariant basis elements of
/// positive degrees summing to `n`. `bases[a]` must hold a basis of
/// `R^H_a` for `0 < a < n`; `bases[0]` is ignored.
pub fn decomposable_component(
    s: &ActionSpec,
    n: usize,
    bases: &[Vec<FreePoly>],
    cap: SizeCap,
) -> Result<Decomposables> {
    let width = cap.check(s.rank, n)?;
    if n >= 2 && bases.len() < n {
        return Err(Error::InvalidArgument(format!(
            "need invariant bases for degrees 1..{}",
            n - 1
        )));
    }
    let mut space = Subspace::new(width, s.field);
    for a in 1..n {
        for f in &bases[a] {
            for g in &bases[n - a] {
                space.insert(&(f * g).coordinates(n)?);
            }
        }
    }
    Ok(Decomposables {
        degree: n,
        basis: to_polys(s, n, &space.basis()),
        space,
    })
}

/// Invariants and decomposables for degrees `0..=max_degree`.
#[derive(Clone, Debug)]
pub struct GradedInvariants {
    spec: ActionSpec,
    invariants: Vec<Subspace>,
    bases: Vec<Vec<FreePoly>>,
    decomposables: Vec<Decomposables>,
}

impl GradedInvariants {
    pub fn compute(s: &ActionSpec, max_degree: usize, cap: SizeCap) -> Result<Self> {
        for n in 0..=max_degree {
            cap.check(s.rank, n)?;
        }
        let mut invariants = Vec::new();
        let mut bases: Vec<Vec<FreePoly>> = Vec::new();
        let mut decomposables = Vec::new();
        for n in 0..=max_degree {
            let space = invariant_subspace(s, n, cap)?;
            bases.push(to_polys(s, n, &space.basis()));
            invariants.push(space);
            decomposables.push(decomposable_component(s, n, &bases, cap)?);
        }
        Ok(GradedInvariants {
            spec: s.clone(),
            invariants,
            bases,
            decomposables,
        })
    }

    pub fn spec(&self) -> &ActionSpec {
        &self.spec
    }

    pub fn max_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn basis(&self, n: usize) -> &[FreePoly] {
        &self.bases[n]
    }

    pub fn decomposables(&self, n: usize) -> &Decomposables {
        &self.decomposables[n]
    }

    pub fn dim(&self, n: usize) -> usize {
        self.bases[n].len()
    }

    /// `dim R^H_n − dim G_n` for `n ≥ 1`.
    pub fn new_generator_count(&self, n: usize) -> usize {
        self.dim(n) - self.decomposables[n].dim()
    }

    /// Whether a polynomial homogeneous of degree `n` lies in `R^H_n`.
    pub fn contains_invariant(&self, n: usize, f: &FreePoly) -> bool {
        f.coordinates(n)
            .map(|v| self.invariants[n].contains(&v))
            .unwrap_or(false)
    }

    /// Invariant basis elements of degree `n` completing a basis of `G_n`
    /// to one of `R^H_n`, picked greedily in basis order.
    pub fn new_generators(&self, n: usize) -> Vec<FreePoly> {
        let mut span = self.decomposables[n].space.clone();
        self.bases[n]
            .iter()
            .filter(|f| span.insert(&f.coordinates(n).expect("homogeneous")))
            .cloned()
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeRow {
    pub degree: usize,
    /// `r^n`, the dimension of `R_n`.
    pub words: u128,
    pub invariants: usize,
    pub decomposables: usize,
    pub new_generators: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub rows: Vec<ProbeRow>,
    pub classification: ScalarClassification,
    pub minimal_degree: Option<usize>,
    pub horizon: usize,
    pub verdict: String,
}

impl ProbeReport {
    pub fn new_generator_counts(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.new_generators).collect()
    }

    pub fn invariant_dims(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.invariants).collect()
    }
}

pub const SCALAR_EVIDENCE: &str = "consistent with scalar case (Theorem: scalar ⇒ finitely generated)";
pub const NON_SCALAR_EVIDENCE: &str =
    "consistent with non-scalar case (Theorem: non-scalar ⇒ not finitely generated)";

/// Rows for degrees `1..=horizon` plus a verdict phrased as finite-degree evidence.
pub fn probe_generation(s: &ActionSpec, horizon: usize, cap: SizeCap) -> Result<ProbeReport> {
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    let graded = GradedInvariants::compute(s, horizon, cap)?;
    Ok(probe_from(&graded))
}

pub fn probe_from(graded: &GradedInvariants) -> ProbeReport {
    let s = graded.spec();
    let horizon = graded.max_degree();
    let rows: Vec<ProbeRow> = (1..=horizon)
        .map(|n| ProbeRow {
            degree: n,
            words: (s.rank as u128).pow(n as u32),
            invariants: graded.dim(n),
            decomposables: graded.decomposables(n).dim(),
            new_generators: graded.new_generator_count(n),
        })
        .collect();
    let classification = classify_action(s);
    let minimal_degree = match classification.verdict {
        Verdict::Scalar => minimal_invariant_degree(s, horizon).expect("scalar"),
        Verdict::LinearNonScalar => None,
    };
    let generator_degrees: Vec<usize> = rows
        .iter()
        .filter(|r| r.new_generators > 0)
        .map(|r| r.degree)
        .collect();
    let verdict = verdict_text(&classification, minimal_degree, horizon, &generator_degrees);
    ProbeReport {
        rows,
        classification,
        minimal_degree,
        horizon,
        verdict,
    }
}

fn verdict_text(
    classification: &ScalarClassification,
    minimal_degree: Option<usize>,
    horizon: usize,
    generator_degrees: &[usize],
) -> String {
    let listed = generator_degrees
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    match (classification.verdict, minimal_degree) {
        (Verdict::Scalar, Some(t)) if generator_degrees.iter().all(|&d| d == t) => {
            format!("no new generators in degrees ({t}, {horizon}]; {SCALAR_EVIDENCE}")
        }
        (Verdict::Scalar, None) if generator_degrees.is_empty() => {
            format!("no invariants in degrees [1, {horizon}]; {SCALAR_EVIDENCE}")
        }
        (Verdict::Scalar, _) => format!(
            "unexpected new generators in degrees [{listed}] for a scalar action"
        ),
        (Verdict::LinearNonScalar, _) if generator_degrees.is_empty() => {
            format!("no new generators found in degrees [1, {horizon}]; inconclusive")
        }
        (Verdict::LinearNonScalar, _) => {
            format!("new generators in degrees [{listed}]; {NON_SCALAR_EVIDENCE}")
        }
    }
}
