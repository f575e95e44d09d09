//! Ready-made actions used by the examples, the demo page and the tests.

use crate::action::{ActionSpec, Matrix, IDENTITY};
use crate::exactfield::FieldSpec;

/// One group-like `g` acting as `base·I` on `rank` generators.
pub fn scalar(field: FieldSpec, rank: usize, base: i64) -> ActionSpec {
    ActionSpec::trivial(rank, field).with_group_like("g", Matrix::scalar(rank, field.from_i64(base)))
}

/// One group-like `g` acting diagonally.
pub fn diagonal(field: FieldSpec, entries: &[i64]) -> ActionSpec {
    let m = Matrix::diagonal(entries.iter().map(|&e| field.from_i64(e)).collect());
    ActionSpec::trivial(entries.len(), field).with_group_like("g", m)
}

/// Sweedler's four-dimensional Hopf algebra acting on k⟨x1, x2⟩ over ℚ:
/// `g = diag(1, −1)` and a (1, g)-skew-primitive `d` with `d·x2 = x1`, `d·x1 = 0`.
pub fn sweedler() -> ActionSpec {
    let q = FieldSpec::Rational;
    let d = Matrix::parse(&[&["0", "1"], &["0", "0"]], q).expect("literal matrix");
    diagonal(q, &[1, -1]).with_skew_primitive("d", IDENTITY, "g", d)
}

/// A contiguous Jordan block: `d·x_j = λx_j + x_{j+1}` for `start ≤ j < end`,
/// `d·x_end = λx_end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub start: usize,
    pub end: usize,
    pub eigenvalue: i64,
}

/// A skew-primitive `d` in Jordan form whose σ and τ act as `eta·I` and
/// `mu·I`. A base of 1 maps to the identity group-like; otherwise the
/// group-likes are declared as `s` (for σ) and `t` (for τ), shared when
/// `eta == mu`.
pub fn jordan(field: FieldSpec, blocks: &[Block], eta: i64, mu: i64) -> ActionSpec {
    let rank = blocks.iter().map(|b| b.end).max().unwrap_or(0);
    let mut rows = vec![vec![field.zero(); rank]; rank];
    for b in blocks {
        for j in b.start..=b.end {
            rows[j - 1][j - 1] = field.from_i64(b.eigenvalue);
            if j < b.end {
                rows[j][j - 1] = field.one();
            }
        }
    }
    let mut spec = ActionSpec::trivial(rank, field);
    let mut name_for = |base: i64, fallback: &str| -> String {
        let value = field.from_i64(base);
        if value.is_one() {
            return IDENTITY.to_string();
        }
        if let Some(g) = spec.group_likes.iter().find(|g| g.matrix.scalar_value() == Some(value.clone())) {
            return g.name.clone();
        }
        spec.group_likes.push(crate::action::GroupLikeGen {
            name: fallback.to_string(),
            matrix: Matrix::scalar(rank, value),
        });
        fallback.to_string()
    };
    let sigma = name_for(eta, "s");
    let tau = name_for(mu, "t");
    let d = Matrix::new(rows).expect("square by construction");
    spec.with_skew_primitive("d", &sigma, &tau, d)
}
