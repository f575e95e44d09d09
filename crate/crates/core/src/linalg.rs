//! Sparse exact Gaussian elimination.
//!
//! Subspaces are reported in one normal form throughout the crate: every
//! basis vector has its last nonzero coordinate (its pivot) equal to one,
//! pivots strictly increase, and each vector vanishes at the pivots of the
//! others. For a kernel this is the basis indexed by the free columns.

use std::collections::BTreeMap;

use crate::exactfield::{FieldSpec, Scalar};

/// Coordinates sorted by index, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn to_dense(v: &SparseVec, width: usize, field: FieldSpec) -> Vec<Scalar> {
    let mut out = vec![field.zero(); width];
    for (c, a) in v {
        out[*c] = a.clone();
    }
    out
}

pub fn from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(c, a)| (c, a.clone()))
        .collect()
}

/// Row space of a matrix, kept in reduced row-echelon form (leading pivots).
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    field: FieldSpec,
    /// pivot column → row with a one at the pivot and zeros at every other pivot.
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(width: usize, field: FieldSpec) -> Self {
        Echelon {
            width,
            field,
            rows: BTreeMap::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Remainder of `v` after subtracting its components along the pivot rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut work: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        for (c, a) in v {
            if let Some(row) = self.rows.get(c) {
                for (k, b) in row {
                    let entry = work.entry(*k).or_insert_with(|| self.field.zero());
                    *entry -= a * b;
                }
            }
        }
        work.into_iter().filter(|(_, a)| !a.is_zero()).collect()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.first().cloned() else {
            return false;
        };
        let inv = lead.inv().expect("leading entry is nonzero");
        let row: SparseVec = r.iter().map(|(c, a)| (*c, a * &inv)).collect();

        for existing in self.rows.values_mut() {
            let Ok(pos) = existing.binary_search_by_key(&pivot, |(c, _)| *c) else {
                continue;
            };
            let factor = existing[pos].1.clone();
            let mut merged: BTreeMap<usize, Scalar> = existing.drain(..).collect();
            for (c, a) in &row {
                let entry = merged.entry(*c).or_insert_with(|| self.field.zero());
                *entry -= &factor * a;
            }
            *existing = merged.into_iter().filter(|(_, a)| !a.is_zero()).collect();
        }
        self.rows.insert(pivot, row);
        true
    }

    /// Rows in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// Basis of `{x : row · x = 0 for every row}`, one vector per free column.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut free: BTreeMap<usize, SparseVec> = (0..self.width)
            .filter(|c| !self.rows.contains_key(c))
            .map(|c| (c, Vec::new()))
            .collect();
        for (&p, row) in &self.rows {
            for (c, a) in row {
                if *c != p {
                    free.get_mut(c)
                        .expect("rows vanish at other pivots")
                        .push((p, -a));
                }
            }
        }
        free.into_iter()
            .map(|(f, mut v)| {
                v.push((f, self.field.one()));
                v.sort_by_key(|(c, _)| *c);
                v
            })
            .collect()
    }
}

/// A subspace of `field^width` with its basis in trailing-pivot normal form.
#[derive(Clone, Debug)]
pub struct Subspace {
    reversed: Echelon,
}

impl Subspace {
    pub fn new(width: usize, field: FieldSpec) -> Self {
        Subspace {
            reversed: Echelon::new(width, field),
        }
    }

    pub fn span<'a>(
        width: usize,
        field: FieldSpec,
        vectors: impl IntoIterator<Item = &'a SparseVec>,
    ) -> Self {
        let mut s = Self::new(width, field);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    fn flip(&self, v: &SparseVec) -> SparseVec {
        let w = self.reversed.width;
        let mut out: SparseVec = v.iter().map(|(c, a)| (w - 1 - c, a.clone())).collect();
        out.reverse();
        out
    }

    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let f = self.flip(v);
        self.reversed.insert(&f)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reversed.contains(&self.flip(v))
    }

    pub fn dim(&self) -> usize {
        self.reversed.rank()
    }

    pub fn basis(&self) -> Vec<SparseVec> {
        let mut out: Vec<SparseVec> = self.reversed.rows().map(|r| self.flip(r)).collect();
        out.reverse();
        out
    }
}

pub fn rank(matrix: &[Vec<Scalar>], field: FieldSpec) -> usize {
    let width = matrix.first().map_or(0, Vec::len);
    let mut e = Echelon::new(width, field);
    for row in matrix {
        e.insert(&from_dense(row));
    }
    e.rank()
}
