//! Brute-force oracles that share nothing with the engine beyond scalar
//! arithmetic: dense tensor-power matrices and dense elimination.

#![allow(dead_code)]

use hopfinv::action::{ActionSpec, Matrix};
use hopfinv::{FieldSpec, Scalar};

/// Dense `r^n × r^n` matrix of `M_1 ⊗ M_2 ⊗ … ⊗ M_n` on words of length n,
/// column = input word, row = output word (both in lex coordinates).
pub fn tensor_matrix(factors: &[&Matrix], rank: usize, field: FieldSpec) -> Vec<Vec<Scalar>> {
    let n = factors.len();
    let size = rank.pow(n as u32);
    let digits = |mut c: usize| -> Vec<usize> {
        let mut d = vec![0; n];
        for slot in d.iter_mut().rev() {
            *slot = c % rank;
            c /= rank;
        }
        d
    };
    let mut out = vec![vec![field.zero(); size]; size];
    for (row, out_row) in out.iter_mut().enumerate() {
        let i = digits(row);
        for (col, entry) in out_row.iter_mut().enumerate() {
            let j = digits(col);
            let mut acc = field.one();
            for k in 0..n {
                acc *= factors[k].get(i[k], j[k]);
                if acc.is_zero() {
                    break;
                }
            }
            *entry = acc;
        }
    }
    out
}

fn add_into(acc: &mut [Vec<Scalar>], m: &[Vec<Scalar>]) {
    for (a, b) in acc.iter_mut().zip(m) {
        for (x, y) in a.iter_mut().zip(b) {
            *x = &*x + y;
        }
    }
}

/// `Δ^{(n−1)}(δ) = Σ_k τ^{⊗(k−1)} ⊗ δ ⊗ σ^{⊗(n−k)}` as a dense matrix on R_n.
pub fn skew_matrix(s: &ActionSpec, name: &str, n: usize) -> Vec<Vec<Scalar>> {
    let d = s.skew_primitive(name).expect("known generator");
    let sigma = s.group_like_matrix(&d.sigma).unwrap();
    let tau = s.group_like_matrix(&d.tau).unwrap();
    let size = s.rank.pow(n as u32);
    let mut acc = vec![vec![s.field.zero(); size]; size];
    for k in 0..n {
        let factors: Vec<&Matrix> = (0..n)
            .map(|q| match q.cmp(&k) {
                std::cmp::Ordering::Less => &tau,
                std::cmp::Ordering::Equal => &d.matrix,
                std::cmp::Ordering::Greater => &sigma,
            })
            .collect();
        add_into(&mut acc, &tensor_matrix(&factors, s.rank, s.field));
    }
    acc
}

pub fn group_like_matrix_power(s: &ActionSpec, name: &str, n: usize) -> Vec<Vec<Scalar>> {
    let m = s.group_like_matrix(name).unwrap();
    let factors = vec![&m; n];
    tensor_matrix(&factors, s.rank, s.field)
}

/// Dense rank by plain Gaussian elimination.
pub fn dense_rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv().unwrap();
        let pivot_row: Vec<Scalar> = rows[rank].iter().map(|a| a * &inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col].clone();
                for (entry, p) in row.iter_mut().zip(&pivot_row) {
                    *entry = &*entry - &(&factor * p);
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// `dim R^H_n` from the dense stacked system `[σ^{⊗n} − I ; Δ^{(n−1)}(δ)]`.
pub fn dense_invariant_dim(s: &ActionSpec, n: usize) -> usize {
    let size = s.rank.pow(n as u32);
    let mut stacked = Vec::new();
    for g in &s.group_likes {
        let mut m = group_like_matrix_power(s, &g.name, n);
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = &row[i] - &s.field.one();
        }
        stacked.extend(m);
    }
    for d in &s.skew_primitives {
        stacked.extend(skew_matrix(s, &d.name, n));
    }
    if stacked.is_empty() {
        return size;
    }
    size - dense_rank(stacked)
}

pub mod random {
    use hopfinv::action::{ActionSpec, Matrix};
    use hopfinv::{FieldSpec, FreePoly, Scalar, Word};
    use rand::Rng;

    pub fn field<R: Rng>(rng: &mut R) -> FieldSpec {
        [FieldSpec::Rational, FieldSpec::Prime(5), FieldSpec::Prime(7), FieldSpec::Prime(101)][rng.gen_range(0..4)]
    }

    pub fn scalar<R: Rng>(rng: &mut R, f: FieldSpec) -> Scalar {
        let num = f.from_i64(rng.gen_range(-4..=4));
        match f {
            FieldSpec::Rational => num * f.from_i64(rng.gen_range(1..=3)).inv().unwrap(),
            FieldSpec::Prime(_) => num,
        }
    }

    pub fn nonzero_scalar<R: Rng>(rng: &mut R, f: FieldSpec) -> Scalar {
        loop {
            let s = scalar(rng, f);
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn matrix<R: Rng>(rng: &mut R, f: FieldSpec, r: usize) -> Matrix {
        Matrix::new((0..r).map(|_| (0..r).map(|_| scalar(rng, f)).collect()).collect()).unwrap()
    }

    pub fn invertible<R: Rng>(rng: &mut R, f: FieldSpec, r: usize) -> Matrix {
        loop {
            let m = matrix(rng, f, r);
            if m.is_invertible() {
                return m;
            }
        }
    }

    pub fn poly<R: Rng>(rng: &mut R, f: FieldSpec, r: usize, max_degree: usize, terms: usize) -> FreePoly {
        FreePoly::from_terms(
            r,
            f,
            (0..rng.gen_range(0..=terms)).map(|_| {
                let len = rng.gen_range(0..=max_degree);
                (Word::new((0..len).map(|_| rng.gen_range(1..=r)).collect()), scalar(rng, f))
            }),
        )
    }

    pub fn homogeneous<R: Rng>(rng: &mut R, f: FieldSpec, r: usize, degree: usize, terms: usize) -> FreePoly {
        FreePoly::from_terms(
            r,
            f,
            (0..rng.gen_range(1..=terms)).map(|_| {
                (Word::new((0..degree).map(|_| rng.gen_range(1..=r)).collect()), scalar(rng, f))
            }),
        )
    }

    /// Group-likes `s`, `t` (random invertible) and a (s,t)-skew-primitive `d` (random).
    pub fn skew_action<R: Rng>(rng: &mut R, f: FieldSpec, r: usize) -> ActionSpec {
        let sigma = invertible(rng, f, r);
        let tau = invertible(rng, f, r);
        let delta = matrix(rng, f, r);
        ActionSpec::trivial(r, f)
            .with_group_like("s", sigma)
            .with_group_like("t", tau)
            .with_skew_primitive("d", "s", "t", delta)
    }
}
