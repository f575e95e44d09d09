//! Words of the free monoid and sparse polynomials in the free associative
//! algebra k⟨x1, …, xr⟩.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Scalar};

/// A monomial `x_{j1} x_{j2} … x_{jn}`, stored as 1-based generator indices.
///
/// Words are ordered by length first, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(indices: Vec<usize>) -> Self {
        Word(indices)
    }

    /// `x_index^len`.
    pub fn power(index: usize, len: usize) -> Self {
        Word(vec![index; len])
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Position of this word among the `rank^len` words of its length, in lex order.
    pub fn coordinate(&self, rank: usize) -> usize {
        self.0.iter().fold(0, |acc, &j| acc * rank + (j - 1))
    }

    pub fn from_coordinate(mut coordinate: usize, len: usize, rank: usize) -> Word {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = coordinate % rank + 1;
            coordinate /= rank;
        }
        Word(v)
    }

    /// All words of length `len` over `rank` letters, in lex order.
    pub fn all_of_length(rank: usize, len: usize) -> impl Iterator<Item = Word> {
        let count = rank.checked_pow(len as u32).expect("word count overflows usize");
        (0..count).map(move |c| Word::from_coordinate(c, len, rank))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, j) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{j}")?;
        }
        Ok(())
    }
}

/// An element of k⟨x1, …, xr⟩. Zero coefficients are never stored, so
/// structural equality is equality of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreePoly {
    rank: usize,
    field: FieldSpec,
    terms: BTreeMap<Word, Scalar>,
}

impl FreePoly {
    pub fn zero(rank: usize, field: FieldSpec) -> Self {
        FreePoly {
            rank,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize, field: FieldSpec) -> Self {
        Self::monomial(rank, field, Word::empty(), field.one())
    }

    /// `coeff · word`. Panics if the word uses an index outside `1..=rank`.
    pub fn monomial(rank: usize, field: FieldSpec, word: Word, coeff: Scalar) -> Self {
        assert!(
            word.indices().iter().all(|&j| (1..=rank).contains(&j)),
            "word {word} out of range for rank {rank}"
        );
        assert_eq!(coeff.field(), field);
        let mut p = Self::zero(rank, field);
        p.add_term(word, coeff);
        p
    }

    /// The word itself with coefficient one.
    pub fn word(rank: usize, field: FieldSpec, indices: &[usize]) -> Self {
        Self::monomial(rank, field, Word::new(indices.to_vec()), field.one())
    }

    pub fn from_terms(
        rank: usize,
        field: FieldSpec,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Self {
        let mut p = Self::zero(rank, field);
        for (w, c) in terms {
            assert!(w.indices().iter().all(|&j| (1..=rank).contains(&j)));
            p.add_term(w, c);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Words with nonzero coefficient, in monomial order.
    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    /// Largest word length in the support; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous_of(&self, n: usize) -> bool {
        self.terms.keys().all(|w| w.len() == n)
    }

    /// The common degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.terms.keys().next()?.len();
        self.is_homogeneous_of(d).then_some(d)
    }

    pub(crate) fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &FreePoly) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &FreePoly) -> Result<FreePoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &FreePoly) -> Result<FreePoly> {
        self.try_add(&-other)
    }

    /// Product in the free algebra: bilinear extension of concatenation.
    pub fn try_mul(&self, other: &FreePoly) -> Result<FreePoly> {
        self.check_compatible(other)?;
        let mut out = FreePoly::zero(self.rank, self.field);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> FreePoly {
        let mut out = FreePoly::zero(self.rank, self.field);
        if c.is_zero() {
            return out;
        }
        for (w, a) in &self.terms {
            out.terms.insert(w.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, e: usize) -> FreePoly {
        (0..e).fold(FreePoly::one(self.rank, self.field), |acc, _| &acc * self)
    }

    /// Restriction to the words of length `n`.
    pub fn homogeneous_component(&self, n: usize) -> FreePoly {
        FreePoly {
            rank: self.rank,
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Whether some word of the support is left divisible by `prefix`.
    pub fn has_prefix_in_support(&self, prefix: &Word) -> bool {
        self.terms.keys().any(|w| w.starts_with(prefix))
    }

    /// Sparse coordinates of a polynomial homogeneous of degree `n`, sorted by coordinate.
    pub fn coordinates(&self, n: usize) -> Result<Vec<(usize, Scalar)>> {
        if !self.is_homogeneous_of(n) {
            return Err(Error::DegreeMismatch { expected: n });
        }
        Ok(self
            .terms
            .iter()
            .map(|(w, c)| (w.coordinate(self.rank), c.clone()))
            .collect())
    }

    pub fn from_coordinates(
        rank: usize,
        field: FieldSpec,
        n: usize,
        coords: impl IntoIterator<Item = (usize, Scalar)>,
    ) -> FreePoly {
        let mut p = FreePoly::zero(rank, field);
        for (c, a) in coords {
            p.add_term(Word::from_coordinate(c, n, rank), a);
        }
        p
    }

    /// Parses the rendering produced by `Display`, e.g. `x1*x2*x2 - 3/5*x2*x1 + 2`.
    ///
    /// Each term is a `*`-separated product of scalar literals and
    /// generators `x1 … xr`; terms are joined by `+` or `-`.
    pub fn parse(text: &str, rank: usize, field: FieldSpec) -> Result<FreePoly> {
        let err = |msg: &str| Error::Parse(format!("{msg} in polynomial {text:?}"));
        let compact: String = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }

        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut sign: Option<bool> = None;
        let mut current = String::new();
        for ch in compact.chars() {
            if ch == '+' || ch == '-' {
                if !current.is_empty() {
                    chunks.push((sign == Some(true), std::mem::take(&mut current)));
                } else if sign.is_some() || !chunks.is_empty() {
                    return Err(err("dangling sign"));
                }
                sign = Some(ch == '-');
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(err("dangling sign"));
        }
        chunks.push((sign == Some(true), current));

        let mut out = FreePoly::zero(rank, field);
        for (negative, chunk) in chunks {
            let mut coeff = field.one();
            let mut letters = Vec::new();
            for factor in chunk.split('*') {
                if let Some(idx) = factor.strip_prefix('x') {
                    let j: usize = idx.parse().map_err(|_| err("bad generator"))?;
                    if j == 0 || j > rank {
                        return Err(err(&format!("generator x{j} outside rank {rank}")));
                    }
                    letters.push(j);
                } else {
                    coeff *= field.parse_scalar(factor).map_err(|_| err("bad factor"))?;
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(Word::new(letters), coeff);
        }
        Ok(out)
    }
}

/// The insert operator `τ_{ijk}`: for `u` of length `i`, `v` of length `j`
/// and `w` of length `k`, sends `uv ⊗ w` to `uwv`, extended bilinearly.
pub fn insert(i: usize, j: usize, k: usize, f: &FreePoly, g: &FreePoly) -> Result<FreePoly> {
    f.check_compatible(g)?;
    if !f.is_homogeneous_of(i + j) {
        return Err(Error::DegreeMismatch { expected: i + j });
    }
    if !g.is_homogeneous_of(k) {
        return Err(Error::DegreeMismatch { expected: k });
    }
    let mut out = FreePoly::zero(f.rank, f.field);
    for (uv, a) in &f.terms {
        let (u, v) = uv.indices().split_at(i);
        for (w, b) in &g.terms {
            let mut word = Vec::with_capacity(i + j + k);
            word.extend_from_slice(u);
            word.extend_from_slice(w.indices());
            word.extend_from_slice(v);
            out.add_term(Word::new(word), a * b);
        }
    }
    Ok(out)
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, text),
            };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (w.is_empty(), magnitude == "1") {
                (true, _) => write!(f, "{magnitude}")?,
                (false, true) => write!(f, "{w}")?,
                (false, false) => write!(f, "{magnitude}*{w}")?,
            }
        }
        Ok(())
    }
}

impl Neg for &FreePoly {
    type Output = FreePoly;
    fn neg(self) -> FreePoly {
        FreePoly {
            rank: self.rank,
            field: self.field,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Add for &FreePoly {
    type Output = FreePoly;
    fn add(self, rhs: &FreePoly) -> FreePoly {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub for &FreePoly {
    type Output = FreePoly;
    fn sub(self, rhs: &FreePoly) -> FreePoly {
        self.try_sub(rhs).expect("incompatible polynomials")
    }
}

impl Mul for &FreePoly {
    type Output = FreePoly;
    fn mul(self, rhs: &FreePoly) -> FreePoly {
        self.try_mul(rhs).expect("incompatible polynomials")
    }
}
