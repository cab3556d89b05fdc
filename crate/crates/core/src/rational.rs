//! Exact rationals, sparse coefficient vectors, and Gaussian elimination over `Q`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Result<Rational> {
    if den == 0 {
        return Err(Error::Invalid("zero denominator".into()));
    }
    Ok(Rational::new(BigInt::from(num), BigInt::from(den)))
}

/// Lowest-terms `(num, den)` with positive denominator, if both fit in `i64`.
pub fn to_pair(q: &Rational) -> Result<(i64, i64)> {
    match (q.numer().to_i64(), q.denom().to_i64()) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Error::Size(format!("rational {q} does not fit in 64-bit integers"))),
    }
}

/// `len` rationals with numerators in `-9..=9` and denominators in `1..=9`.
pub fn random_rationals<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<Rational> {
    (0..len)
        .map(|_| {
            let num: i64 = rng.gen_range(-9..=9);
            let den: i64 = rng.gen_range(1..=9);
            Rational::new(BigInt::from(num), BigInt::from(den))
        })
        .collect()
}

/// Sparse vector: strictly increasing indices, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec(Vec<(Rational, usize)>);

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec(Vec::new())
    }

    pub fn basis(index: usize) -> Self {
        SparseVec(vec![(Rational::one(), index)])
    }

    pub fn term(coeff: Rational, index: usize) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            SparseVec(vec![(coeff, index)])
        }
    }

    /// Sums duplicate indices and drops zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, usize)>) -> Self {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, i) in terms {
            *acc.entry(i).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(acc)
    }

    pub fn from_map(map: BTreeMap<usize, Rational>) -> Self {
        SparseVec(map.into_iter().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (c, i)).collect())
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        SparseVec(v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (c.clone(), i)).collect())
    }

    /// Accepts only already-canonical term lists.
    pub fn from_canonical(terms: Vec<(Rational, usize)>) -> Result<Self> {
        if terms.iter().any(|(c, _)| c.is_zero()) {
            return Err(Error::Invalid("explicit zero coefficient".into()));
        }
        if terms.windows(2).any(|w| w[0].1 >= w[1].1) {
            return Err(Error::Invalid("term indices not strictly increasing".into()));
        }
        Ok(SparseVec(terms))
    }

    pub fn terms(&self) -> &[(Rational, usize)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|t| t.1)
    }

    pub fn coeff(&self, index: usize) -> Rational {
        self.0.iter().find(|t| t.1 == index).map_or_else(Rational::zero, |t| t.0.clone())
    }

    /// The single term, if this vector is `c * b_i` with `c != 0`.
    pub fn as_monomial(&self) -> Option<(&Rational, usize)> {
        match self.0.as_slice() {
            [(c, i)] => Some((c, *i)),
            _ => None,
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        SparseVec(self.0.iter().map(|(c, i)| (c * k, *i)).collect())
    }

    pub fn neg(&self) -> Self {
        SparseVec(self.0.iter().map(|(c, i)| (-c, *i)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.0.iter().chain(&other.0).cloned())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); dim];
        for (c, i) in &self.0 {
            v[*i] = c.clone();
        }
        v
    }

    /// Renders `2*a - 1/2*b`; zero renders as `0`.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (c, i)) in self.0.iter().enumerate() {
            let name = names.get(*i).map_or_else(|| format!("b{i}"), |s| s.clone());
            let neg = c.is_negative();
            let mag = c.abs();
            match (n, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if mag.is_one() {
                out.push_str(&name);
            } else {
                out.push_str(&format!("{mag}*{name}"));
            }
        }
        out
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter().map(|(c, i)| format!("{c}@{i}"))).finish()
    }
}

/// Incrementally maintained row-reduced basis of a subspace of `Q^dim`.
#[derive(Debug, Clone)]
pub struct RowSpace {
    dim: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(dim: usize) -> Self {
        RowSpace { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let k = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &k * r;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::Dimension { expected: self.dim, found: v.len() });
        }
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        // keep existing rows fully reduced against the new pivot
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let k = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x -= &k * y;
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, r);
        self.pivots.insert(at, p);
        Ok(true)
    }
}

/// Basis of `{x : A x = 0}` for the given rows of `A` (each of length `cols`).
pub fn nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut space = RowSpace::new(cols);
    for r in rows {
        space.insert(r).expect("row length matches cols");
    }
    let pivots = &space.pivots;
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![Rational::zero(); cols];
            x[free] = Rational::one();
            for (row, &p) in space.rows.iter().zip(pivots) {
                x[p] = -row[free].clone();
            }
            x
        })
        .collect()
}
