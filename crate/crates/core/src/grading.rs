//! Degrees in `Z2^n` and exact linear algebra over `F2`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

pub const MAX_WIDTH: usize = 64;

/// An element of `Z2^n`, stored as a bitset. Component `c` lives in bit `c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GradeVec {
    bits: u64,
    width: u8,
}

impl GradeVec {
    pub fn zero(width: usize) -> Result<Self> {
        Self::from_raw(0, width)
    }

    /// Builds a vector from its raw bitset; bits at or above `width` must be clear.
    pub fn from_raw(bits: u64, width: usize) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::Size(format!("grade width {width} outside 1..={MAX_WIDTH}")));
        }
        if width < 64 && bits >> width != 0 {
            return Err(Error::Invalid(format!("bits {bits:#x} do not fit in width {width}")));
        }
        Ok(Self { bits, width: width as u8 })
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let mut raw = 0u64;
        for (c, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 if c < MAX_WIDTH => raw |= 1 << c,
                1 => {}
                other => return Err(Error::Invalid(format!("grade component {other} is not a bit"))),
            }
        }
        Self::from_raw(raw, bits.len())
    }

    /// Indicator vector of a set of 1-based coordinates.
    pub fn indicator(width: usize, coords: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut raw = 0u64;
        for c in coords {
            if c == 0 || c > width {
                return Err(Error::Dimension { expected: width, found: c });
            }
            raw |= 1 << (c - 1);
        }
        Self::from_raw(raw, width)
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn raw(&self) -> u64 {
        self.bits
    }

    pub fn bit(&self, c: usize) -> u8 {
        ((self.bits >> c) & 1) as u8
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.width()).map(|c| self.bit(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    fn check_width(&self, other: &Self) -> Result<()> {
        if self.width != other.width {
            return Err(Error::Dimension { expected: self.width(), found: other.width() });
        }
        Ok(())
    }

    /// Component-wise sum mod 2.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_width(other)?;
        Ok(Self { bits: self.bits ^ other.bits, width: self.width })
    }

    /// The scalar product mod 2. Only its parity enters the commutation sign.
    pub fn parity(&self, other: &Self) -> Result<u8> {
        self.check_width(other)?;
        Ok(((self.bits & other.bits).count_ones() & 1) as u8)
    }
}

impl fmt::Display for GradeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for c in 0..self.width() {
            if c > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.bit(c))?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for GradeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for GradeVec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.bits().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GradeVec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let bits = Vec::<u8>::deserialize(deserializer)?;
        GradeVec::from_bits(&bits).map_err(serde::de::Error::custom)
    }
}

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn zeros(bits: usize) -> Self {
        BitRow(vec![0; words_for(bits)])
    }

    fn get(&self, i: usize) -> bool {
        (self.0[i / WORD] >> (i % WORD)) & 1 == 1
    }

    fn set(&mut self, i: usize, v: bool) {
        let mask = 1u64 << (i % WORD);
        if v {
            self.0[i / WORD] |= mask;
        } else {
            self.0[i / WORD] &= !mask;
        }
    }

    fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    fn dot(&self, other: &BitRow) -> bool {
        self.0.iter().zip(&other.0).map(|(a, b)| (a & b).count_ones()).sum::<u32>() & 1 == 1
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
}

/// Dense matrix over `F2`, one bitset per row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitRow>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix { rows, cols, data: (0..rows).map(|_| BitRow::zeros(cols)).collect() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from 0/1 rows. All rows must have the same length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Dimension { expected: cols, found: row.len() });
            }
            for (j, &b) in row.iter().enumerate() {
                match b {
                    0 => {}
                    1 => m.set(i, j, true),
                    other => return Err(Error::Invalid(format!("matrix entry {other} is not a bit"))),
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.data[i].set(j, v)
    }

    pub fn row_bits(&self, i: usize) -> Vec<u8> {
        (0..self.cols).map(|j| self.get(i, j) as u8).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row_bits(i)).collect()
    }

    pub fn mul_vec(&self, x: &[bool]) -> Result<Vec<bool>> {
        if x.len() != self.cols {
            return Err(Error::Dimension { expected: self.cols, found: x.len() });
        }
        let mut v = BitRow::zeros(self.cols);
        for (j, &b) in x.iter().enumerate() {
            v.set(j, b);
        }
        Ok(self.data.iter().map(|r| r.dot(&v)).collect())
    }

    /// Reduced row-echelon form. Pivots are taken at the lowest available column.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = eliminate(&mut m.data, self.cols, |_, _| {});
        Rref { rank: pivots.len(), matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: String = (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: F2Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination over the first `cols` bits of every row.
/// `on_xor(target, source)` observes each row operation.
fn eliminate(rows: &mut [BitRow], cols: usize, mut on_xor: impl FnMut(usize, usize)) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(next, p);
        for r in 0..rows.len() {
            if r != next && rows[r].get(col) {
                let src = rows[next].clone();
                rows[r].xor_assign(&src);
                on_xor(r, next);
            }
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

/// Outcome of `solve_affine`: infeasibility is a value, carrying the set of
/// original equations whose sum reads `0 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineSolution {
    Solution(Vec<bool>),
    Infeasible { certificate: Vec<usize> },
}

impl AffineSolution {
    pub fn is_feasible(&self) -> bool {
        matches!(self, AffineSolution::Solution(_))
    }
}

/// Solves `m x = rhs` with free variables set to zero.
pub fn solve_affine(m: &F2Matrix, rhs: &[bool]) -> Result<AffineSolution> {
    if rhs.len() != m.rows {
        return Err(Error::Dimension { expected: m.rows, found: rhs.len() });
    }
    // Row layout: [coefficients | rhs | provenance].
    let rhs_bit = m.cols;
    let width = m.cols + 1 + m.rows;
    let mut rows: Vec<BitRow> = (0..m.rows)
        .map(|i| {
            let mut r = BitRow::zeros(width);
            for j in 0..m.cols {
                r.set(j, m.get(i, j));
            }
            r.set(rhs_bit, rhs[i]);
            r.set(rhs_bit + 1 + i, true);
            r
        })
        .collect();
    let pivots = eliminate(&mut rows, m.cols, |_, _| {});

    for row in &rows[pivots.len()..] {
        if row.get(rhs_bit) {
            let certificate = (0..m.rows).filter(|&i| row.get(rhs_bit + 1 + i)).collect();
            return Ok(AffineSolution::Infeasible { certificate });
        }
    }

    let mut x = vec![false; m.cols];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = rows[r].get(rhs_bit);
    }
    let check = m.mul_vec(&x)?;
    assert_eq!(check, rhs, "solve_affine produced a non-solution");
    Ok(AffineSolution::Solution(x))
}

/// Checks that a claimed certificate really sums to `0 = 1`.
pub fn certificate_is_valid(m: &F2Matrix, rhs: &[bool], certificate: &[usize]) -> bool {
    if certificate.iter().any(|&i| i >= m.rows) || rhs.len() != m.rows {
        return false;
    }
    let mut acc = BitRow::zeros(m.cols);
    let mut constant = false;
    for &i in certificate {
        acc.xor_assign(&m.data[i]);
        constant ^= rhs[i];
    }
    acc.is_zero() && constant
}
