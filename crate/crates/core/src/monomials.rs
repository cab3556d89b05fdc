//! Signed words in anticommuting generators `e1..en`.
//!
//! Multiplying two words places them side by side and sorts the result with
//! adjacent transpositions; every exchange of two distinct generators flips the
//! sign, and each adjacent pair `ek ek` collapses to the square `q_k`.

use std::fmt;
use std::ops::{Mul, Neg};

use crate::grading::{GradeVec, MAX_WIDTH};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^parity`.
    pub fn from_parity(parity: impl Into<u64>) -> Sign {
        if parity.into() & 1 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Squares of the generators: `e_k^2 = q_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquareConvention {
    squares: Vec<Sign>,
}

impl SquareConvention {
    /// All squares `+1`, the convention of the quaternion embedding.
    pub fn positive(n: usize) -> Self {
        Self { squares: vec![Sign::Plus; n] }
    }

    pub fn negative(n: usize) -> Self {
        Self { squares: vec![Sign::Minus; n] }
    }

    pub fn new(squares: Vec<Sign>) -> Self {
        Self { squares }
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    /// Square of the 1-based generator `k`.
    pub fn square(&self, k: usize) -> Sign {
        self.squares[k - 1]
    }
}

/// A sign together with a strictly increasing word over generators `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedMonomial {
    sign: Sign,
    word: Vec<usize>,
    n: usize,
}

impl SignedMonomial {
    pub fn new(sign: Sign, word: Vec<usize>, n: usize) -> Result<Self> {
        if n > MAX_WIDTH {
            return Err(Error::Size(format!("{n} generators exceeds the limit of {MAX_WIDTH}")));
        }
        if let Some(&bad) = word.iter().find(|&&g| g == 0 || g > n) {
            return Err(Error::Dimension { expected: n, found: bad });
        }
        if word.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(format!("word {word:?} is not strictly increasing")));
        }
        Ok(Self { sign, word, n })
    }

    pub fn unit(n: usize) -> Self {
        Self { sign: Sign::Plus, word: Vec::new(), n }
    }

    pub fn generator(k: usize, n: usize) -> Result<Self> {
        Self::new(Sign::Plus, vec![k], n)
    }

    /// Positive monomial whose generator set is the bitmask `mask` (bit `k-1` for `e_k`).
    pub fn from_mask(mask: u64, n: usize) -> Result<Self> {
        let word = (0..64).filter(|b| (mask >> b) & 1 == 1).map(|b| b + 1).collect();
        Self::new(Sign::Plus, word, n)
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.word.iter().fold(0, |m, &g| m | 1 << (g - 1))
    }

    pub fn is_unit_word(&self) -> bool {
        self.word.is_empty()
    }

    pub fn with_sign(mut self, sign: Sign) -> Self {
        self.sign = sign;
        self
    }

    /// Degree in `Z2^n`: the indicator vector of the word.
    pub fn grade_of(&self) -> GradeVec {
        GradeVec::indicator(self.n.max(1), self.word.iter().copied()).expect("word validated at construction")
    }
}

impl Neg for SignedMonomial {
    type Output = SignedMonomial;
    fn neg(mut self) -> SignedMonomial {
        self.sign = -self.sign;
        self
    }
}

impl fmt::Display for SignedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign.is_minus() { '-' } else { '+' };
        if self.word.is_empty() {
            return write!(f, "{s}1");
        }
        write!(f, "{s}{}", word_text(&self.word))
    }
}

/// `e[2,3]` style label for a word; `1` for the empty word.
pub fn word_text(word: &[usize]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let inner: Vec<String> = word.iter().map(|g| g.to_string()).collect();
    format!("e[{}]", inner.join(","))
}

fn check_ambient(a: &SignedMonomial, b: &SignedMonomial, conv: &SquareConvention) -> Result<()> {
    if a.n != b.n {
        return Err(Error::Dimension { expected: a.n, found: b.n });
    }
    if conv.len() != a.n {
        return Err(Error::Dimension { expected: a.n, found: conv.len() });
    }
    Ok(())
}

/// Product of two signed monomials by literal exchange counting.
pub fn mono_mul(a: &SignedMonomial, b: &SignedMonomial, conv: &SquareConvention) -> Result<SignedMonomial> {
    check_ambient(a, b, conv)?;
    let mut sign = a.sign * b.sign;
    let mut w: Vec<usize> = a.word.iter().chain(&b.word).copied().collect();

    loop {
        // bubble sort; only distinct generators are ever exchanged
        let mut swapped = true;
        while swapped {
            swapped = false;
            for p in 1..w.len() {
                if w[p - 1] > w[p] {
                    w.swap(p - 1, p);
                    sign = -sign;
                    swapped = true;
                }
            }
        }
        let mut out = Vec::with_capacity(w.len());
        let mut p = 0;
        let mut cancelled = false;
        while p < w.len() {
            if p + 1 < w.len() && w[p] == w[p + 1] {
                sign = sign * conv.square(w[p]);
                p += 2;
                cancelled = true;
            } else {
                out.push(w[p]);
                p += 1;
            }
        }
        w = out;
        if !cancelled && w.windows(2).all(|x| x[0] < x[1]) {
            break;
        }
    }
    Ok(SignedMonomial { sign, word: w, n: a.n })
}

/// Product of two signed monomials through the crossing number
/// `sum over x in a of #{y in b : y < x}`, independent of any sorting.
pub fn mono_mul_by_crossings(
    a: &SignedMonomial,
    b: &SignedMonomial,
    conv: &SquareConvention,
) -> Result<SignedMonomial> {
    check_ambient(a, b, conv)?;
    let (ma, mb) = (a.mask(), b.mask());
    let crossings: u32 = a.word.iter().map(|&x| (mb & ((1u64 << (x - 1)) - 1)).count_ones()).sum();
    let mut sign = a.sign * b.sign * Sign::from_parity(crossings);
    let mut shared = ma & mb;
    while shared != 0 {
        let bit = shared.trailing_zeros() as usize;
        sign = sign * conv.square(bit + 1);
        shared &= shared - 1;
    }
    let word = SignedMonomial::from_mask(ma ^ mb, a.n)?.word;
    Ok(SignedMonomial { sign, word, n: a.n })
}

/// Parity of the commutation sign: `a b = (-1)^result b a`.
///
/// Equals `parity(grade_of(a), grade_of(b))` whenever one of the words has
/// even length; for two odd words the exchange count adds one more flip, so
/// e.g. `e1 e1 = +(e1 e1)` although `<(1), (1)> = 1`.
pub fn mono_sign_of_swap(a: &SignedMonomial, b: &SignedMonomial) -> Result<u8> {
    let dot = a.grade_of().parity(&b.grade_of())?;
    let odd_odd = (a.word.len() * b.word.len()) as u8 & 1;
    Ok(dot ^ odd_odd)
}

/// Every positive monomial on `n` generators, ordered by word length and then
/// lexicographically: `1, e1, .., en, e12, ..`.
pub fn all_monomials(n: usize) -> Vec<SignedMonomial> {
    let mut masks: Vec<u64> = (0..1u64 << n).collect();
    masks.sort_by_key(|&m| (m.count_ones(), word_key(m)));
    masks.into_iter().map(|m| SignedMonomial::from_mask(m, n).expect("mask within n")).collect()
}

fn word_key(mask: u64) -> Vec<u32> {
    (0..64).filter(|b| (mask >> b) & 1 == 1).collect()
}
