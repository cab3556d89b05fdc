//! Finite-dimensional algebras over `Q` given by structure constants.

use std::fmt;

use num_traits::{One, Zero};

use crate::grading::GradeVec;
use crate::monomials::{all_monomials, mono_mul, word_text, Sign, SignedMonomial, SquareConvention};
use crate::rational::{int, Rational, SparseVec};
use crate::solver::Grading;
use crate::{Error, Result};

pub const MAX_CLIFFORD_GENERATORS: usize = 8;

/// Basis labels plus a `dim x dim` grid of sparse products. Index 0 is the unit.
#[derive(Clone, PartialEq, Eq)]
pub struct StructureTable {
    names: Vec<String>,
    table: Vec<Vec<SparseVec>>,
}

impl StructureTable {
    pub fn new(names: Vec<String>, table: Vec<Vec<SparseVec>>) -> Result<Self> {
        let dim = names.len();
        if dim == 0 {
            return Err(Error::Invalid("a structure table needs at least the unit".into()));
        }
        if table.len() != dim {
            return Err(Error::Dimension { expected: dim, found: table.len() });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Dimension { expected: dim, found: row.len() });
            }
            for (j, cell) in row.iter().enumerate() {
                if let Some(m) = cell.max_index() {
                    if m >= dim {
                        return Err(Error::Invalid(format!("cell ({i}, {j}) refers to basis index {m}")));
                    }
                }
            }
        }
        for i in 0..dim {
            let b = SparseVec::basis(i);
            if table[0][i] != b || table[i][0] != b {
                return Err(Error::Invalid(format!("basis index 0 does not act as a unit on index {i}")));
            }
        }
        Ok(Self { names, table })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn cell(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn cells(&self) -> &[Vec<SparseVec>] {
        &self.table
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), found: names.len() });
        }
        self.names = names;
        Ok(self)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.dim() {
            return Err(Error::Dimension { expected: self.dim(), found: i });
        }
        Ok(())
    }

    pub fn zero(&self) -> Element<'_> {
        Element { table: self, coeffs: SparseVec::zero() }
    }

    pub fn basis(&self, i: usize) -> Result<Element<'_>> {
        self.check_index(i)?;
        Ok(Element { table: self, coeffs: SparseVec::basis(i) })
    }

    /// Basis element by label, e.g. `t.named("i")`.
    pub fn named(&self, name: &str) -> Result<Element<'_>> {
        let i = self.index_of(name).ok_or_else(|| Error::Domain(format!("no basis element named {name}")))?;
        self.basis(i)
    }

    pub fn element(&self, terms: impl IntoIterator<Item = (Rational, usize)>) -> Result<Element<'_>> {
        let coeffs = SparseVec::from_terms(terms);
        if let Some(m) = coeffs.max_index() {
            self.check_index(m)?;
        }
        Ok(Element { table: self, coeffs })
    }

    /// Bilinear product of sparse coefficient vectors.
    pub fn mul_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (a, i) in x.terms() {
            for (b, j) in y.terms() {
                let ab = a * b;
                for (c, k) in self.table[*i][*j].terms() {
                    terms.push((&ab * c, *k));
                }
            }
        }
        SparseVec::from_terms(terms)
    }

    /// First basis triple with `(ab)c != a(bc)`, if any.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = self.cell(a, b);
                for c in 0..n {
                    let lhs = self.mul_sparse(ab, &SparseVec::basis(c));
                    let rhs = self.mul_sparse(&SparseVec::basis(a), self.cell(b, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// First basis pair violating `(xx)y = x(xy)` or `(xy)y = x(yy)`, if any.
    pub fn alternativity_violation(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for x in 0..n {
            let bx = SparseVec::basis(x);
            for y in 0..n {
                let by = SparseVec::basis(y);
                let left = self.mul_sparse(self.cell(x, x), &by) == self.mul_sparse(&bx, self.cell(x, y));
                let right = self.mul_sparse(self.cell(x, y), &by) == self.mul_sparse(&bx, self.cell(y, y));
                if !(left && right) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Whether every cell holds at most one term.
    pub fn is_monomial(&self) -> bool {
        self.table.iter().flatten().all(|c| c.len() <= 1)
    }

    /// Whether the Euclidean norm on this basis is the norm of a composition
    /// algebra: dimension 1, 2, 4 or 8, monomial, every imaginary unit squares
    /// to `-1`, and distinct imaginary units anticommute.
    pub fn is_euclidean_composition(&self) -> bool {
        let n = self.dim();
        if ![1, 2, 4, 8].contains(&n) || !self.is_monomial() {
            return false;
        }
        let minus_one = SparseVec::term(int(-1), 0);
        (1..n).all(|i| {
            self.table[i][i] == minus_one
                && (1..n).filter(|&j| j != i).all(|j| {
                    let c = &self.table[i][j];
                    !c.is_zero() && c.max_index() != Some(0) && *c == self.table[j][i].neg()
                })
        })
    }
}

impl fmt::Debug for StructureTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "StructureTable(dim={})", self.dim())?;
        for (i, row) in self.table.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|c| c.render(&self.names)).collect();
            writeln!(f, "  {}: {}", self.names[i], cells.join(" | "))?;
        }
        Ok(())
    }
}

/// An element of a specific table, stored sparsely.
#[derive(Clone)]
pub struct Element<'t> {
    table: &'t StructureTable,
    coeffs: SparseVec,
}

impl<'t> Element<'t> {
    pub fn table(&self) -> &'t StructureTable {
        self.table
    }

    pub fn coeffs(&self) -> &SparseVec {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.coeff(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    fn same_table(&self, other: &Element<'_>) -> Result<()> {
        if !std::ptr::eq(self.table, other.table) {
            return Err(Error::Domain("elements belong to different structure tables".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Element<'t>) -> Result<Element<'t>> {
        self.same_table(other)?;
        Ok(Element { table: self.table, coeffs: self.table.mul_sparse(&self.coeffs, &other.coeffs) })
    }

    pub fn add(&self, other: &Element<'t>) -> Result<Element<'t>> {
        self.same_table(other)?;
        Ok(Element { table: self.table, coeffs: self.coeffs.add(&other.coeffs) })
    }

    pub fn sub(&self, other: &Element<'t>) -> Result<Element<'t>> {
        self.same_table(other)?;
        Ok(Element { table: self.table, coeffs: self.coeffs.sub(&other.coeffs) })
    }

    pub fn scale(&self, k: &Rational) -> Element<'t> {
        Element { table: self.table, coeffs: self.coeffs.scale(k) }
    }

    pub fn neg(&self) -> Element<'t> {
        Element { table: self.table, coeffs: self.coeffs.neg() }
    }
}

impl PartialEq for Element<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.table, other.table) && self.coeffs == other.coeffs
    }
}

impl fmt::Display for Element<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.coeffs.render(&self.table.names))
    }
}

impl fmt::Debug for Element<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `x * y` through the structure table of both factors.
pub fn elem_mul<'t>(x: &Element<'t>, y: &Element<'t>) -> Result<Element<'t>> {
    x.mul(y)
}

/// Sum of squared coefficients, for tables carrying a composition norm.
pub fn norm_squared(x: &Element<'_>) -> Result<Rational> {
    if !x.table.is_euclidean_composition() {
        return Err(Error::Domain("norm_squared needs a composition algebra on an orthonormal basis".into()));
    }
    Ok(x.coeffs.terms().iter().fold(Rational::zero(), |acc, (c, _)| acc + c * c))
}

/// Diagonal conjugation `b_i -> signs_i b_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Involution {
    signs: Vec<Sign>,
}

impl Involution {
    pub fn new(signs: Vec<Sign>) -> Result<Self> {
        if signs.first() != Some(&Sign::Plus) {
            return Err(Error::Invalid("an involution must fix the unit".into()));
        }
        Ok(Self { signs })
    }

    /// `+1` on the unit, `-1` on every other basis element.
    pub fn standard(dim: usize) -> Self {
        let mut signs = vec![Sign::Minus; dim.max(1)];
        signs[0] = Sign::Plus;
        Self { signs }
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        SparseVec::from_terms(x.terms().iter().map(|(c, i)| (c * int(self.signs[*i].to_i64()), *i)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Commutation {
    Commute,
    Anticommute,
    Neither,
}

/// Compares `b_i b_j` with `+- b_j b_i`. A zero product counts as commuting.
pub fn commutation_relation(t: &StructureTable, i: usize, j: usize) -> Result<Commutation> {
    t.check_index(i)?;
    t.check_index(j)?;
    let (ij, ji) = (t.cell(i, j), t.cell(j, i));
    Ok(if ij == ji {
        Commutation::Commute
    } else if *ij == ji.neg() {
        Commutation::Anticommute
    } else {
        Commutation::Neither
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `b_i b_j` should equal `expected * b_j b_i`; `found` is the observed
    /// sign, `None` when the two products are not proportional by `+-1`.
    Commutation { i: usize, j: usize, expected: Sign, found: Option<Sign> },
    /// A term `b_k` of `b_i b_j` carries a grade other than `sigma(i) + sigma(j)`.
    Linearity { i: usize, j: usize, k: usize, expected: GradeVec, found: GradeVec },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Commutation { i, j, expected, found } => {
                let found = found.map_or("none".to_string(), |s| format!("{}", s.to_i64()));
                write!(f, "commutation at ({i}, {j}): expected sign {}, found {found}", expected.to_i64())
            }
            Violation::Linearity { i, j, k, expected, found } => {
                write!(f, "linearity at ({i}, {j}) -> {k}: expected grade {expected}, found {found}")
            }
        }
    }
}

/// Checks graded commutativity on every basis pair and grade additivity on
/// every nonzero basis product. Returns the first violation found.
pub fn check_graded_commutative(t: &StructureTable, g: &Grading) -> Result<Option<Violation>> {
    if g.len() != t.dim() {
        return Err(Error::Dimension { expected: t.dim(), found: g.len() });
    }
    for i in 0..t.dim() {
        for j in 0..t.dim() {
            let ij = t.cell(i, j);
            if ij.is_zero() {
                continue;
            }
            let (si, sj) = (g.grade(i), g.grade(j));
            let expected = Sign::from_parity(si.parity(sj)?);
            let ji = t.cell(j, i);
            let found = if ij == ji {
                Some(Sign::Plus)
            } else if *ij == ji.neg() {
                Some(Sign::Minus)
            } else {
                None
            };
            if found != Some(expected) {
                return Ok(Some(Violation::Commutation { i, j, expected, found }));
            }
            let sum = si.add(sj)?;
            for (_, k) in ij.terms() {
                if *g.grade(*k) != sum {
                    return Ok(Some(Violation::Linearity { i, j, k: *k, expected: sum, found: *g.grade(*k) }));
                }
            }
        }
    }
    Ok(None)
}

/// Images of `1, i, j, k` in the Clifford algebra on three generators with
/// all squares `+1`: `i = e2e3`, `j = e1e3`, `k = e1e2`.
pub fn quaternion_embedding() -> [SignedMonomial; 4] {
    let m = |mask| SignedMonomial::from_mask(mask, 3).expect("three generators");
    [SignedMonomial::unit(3), m(0b110), m(0b101), m(0b011)]
}

/// The quaternions, every product computed from the monomial images, with
/// the grading read off the images.
pub fn build_quaternions() -> (StructureTable, Grading) {
    let images = quaternion_embedding();
    let conv = SquareConvention::positive(3);
    let names: Vec<String> = ["1", "i", "j", "k"].iter().map(|s| s.to_string()).collect();
    let table = images
        .iter()
        .map(|a| {
            images
                .iter()
                .map(|b| {
                    let p = mono_mul(a, b, &conv).expect("same ambient");
                    let k = images.iter().position(|m| m.mask() == p.mask()).expect("even subalgebra is closed");
                    SparseVec::term(int(p.sign().to_i64()), k)
                })
                .collect()
        })
        .collect();
    let t = StructureTable::new(names, table).expect("quaternion table is well formed");
    let g = Grading::new(images.iter().map(|m| m.grade_of()).collect()).expect("unit has grade zero");
    (t, g)
}

/// The Clifford-type algebra on `n` anticommuting generators with squares `conv`,
/// basis ordered by word length then lexicographically.
pub fn build_clifford(n: usize, conv: &SquareConvention) -> Result<StructureTable> {
    if !(1..=MAX_CLIFFORD_GENERATORS).contains(&n) {
        return Err(Error::Size(format!("{n} generators outside 1..={MAX_CLIFFORD_GENERATORS}")));
    }
    if conv.len() != n {
        return Err(Error::Dimension { expected: n, found: conv.len() });
    }
    let basis = all_monomials(n);
    let mut index = vec![0usize; 1 << n];
    for (pos, m) in basis.iter().enumerate() {
        index[m.mask() as usize] = pos;
    }
    let names = basis.iter().map(|m| word_text(m.word())).collect();
    let mut table = Vec::with_capacity(basis.len());
    for a in &basis {
        let mut row = Vec::with_capacity(basis.len());
        for b in &basis {
            let p = mono_mul(a, b, conv)?;
            row.push(SparseVec::term(int(p.sign().to_i64()), index[p.mask() as usize]));
        }
        table.push(row);
    }
    StructureTable::new(names, table)
}

/// The one-dimensional algebra `Q`.
pub fn build_reals() -> StructureTable {
    StructureTable::new(vec!["1".into()], vec![vec![SparseVec::basis(0)]]).expect("unit table")
}

/// Doubles `t`: pairs `(a, b)` with `(a,b)(c,d) = (ac + gamma conj(d) b, d a + b conj(c))`
/// and conjugation `(conj a, -b)`. Index `i < dim` is `(b_i, 0)`, index `dim + i` is `(0, b_i)`.
pub fn cayley_dickson_double(
    t: &StructureTable,
    inv: &Involution,
    gamma: &Rational,
) -> Result<(StructureTable, Involution)> {
    let n = t.dim();
    if inv.signs.len() != n {
        return Err(Error::Dimension { expected: n, found: inv.signs.len() });
    }
    let shift = |v: &SparseVec| SparseVec::from_terms(v.terms().iter().map(|(c, i)| (c.clone(), i + n)));
    let sign = |i: usize| int(inv.signs[i].to_i64());

    let mut table = vec![vec![SparseVec::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            // (b_i, 0)(b_j, 0) = (b_i b_j, 0)
            table[i][j] = t.cell(i, j).clone();
            // (b_i, 0)(0, b_j) = (0, b_j b_i)
            table[i][n + j] = shift(t.cell(j, i));
            // (0, b_i)(b_j, 0) = (0, b_i conj(b_j))
            table[n + i][j] = shift(&t.cell(i, j).scale(&sign(j)));
            // (0, b_i)(0, b_j) = (gamma conj(b_j) b_i, 0)
            table[n + i][n + j] = t.cell(j, i).scale(&(gamma * sign(j)));
        }
    }
    let mut names: Vec<String> = t.names.clone();
    names.extend(t.names.iter().map(|s| if s == "1" { "l".to_string() } else { format!("{s}l") }));

    let mut signs = inv.signs.clone();
    signs.extend(inv.signs.iter().map(|&s| -s));
    Ok((StructureTable::new(names, table)?, Involution { signs }))
}

/// `Q(i)` as the double of `Q` with `gamma = -1`.
pub fn build_complex() -> StructureTable {
    let (c, _) = cayley_dickson_double(&build_reals(), &Involution::standard(1), &int(-1)).expect("doubling Q");
    c.with_names(vec!["1".into(), "i".into()]).expect("two names")
}

/// The octonions as the double of `build_quaternions()` with `gamma = -1`,
/// basis `1, e1..e7` in doubling order: `e1..e3 = (i,0),(j,0),(k,0)`, `e4 = (0,1)`,
/// `e5..e7 = (0,i),(0,j),(0,k)`.
pub fn build_octonions() -> StructureTable {
    let (h, _) = build_quaternions();
    let (o, _) = cayley_dickson_double(&h, &Involution::standard(4), &-Rational::one()).expect("doubling H");
    let names = std::iter::once("1".to_string()).chain((1..=7).map(|l| format!("e{l}"))).collect();
    o.with_names(names).expect("eight names")
}

/// The commutative group algebra of `Z2 x Z2` on basis `1, a, b, ab`.
pub fn build_klein_group_algebra() -> StructureTable {
    let names: Vec<String> = ["1", "a", "b", "ab"].iter().map(|s| s.to_string()).collect();
    // basis index doubles as the group element's bitmask
    let table = (0..4).map(|x: usize| (0..4).map(|y: usize| SparseVec::basis(x ^ y)).collect()).collect();
    StructureTable::new(names, table).expect("group algebra table")
}
