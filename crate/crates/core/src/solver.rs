//! Grading existence for finite signed-basis algebras.
//!
//! A grading `sigma : basis -> Z2^m` must make every nonzero basis product
//! graded commutative with sign `(-1)^<sigma(a), sigma(b)>` and additive in
//! degree. Both conditions only see the parities `P[a][b] = <sigma(a), sigma(b)> mod 2`,
//! which turns existence into an affine system over `F2`. A consistent system
//! is realized by explicit vectors; an inconsistent one yields a four-element
//! obstruction whenever the table contains one.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{check_graded_commutative, commutation_relation, Commutation, StructureTable};
use crate::grading::{solve_affine, AffineSolution, F2Matrix, GradeVec, MAX_WIDTH};
use crate::{Error, Result};

/// One degree per basis element, all of the same width; the unit has degree zero.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GradingRepr", into = "GradingRepr")]
pub struct Grading {
    width: usize,
    grades: Vec<GradeVec>,
}

#[derive(Serialize, Deserialize)]
struct GradingRepr {
    width: usize,
    grades: Vec<GradeVec>,
}

impl TryFrom<GradingRepr> for Grading {
    type Error = Error;
    fn try_from(r: GradingRepr) -> Result<Self> {
        let g = Grading::new(r.grades)?;
        if g.width != r.width {
            return Err(Error::Dimension { expected: r.width, found: g.width });
        }
        Ok(g)
    }
}

impl From<Grading> for GradingRepr {
    fn from(g: Grading) -> Self {
        GradingRepr { width: g.width, grades: g.grades }
    }
}

impl Grading {
    pub fn new(grades: Vec<GradeVec>) -> Result<Self> {
        let first = grades.first().ok_or_else(|| Error::Invalid("grading of an empty basis".into()))?;
        let width = first.width();
        if let Some(bad) = grades.iter().find(|g| g.width() != width) {
            return Err(Error::Dimension { expected: width, found: bad.width() });
        }
        if !first.is_zero() {
            return Err(Error::Invalid(format!("the unit must have grade zero, found {first}")));
        }
        Ok(Self { width, grades })
    }

    pub fn zero(dim: usize, width: usize) -> Result<Self> {
        Self::new(vec![GradeVec::zero(width)?; dim])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    pub fn grade(&self, i: usize) -> &GradeVec {
        &self.grades[i]
    }

    pub fn grades(&self) -> &[GradeVec] {
        &self.grades
    }
}

impl fmt::Debug for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.grades).finish()
    }
}

/// Symmetric matrix of `parity(grades[i], grades[j])`. Two gradings with equal
/// parity matrices induce the same commutation signs.
pub fn parity_matrix_of(g: &Grading) -> F2Matrix {
    let n = g.len();
    let mut m = F2Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let p = g.grade(i).parity(g.grade(j)).expect("grades share one width");
            m.set(i, j, p == 1);
        }
    }
    m
}

/// Where a parity equation came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstraintOrigin {
    /// `P[i][i] = 0`: every element commutes with itself.
    SelfParity { i: usize },
    /// `P[i][j] = 0` or `1` from the observed commutation of `b_i, b_j`.
    Commutation { i: usize, j: usize, anticommute: bool },
    /// `P[l][k] = P[l][i] + P[l][j]` for `b_k = +-b_i b_j`.
    Linearity { l: usize, i: usize, j: usize, k: usize },
}

/// `sum of unknowns = rhs`, unknowns indexed by `ParityConstraintSystem::unknown`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ParityEquation {
    pub unknowns: Vec<usize>,
    pub rhs: bool,
    pub origin: ConstraintOrigin,
}

/// Affine `F2` system over the upper triangle of the symmetric parity matrix.
///
/// Unknowns touching the unit (index 0) are pinned to zero, since the unit has
/// grade zero; they are substituted away before equations are recorded, and
/// equations reducing to `0 = 0` are dropped.
#[derive(Debug, Clone)]
pub struct ParityConstraintSystem {
    k: usize,
    equations: Vec<ParityEquation>,
}

impl ParityConstraintSystem {
    pub fn basis_len(&self) -> usize {
        self.k
    }

    pub fn unknown_count(&self) -> usize {
        self.k * (self.k + 1) / 2
    }

    /// Column of `P[i][j]` (symmetric in `i`, `j`).
    pub fn unknown(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * self.k - i * i.saturating_sub(1) / 2 + (j - i)
    }

    /// Inverse of `unknown`.
    pub fn pair_of(&self, col: usize) -> (usize, usize) {
        for i in 0..self.k {
            for j in i..self.k {
                if self.unknown(i, j) == col {
                    return (i, j);
                }
            }
        }
        panic!("unknown {col} out of range")
    }

    pub fn equations(&self) -> &[ParityEquation] {
        &self.equations
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// Whether the system contains `P[i][j] = value` as a single-unknown equation.
    pub fn pins(&self, i: usize, j: usize, value: bool) -> bool {
        let u = self.unknown(i, j);
        self.equations.iter().any(|e| e.unknowns == [u] && e.rhs == value)
    }

    pub fn to_matrix(&self) -> (F2Matrix, Vec<bool>) {
        let mut m = F2Matrix::zeros(self.equations.len(), self.unknown_count());
        for (r, e) in self.equations.iter().enumerate() {
            for &u in &e.unknowns {
                m.set(r, u, true);
            }
        }
        (m, self.equations.iter().map(|e| e.rhs).collect())
    }

    pub fn render_equation(&self, e: &ParityEquation) -> String {
        let lhs: Vec<String> = e
            .unknowns
            .iter()
            .map(|&u| {
                let (i, j) = self.pair_of(u);
                format!("P[{i}][{j}]")
            })
            .collect();
        let lhs = if lhs.is_empty() { "0".to_string() } else { lhs.join(" + ") };
        format!("{lhs} = {}", e.rhs as u8)
    }
}

struct Builder<'a> {
    sys: &'a mut ParityConstraintSystem,
    seen: HashSet<(Vec<usize>, bool)>,
}

impl Builder<'_> {
    fn push(&mut self, pairs: &[(usize, usize)], rhs: bool, origin: ConstraintOrigin) {
        let mut cols: Vec<usize> =
            pairs.iter().filter(|(a, b)| *a != 0 && *b != 0).map(|&(a, b)| self.sys.unknown(a, b)).collect();
        cols.sort_unstable();
        // x + x = 0
        let mut unknowns = Vec::with_capacity(cols.len());
        for c in cols {
            if unknowns.last() == Some(&c) {
                unknowns.pop();
            } else {
                unknowns.push(c);
            }
        }
        if unknowns.is_empty() && !rhs {
            return;
        }
        if self.seen.insert((unknowns.clone(), rhs)) {
            self.sys.equations.push(ParityEquation { unknowns, rhs, origin });
        }
    }
}

/// Builds the parity system for a monomial table.
pub fn derive_constraints(t: &StructureTable) -> Result<ParityConstraintSystem> {
    let n = t.dim();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let cell = t.cell(i, j);
            if cell.len() > 1 {
                return Err(Error::UnsupportedTable { i, j, reason: "has a multi-term product".into() });
            }
            if let Some((_, k)) = cell.as_monomial() {
                products.push((i, j, k));
            }
        }
    }

    let mut sys = ParityConstraintSystem { k: n, equations: Vec::new() };
    let mut b = Builder { sys: &mut sys, seen: HashSet::new() };
    for i in 0..n {
        b.push(&[(i, i)], false, ConstraintOrigin::SelfParity { i });
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if t.cell(i, j).is_zero() && t.cell(j, i).is_zero() {
                continue;
            }
            let anticommute = match commutation_relation(t, i, j)? {
                Commutation::Commute => false,
                Commutation::Anticommute => true,
                Commutation::Neither => {
                    return Err(Error::UnsupportedTable { i, j, reason: "neither commutes nor anticommutes".into() })
                }
            };
            b.push(&[(i, j)], anticommute, ConstraintOrigin::Commutation { i, j, anticommute });
        }
    }
    for &(i, j, k) in &products {
        for l in 0..n {
            b.push(&[(l, k), (l, i), (l, j)], false, ConstraintOrigin::Linearity { l, i, j, k });
        }
    }
    Ok(sys)
}

/// Four basis elements with `b_l3 = +-b_l1 b_l2` and `b_l4` anticommuting with
/// all three. Linearity then forces `P[l4][l3] = P[l4][l1] + P[l4][l2] = 0`,
/// contradicting `P[l4][l3] = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionWitness {
    pub l1: usize,
    pub l2: usize,
    pub l3: usize,
    pub l4: usize,
}

impl ObstructionWitness {
    /// Re-derives the pattern from the table.
    pub fn verify(&self, t: &StructureTable) -> Result<()> {
        let n = t.dim();
        for l in [self.l1, self.l2, self.l3, self.l4] {
            if l >= n {
                return Err(Error::Dimension { expected: n, found: l });
            }
        }
        match t.cell(self.l1, self.l2).as_monomial() {
            Some((_, k)) if k == self.l3 => {}
            _ => return Err(Error::Domain(format!("b{} b{} is not +-b{}", self.l1, self.l2, self.l3))),
        }
        for l in [self.l1, self.l2, self.l3] {
            if commutation_relation(t, self.l4, l)? != Commutation::Anticommute {
                return Err(Error::Domain(format!("b{} does not anticommute with b{l}", self.l4)));
            }
        }
        Ok(())
    }

    pub fn chain(&self) -> String {
        let ObstructionWitness { l1, l2, l3, l4 } = *self;
        format!(
            "P[{l4}][{l3}] = P[{l4}][{l1}] + P[{l4}][{l2}] = 1 + 1 = 0, but b{l4} anticommutes with b{l3}, so P[{l4}][{l3}] = 1"
        )
    }
}

/// Scans `(l1, l2, l4)` lexicographically for an obstruction.
pub fn find_witness(t: &StructureTable) -> Result<Option<ObstructionWitness>> {
    let n = t.dim();
    let mut rel = vec![vec![Commutation::Commute; n]; n];
    for (i, row) in rel.iter_mut().enumerate() {
        for (j, r) in row.iter_mut().enumerate() {
            *r = commutation_relation(t, i, j)?;
        }
    }
    for l1 in 0..n {
        for l2 in 0..n {
            let Some((_, l3)) = t.cell(l1, l2).as_monomial() else {
                continue;
            };
            for l4 in 0..n {
                if [l1, l2, l3].iter().all(|&l| rel[l4][l] == Commutation::Anticommute) {
                    return Ok(Some(ObstructionWitness { l1, l2, l3, l4 }));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone)]
pub enum Obstruction {
    Witness(ObstructionWitness),
    /// Equations of the parity system whose sum reads `0 = 1`.
    Certificate(Vec<ParityEquation>),
}

#[derive(Debug, Clone)]
pub enum GradingOutcome {
    Feasible(Grading),
    Infeasible(Obstruction),
}

impl GradingOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, GradingOutcome::Feasible(_))
    }

    pub fn grading(&self) -> Option<&Grading> {
        match self {
            GradingOutcome::Feasible(g) => Some(g),
            GradingOutcome::Infeasible(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&ObstructionWitness> {
        match self {
            GradingOutcome::Infeasible(Obstruction::Witness(w)) => Some(w),
            _ => None,
        }
    }
}

/// Decides whether `t` admits a `Z2^m` grading for some `m`, returning one or
/// an obstruction.
pub fn solve_grading(t: &StructureTable) -> Result<GradingOutcome> {
    let sys = derive_constraints(t)?;
    let (m, rhs) = sys.to_matrix();
    match solve_affine(&m, &rhs)? {
        AffineSolution::Solution(x) => {
            let n = t.dim();
            let mut parity = F2Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    parity.set(i, j, x[sys.unknown(i, j)]);
                }
            }
            let realized = realize_parity_matrix(&parity)?;
            if let Some(g) = realized {
                if check_graded_commutative(t, &g)?.is_none() {
                    return Ok(GradingOutcome::Feasible(g));
                }
            }
            for width in 1..=MAX_SEARCH_WIDTH {
                if let Some(g) = exhaustive_grading_search(t, width)? {
                    return Ok(GradingOutcome::Feasible(g));
                }
            }
            Err(Error::Domain("parity system is consistent but no grading could be realized".into()))
        }
        AffineSolution::Infeasible { certificate } => {
            if let Some(w) = find_witness(t)? {
                return Ok(GradingOutcome::Infeasible(Obstruction::Witness(w)));
            }
            let rows = certificate.into_iter().map(|r| sys.equations[r].clone()).collect();
            Ok(GradingOutcome::Infeasible(Obstruction::Certificate(rows)))
        }
    }
}

// Hyperbolic pair images: <A,A> = <B,B> = 0, <A,B> = 1.
const PAIR_A: [u8; 3] = [0, 1, 1];
const PAIR_B: [u8; 3] = [1, 0, 1];

/// Realizes a symmetric zero-diagonal parity matrix as degree vectors.
///
/// A symplectic basis `(u_t, w_t)` of the alternating form is built by
/// Gram-Schmidt over `F2`; each pair gets three fresh coordinates carrying the
/// patterns `(0,1,1)` and `(1,0,1)`, and basis element `x` receives
/// `P(x, w_t) A + P(x, u_t) B` on them. The result is checked against the
/// matrix; `None` means the check failed.
pub fn realize_parity_matrix(parity: &F2Matrix) -> Result<Option<Grading>> {
    let n = parity.rows();
    if parity.cols() != n {
        return Err(Error::Dimension { expected: n, found: parity.cols() });
    }
    let rows: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| parity.get(i, j)).collect()).collect();
    let apply = |v: &[bool]| -> Vec<bool> {
        let mut out = vec![false; n];
        for (c, _) in v.iter().enumerate().filter(|(_, &b)| b) {
            for (o, &p) in out.iter_mut().zip(&rows[c]) {
                *o ^= p;
            }
        }
        out
    };
    let dot = |a: &[bool], b: &[bool]| a.iter().zip(b).filter(|(x, y)| **x && **y).count() % 2 == 1;

    let mut remaining: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            let mut e = vec![false; n];
            e[i] = true;
            e
        })
        .collect();
    // (P u_t, P w_t) for each hyperbolic pair
    let mut pairs: Vec<(Vec<bool>, Vec<bool>)> = Vec::new();
    loop {
        let mut found = None;
        'search: for (a, x) in remaining.iter().enumerate() {
            let px = apply(x);
            for (b, y) in remaining.iter().enumerate() {
                if dot(y, &px) {
                    found = Some((a, b));
                    break 'search;
                }
            }
        }
        let Some((a, b)) = found else { break };
        let (hi, lo) = if a > b { (a, b) } else { (b, a) };
        let first = remaining.remove(hi);
        let second = remaining.remove(lo);
        let (u, w) = if a > b { (first, second) } else { (second, first) };
        let (pu, pw) = (apply(&u), apply(&w));
        for z in remaining.iter_mut() {
            let (along_u, along_w) = (dot(z, &pw), dot(z, &pu));
            for c in 0..n {
                z[c] ^= (along_u && u[c]) ^ (along_w && w[c]);
            }
        }
        pairs.push((pu, pw));
    }

    let width = (3 * pairs.len()).max(1);
    if width > MAX_WIDTH {
        return Err(Error::Size(format!("realization needs width {width} > {MAX_WIDTH}")));
    }
    let mut grades = Vec::with_capacity(n);
    for x in 0..n {
        let mut bits = vec![0u8; width];
        for (t, (pu, pw)) in pairs.iter().enumerate() {
            for c in 0..3 {
                let v = (pw[x] as u8 & PAIR_A[c]) ^ (pu[x] as u8 & PAIR_B[c]);
                bits[3 * t + c] = v;
            }
        }
        grades.push(GradeVec::from_bits(&bits)?);
    }
    let Ok(g) = Grading::new(grades) else {
        return Ok(None);
    };
    Ok((parity_matrix_of(&g) == *parity).then_some(g))
}

pub const MAX_SEARCH_WIDTH: usize = 4;
pub const MAX_SEARCH_DIM: usize = 16;

/// Basis indices not reachable as products of earlier ones, in order.
pub fn generating_set(t: &StructureTable) -> Vec<usize> {
    let n = t.dim();
    let mut reached = vec![false; n];
    reached[0] = true;
    close_under_products(t, &mut reached);
    let mut gens = Vec::new();
    for i in 1..n {
        if !reached[i] {
            gens.push(i);
            reached[i] = true;
            close_under_products(t, &mut reached);
        }
    }
    gens
}

fn close_under_products(t: &StructureTable, reached: &mut [bool]) {
    let n = t.dim();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in 0..n {
                if !(reached[i] && reached[j]) {
                    continue;
                }
                for (_, k) in t.cell(i, j).terms() {
                    if !reached[*k] {
                        reached[*k] = true;
                        changed = true;
                    }
                }
            }
        }
    }
}

/// Brute force: tries every width-`m` degree for each generator in
/// lexicographic order, propagates through products, and returns the first
/// assignment passing the graded-commutativity check.
pub fn exhaustive_grading_search(t: &StructureTable, m: usize) -> Result<Option<Grading>> {
    if !(1..=MAX_SEARCH_WIDTH).contains(&m) {
        return Err(Error::Size(format!("search width {m} outside 1..={MAX_SEARCH_WIDTH}")));
    }
    if t.dim() > MAX_SEARCH_DIM {
        return Err(Error::Size(format!("table dimension {} exceeds {MAX_SEARCH_DIM}", t.dim())));
    }
    let n = t.dim();
    let gens = generating_set(t);
    let values: Vec<GradeVec> = (0..1u64 << m).map(|v| lex_grade(v, m)).collect();
    let zero = GradeVec::zero(m)?;

    let mut choice = vec![0usize; gens.len()];
    loop {
        let mut grades: Vec<Option<GradeVec>> = vec![None; n];
        grades[0] = Some(zero);
        for (g, &c) in gens.iter().zip(&choice) {
            grades[*g] = Some(values[c]);
        }
        if let Some(full) = propagate(t, grades) {
            let g = Grading::new(full)?;
            if check_graded_commutative(t, &g)?.is_none() {
                return Ok(Some(g));
            }
        }
        // odometer, last generator fastest
        let mut pos = choice.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < values.len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// The `v`-th vector of `Z2^m` in lexicographic order of its components.
fn lex_grade(v: u64, m: usize) -> GradeVec {
    let raw = (0..m).fold(0u64, |acc, c| acc | (((v >> (m - 1 - c)) & 1) << c));
    GradeVec::from_raw(raw, m).expect("fits in width")
}

fn propagate(t: &StructureTable, mut grades: Vec<Option<GradeVec>>) -> Option<Vec<GradeVec>> {
    let n = t.dim();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            let Some(gi) = grades[i] else { continue };
            for j in 0..n {
                let Some(gj) = grades[j] else { continue };
                let sum = gi.add(&gj).ok()?;
                for (_, k) in t.cell(i, j).terms() {
                    match grades[*k] {
                        None => {
                            grades[*k] = Some(sum);
                            changed = true;
                        }
                        Some(existing) if existing != sum => return None,
                        Some(_) => {}
                    }
                }
            }
        }
    }
    grades.into_iter().collect()
}
