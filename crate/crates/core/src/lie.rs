//! Lie algebras by structure constants, and their quaternionization
//! `H (x) g`, a `Z2^3`-graded Lie algebra with bracket
//! `[p (x) x, q (x) y] = pq (x) [x, y]`.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::build_quaternions;
use crate::grading::GradeVec;
use crate::monomials::Sign;
use crate::rational::{int, nullspace, random_rationals, Rational, RowSpace, SparseVec};
use crate::solver::Grading;
use crate::{Error, Result};

/// Basis labels and brackets `[b_i, b_j]` as sparse vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieStructure {
    names: Vec<String>,
    constants: Vec<Vec<SparseVec>>,
}

impl LieStructure {
    pub fn new(names: Vec<String>, constants: Vec<Vec<SparseVec>>) -> Result<Self> {
        let dim = names.len();
        if dim == 0 {
            return Err(Error::Invalid("a Lie algebra needs a nonempty basis".into()));
        }
        if constants.len() != dim {
            return Err(Error::Dimension { expected: dim, found: constants.len() });
        }
        for row in &constants {
            if row.len() != dim {
                return Err(Error::Dimension { expected: dim, found: row.len() });
            }
            if let Some(m) = row.iter().filter_map(SparseVec::max_index).max() {
                if m >= dim {
                    return Err(Error::Dimension { expected: dim, found: m });
                }
            }
        }
        Ok(Self { names, constants })
    }

    /// Builds from brackets listed for `i < j`; `[b_j, b_i] = -[b_i, b_j]` and
    /// `[b_i, b_i] = 0` are filled in.
    pub fn from_brackets(names: Vec<String>, brackets: Vec<(usize, usize, SparseVec)>) -> Result<Self> {
        let dim = names.len();
        let mut constants = vec![vec![SparseVec::zero(); dim]; dim];
        for (i, j, v) in brackets {
            if i >= j || j >= dim {
                return Err(Error::Invalid(format!("bracket ({i}, {j}) must satisfy i < j < {dim}")));
            }
            if !constants[i][j].is_zero() {
                return Err(Error::Invalid(format!("bracket ({i}, {j}) listed twice")));
            }
            constants[j][i] = v.neg();
            constants[i][j] = v;
        }
        Self::new(names, constants)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.constants[i][j]
    }

    pub fn constants(&self) -> &[Vec<SparseVec>] {
        &self.constants
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (a, i) in x.terms() {
            for (b, j) in y.terms() {
                let ab = a * b;
                for (c, k) in self.constants[*i][*j].terms() {
                    terms.push((&ab * c, *k));
                }
            }
        }
        SparseVec::from_terms(terms)
    }

    fn bracket_dense(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.bracket(&SparseVec::from_dense(x), &SparseVec::from_dense(y)).to_dense(self.dim())
    }

    /// Adjoins an abelian ideal of dimension `k` spanned by `z1..zk`.
    pub fn direct_sum_abelian(&self, k: usize) -> Self {
        let dim = self.dim() + k;
        let mut names = self.names.clone();
        names.extend((1..=k).map(|t| format!("z{t}")));
        let mut constants = vec![vec![SparseVec::zero(); dim]; dim];
        for (i, row) in self.constants.iter().enumerate() {
            constants[i][..row.len()].clone_from_slice(row);
        }
        Self { names, constants }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LieViolation {
    Antisymmetry { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
}

/// Checks `[b_i, b_j] = -[b_j, b_i]` and the Jacobi identity on all basis triples.
pub fn validate_lie(s: &LieStructure) -> Option<LieViolation> {
    let n = s.dim();
    for i in 0..n {
        for j in i..n {
            if *s.bracket_basis(i, j) != s.bracket_basis(j, i).neg() {
                return Some(LieViolation::Antisymmetry { i, j });
            }
        }
    }
    let zero = Grading::zero(n, 1).expect("nonempty basis");
    jacobi_violation(&s.constants, &zero).map(|(i, j, k)| LieViolation::Jacobi { i, j, k })
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// `sl2` on `h, e, f` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2() -> LieStructure {
    LieStructure::from_brackets(
        names(&["h", "e", "f"]),
        vec![(0, 1, SparseVec::term(int(2), 1)), (0, 2, SparseVec::term(int(-2), 2)), (1, 2, SparseVec::basis(0))],
    )
    .expect("sl2 constants")
}

/// `so3` on `x, y, z` with `[x,y] = z`, `[y,z] = x`, `[z,x] = y`.
pub fn so3() -> LieStructure {
    LieStructure::from_brackets(
        names(&["x", "y", "z"]),
        vec![(0, 1, SparseVec::basis(2)), (1, 2, SparseVec::basis(0)), (0, 2, SparseVec::term(int(-1), 1))],
    )
    .expect("so3 constants")
}

pub fn abelian(dim: usize) -> LieStructure {
    let names = (1..=dim).map(|t| format!("a{t}")).collect();
    LieStructure::new(names, vec![vec![SparseVec::zero(); dim]; dim]).expect("abelian constants")
}

/// Structure constants together with a grading of the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedLieStructure {
    lie: LieStructure,
    grading: Grading,
}

impl GradedLieStructure {
    pub fn new(lie: LieStructure, grading: Grading) -> Result<Self> {
        if grading.len() != lie.dim() {
            return Err(Error::Dimension { expected: lie.dim(), found: grading.len() });
        }
        Ok(Self { lie, grading })
    }

    /// All basis elements in degree zero.
    pub fn trivially_graded(lie: LieStructure) -> Self {
        let grading = Grading::zero(lie.dim(), 1).expect("nonempty basis");
        Self { lie, grading }
    }

    pub fn lie(&self) -> &LieStructure {
        &self.lie
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn names(&self) -> &[String] {
        self.lie.names()
    }

    fn sign(&self, a: usize, b: usize) -> Sign {
        Sign::from_parity(self.grading.grade(a).parity(self.grading.grade(b)).expect("one width"))
    }

    /// Index of `p (x) x` in a quaternionized structure over `base_dim` elements.
    pub fn tensor_index(base_dim: usize, quaternion: usize, x: usize) -> usize {
        quaternion * base_dim + x
    }
}

/// `H (x) s` with basis `p*x` for `p` in `1, i, j, k` (quaternion-major order).
/// `p*x` has the degree of `p`.
pub fn quaternionize(s: &LieStructure) -> Result<GradedLieStructure> {
    if let Some(v) = validate_lie(s) {
        return Err(Error::Domain(format!("input is not a Lie algebra: {v:?}")));
    }
    let (h, hg) = build_quaternions();
    let d = s.dim();
    let n = 4 * d;
    let idx = |p: usize, x: usize| GradedLieStructure::tensor_index(d, p, x);

    let mut names = Vec::with_capacity(n);
    let mut grades = Vec::with_capacity(n);
    for p in 0..4 {
        for x in 0..d {
            names.push(format!("{}*{}", h.names()[p], s.names()[x]));
            grades.push(*hg.grade(p));
        }
    }
    let mut constants = vec![vec![SparseVec::zero(); n]; n];
    for p in 0..4 {
        for q in 0..4 {
            let (coeff, r) = h.cell(p, q).as_monomial().expect("quaternion products are monomial");
            for x in 0..d {
                for y in 0..d {
                    let terms = s.bracket_basis(x, y).terms().iter().map(|(c, z)| (coeff * c, idx(r, *z)));
                    constants[idx(p, x)][idx(q, y)] = SparseVec::from_terms(terms);
                }
            }
        }
    }
    GradedLieStructure::new(LieStructure::new(names, constants)?, Grading::new(grades)?)
}

/// First pair with `[a,b] != -(-1)^<a,b> [b,a]`.
pub fn check_graded_antisymmetry(gs: &GradedLieStructure) -> Option<(usize, usize)> {
    let n = gs.dim();
    for a in 0..n {
        for b in a..n {
            let ba = gs.lie.bracket_basis(b, a);
            let expected = if gs.sign(a, b) == Sign::Plus { ba.neg() } else { ba.clone() };
            if *gs.lie.bracket_basis(a, b) != expected {
                return Some((a, b));
            }
        }
    }
    None
}

/// First triple violating
/// `(-1)^<a,c> [a,[b,c]] + (-1)^<b,a> [b,[c,a]] + (-1)^<c,b> [c,[a,b]] = 0`.
pub fn check_graded_jacobi(gs: &GradedLieStructure) -> Option<(usize, usize, usize)> {
    jacobi_violation(&gs.lie.constants, &gs.grading)
}

fn jacobi_violation(c: &[Vec<SparseVec>], g: &Grading) -> Option<(usize, usize, usize)> {
    let n = c.len();
    let sign = |a: usize, b: usize| int(Sign::from_parity(g.grade(a).parity(g.grade(b)).expect("one width")).to_i64());
    // [b_a, v] for a sparse v
    let ad = |a: usize, v: &SparseVec| {
        SparseVec::from_terms(
            v.terms().iter().flat_map(|(k, i)| c[a][*i].terms().iter().map(move |(x, z)| (k * x, *z))),
        )
    };
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                let t1 = ad(a, &c[b][cc]).scale(&sign(a, cc));
                let t2 = ad(b, &c[cc][a]).scale(&sign(b, a));
                let t3 = ad(cc, &c[a][b]).scale(&sign(cc, b));
                if !t1.add(&t2).add(&t3).is_zero() {
                    return Some((a, b, cc));
                }
            }
        }
    }
    None
}

/// First basis pair whose nonzero bracket has a term outside degree `sigma(a) + sigma(b)`.
pub fn check_grading_linearity(gs: &GradedLieStructure) -> Option<(usize, usize, usize)> {
    let n = gs.dim();
    for a in 0..n {
        for b in 0..n {
            let sum: GradeVec = gs.grading.grade(a).add(gs.grading.grade(b)).expect("one width");
            for (_, k) in gs.lie.bracket_basis(a, b).terms() {
                if *gs.grading.grade(*k) != sum {
                    return Some((a, b, *k));
                }
            }
        }
    }
    None
}

/// Smallest subspace containing `seed` and closed under bracketing with every
/// basis element on either side.
pub fn ideal_closure(gs: &GradedLieStructure, seed: &[Rational]) -> Result<RowSpace> {
    let n = gs.dim();
    if seed.len() != n {
        return Err(Error::Dimension { expected: n, found: seed.len() });
    }
    if seed.iter().all(Zero::is_zero) {
        return Err(Error::Domain("ideal closure of the zero vector".into()));
    }
    let basis: Vec<Vec<Rational>> = (0..n).map(|j| SparseVec::basis(j).to_dense(n)).collect();
    let mut space = RowSpace::new(n);
    let mut queue = vec![seed.to_vec()];
    space.insert(seed)?;
    while let Some(v) = queue.pop() {
        for b in &basis {
            for w in [gs.lie.bracket_dense(&v, b), gs.lie.bracket_dense(b, &v)] {
                if space.insert(&w)? {
                    queue.push(w);
                }
            }
        }
    }
    Ok(space)
}

/// Basis of `{z : [z, b_j] = 0 for all j}`.
pub fn center(gs: &GradedLieStructure) -> Vec<Vec<Rational>> {
    let n = gs.dim();
    // row (j, k): coefficient of b_k in [z, b_j] as a linear form in z
    let mut rows = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            rows.push((0..n).map(|i| gs.lie.bracket_basis(i, j).coeff(k)).collect());
        }
    }
    nullspace(&rows, n)
}

/// Outcome of the finite simplicity checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityEvidence {
    pub dim: usize,
    pub center_dim: usize,
    /// Closure dimension from each basis vector.
    pub basis_closures: Vec<usize>,
    /// Closure dimension from each sampled vector.
    pub sampled_closures: Vec<usize>,
}

impl SimplicityEvidence {
    pub fn supports_simplicity(&self) -> bool {
        self.center_dim == 0 && self.basis_closures.iter().chain(&self.sampled_closures).all(|&d| d == self.dim)
    }
}

/// Center plus ideal closures from every basis vector and `samples` seeded
/// pseudorandom rational vectors.
pub fn simplicity_evidence(gs: &GradedLieStructure, seed: u64, samples: usize) -> Result<SimplicityEvidence> {
    let n = gs.dim();
    let basis_closures =
        (0..n).map(|j| ideal_closure(gs, &SparseVec::basis(j).to_dense(n)).map(|s| s.dim())).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled_closures = Vec::with_capacity(samples);
    while sampled_closures.len() < samples {
        let v = random_rationals(&mut rng, n);
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        sampled_closures.push(ideal_closure(gs, &v)?.dim());
    }
    Ok(SimplicityEvidence { dim: n, center_dim: center(gs).len(), basis_closures, sampled_closures })
}
