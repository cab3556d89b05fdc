//! Exhaustive invariant suites, one per module, as run by `triplets verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    build_clifford, build_complex, build_klein_group_algebra, build_octonions, build_quaternions,
    check_graded_commutative, commutation_relation, norm_squared, quaternion_embedding, Commutation, StructureTable,
};
use crate::grading::{solve_affine, AffineSolution, F2Matrix, GradeVec};
use crate::lie::{
    check_graded_antisymmetry, check_graded_jacobi, check_grading_linearity, ideal_closure, quaternionize,
    simplicity_evidence, sl2, so3, GradedLieStructure,
};
use crate::monomials::{
    all_monomials, mono_mul, mono_mul_by_crossings, mono_sign_of_swap, Sign, SignedMonomial, SquareConvention,
};
use crate::rational::{random_rationals, SparseVec};
use crate::solver::{exhaustive_grading_search, parity_matrix_of, solve_grading, GradingOutcome};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, outcome: Result<String, String>) -> CheckResult {
    match outcome {
        Ok(detail) => CheckResult { name: name.into(), passed: true, detail },
        Err(detail) => CheckResult { name: name.into(), passed: false, detail },
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    pub max_width: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: 1843, max_width: 4 }
    }
}

pub const SUITES: [&str; 5] = ["grading", "monomials", "algebra", "solver", "lie"];

pub fn run_suite(name: &str, opts: VerifyOptions) -> Option<Vec<CheckResult>> {
    Some(match name {
        "grading" => grading_suite(opts),
        "monomials" => monomial_suite(),
        "algebra" => algebra_suite(opts),
        "solver" => solver_suite(opts),
        "lie" => lie_suite(opts),
        "all" => SUITES.iter().flat_map(|s| run_suite(s, opts).expect("known suite")).collect(),
        _ => return None,
    })
}

fn grading_suite(opts: VerifyOptions) -> Vec<CheckResult> {
    let symmetric = (|| {
        let mut count = 0;
        for n in 1..=4 {
            for a in 0..1u64 << n {
                for b in 0..1u64 << n {
                    let (a, b) = (GradeVec::from_raw(a, n).unwrap(), GradeVec::from_raw(b, n).unwrap());
                    if a.parity(&b) != b.parity(&a) {
                        return Err(format!("parity({a}, {b}) not symmetric"));
                    }
                    count += 1;
                }
            }
        }
        Ok(format!("{count} pairs"))
    })();
    let bilinear = (|| {
        let mut count = 0;
        for n in 1..=3 {
            let all: Vec<_> = (0..1u64 << n).map(|x| GradeVec::from_raw(x, n).unwrap()).collect();
            for a in &all {
                for b in &all {
                    for c in &all {
                        let lhs = a.add(b).unwrap().parity(c).unwrap();
                        if lhs != a.parity(c).unwrap() ^ b.parity(c).unwrap() {
                            return Err(format!("bilinearity fails at {a}, {b}, {c}"));
                        }
                        count += 1;
                    }
                }
            }
        }
        Ok(format!("{count} triples"))
    })();
    let linear_algebra = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..200 {
            let (r, c) = (rng.gen_range(1..10), rng.gen_range(1..12));
            let rows: Vec<Vec<u8>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(0..2)).collect()).collect();
            let m = F2Matrix::from_rows(&rows).unwrap();
            let once = m.rref();
            if once.matrix.rref().matrix != once.matrix {
                return Err(format!("rref not idempotent on {m:?}"));
            }
            let rhs: Vec<bool> = (0..r).map(|_| rng.gen()).collect();
            if let AffineSolution::Solution(x) = solve_affine(&m, &rhs).unwrap() {
                if m.mul_vec(&x).unwrap() != rhs {
                    return Err("solve_affine returned a non-solution".into());
                }
            }
        }
        Ok("200 seeded systems".into())
    })();
    vec![
        check("parity is symmetric (n <= 4)", symmetric),
        check("parity is bilinear (n <= 3)", bilinear),
        check("rref idempotent, solve_affine verified", linear_algebra),
    ]
}

fn signed_monomials(n: usize) -> Vec<SignedMonomial> {
    all_monomials(n).into_iter().flat_map(|m| [m.clone(), -m]).collect()
}

/// Compares the sorting and crossing-number products on every signed pair, for
/// every square convention on `n` generators. Returns the number of pairs.
pub fn sign_rule_agreement(n: usize) -> Result<usize, String> {
    let all = signed_monomials(n);
    let mut count = 0;
    for bits in 0..1u32 << n {
        let conv = SquareConvention::new((0..n).map(|k| Sign::from_parity((bits >> k) & 1)).collect());
        for a in &all {
            for b in &all {
                let (x, y) = (mono_mul(a, b, &conv).unwrap(), mono_mul_by_crossings(a, b, &conv).unwrap());
                if x != y {
                    return Err(format!("{a} * {b}: sorting gives {x}, crossings give {y}"));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

fn monomial_suite() -> Vec<CheckResult> {
    let graded = (|| {
        let mut count = 0;
        for n in 1..=4 {
            let conv = SquareConvention::positive(n);
            let all = all_monomials(n);
            for a in &all {
                for b in &all {
                    let ab = mono_mul(a, b, &conv).unwrap();
                    let ba = mono_mul(b, a, &conv).unwrap();
                    let sign = Sign::from_parity(mono_sign_of_swap(a, b).unwrap());
                    if ab != ba.clone().with_sign(ba.sign() * sign) {
                        return Err(format!("{a} * {b} violates graded commutativity"));
                    }
                    if ab.grade_of() != a.grade_of().add(&b.grade_of()).unwrap() {
                        return Err(format!("{a} * {b} violates grade additivity"));
                    }
                    let even_factor = a.word().len() % 2 == 0 || b.word().len() % 2 == 0;
                    if even_factor && mono_sign_of_swap(a, b).unwrap() != a.grade_of().parity(&b.grade_of()).unwrap() {
                        return Err(format!("{a} * {b}: swap sign differs from the grade parity"));
                    }
                    count += 1;
                }
            }
        }
        Ok(format!("{count} pairs"))
    })();
    let assoc = (|| {
        let conv = SquareConvention::positive(3);
        let all = signed_monomials(3);
        for a in &all {
            for b in &all {
                for c in &all {
                    let l = mono_mul(&mono_mul(a, b, &conv).unwrap(), c, &conv).unwrap();
                    let r = mono_mul(a, &mono_mul(b, c, &conv).unwrap(), &conv).unwrap();
                    if l != r {
                        return Err(format!("({a} {b}) {c} != {a} ({b} {c})"));
                    }
                }
            }
        }
        Ok(format!("{} triples", all.len().pow(3)))
    })();
    let agreement = (1..=4).try_fold(0, |acc, n| sign_rule_agreement(n).map(|c| acc + c));
    vec![
        check("swap sign, grade additivity, dot parity on even factors (n <= 4)", graded),
        check("associativity (n = 3)", assoc),
        check("sorting sign equals crossing sign (n <= 4)", agreement.map(|c| format!("{c} pairs"))),
    ]
}

/// Hamilton's products on `1, i, j, k`, written out by hand.
pub fn quaternion_fixture() -> [[(i64, usize); 4]; 4] {
    [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ]
}

fn matches_fixture(h: &StructureTable) -> Result<String, String> {
    for (a, row) in quaternion_fixture().iter().enumerate() {
        for (b, &(c, k)) in row.iter().enumerate() {
            let expected = SparseVec::term(crate::rational::int(c), k);
            if *h.cell(a, b) != expected {
                return Err(format!("{} * {} = {}", h.names()[a], h.names()[b], h.cell(a, b).render(h.names())));
            }
        }
    }
    Ok("16 products".into())
}

/// `norm(xy) = norm(x) norm(y)` on `samples` seeded random pairs.
pub fn norm_multiplicativity(t: &StructureTable, seed: u64, samples: usize) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..samples {
        let x = t.element(random_rationals(&mut rng, t.dim()).into_iter().zip(0..)).map_err(|e| e.to_string())?;
        let y = t.element(random_rationals(&mut rng, t.dim()).into_iter().zip(0..)).map_err(|e| e.to_string())?;
        let xy = x.mul(&y).map_err(|e| e.to_string())?;
        let lhs = norm_squared(&xy).map_err(|e| e.to_string())?;
        let rhs = norm_squared(&x).map_err(|e| e.to_string())? * norm_squared(&y).map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("sample {s}: |xy|^2 = {lhs} but |x|^2 |y|^2 = {rhs}"));
        }
    }
    Ok(format!("{samples} pairs"))
}

fn algebra_suite(opts: VerifyOptions) -> Vec<CheckResult> {
    let (h, sigma) = build_quaternions();
    let o = build_octonions();
    let homomorphism = (|| {
        let cl3 = build_clifford(3, &SquareConvention::positive(3)).unwrap();
        let images = quaternion_embedding();
        let pos =
            |m: &SignedMonomial| (0..cl3.dim()).find(|&i| cl3.names()[i] == crate::monomials::word_text(m.word()));
        for a in 0..4 {
            for b in 0..4 {
                let (pa, pb) = (pos(&images[a]).unwrap(), pos(&images[b]).unwrap());
                let (c, k) = h.cell(a, b).as_monomial().unwrap();
                let image = SparseVec::term(c.clone(), pos(&images[k]).unwrap());
                if *cl3.cell(pa, pb) != image {
                    return Err(format!("image of {} * {} differs", h.names()[a], h.names()[b]));
                }
            }
        }
        Ok("16 products preserved".to_string())
    })();
    let associative = (|| {
        for (name, t) in [
            ("H".to_string(), h.clone()),
            ("Cl1".into(), build_clifford(1, &SquareConvention::positive(1)).unwrap()),
            ("Cl2".into(), build_clifford(2, &SquareConvention::positive(2)).unwrap()),
            ("Cl3".into(), build_clifford(3, &SquareConvention::positive(3)).unwrap()),
        ] {
            if let Some(v) = t.associativity_violation() {
                return Err(format!("{name} not associative at {v:?}"));
            }
        }
        Ok("H, Cl1, Cl2, Cl3".into())
    })();
    let octonions = (|| {
        for l in 1..8 {
            if *o.cell(l, l) != SparseVec::term(crate::rational::int(-1), 0) {
                return Err(format!("e{l}^2 != -1"));
            }
            for m in (l + 1)..8 {
                if commutation_relation(&o, l, m).unwrap() != Commutation::Anticommute {
                    return Err(format!("e{l}, e{m} do not anticommute"));
                }
            }
        }
        if let Some(v) = o.alternativity_violation() {
            return Err(format!("alternativity fails at {v:?}"));
        }
        match o.associativity_violation() {
            Some((a, b, c)) => Ok(format!("nonassociative at ({}, {}, {})", o.names()[a], o.names()[b], o.names()[c])),
            None => Err("octonions came out associative".into()),
        }
    })();
    let doubled_c = (|| {
        let (dc, _) = crate::algebra::cayley_dickson_double(
            &build_complex(),
            &crate::algebra::Involution::standard(2),
            &crate::rational::int(-1),
        )
        .map_err(|e| e.to_string())?;
        if dc.cells() == h.cells() {
            Ok("double(C) equals H on 1, i, l, il".into())
        } else {
            Err("double(C) differs from H".into())
        }
    })();
    vec![
        check("H matches Hamilton's table", matches_fixture(&h)),
        check(
            "H is graded commutative under the triple degree",
            match check_graded_commutative(&h, &sigma) {
                Ok(None) => Ok("16 pairs".into()),
                Ok(Some(v)) => Err(v.to_string()),
                Err(e) => Err(e.to_string()),
            },
        ),
        check("embedding into Cl3 is a homomorphism", homomorphism),
        check("associativity of H and Cl(n <= 3)", associative),
        check("Cayley-Dickson double of C", doubled_c),
        check("octonion units, alternativity, nonassociativity", octonions),
        check("octonion norm is multiplicative", norm_multiplicativity(&o, opts.seed, 100)),
    ]
}

/// The five small tables used to cross-check the solver against brute force.
pub fn solver_corpus() -> Vec<(&'static str, StructureTable)> {
    vec![
        ("H", build_quaternions().0),
        ("Cl1", build_clifford(1, &SquareConvention::positive(1)).unwrap()),
        ("Cl2", build_clifford(2, &SquareConvention::positive(2)).unwrap()),
        ("O", build_octonions()),
        ("Z2xZ2", build_klein_group_algebra()),
    ]
}

fn solver_suite(opts: VerifyOptions) -> Vec<CheckResult> {
    let (h, sigma) = build_quaternions();
    let quaternions = match solve_grading(&h) {
        Ok(GradingOutcome::Feasible(g)) if parity_matrix_of(&g) == parity_matrix_of(&sigma) => {
            Ok(format!("grading {:?}", g.grades()))
        }
        other => Err(format!("unexpected outcome {other:?}")),
    };
    let o = build_octonions();
    let octonions = match solve_grading(&o) {
        Ok(out) => match out.witness() {
            Some(w) => w.verify(&o).map(|_| w.chain()).map_err(|e| e.to_string()),
            None => Err(format!("no witness: {out:?}")),
        },
        Err(e) => Err(e.to_string()),
    };
    let agreement = (|| {
        let mut lines = Vec::new();
        for (name, t) in solver_corpus() {
            let solved = solve_grading(&t).map_err(|e| e.to_string())?;
            if let Some(g) = solved.grading() {
                if let Some(v) = check_graded_commutative(&t, g).map_err(|e| e.to_string())? {
                    return Err(format!("{name}: solver grading fails: {v}"));
                }
            }
            let brute = exhaustive_grading_search(&t, opts.max_width).map_err(|e| e.to_string())?;
            if let Some(g) = &brute {
                if let Some(v) = check_graded_commutative(&t, g).map_err(|e| e.to_string())? {
                    return Err(format!("{name}: brute-force grading fails: {v}"));
                }
            }
            if solved.is_feasible() != brute.is_some() {
                return Err(format!(
                    "{name}: solver says {}, brute force says {}",
                    solved.is_feasible(),
                    brute.is_some()
                ));
            }
            lines.push(format!("{name}={}", if solved.is_feasible() { "feasible" } else { "infeasible" }));
        }
        Ok(lines.join(", "))
    })();
    vec![
        check("H admits the triple-degree parities", quaternions),
        check("O is obstructed", octonions),
        check(&format!("solver agrees with brute force (m = {})", opts.max_width), agreement),
    ]
}

fn lie_suite(opts: VerifyOptions) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (name, s) in [("sl2", sl2()), ("so3", so3())] {
        let q = match quaternionize(&s) {
            Ok(q) => q,
            Err(e) => {
                out.push(check(&format!("quaternionize({name})"), Err(e.to_string())));
                continue;
            }
        };
        let graded = match (check_graded_antisymmetry(&q), check_graded_jacobi(&q), check_grading_linearity(&q)) {
            (None, None, None) => Ok(format!("{} triples", q.dim().pow(3))),
            (a, j, l) => Err(format!("antisymmetry {a:?}, jacobi {j:?}, linearity {l:?}")),
        };
        out.push(check(&format!("H (x) {name} is a graded Lie algebra"), graded));
        let block = (0..s.dim()).all(|x| (0..s.dim()).all(|y| q.lie().bracket_basis(x, y) == s.bracket_basis(x, y)));
        out.push(check(
            &format!("degree-zero block of H (x) {name}"),
            if block { Ok("equals input".into()) } else { Err("differs from input".into()) },
        ));
        let evidence = simplicity_evidence(&q, opts.seed, 50).map_err(|e| e.to_string()).and_then(|ev| {
            if ev.supports_simplicity() {
                Ok(format!("center 0, {} closures full", ev.basis_closures.len() + ev.sampled_closures.len()))
            } else {
                Err(format!("{ev:?}"))
            }
        });
        out.push(check(&format!("simplicity evidence for H (x) {name}"), evidence));
    }
    let control = quaternionize(&sl2().direct_sum_abelian(1)).map_err(|e| e.to_string()).and_then(|q| {
        let z = GradedLieStructure::tensor_index(4, 0, 3);
        let ideal = ideal_closure(&q, &SparseVec::basis(z).to_dense(q.dim())).map_err(|e| e.to_string())?;
        if ideal.dim() == 1 {
            Ok("1*z1 spans a proper ideal".into())
        } else {
            Err(format!("closure of 1*z1 has dimension {}", ideal.dim()))
        }
    });
    out.push(check("non-simple control", control));
    out
}
