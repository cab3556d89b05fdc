//! One line per acceptance criterion, then a hard failure if any of them failed.
//! The report goes straight to stdout, so it shows up without `--nocapture`.

mod common;

use std::io::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use triplets::algebra::{
    build_octonions, build_quaternions, cayley_dickson_double, check_graded_commutative, commutation_relation,
    norm_squared, Commutation, Involution,
};
use triplets::json::table_from_json;
use triplets::lie::{
    check_graded_antisymmetry, check_graded_jacobi, check_grading_linearity, ideal_closure, quaternionize,
    simplicity_evidence, sl2, so3,
};
use triplets::monomials::{all_monomials, mono_mul, mono_mul_by_crossings};
use triplets::rational::{int, random_rationals, SparseVec};
use triplets::solver::{exhaustive_grading_search, parity_matrix_of, solve_grading, ObstructionWitness};
use triplets::verify::{quaternion_fixture, sign_rule_agreement, solver_corpus};
use triplets::SquareConvention;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn hamilton_relations() -> Outcome {
    let (h, _) = build_quaternions();
    let minus_one = SparseVec::term(int(-1), 0);
    for a in 1..4 {
        ensure(*h.cell(a, a) == minus_one, || format!("{}^2 != -1", h.names()[a]))?;
    }
    let i = h.named("i").map_err(|e| e.to_string())?;
    let j = h.named("j").map_err(|e| e.to_string())?;
    let k = h.named("k").map_err(|e| e.to_string())?;
    let ijk = i.mul(&j).and_then(|x| x.mul(&k)).map_err(|e| e.to_string())?;
    ensure(*ijk.coeffs() == minus_one, || format!("ijk = {ijk}"))?;
    for (a, row) in quaternion_fixture().iter().enumerate() {
        for (b, &(c, idx)) in row.iter().enumerate() {
            ensure(*h.cell(a, b) == SparseVec::term(int(c), idx), || format!("cell ({a}, {b})"))?;
            let oracle = common::hamilton(
                common::unit_vector(4, a).try_into().unwrap(),
                common::unit_vector(4, b).try_into().unwrap(),
            );
            ensure(oracle[idx] == c, || format!("fixture cell ({a}, {b}) disagrees with Hamilton's formula"))?;
        }
    }
    Ok("i^2 = j^2 = k^2 = ijk = -1; 16/16 products match".into())
}

fn graded_commutativity_of_h() -> Outcome {
    let (h, sigma) = build_quaternions();
    let bits: Vec<Vec<u8>> = sigma.grades().iter().map(|g| g.bits()).collect();
    ensure(bits == common::triple_degree(), || format!("grading {bits:?}"))?;
    match check_graded_commutative(&h, &sigma) {
        Ok(None) => {}
        Ok(Some(v)) => return Err(v.to_string()),
        Err(e) => return Err(e.to_string()),
    }
    let nonzero = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).filter(|&(a, b)| !h.cell(a, b).is_zero()).count();
    Ok(format!("OK on 16 pairs, linearity on {nonzero} nonzero products"))
}

fn sign_rule_equivalence() -> Outcome {
    let small = (1..=4).try_fold(0, |acc, n| sign_rule_agreement(n).map(|c| acc + c))?;
    let n = 8;
    let all = all_monomials(n);
    let mut large = 0;
    for conv in [SquareConvention::positive(n), SquareConvention::negative(n)] {
        for a in &all {
            for b in &all {
                let (x, y) = (
                    mono_mul(a, b, &conv).map_err(|e| e.to_string())?,
                    mono_mul_by_crossings(a, b, &conv).map_err(|e| e.to_string())?,
                );
                ensure(x == y, || format!("{a} * {b}: {x} vs {y}"))?;
                large += 1;
            }
        }
    }
    Ok(format!(
        "{small} signed pairs over every square convention for n <= 4, plus {} pairs x 2 conventions at n = 8",
        large / 2
    ))
}

fn octonion_impossibility() -> Outcome {
    let o = build_octonions();
    let outcome = solve_grading(&o).map_err(|e| e.to_string())?;
    let w = *outcome.witness().ok_or("no witness returned")?;
    w.verify(&o).map_err(|e| e.to_string())?;
    // re-derive the contradiction from the raw cells
    let cells = common::dense_table(&o);
    let anti = |a: usize, b: usize| {
        let (ab, ba) = (&cells[a][b], &cells[b][a]);
        ab.iter().any(|&c| c != 0) && ab.iter().zip(ba).all(|(x, y)| *x == -y)
    };
    let ObstructionWitness { l1, l2, l3, l4 } = w;
    let l3_part = &cells[l1][l2];
    ensure(l3_part.iter().enumerate().all(|(k, &c)| (k == l3) == (c != 0) && c.abs() <= 1), || {
        format!("b{l1} b{l2} is not +-b{l3}")
    })?;
    ensure(anti(l4, l1) && anti(l4, l2) && anti(l4, l3), || format!("b{l4} fails to anticommute"))?;
    for m in 1..=4 {
        ensure(exhaustive_grading_search(&o, m).map_err(|e| e.to_string())?.is_none(), || format!("m = {m} found"))?;
    }
    Ok(format!("infeasible, witness ({l1},{l2},{l3},{l4}) re-verified; no grading for m = 1..4"))
}

fn solver_oracle_agreement() -> Outcome {
    let mut summary = Vec::new();
    for (name, t) in solver_corpus() {
        let verdict = solve_grading(&t).map_err(|e| e.to_string())?;
        let brute = exhaustive_grading_search(&t, 4).map_err(|e| e.to_string())?;
        ensure(verdict.is_feasible() == brute.is_some(), || format!("{name}: verdicts differ"))?;
        for g in verdict.grading().into_iter().chain(brute.as_ref()) {
            ensure(check_graded_commutative(&t, g).map_err(|e| e.to_string())?.is_none(), || {
                format!("{name}: returned grading fails the checker")
            })?;
        }
        summary.push(format!("{name}={}", if verdict.is_feasible() { "feasible" } else { "infeasible" }));
    }
    Ok(summary.join(", "))
}

fn octonion_construction() -> Outcome {
    let (h, _) = build_quaternions();
    let (o, _) = cayley_dickson_double(&h, &Involution::standard(4), &int(-1)).map_err(|e| e.to_string())?;
    let minus_one = SparseVec::term(int(-1), 0);
    for l in 1..8 {
        ensure(*o.cell(l, l) == minus_one, || format!("e{l}^2 != -1"))?;
    }
    let mut pairs = 0;
    for l in 1..8 {
        for m in (l + 1)..8 {
            ensure(commutation_relation(&o, l, m).map_err(|e| e.to_string())? == Commutation::Anticommute, || {
                format!("e{l}, e{m} do not anticommute")
            })?;
            pairs += 1;
        }
    }
    ensure(o.alternativity_violation().is_none(), || "alternativity fails".into())?;
    let (a, b, c) = o.associativity_violation().ok_or("doubled table came out associative")?;
    let e = |l| common::unit_vector(8, l);
    let left = common::cd_mul(&common::cd_mul(&e(a), &e(b)), &e(c));
    let right = common::cd_mul(&e(a), &common::cd_mul(&e(b), &e(c)));
    ensure(left != right, || format!("reported triple ({a},{b},{c}) associates"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(1843);
    for s in 0..100 {
        let (xs, ys) = (random_rationals(&mut rng, 8), random_rationals(&mut rng, 8));
        let x = o.element(xs.iter().cloned().zip(0..)).map_err(|e| e.to_string())?;
        let y = o.element(ys.iter().cloned().zip(0..)).map_err(|e| e.to_string())?;
        let xy = x.mul(&y).map_err(|e| e.to_string())?;
        let lhs = norm_squared(&xy).map_err(|e| e.to_string())?;
        let rhs = common::sum_of_squares(&xs) * common::sum_of_squares(&ys);
        ensure(lhs == rhs, || format!("sample {s}: {lhs} != {rhs}"))?;
    }
    Ok(format!(
        "7 squares = -1, {pairs} anticommuting pairs, alternative, (e{a} e{b}) e{c} != e{a} (e{b} e{c}), 100 exact norm checks"
    ))
}

fn quaternionization() -> Outcome {
    for (name, s) in [("sl2", sl2()), ("so3", so3())] {
        let q = quaternionize(&s).map_err(|e| e.to_string())?;
        ensure(q.dim() == 12, || format!("{name}: dim {}", q.dim()))?;
        ensure(check_graded_antisymmetry(&q).is_none(), || format!("{name}: antisymmetry"))?;
        ensure(check_graded_jacobi(&q).is_none(), || format!("{name}: Jacobi"))?;
        ensure(check_grading_linearity(&q).is_none(), || format!("{name}: linearity"))?;
        let zero: Vec<usize> = (0..12).filter(|&a| q.grading().grade(a).is_zero()).collect();
        ensure(zero == [0, 1, 2], || format!("{name}: degree-zero indices {zero:?}"))?;
        for x in 0..3 {
            for y in 0..3 {
                ensure(q.lie().bracket_basis(x, y) == s.bracket_basis(x, y), || format!("{name}: block ({x},{y})"))?;
            }
        }
    }
    Ok("sl2, so3: 1728 triples each, degree-zero block = input, linear".into())
}

fn simplicity() -> Outcome {
    let q = quaternionize(&sl2()).map_err(|e| e.to_string())?;
    let ev = simplicity_evidence(&q, 1843, 50).map_err(|e| e.to_string())?;
    ensure(ev.center_dim == 0, || format!("center dim {}", ev.center_dim))?;
    ensure(ev.basis_closures.len() == 12 && ev.basis_closures.iter().all(|&d| d == 12), || {
        format!("basis closures {:?}", ev.basis_closures)
    })?;
    ensure(ev.sampled_closures.len() == 50 && ev.sampled_closures.iter().all(|&d| d == 12), || {
        format!("sampled closures {:?}", ev.sampled_closures)
    })?;
    let control = quaternionize(&sl2().direct_sum_abelian(1)).map_err(|e| e.to_string())?;
    let z = control.names().iter().position(|n| n == "1*z1").ok_or("no 1*z1")?;
    let ideal = ideal_closure(&control, &SparseVec::basis(z).to_dense(control.dim())).map_err(|e| e.to_string())?;
    ensure(ideal.dim() < control.dim(), || "control closure is the whole space".into())?;
    Ok(format!("center 0, 12 + 50 closures of dim 12; control ideal of dim {} in {}", ideal.dim(), control.dim()))
}

fn cli_contract() -> Outcome {
    let o = common::run_cli(&["solve-grading", "H", "--json"]);
    ensure(o.status.code() == Some(0), || format!("solve-grading H exit {:?}", o.status.code()))?;
    let v: serde_json::Value = serde_json::from_str(&common::stdout(&o)).map_err(|e| e.to_string())?;
    let grades: Vec<Vec<u8>> = serde_json::from_value(v["grading"]["grades"].clone()).map_err(|e| e.to_string())?;
    ensure(common::parity_matrix(&grades) == common::parity_matrix(&common::triple_degree()), || {
        format!("parity matrix of {grades:?}")
    })?;
    let (_, sigma) = build_quaternions();
    ensure(parity_matrix_of(&sigma).to_rows() == common::parity_matrix(&grades), || "library parity matrix".into())?;

    let o = common::run_cli(&["solve-grading", "O", "--json"]);
    ensure(o.status.code() == Some(1), || format!("solve-grading O exit {:?}", o.status.code()))?;
    let v: serde_json::Value = serde_json::from_str(&common::stdout(&o)).map_err(|e| e.to_string())?;
    ensure(v["witness"].is_object(), || "no witness in O output".into())?;

    for name in ["H", "O"] {
        let first = common::stdout(&common::run_cli(&["table", name, "--json"]));
        table_from_json(&first).map_err(|e| e.to_string())?;
        let path = common::scratch_file(name);
        std::fs::write(&path, &first).map_err(|e| e.to_string())?;
        let second = common::stdout(&common::run_cli(&["table", path.to_str().unwrap(), "--json"]));
        std::fs::remove_file(&path).ok();
        ensure(first == second, || format!("{name}: round trip differs"))?;
    }
    Ok("H exit 0 with the triple-degree parities; O exit 1 with witness; H, O round trips identical".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("1 Hamilton relations", hamilton_relations),
        ("2 graded commutativity of H", graded_commutativity_of_h),
        ("3 sign-rule equivalence", sign_rule_equivalence),
        ("4 octonion impossibility", octonion_impossibility),
        ("5 solver-oracle agreement", solver_oracle_agreement),
        ("6 octonion construction", octonion_construction),
        ("7 quaternionization", quaternionization),
        ("8 simplicity evidence", simplicity),
        ("9 CLI contract", cli_contract),
    ];
    let mut failed = Vec::new();
    let mut report = std::io::stdout().lock();
    writeln!(report).unwrap();
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => writeln!(report, "[PASS] {name} ({secs:.2}s): {detail}").unwrap(),
            Err(detail) => {
                writeln!(report, "[FAIL] {name} ({secs:.2}s): {detail}").unwrap();
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
