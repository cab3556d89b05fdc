mod common;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use triplets::algebra::{
    build_clifford, build_complex, build_octonions, build_quaternions, cayley_dickson_double, check_graded_commutative,
    commutation_relation, elem_mul, norm_squared, Commutation, Involution,
};
use triplets::rational::{int, Rational};
use triplets::{Error, GradeVec, Grading, Sign, SquareConvention};

#[test]
fn quaternion_products_match_hamilton_formula() {
    let (h, _) = build_quaternions();
    let table = common::dense_table(&h);
    for a in 0..4 {
        for b in 0..4 {
            let (x, y) = (common::unit_vector(4, a), common::unit_vector(4, b));
            let expected = common::hamilton(x.try_into().unwrap(), y.try_into().unwrap());
            assert_eq!(table[a][b], expected.to_vec(), "{} * {}", h.names()[a], h.names()[b]);
        }
    }
}

#[test]
fn expanded_products() {
    let (h, _) = build_quaternions();
    let one = h.named("1").unwrap();
    let i = h.named("i").unwrap();
    let j = h.named("j").unwrap();
    let k = h.named("k").unwrap();
    let p = elem_mul(&one.add(&i).unwrap(), &one.sub(&i).unwrap()).unwrap();
    // 1 - i + i - i^2 = 2
    assert_eq!(common::hamilton([1, 1, 0, 0], [1, -1, 0, 0]), [2, 0, 0, 0]);
    assert_eq!(p, one.scale(&int(2)));
    assert_eq!(i.mul(&j).unwrap().mul(&k).unwrap(), one.neg());
    assert_eq!(k.mul(&k).unwrap(), one.neg());
    assert_eq!(i.mul(&i).unwrap(), one.neg());
}

#[test]
fn elements_of_different_tables_do_not_multiply() {
    let (h, _) = build_quaternions();
    let (h2, _) = build_quaternions();
    let err = h.named("i").unwrap().mul(&h2.named("j").unwrap()).unwrap_err();
    assert!(matches!(err, Error::Domain(_)));
}

#[test]
fn negative_clifford_plane_is_h_after_relabeling() {
    let cl = build_clifford(2, &SquareConvention::negative(2)).unwrap();
    let (h, _) = build_quaternions();
    assert!(common::signed_relabeling(&cl, &h).is_some());
    let positive = build_clifford(2, &SquareConvention::positive(2)).unwrap();
    assert!(common::signed_relabeling(&positive, &h).is_none());
}

#[test]
fn double_of_complex_is_h_after_relabeling() {
    let (dc, _) = cayley_dickson_double(&build_complex(), &Involution::standard(2), &int(-1)).unwrap();
    let (h, _) = build_quaternions();
    assert!(common::signed_relabeling(&dc, &h).is_some());
    let roots: Vec<usize> = (1..4).filter(|&a| dc.cell(a, a).coeff(0) == int(-1)).collect();
    assert_eq!(roots, vec![1, 2, 3]);
    for a in 1..4 {
        for b in (a + 1)..4 {
            assert_eq!(commutation_relation(&dc, a, b).unwrap(), Commutation::Anticommute);
        }
    }
}

#[test]
fn octonions_match_recursive_doubling() {
    let o = build_octonions();
    let table = common::dense_table(&o);
    for a in 0..8 {
        for b in 0..8 {
            let p = common::cd_mul(&common::unit_vector(8, a), &common::unit_vector(8, b));
            assert_eq!(table[a][b], p, "{} * {}", o.names()[a], o.names()[b]);
        }
    }
}

#[test]
fn octonion_units() {
    let o = build_octonions();
    let table = common::dense_table(&o);
    let mut pairs = 0;
    for l in 1..8 {
        assert_eq!(table[l][l], {
            let mut v = vec![0; 8];
            v[0] = -1;
            v
        });
        for m in (l + 1)..8 {
            let lm = &table[l][m];
            assert_eq!(lm.iter().filter(|&&c| c != 0).count(), 1);
            assert!(lm[0] == 0 && lm.iter().all(|&c| c.abs() <= 1));
            assert_eq!(*lm, table[m][l].iter().map(|c| -c).collect::<Vec<_>>());
            pairs += 1;
        }
    }
    assert_eq!(pairs, 21);
}

#[test]
fn octonion_associator_witness() {
    let e = |l| common::unit_vector(8, l);
    let left = common::cd_mul(&common::cd_mul(&e(1), &e(2)), &e(4));
    let right = common::cd_mul(&e(1), &common::cd_mul(&e(2), &e(4)));
    assert_eq!(left, e(7));
    assert_eq!(right, e(7).iter().map(|c| -c).collect::<Vec<_>>());

    let o = build_octonions();
    let x = o.named("e1").unwrap().mul(&o.named("e2").unwrap()).unwrap().mul(&o.named("e4").unwrap()).unwrap();
    let y = o.named("e1").unwrap().mul(&o.named("e2").unwrap().mul(&o.named("e4").unwrap()).unwrap()).unwrap();
    assert_eq!(x, o.named("e7").unwrap());
    assert_eq!(y, o.named("e7").unwrap().neg());
}

#[test]
fn octonions_contain_h() {
    let o = build_octonions();
    let (h, _) = build_quaternions();
    for a in 0..4 {
        for b in 0..4 {
            assert_eq!(o.cell(a, b), h.cell(a, b));
        }
    }
    // e1 e2 plays the role of i j = k
    assert_eq!(*o.cell(1, 2), triplets::rational::SparseVec::basis(3));
}

#[test]
fn octonion_norm_is_multiplicative() {
    let o = build_octonions();
    let mut rng = ChaCha8Rng::seed_from_u64(1843);
    let mut draw = || -> Vec<Rational> {
        (0..8).map(|_| BigRational::new(rng.gen_range(-20i64..=20).into(), rng.gen_range(1i64..=12).into())).collect()
    };
    for _ in 0..100 {
        let (xs, ys) = (draw(), draw());
        let x = o.element(xs.iter().cloned().zip(0..)).unwrap();
        let y = o.element(ys.iter().cloned().zip(0..)).unwrap();
        let xy = x.mul(&y).unwrap();
        let xy_dense: Vec<Rational> = (0..8).map(|k| xy.coeff(k)).collect();
        let lhs = common::sum_of_squares(&xy_dense);
        assert_eq!(lhs, common::sum_of_squares(&xs) * common::sum_of_squares(&ys));
        assert_eq!(norm_squared(&xy).unwrap(), lhs);
    }
}

#[test]
fn h_grading_extended_by_zero_fails_on_octonions() {
    let o = build_octonions();
    let (_, sigma) = build_quaternions();
    let mut grades = sigma.grades().to_vec();
    grades.extend(std::iter::repeat_n(GradeVec::zero(3).unwrap(), 4));
    let g = Grading::new(grades).unwrap();
    assert!(check_graded_commutative(&o, &g).unwrap().is_some());
}

#[test]
fn triple_degree_checks_and_a_wrong_one_does_not() {
    let (h, sigma) = build_quaternions();
    assert_eq!(check_graded_commutative(&h, &sigma).unwrap(), None);
    let bits: Vec<GradeVec> = common::triple_degree().iter().map(|b| GradeVec::from_bits(b).unwrap()).collect();
    assert_eq!(sigma.grades(), &bits[..]);
    // giving i the grade of j breaks both linearity and i j = -j i
    let wrong = Grading::new(vec![bits[0], bits[2], bits[2], bits[3]]).unwrap();
    assert!(check_graded_commutative(&h, &wrong).unwrap().is_some());
    assert_eq!(Sign::from_parity(bits[1].parity(&bits[2]).unwrap()), Sign::Minus);
}
