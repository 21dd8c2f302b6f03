use proptest::prelude::*;

use super::*;
use crate::constructions::{group_algebra_hcq, loop_function_hcq, mirror_construction, LoopTable};
use crate::exactlin::Field;

fn q(n: i64) -> Scalar {
    Field::Rational.from_i64(n)
}

fn kc2() -> GCHopfCoquasigroup {
    group_algebra_hcq(&GroupTable::cyclic(2), Field::Rational)
}

fn kc3_gf7() -> GCHopfCoquasigroup {
    group_algebra_hcq(&GroupTable::cyclic(3), Field::prime(7).unwrap())
}

fn el(p: Grade, xs: &[i64]) -> GradedElement {
    GradedElement::new(p, xs.iter().map(|&x| q(x)).collect())
}

#[test]
fn group_algebra_products() {
    let h = kc2();
    let g = h.basis_element(0, 1);
    assert_eq!(h.mul(&g, &g).unwrap(), h.basis_element(0, 0));
    let x = el(0, &[3, -2]);
    assert_eq!(h.mul(&h.unit_element(0), &x).unwrap(), x);
}

#[test]
fn cross_grade_product_is_reported() {
    let h = mirror_construction(&kc2(), &GroupTable::cyclic(2)).unwrap();
    let err = h.mul(&h.unit_element(0), &h.unit_element(1)).unwrap_err();
    assert_eq!(err, Error::GradeMismatch { left: 0, right: 1 });
}

#[test]
fn comultiplication_of_group_likes() {
    let h = kc2();
    assert_eq!(h.comult(0, 0, &h.basis_element(0, 1)).unwrap(), vec![q(0), q(0), q(0), q(1)]);
    assert_eq!(h.comult(0, 0, &h.basis_element(0, 0)).unwrap(), vec![q(1), q(0), q(0), q(0)]);
    let m = mirror_construction(&kc2(), &GroupTable::cyclic(2)).unwrap();
    for p in 0..2 {
        for r in 0..2 {
            let pq = m.group().mul(p, r);
            let unit = m.unit_element(pq);
            let expected = m.pure_tensor(&m.unit_element(p), &m.unit_element(r));
            assert_eq!(m.comult(p, r, &unit).unwrap(), expected);
        }
    }
    assert!(matches!(m.comult(1, 1, &m.unit_element(1)), Err(Error::GradeMismatch { .. })));
}

#[test]
fn counit_values() {
    let h = kc2();
    assert_eq!(h.counit_apply(&h.unit_element(0)).unwrap(), q(1));
    assert_eq!(h.counit_apply(&h.basis_element(0, 1)).unwrap(), q(1));
    assert_eq!(h.counit_apply(&h.zero_element(0)).unwrap(), q(0));
    let m = mirror_construction(&kc2(), &GroupTable::cyclic(2)).unwrap();
    assert!(matches!(m.counit_apply(&m.unit_element(1)), Err(Error::GradeMismatch { .. })));
}

#[test]
fn antipode_values() {
    let h = kc2();
    assert_eq!(h.antipode_apply(&h.basis_element(0, 1)).unwrap(), h.basis_element(0, 1));
    let m = mirror_construction(&kc3_gf7(), &GroupTable::cyclic(3)).unwrap();
    for p in 0..3 {
        let s = m.antipode_apply(&m.unit_element(p)).unwrap();
        assert_eq!(s, m.unit_element(m.group().inv(p)));
        // S_p(i_p(g)) = i_{p⁻¹}(g²)
        let s = m.antipode_apply(&m.basis_element(p, 1)).unwrap();
        assert_eq!(s, m.basis_element(m.group().inv(p), 2));
    }
}

#[test]
fn element_inverses() {
    let h = kc2();
    let g = h.basis_element(0, 1);
    assert_eq!(h.invert_element(&g).unwrap(), g);
    assert_eq!(h.invert_element(&h.unit_element(0)).unwrap(), h.unit_element(0));
    assert!(matches!(h.invert_element(&h.zero_element(0)), Err(Error::NotInvertible { rank: 0, size: 2 })));
    // e + g is a zero divisor
    assert!(matches!(h.invert_element(&el(0, &[1, 1])), Err(Error::NotInvertible { rank: 1, .. })));
    let x = el(0, &[2, 1]);
    let inv = h.invert_element(&x).unwrap();
    assert_eq!(h.mul(&x, &inv).unwrap(), h.unit_element(0));
}

#[test]
fn adjoint_action() {
    let h = kc2();
    let x = el(0, &[5, -3]);
    assert_eq!(h.adjoint_conjugate(&h.basis_element(0, 1), &x).unwrap(), x);
    assert_eq!(h.adjoint_conjugate(&h.unit_element(0), &x).unwrap(), x);
    let s3 = group_algebra_hcq(&GroupTable::s3(), Field::Rational);
    let r = s3.basis_element(0, 1);
    assert_eq!(s3.adjoint_conjugate(&r, &s3.unit_element(0)).unwrap(), s3.unit_element(0));
    // conjugating a 3-cycle by a transposition gives the other 3-cycle
    let t = GroupTable::s3();
    let c = s3.basis_element(0, 3);
    let expected = s3.basis_element(0, t.mul(t.mul(1, 3), t.inv(1)));
    assert_eq!(s3.adjoint_conjugate(&r, &c).unwrap(), expected);
    assert_ne!(expected, c);
}

#[test]
fn hopf_algebras_pass_the_battery() {
    for h in [kc2(), kc3_gf7(), group_algebra_hcq(&GroupTable::s3(), Field::Rational)] {
        let s = h.verify_structure();
        assert!(s.all_passed(), "{s}");
        let c = h.verify_coquasigroup();
        assert!(c.all_passed(), "{c}");
        assert_eq!(h.coassociativity_witness(), Coassociativity::Coassociative);
    }
}

#[test]
fn broken_antipode_has_witness_at_g() {
    let h = kc2();
    let s = Mat::from_rows(vec![vec![q(1), q(1)], vec![q(0), q(0)]]).unwrap();
    let broken = GCHopfCoquasigroup::new(
        h.field(),
        h.group().clone(),
        h.components().to_vec(),
        vec![h.delta(0, 0).clone()],
        h.counit().to_vec(),
        vec![s],
    )
    .unwrap();
    let report = broken.verify_coquasigroup();
    assert!(!report.all_passed());
    let fails: Vec<_> = report.failures().collect();
    assert!(fails.iter().all(|c| c.basis == vec!["g".to_string()]));
    assert!(fails.iter().any(|c| c.id == "coquasi.left.s1"));
}

#[test]
fn moufang_function_algebra_is_not_coassociative() {
    let h = loop_function_hcq(&LoopTable::moufang12(), Field::Rational).unwrap();
    assert!(h.verify_coquasigroup().all_passed());
    match h.coassociativity_witness() {
        Coassociativity::Witness(w) => assert_ne!(w.left, w.right),
        Coassociativity::Coassociative => panic!("expected a witness"),
    }
    let m = mirror_construction(&kc3_gf7(), &GroupTable::cyclic(2)).unwrap();
    assert_eq!(m.coassociativity_witness(), Coassociativity::Coassociative);
}

#[test]
fn shape_errors_are_located() {
    let h = kc2();
    let err = GCHopfCoquasigroup::new(
        h.field(),
        h.group().clone(),
        h.components().to_vec(),
        vec![h.delta(0, 0).clone()],
        vec![q(1), q(1), q(1)],
        vec![h.antipode(0).clone()],
    )
    .unwrap_err();
    assert!(matches!(err, Error::Shape { ref location, .. } if location == "/counit"));
    let err = GCHopfCoquasigroup::new(
        h.field(),
        h.group().clone(),
        h.components().to_vec(),
        vec![Mat::zeros(h.field(), 3, 2)],
        h.counit().to_vec(),
        vec![h.antipode(0).clone()],
    )
    .unwrap_err();
    assert!(matches!(err, Error::Shape { ref location, .. } if location == "/delta/0,0"));
}

#[test]
fn foreign_scalars_are_rejected() {
    let h = kc2();
    let err = GCHopfCoquasigroup::new(
        h.field(),
        h.group().clone(),
        h.components().to_vec(),
        vec![h.delta(0, 0).clone()],
        vec![Field::prime(5).unwrap().one(), q(1)],
        vec![h.antipode(0).clone()],
    )
    .unwrap_err();
    assert!(matches!(err, Error::Shape { .. }));
}

fn small_vec(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-4i64..5, dim)
}

proptest! {
    #[test]
    fn comult_is_multiplicative_on_random_elements(a in small_vec(3), b in small_vec(3), p in 0usize..2, r in 0usize..2) {
        let m = mirror_construction(&group_algebra_hcq(&GroupTable::cyclic(3), Field::Rational), &GroupTable::cyclic(2)).unwrap();
        let pq = m.group().mul(p, r);
        let (x, y) = (el(pq, &a), el(pq, &b));
        let lhs = m.comult(p, r, &m.mul(&x, &y).unwrap()).unwrap();
        let (dx, dy) = (m.comult(p, r, &x).unwrap(), m.comult(p, r, &y).unwrap());
        let legs = vec![axioms::leg(&m, p), axioms::leg(&m, r)];
        let tx = LegTensor::from_block(m.field(), legs.clone(), &[0, 0], dx);
        let ty = LegTensor::from_block(m.field(), legs, &[0, 0], dy);
        prop_assert_eq!(m.tensor_vec(&axioms::multiply(&m, &tx, &ty)), lhs);
    }

    #[test]
    fn antipode_inverts_grade(p in 0usize..6, a in small_vec(2)) {
        let m = mirror_construction(&kc2(), &GroupTable::s3()).unwrap();
        let s = m.antipode_apply(&el(p, &a)).unwrap();
        prop_assert_eq!(s.grade, m.group().inv(p));
    }

    #[test]
    fn inverses_are_two_sided(a in small_vec(3)) {
        let h = group_algebra_hcq(&GroupTable::cyclic(3), Field::Rational);
        let x = el(0, &a);
        if let Ok(inv) = h.invert_element(&x) {
            prop_assert_eq!(h.mul(&x, &inv).unwrap(), h.unit_element(0));
            prop_assert_eq!(h.mul(&inv, &x).unwrap(), h.unit_element(0));
        }
    }
}
