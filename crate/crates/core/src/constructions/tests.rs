use super::*;
use crate::hcq::Coassociativity;
use crate::ore::build_extension;

fn q(n: i64) -> Scalar {
    Field::Rational.from_i64(n)
}

fn qs(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| q(x)).collect()
}

fn mat(rows: &[&[i64]]) -> Mat {
    Mat::from_rows(rows.iter().map(|r| qs(r)).collect()).unwrap()
}

fn kc2() -> GCHopfCoquasigroup {
    group_algebra_hcq(&GroupTable::cyclic(2), Field::Rational)
}

#[test]
fn group_algebras_pass() {
    let gf7 = Field::prime(7).unwrap();
    for (g, f) in [
        (GroupTable::trivial(), Field::Rational),
        (GroupTable::cyclic(2), Field::Rational),
        (GroupTable::cyclic(3), gf7),
    ] {
        let h = group_algebra_hcq(&g, f);
        assert!(h.verify_structure().all_passed());
        assert!(h.verify_coquasigroup().all_passed());
    }
    assert_eq!(kc2().component(0).labels(), ["e", "g"]);
    let s3 = group_algebra_hcq(&GroupTable::s3(), Field::Rational);
    assert_eq!(s3.component(0).labels()[1], "x1");
}

#[test]
fn loop_function_algebras() {
    let c3 = LoopTable::from_group(&GroupTable::cyclic(3));
    let h = loop_function_hcq(&c3, Field::Rational).unwrap();
    assert!(h.verify_structure().all_passed());
    assert_eq!(h.coassociativity_witness(), Coassociativity::Coassociative);

    let m = LoopTable::moufang12();
    assert!(!m.is_associative());
    let h = loop_function_hcq(&m, Field::Rational).unwrap();
    assert!(h.verify_coquasigroup().all_passed());
    assert!(matches!(h.coassociativity_witness(), Coassociativity::Witness(_)));

    // an order-5 loop without the inverse property
    let table = vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 3, 4, 2],
        vec![2, 4, 0, 1, 3],
        vec![3, 2, 4, 0, 1],
        vec![4, 3, 1, 2, 0],
    ];
    let l = LoopTable::new(table, 0).unwrap();
    assert!(matches!(loop_function_hcq(&l, Field::Rational), Err(Error::NotIpLoop { .. })));
}

#[test]
fn mirrors() {
    let m = mirror_construction(&kc2(), &GroupTable::cyclic(2)).unwrap();
    assert_eq!(m.group().order(), 2);
    assert!(m.verify_structure().all_passed());
    assert!(m.verify_coquasigroup().all_passed());

    let moufang = loop_function_hcq(&LoopTable::moufang12(), Field::prime(2).unwrap()).unwrap();
    let mm = mirror_construction(&moufang, &GroupTable::cyclic(2)).unwrap();
    let report = mm.verify_coquasigroup();
    assert!(report.all_passed());
    let mut pairs: Vec<Vec<usize>> = report.checks.iter().map(|c| c.grades.clone()).filter(|g| g.len() == 2).collect();
    pairs.sort();
    pairs.dedup();
    assert_eq!(pairs.len(), 4);
    assert!(matches!(mm.coassociativity_witness(), Coassociativity::Witness(_)));

    assert!(matches!(mirror_construction(&m, &GroupTable::cyclic(2)), Err(Error::Shape { .. })));
}

#[test]
fn taft_data() {
    let gf7 = Field::prime(7).unwrap();
    let (h, datum) = taft_example(3, gf7.from_i64(2));
    assert_eq!(datum.chi, vec![gf7.one(), gf7.from_i64(2), gf7.from_i64(4)]);
    assert_eq!(datum.r[0], h.basis_element(0, 1));
    // 3 is not a cube root of unity mod 7
    let (h, datum) = taft_example(3, gf7.from_i64(3));
    let r = crate::ore::check_ore_conditions(&h, &datum).unwrap();
    assert!(r.failed_ids().contains(&"ore.character".to_string()));
}

#[test]
fn dual_of_group_algebra_is_function_algebra() {
    let c2 = GroupTable::cyclic(2);
    let dual = dualize(&loop_algebra_hq(&LoopTable::from_group(&c2), Field::Rational)).unwrap();
    let direct = loop_function_hcq(&LoopTable::from_group(&c2), Field::Rational).unwrap();
    assert!(dual.structure_eq(&direct));
    assert!(dual.verify_structure().all_passed());
    assert!(dual.verify_coquasigroup().all_passed());
}

#[test]
fn double_dual_is_identity() {
    for h in [kc2(), mirror_construction(&kc2(), &GroupTable::s3()).unwrap()] {
        let back = dualize(&dualize_coquasigroup(&h)).unwrap();
        assert_eq!(back, h);
    }
    let hq = loop_algebra_hq(&LoopTable::moufang12(), Field::Rational);
    let round = dualize_coquasigroup(&dualize(&hq).unwrap());
    assert_eq!(round, hq);
}

#[test]
fn moufang_dual_matches_direct() {
    let l = LoopTable::moufang12();
    let dual = dualize(&loop_algebra_hq(&l, Field::Rational)).unwrap();
    let direct = loop_function_hcq(&l, Field::Rational).unwrap();
    assert!(dual.structure_eq(&direct));
}

#[test]
fn dualize_rejects_bad_shapes() {
    let mut hq = loop_algebra_hq(&LoopTable::from_group(&GroupTable::cyclic(2)), Field::Rational);
    hq.comult[0] = Mat::zeros(Field::Rational, 3, 2);
    assert!(matches!(dualize(&hq), Err(Error::Shape { ref location, .. }) if location == "/comult/0"));
}

fn taft2() -> OreDatum {
    OreDatum::new(qs(&[1, -1]), vec![GradedElement::new(0, qs(&[0, 1]))], vec![Mat::zeros(Field::Rational, 2, 2)])
}

/// `δ'(φh) = φ(δh) + φ(τh)d − dφ(h)` with `φ = id`, `d = e − g`.
fn shifted(delta_g: &[i64]) -> OreDatum {
    let mut d = taft2();
    d.delta = vec![Mat::from_columns(Field::Rational, 2, &[qs(&[0, 0]), qs(delta_g)])];
    d
}

fn shift_iso(h: &GCHopfCoquasigroup, d: &[i64]) -> IsoDatum {
    let mut iso = IsoDatum::identity(h);
    iso.d = vec![GradedElement::new(0, qs(d))];
    iso
}

#[test]
fn identity_iso_passes() {
    let h = kc2();
    let datum = taft2();
    let iso = IsoDatum::identity(&h);
    assert!(check_iso_conditions(&h, &h, &datum, &datum, &iso).unwrap().all_passed());
    let ext = build_extension(&h, &datum, false).unwrap();
    assert!(build_and_verify_iso(&ext, &ext, &iso, 2, false).unwrap().all_passed());
}

#[test]
fn shifted_generator_iso() {
    let h = kc2();
    let (src, dst) = (taft2(), shifted(&[2, -2]));
    let iso = shift_iso(&h, &[1, -1]);
    let r = check_iso_conditions(&h, &h, &src, &dst, &iso).unwrap();
    assert!(r.all_passed(), "{r}");
    let a = build_extension(&h, &src, false).unwrap();
    let b = build_extension(&h, &dst, false).unwrap();
    let r = build_and_verify_iso(&a, &b, &iso, 3, false).unwrap();
    assert!(r.all_passed(), "{r}");
}

#[test]
fn non_skew_primitive_shift_fails() {
    let h = kc2();
    let iso = shift_iso(&h, &[1, 0]);
    let r = check_iso_conditions(&h, &h, &taft2(), &shifted(&[2, -2]), &iso).unwrap();
    let failed = r.failed_ids();
    assert!(failed.contains(&"iso.d_family".to_string()));
}

#[test]
fn mutated_target_breaks_multiplicativity() {
    let h = kc2();
    let (src, dst) = (taft2(), shifted(&[1, -1]));
    let iso = shift_iso(&h, &[1, -1]);
    let r = check_iso_conditions(&h, &h, &src, &dst, &iso).unwrap();
    assert_eq!(r.failed_ids(), vec!["iso.delta"]);
    let a = build_extension(&h, &src, false).unwrap();
    let b = build_extension(&h, &dst, false).unwrap();
    assert!(matches!(build_and_verify_iso(&a, &b, &iso, 3, false), Err(Error::ConditionFailure { .. })));
    let r = build_and_verify_iso(&a, &b, &iso, 3, true).unwrap();
    let fail = r
        .failures()
        .find(|c| c.id == "iso.ext.mult" && c.basis == vec!["y".to_string(), "g".to_string()])
        .expect("multiplicativity witness");
    assert_ne!(fail.witness.as_ref().unwrap().left, fail.witness.as_ref().unwrap().right);
}

#[test]
fn iso_shape_errors() {
    let h = kc2();
    let mut iso = IsoDatum::identity(&h);
    iso.phi = vec![mat(&[&[1]])];
    assert!(matches!(check_iso_conditions(&h, &h, &taft2(), &taft2(), &iso), Err(Error::Shape { .. })));
}
