//! The axiom battery for group-cograded Hopf coquasigroups, written once over
//! the [`GradedStructure`] trait so it runs unchanged on a base instance and
//! on an Ore extension.
//!
//! Every identity is multilinear, so evaluating it on the structure's test
//! monomials is complete for a finite-dimensional instance (and complete up
//! to the degree bound for an extension).

use std::cell::Cell;

use super::tensor::{Leg, LegTensor, Mono};
use crate::exactlin::{Field, Scalar};
use crate::grading::{Grade, GroupTable};
use crate::report::VerificationReport;

/// Structure maps of a graded algebra/coalgebra, evaluated on monomials.
pub trait GradedStructure {
    fn field(&self) -> Field;
    fn group(&self) -> &GroupTable;
    /// Dimension of the coefficient space of component `p`.
    fn dim(&self, p: Grade) -> usize;
    fn label(&self, p: Grade, m: Mono) -> String;
    fn unit(&self, p: Grade) -> LegTensor;
    /// Product of two monomials of component `p`, as a one-leg tensor.
    fn mul_mono(&self, p: Grade, a: Mono, b: Mono) -> LegTensor;
    /// `Δ_{p,q}` of a monomial of component `pq`.
    fn comult_mono(&self, p: Grade, q: Grade, x: Mono) -> LegTensor;
    /// Counit of a monomial of the identity component.
    fn counit_mono(&self, x: Mono) -> Scalar;
    /// `S_p` of a monomial of component `p`; `None` when undefined.
    fn antipode_mono(&self, p: Grade, x: Mono) -> Option<LegTensor>;
    /// Monomials the battery quantifies over in component `p`.
    fn test_monomials(&self, p: Grade) -> Vec<Mono>;
}

pub fn leg<S: GradedStructure + ?Sized>(s: &S, p: Grade) -> Leg {
    Leg { grade: p, dim: s.dim(p) }
}

pub fn mono<S: GradedStructure + ?Sized>(s: &S, p: Grade, m: Mono) -> LegTensor {
    LegTensor::pure(s.field(), vec![leg(s, p)], &[m], s.field().one())
}

pub fn render<S: GradedStructure + ?Sized>(s: &S, t: &LegTensor) -> String {
    t.render(&|g, m| s.label(g, m))
}

/// Legwise product of two tensors with identical legs.
pub fn multiply<S: GradedStructure + ?Sized>(s: &S, x: &LegTensor, y: &LegTensor) -> LegTensor {
    let grades = x.grades();
    x.legwise_mul(y, |k, a, b| s.mul_mono(grades[k], a, b))
}

/// Applies `Δ_{p,q}` to leg `k` (whose grade must be `pq`).
pub fn comult_leg<S: GradedStructure + ?Sized>(
    s: &S,
    t: &LegTensor,
    k: usize,
    p: Grade,
    q: Grade,
) -> LegTensor {
    debug_assert_eq!(t.legs()[k].grade, s.group().mul(p, q));
    t.map_leg(k, &[leg(s, p), leg(s, q)], |m| s.comult_mono(p, q, m))
}

/// Applies the antipode to leg `k`, or `None` if it is undefined there.
pub fn antipode_leg<S: GradedStructure + ?Sized>(
    s: &S,
    t: &LegTensor,
    k: usize,
) -> Option<LegTensor> {
    let p = t.legs()[k].grade;
    let target = leg(s, s.group().inv(p));
    let undefined = Cell::new(false);
    let out = t.map_leg(k, &[target], |m| match s.antipode_mono(p, m) {
        Some(x) => x,
        None => {
            undefined.set(true);
            LegTensor::zero(s.field(), vec![target])
        }
    });
    (!undefined.get()).then_some(out)
}

pub fn counit_leg<S: GradedStructure + ?Sized>(s: &S, t: &LegTensor, k: usize) -> LegTensor {
    debug_assert_eq!(t.legs()[k].grade, s.group().identity());
    t.apply_functional(k, |m| s.counit_mono(m))
}

/// Multiplies legs `k` and `k+1`, which must share a grade.
pub fn mul_legs<S: GradedStructure + ?Sized>(s: &S, t: &LegTensor, k: usize) -> LegTensor {
    let p = t.legs()[k].grade;
    debug_assert_eq!(t.legs()[k + 1].grade, p);
    t.merge_legs(k, leg(s, p), |a, b| s.mul_mono(p, a, b))
}

fn counit_of<S: GradedStructure + ?Sized>(s: &S, x: &LegTensor) -> Scalar {
    counit_leg(s, x, 0).as_scalar()
}

/// Associativity and unit laws in every component.
pub fn check_algebra<S: GradedStructure + ?Sized>(s: &S) -> VerificationReport {
    let mut report = VerificationReport::new();
    for p in s.group().elements() {
        let ms = s.test_monomials(p);
        let unit = s.unit(p);
        for &a in &ms {
            let x = mono(s, p, a);
            let label = vec![s.label(p, a)];
            let l = multiply(s, &unit, &x);
            let r = multiply(s, &x, &unit);
            compare(s, &mut report, "alg.unit.left", &[p], label.clone(), &l, &x);
            compare(s, &mut report, "alg.unit.right", &[p], label, &r, &x);
        }
        let products: Vec<Vec<LegTensor>> = ms
            .iter()
            .map(|&a| ms.iter().map(|&b| s.mul_mono(p, a, b)).collect())
            .collect();
        for (i, &a) in ms.iter().enumerate() {
            for (j, &b) in ms.iter().enumerate() {
                for (k, &c) in ms.iter().enumerate() {
                    let l = multiply(s, &products[i][j], &mono(s, p, c));
                    let r = multiply(s, &mono(s, p, a), &products[j][k]);
                    let label = vec![s.label(p, a), s.label(p, b), s.label(p, c)];
                    compare(s, &mut report, "alg.assoc", &[p], label, &l, &r);
                }
            }
        }
    }
    report
}

/// `Δ_{p,q}` is a unital algebra map for every grade pair. Unitality is
/// reported under its own id.
pub fn check_comult<S: GradedStructure + ?Sized>(s: &S) -> VerificationReport {
    let mut report = VerificationReport::new();
    let g = s.group();
    for p in g.elements() {
        for q in g.elements() {
            let pq = g.mul(p, q);
            let ms = s.test_monomials(pq);
            let images: Vec<LegTensor> = ms.iter().map(|&a| s.comult_mono(p, q, a)).collect();
            for (i, &a) in ms.iter().enumerate() {
                for (j, &b) in ms.iter().enumerate() {
                    let ab = s.mul_mono(pq, a, b);
                    let l = comult_leg(s, &ab, 0, p, q);
                    let r = multiply(s, &images[i], &images[j]);
                    let label = vec![s.label(pq, a), s.label(pq, b)];
                    compare(s, &mut report, "comult.mult", &[p, q], label, &l, &r);
                }
            }
            let l = comult_leg(s, &s.unit(pq), 0, p, q);
            let r = s.unit(p).kron(&s.unit(q));
            compare(s, &mut report, "comult.unit", &[p, q], vec!["1".into()], &l, &r);
        }
    }
    report
}

/// Counit laws, `ε(1) = 1`, and multiplicativity of `ε` on the identity component.
pub fn check_counit<S: GradedStructure + ?Sized>(s: &S) -> VerificationReport {
    let mut report = VerificationReport::new();
    let g = s.group();
    let e = g.identity();
    let one = s.field().one();
    let eps_unit = counit_of(s, &s.unit(e));
    report.compare("counit.unit", &[e], vec!["1".into()], &eps_unit, &one);
    for p in g.elements() {
        for a in s.test_monomials(p) {
            let x = mono(s, p, a);
            let label = vec![s.label(p, a)];
            let right = counit_leg(s, &s.comult_mono(p, e, a), 1);
            compare(s, &mut report, "counit.right", &[p], label.clone(), &right, &x);
            let left = counit_leg(s, &s.comult_mono(e, p, a), 0);
            compare(s, &mut report, "counit.left", &[p], label, &left, &x);
        }
    }
    let ms = s.test_monomials(e);
    for &a in &ms {
        for &b in &ms {
            let l = counit_of(s, &s.mul_mono(e, a, b));
            let r = &s.counit_mono(a) * &s.counit_mono(b);
            let label = vec![s.label(e, a), s.label(e, b)];
            report.compare("counit.mult", &[e], label, &l, &r);
        }
    }
    report
}

/// `S_p` is an algebra anti-homomorphism `H_p → H_{p⁻¹}` with `S_p(1_p) = 1_{p⁻¹}`.
pub fn check_antipode<S: GradedStructure + ?Sized>(s: &S) -> VerificationReport {
    let mut report = VerificationReport::new();
    let g = s.group();
    for p in g.elements() {
        let pinv = g.inv(p);
        let Some(su) = antipode_leg(s, &s.unit(p), 0) else {
            undefined_antipode(&mut report, p);
            continue;
        };
        compare(s, &mut report, "antipode.unit", &[p], vec!["1".into()], &su, &s.unit(pinv));
        let ms = s.test_monomials(p);
        let images: Vec<LegTensor> = ms
            .iter()
            .filter_map(|&a| s.antipode_mono(p, a))
            .collect();
        if images.len() != ms.len() {
            undefined_antipode(&mut report, p);
            continue;
        }
        for (i, &a) in ms.iter().enumerate() {
            for (j, &b) in ms.iter().enumerate() {
                let ab = s.mul_mono(p, a, b);
                let Some(l) = antipode_leg(s, &ab, 0) else {
                    undefined_antipode(&mut report, p);
                    continue;
                };
                let r = multiply(s, &images[j], &images[i]);
                let label = vec![s.label(p, a), s.label(p, b)];
                compare(s, &mut report, "antipode.anti", &[p], label, &l, &r);
            }
        }
    }
    report
}

fn undefined_antipode(report: &mut VerificationReport, p: Grade) {
    report.fail("antipode.defined", &[p], vec![], "undefined", "defined");
}

/// The four coquasigroup composites for every grade pair `(p, q)` and every
/// test monomial `h` of `H_p`:
///
/// * `left.s1`:  `(m_q⊗id)(S_{q⁻¹}⊗id⊗id)(id⊗Δ_{q,p})Δ_{q⁻¹,qp}(h) = 1_q⊗h`
/// * `left.s2`:  `(m_q⊗id)(id⊗S_{q⁻¹}⊗id)(id⊗Δ_{q⁻¹,p})Δ_{q,q⁻¹p}(h) = 1_q⊗h`
/// * `right.s3`: `(id⊗m_q)(id⊗id⊗S_{q⁻¹})(Δ_{p,q}⊗id)Δ_{pq,q⁻¹}(h) = h⊗1_q`
/// * `right.s2`: `(id⊗m_q)(id⊗S_{q⁻¹}⊗id)(Δ_{p,q⁻¹}⊗id)Δ_{pq⁻¹,q}(h) = h⊗1_q`
pub fn check_coquasigroup<S: GradedStructure + ?Sized>(s: &S) -> VerificationReport {
    let mut report = VerificationReport::new();
    let g = s.group();
    for p in g.elements() {
        for q in g.elements() {
            let qi = g.inv(q);
            for h in s.test_monomials(p) {
                let x = mono(s, p, h);
                let label = vec![s.label(p, h)];
                let left_target = s.unit(q).kron(&x);
                let right_target = x.kron(&s.unit(q));

                // left.s1
                let t = s.comult_mono(qi, g.mul(q, p), h);
                let t = comult_leg(s, &t, 1, q, p);
                let result = antipode_leg(s, &t, 0).map(|t| mul_legs(s, &t, 0));
                record(s, &mut report, "coquasi.left.s1", &[p, q], label.clone(), result, &left_target);

                // left.s2
                let t = s.comult_mono(q, g.mul(qi, p), h);
                let t = comult_leg(s, &t, 1, qi, p);
                let result = antipode_leg(s, &t, 1).map(|t| mul_legs(s, &t, 0));
                record(s, &mut report, "coquasi.left.s2", &[p, q], label.clone(), result, &left_target);

                // right.s3
                let t = s.comult_mono(g.mul(p, q), qi, h);
                let t = comult_leg(s, &t, 0, p, q);
                let result = antipode_leg(s, &t, 2).map(|t| mul_legs(s, &t, 1));
                record(s, &mut report, "coquasi.right.s3", &[p, q], label.clone(), result, &right_target);

                // right.s2
                let t = s.comult_mono(g.mul(p, qi), q, h);
                let t = comult_leg(s, &t, 0, p, qi);
                let result = antipode_leg(s, &t, 1).map(|t| mul_legs(s, &t, 1));
                record(s, &mut report, "coquasi.right.s2", &[p, q], label, result, &right_target);
            }
        }
    }
    report
}

/// A failure of `(Δ_{p,q}⊗id)Δ_{pq,s} = (id⊗Δ_{q,s})Δ_{p,qs}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoassociativityWitness {
    pub grades: [Grade; 3],
    pub basis: String,
    pub left: String,
    pub right: String,
}

/// Searches all grade triples and test monomials for a coassociativity
/// failure; `None` means the instance is coassociative.
pub fn find_coassociativity_witness<S: GradedStructure + ?Sized>(
    s: &S,
) -> Option<CoassociativityWitness> {
    let g = s.group();
    for p in g.elements() {
        for q in g.elements() {
            for r in g.elements() {
                let pqr = g.mul(g.mul(p, q), r);
                for x in s.test_monomials(pqr) {
                    let l = comult_leg(s, &s.comult_mono(g.mul(p, q), r, x), 0, p, q);
                    let rr = comult_leg(s, &s.comult_mono(p, g.mul(q, r), x), 1, q, r);
                    if l != rr {
                        return Some(CoassociativityWitness {
                            grades: [p, q, r],
                            basis: s.label(pqr, x),
                            left: render(s, &l),
                            right: render(s, &rr),
                        });
                    }
                }
            }
        }
    }
    None
}

fn compare<S: GradedStructure + ?Sized>(
    s: &S,
    report: &mut VerificationReport,
    id: &str,
    grades: &[Grade],
    basis: Vec<String>,
    left: &LegTensor,
    right: &LegTensor,
) -> bool {
    if left == right {
        report.pass(id, grades, basis);
        true
    } else {
        report.fail(id, grades, basis, render(s, left), render(s, right));
        false
    }
}

fn record<S: GradedStructure + ?Sized>(
    s: &S,
    report: &mut VerificationReport,
    id: &str,
    grades: &[Grade],
    basis: Vec<String>,
    result: Option<LegTensor>,
    expected: &LegTensor,
) {
    match result {
        Some(t) => {
            compare(s, report, id, grades, basis, &t, expected);
        }
        None => report.fail(id, grades, basis, "antipode undefined", render(s, expected)),
    }
}

/// Everything except the coquasigroup composites.
pub fn check_structure<S: GradedStructure + ?Sized>(s: &S) -> VerificationReport {
    let mut report = check_algebra(s);
    report.extend(check_comult(s));
    report.extend(check_counit(s));
    report.extend(check_antipode(s));
    report
}
