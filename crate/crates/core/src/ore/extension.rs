use std::collections::HashMap;
use std::sync::Mutex;

use super::{check_ore_conditions, derive_tau, OreDatum, SkewPoly};
use crate::error::{Error, Result};
use crate::exactlin::{add_vec, basis_vec, kron, scale_vec, Field, Mat, Scalar};
use crate::grading::{Grade, GroupTable};
use crate::hcq::axioms::{self, GradedStructure};
use crate::hcq::{GCHopfCoquasigroup, GradedElement, Leg, LegTensor, Mono};
use crate::report::VerificationReport;

/// How an extension came to be built.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Provenance {
    pub forced: bool,
    /// Condition ids that failed at build time (empty unless forced).
    pub failed_checks: Vec<String>,
}

type SkewCoeffs = Vec<Vec<Scalar>>;

/// `R = ⊕_p H_p[y_p; τ_p, δ_p]` with `Δ(y_{pq}) = y_p⊗1_q + r_p⊗y_q`,
/// `ε(y_1) = 0` and `S_p(y_p) = −(r_{p⁻¹})⁻¹ y_{p⁻¹}`, each extended
/// (anti-)multiplicatively.
#[derive(Debug)]
pub struct OreExtension {
    base: GCHopfCoquasigroup,
    datum: OreDatum,
    tau: Vec<Mat>,
    r_inv: Vec<Option<Vec<Scalar>>>,
    conditions: VerificationReport,
    provenance: Provenance,
    y_times: Mutex<HashMap<(Grade, u32, usize), SkewCoeffs>>,
    products: Mutex<HashMap<(Grade, Mono, Mono), LegTensor>>,
    comult_y: Mutex<HashMap<(Grade, Grade, u32), LegTensor>>,
    antipode_y: Mutex<HashMap<(Grade, u32), LegTensor>>,
}

/// Checks the datum and materializes `τ`. Failing conditions are an error
/// unless `force` is set, in which case they are kept in the provenance.
pub fn build_extension(h: &GCHopfCoquasigroup, datum: &OreDatum, force: bool) -> Result<OreExtension> {
    let mut conditions = check_ore_conditions(h, datum)?;
    let mut base_report = h.verify_structure();
    base_report.extend(h.verify_coquasigroup());
    let mut failed: Vec<String> = base_report
        .failed_ids()
        .into_iter()
        .map(|id| format!("base.{id}"))
        .collect();
    failed.extend(conditions.failed_ids());
    if !failed.is_empty() && !force {
        return Err(Error::ConditionFailure { failed });
    }
    conditions.sort();
    let g = h.group();
    Ok(OreExtension {
        base: h.clone(),
        datum: datum.clone(),
        tau: datum.taus(h)?,
        r_inv: g
            .elements()
            .map(|p| h.invert_element(&datum.r[p]).ok().map(|x| x.coeffs))
            .collect(),
        conditions,
        provenance: Provenance {
            forced: force,
            failed_checks: failed,
        },
        y_times: Mutex::default(),
        products: Mutex::default(),
        comult_y: Mutex::default(),
        antipode_y: Mutex::default(),
    })
}

fn cached<K, V>(cache: &Mutex<HashMap<K, V>>, key: K, compute: impl FnOnce() -> V) -> V
where
    K: std::hash::Hash + Eq,
    V: Clone,
{
    if let Some(v) = cache.lock().expect("cache lock").get(&key) {
        return v.clone();
    }
    // computed outside the lock: `compute` may consult the same cache
    let v = compute();
    cache.lock().expect("cache lock").insert(key, v.clone());
    v
}

impl OreExtension {
    pub fn base(&self) -> &GCHopfCoquasigroup {
        &self.base
    }

    pub fn datum(&self) -> &OreDatum {
        &self.datum
    }

    pub fn tau(&self, p: Grade) -> &Mat {
        &self.tau[p]
    }

    pub fn r(&self, p: Grade) -> &GradedElement {
        &self.datum.r[p]
    }

    /// `(r_p)⁻¹` by linear solve, if it exists.
    pub fn r_inverse(&self, p: Grade) -> Option<&[Scalar]> {
        self.r_inv[p].as_deref()
    }

    /// The condition report computed at build time.
    pub fn conditions(&self) -> &VerificationReport {
        &self.conditions
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    fn field(&self) -> Field {
        self.base.field()
    }

    fn leg(&self, p: Grade) -> Leg {
        Leg {
            grade: p,
            dim: self.base.dim(p),
        }
    }

    /// The generator `y_p`.
    pub fn y(&self, p: Grade) -> SkewPoly {
        SkewPoly::monomial(p, self.base.component(p).unit().to_vec(), 1)
    }

    pub fn poly(&self, t: &LegTensor) -> SkewPoly {
        SkewPoly::from_tensor(t)
    }

    pub fn tensor(&self, f: &SkewPoly) -> LegTensor {
        f.to_tensor(self.field(), self.base.dim(f.grade()))
    }

    fn check_poly(&self, f: &SkewPoly) -> Result<()> {
        let n = self.base.group().order();
        if f.grade() >= n {
            return Err(Error::IndexOutOfRange { index: f.grade(), order: n });
        }
        let d = self.base.dim(f.grade());
        if f.coeffs().iter().any(|c| c.len() != d) {
            return Err(Error::shape(
                format!("polynomial of grade {}", f.grade()),
                format!("coefficients must have {d} entries"),
            ));
        }
        Ok(())
    }

    /// Left normal form of `yⁱ·e_b`, by repeated use of `y·h = τ(h)y + δ(h)`.
    fn y_power_times(&self, p: Grade, i: u32, b: usize) -> Vec<Vec<Scalar>> {
        cached(&self.y_times, (p, i, b), || {
            let d = self.base.dim(p);
            if i == 0 {
                return vec![basis_vec(self.field(), d, b)];
            }
            let prev = self.y_power_times(p, i - 1, b);
            let mut out = vec![vec![self.field().zero(); d]; prev.len() + 1];
            for (k, c) in prev.iter().enumerate() {
                out[k + 1] = add_vec(&out[k + 1], &self.tau[p].mul_vec(c));
                out[k] = add_vec(&out[k], &self.datum.delta[p].mul_vec(c));
            }
            out
        })
    }

    /// `(e_a yⁱ)(e_b yʲ) = e_a·(yⁱ e_b)·yʲ`.
    fn mono_product(&self, p: Grade, a: Mono, b: Mono) -> LegTensor {
        cached(&self.products, (p, a, b), || {
            let comp = self.base.component(p);
            let ea = basis_vec(self.field(), comp.dim(), a.index);
            let mut t = LegTensor::zero(self.field(), vec![self.leg(p)]);
            for (k, c) in self.y_power_times(p, a.degree, b.index).iter().enumerate() {
                let v = comp.mul_vec(&ea, c);
                t.add_assign(&LegTensor::from_vec(self.field(), self.leg(p), k as u32 + b.degree, v));
            }
            t
        })
    }

    /// `Δ_{p,q}(y_{pq})ⁿ` as a tensor in `R_p⊗R_q`.
    fn comult_y_power(&self, p: Grade, q: Grade, n: u32) -> LegTensor {
        cached(&self.comult_y, (p, q, n), || {
            let field = self.field();
            let unit_p = LegTensor::from_vec(field, self.leg(p), 0, self.base.component(p).unit().to_vec());
            let unit_q = LegTensor::from_vec(field, self.leg(q), 0, self.base.component(q).unit().to_vec());
            if n == 0 {
                return unit_p.kron(&unit_q);
            }
            let y_p = LegTensor::from_vec(field, self.leg(p), 1, self.base.component(p).unit().to_vec());
            let y_q = LegTensor::from_vec(field, self.leg(q), 1, self.base.component(q).unit().to_vec());
            let r_p = LegTensor::from_vec(field, self.leg(p), 0, self.datum.r[p].coeffs.clone());
            let dy = y_p.kron(&unit_q).add(&r_p.kron(&y_q));
            axioms::multiply(self, &self.comult_y_power(p, q, n - 1), &dy)
        })
    }

    /// `S_p(y_p)ⁿ` in `R_{p⁻¹}`, or `None` when `r_{p⁻¹}` is not invertible.
    fn antipode_y_power(&self, p: Grade, n: u32) -> Option<LegTensor> {
        let pinv = self.base.group().inv(p);
        let u = self.r_inv[pinv].as_ref()?;
        Some(cached(&self.antipode_y, (p, n), || {
            let field = self.field();
            let leg = self.leg(pinv);
            if n == 0 {
                return LegTensor::from_vec(field, leg, 0, self.base.component(pinv).unit().to_vec());
            }
            let s_y = LegTensor::from_vec(field, leg, 1, scale_vec(&-field.one(), u));
            let prev = self.antipode_y_power(p, n - 1).expect("checked above");
            axioms::multiply(self, &prev, &s_y)
        }))
    }

    pub fn skew_mul(&self, f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly> {
        self.check_poly(f)?;
        self.check_poly(g)?;
        if f.grade() != g.grade() {
            return Err(Error::GradeMismatch {
                left: f.grade(),
                right: g.grade(),
            });
        }
        let t = axioms::multiply(self, &self.tensor(f), &self.tensor(g));
        Ok(SkewPoly::from_tensor(&t))
    }

    /// `Δ_{p,q}(f)` for `f ∈ R_{pq}`, as coefficient blocks keyed by the pair of y-degrees.
    pub fn comult(&self, p: Grade, q: Grade, f: &SkewPoly) -> Result<LegTensor> {
        self.check_poly(f)?;
        let pq = self.base.group().mul(p, q);
        if f.grade() != pq {
            return Err(Error::GradeMismatch {
                left: f.grade(),
                right: pq,
            });
        }
        Ok(axioms::comult_leg(self, &self.tensor(f), 0, p, q))
    }

    pub fn counit(&self, f: &SkewPoly) -> Result<Scalar> {
        self.check_poly(f)?;
        let e = self.base.group().identity();
        if f.grade() != e {
            return Err(Error::GradeMismatch { left: f.grade(), right: e });
        }
        Ok(axioms::counit_leg(self, &self.tensor(f), 0).as_scalar())
    }

    pub fn antipode(&self, f: &SkewPoly) -> Result<SkewPoly> {
        self.check_poly(f)?;
        let pinv = self.base.group().inv(f.grade());
        match axioms::antipode_leg(self, &self.tensor(f), 0) {
            Some(t) => Ok(SkewPoly::from_tensor(&t)),
            None => Err(Error::NotInvertible {
                rank: self.base.component(pinv).left_mul_matrix(&self.datum.r[pinv].coeffs).rank(),
                size: self.base.dim(pinv),
            }),
        }
    }

    /// Renders a polynomial with the basis labels of the base instance.
    pub fn render(&self, f: &SkewPoly) -> String {
        axioms::render(self, &self.tensor(f))
    }

    /// Runs the full axiom battery on all monomials `h yⁿ` with `n ≤ degree`,
    /// plus the identities the antipode extension rests on.
    pub fn verify_extension(&self, degree: u32) -> VerificationReport {
        let bounded = Bounded { ext: self, degree };
        let mut report = axioms::check_structure(&bounded);
        report.extend(axioms::check_coquasigroup(&bounded));
        report.extend(self.check_antipode_generators());
        report.extend(self.check_antipode_twists());
        if self.provenance.forced && !self.provenance.failed_checks.is_empty() {
            report.info(
                "forced",
                &[],
                format!("built despite failing {}", self.provenance.failed_checks.join(", ")),
            );
        }
        let mut report = report.prefixed("ext");
        report.sort();
        report
    }

    /// `S_{p⁻¹}(y_{p⁻¹}) = −S_{p⁻¹}(r_{p⁻¹})·y_p`, comparing the solved
    /// inverse of `r` with its antipode form.
    fn check_antipode_generators(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        let g = self.base.group();
        for p in g.elements() {
            let pinv = g.inv(p);
            let id = "antipode.generator";
            let label = vec!["y".to_string()];
            let Ok(s) = self.antipode(&self.y(pinv)) else {
                report.fail(id, &[pinv], label, "undefined", "defined");
                continue;
            };
            let s_r = self.base.antipode(pinv).mul_vec(&self.datum.r[pinv].coeffs);
            let expected = SkewPoly::monomial(p, scale_vec(&-self.field().one(), &s_r), 1);
            if s == expected {
                report.pass(id, &[pinv], label);
            } else {
                report.fail(id, &[pinv], label, self.render(&s), self.render(&expected));
            }
        }
        report
    }

    /// Degree-one and degree-zero parts of `S(y h) = S(τ(h) y + δ(h))`:
    /// `S_p(h)·u = u·τ_{p⁻¹}(S_p(τ_p h))` and
    /// `r_{p⁻¹}·S_p(δ_p h) = χ(h_(1,1))·δ_{p⁻¹}(S_p(h_(2,p)))`, with `u = (r_{p⁻¹})⁻¹`.
    fn check_antipode_twists(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        let h = &self.base;
        let g = h.group();
        for p in g.elements() {
            let pinv = g.inv(p);
            let comp = h.component(pinv);
            let s = h.antipode(p);
            let tau_chi = derive_tau(h, &self.datum.chi, p).expect("shapes checked at build");
            let r_pinv = &self.datum.r[pinv].coeffs;
            for x in 0..h.dim(p) {
                let label = vec![h.component(p).labels()[x].clone()];
                let sx = s.column(x);
                match &self.r_inv[pinv] {
                    Some(u) => {
                        let l = comp.mul_vec(&sx, u);
                        let inner = self.tau[pinv].mul_vec(&s.mul_vec(&self.tau[p].column(x)));
                        let r = comp.mul_vec(u, &inner);
                        self.compare_vec(&mut report, "antipode.tau_twist", &[p], label.clone(), pinv, &l, &r);
                    }
                    None => report.fail(
                        "antipode.tau_twist",
                        &[p],
                        label.clone(),
                        "r not invertible",
                        "invertible",
                    ),
                }
                let l = comp.mul_vec(r_pinv, &s.mul_vec(&self.datum.delta[p].column(x)));
                let r = self.datum.delta[pinv].mul_vec(&s.mul_vec(&tau_chi.column(x)));
                self.compare_vec(&mut report, "antipode.delta_twist", &[p], label, pinv, &l, &r);
            }
        }
        report
    }

    #[allow(clippy::too_many_arguments)]
    fn compare_vec(
        &self,
        report: &mut VerificationReport,
        id: &str,
        grades: &[Grade],
        basis: Vec<String>,
        leg: Grade,
        l: &[Scalar],
        r: &[Scalar],
    ) {
        if l == r {
            report.pass(id, grades, basis);
        } else {
            report.fail(id, grades, basis, self.base.render_vec(&[leg], l), self.base.render_vec(&[leg], r));
        }
    }

    /// `Δ_{p,q}(δ_{pq}(r_{pq})r_{pq}⁻¹) = δ_p(r_p)r_p⁻¹⊗1_q + r_p⊗δ_q(r_q)r_q⁻¹`
    /// for every grade pair.
    pub fn check_skew_primitive(&self) -> Result<VerificationReport> {
        let h = &self.base;
        let g = h.group();
        let mut w = Vec::with_capacity(g.order());
        for p in g.elements() {
            let inv = self.r_inv[p].as_ref().ok_or_else(|| Error::NotInvertible {
                rank: h.component(p).left_mul_matrix(&self.datum.r[p].coeffs).rank(),
                size: h.dim(p),
            })?;
            let dr = self.datum.delta[p].mul_vec(&self.datum.r[p].coeffs);
            w.push(h.component(p).mul_vec(&dr, inv));
        }
        let mut report = VerificationReport::new();
        for p in g.elements() {
            for q in g.elements() {
                let l = h.delta(p, q).mul_vec(&w[g.mul(p, q)]);
                let r = add_vec(
                    &kron(&w[p], h.component(q).unit())?,
                    &kron(&self.datum.r[p].coeffs, &w[q])?,
                );
                let basis = vec!["δ(r)r^-1".to_string()];
                if l == r {
                    report.pass("skew_primitive", &[p, q], basis);
                } else {
                    report.fail("skew_primitive", &[p, q], basis, h.render_vec(&[p, q], &l), h.render_vec(&[p, q], &r));
                }
            }
        }
        Ok(report)
    }
}

impl GradedStructure for OreExtension {
    fn field(&self) -> Field {
        self.base.field()
    }

    fn group(&self) -> &GroupTable {
        self.base.group()
    }

    fn dim(&self, p: Grade) -> usize {
        self.base.dim(p)
    }

    /// `h·yⁿ`, written `yⁿ` when `h` is the unit.
    fn label(&self, p: Grade, m: Mono) -> String {
        let comp = self.base.component(p);
        let y = match m.degree {
            0 => return comp.labels()[m.index].clone(),
            1 => "y".to_string(),
            n => format!("y^{n}"),
        };
        if comp.unit() == basis_vec(self.field(), comp.dim(), m.index).as_slice() {
            y
        } else {
            format!("{}·{y}", comp.labels()[m.index])
        }
    }

    fn unit(&self, p: Grade) -> LegTensor {
        LegTensor::from_vec(self.field(), self.leg(p), 0, self.base.component(p).unit().to_vec())
    }

    fn mul_mono(&self, p: Grade, a: Mono, b: Mono) -> LegTensor {
        self.mono_product(p, a, b)
    }

    fn comult_mono(&self, p: Grade, q: Grade, x: Mono) -> LegTensor {
        let dh = self.base.comult_mono(p, q, Mono::basis(x.index));
        if x.degree == 0 {
            return dh;
        }
        axioms::multiply(self, &dh, &self.comult_y_power(p, q, x.degree))
    }

    fn counit_mono(&self, x: Mono) -> Scalar {
        if x.degree == 0 {
            self.base.counit()[x.index].clone()
        } else {
            self.field().zero()
        }
    }

    fn antipode_mono(&self, p: Grade, x: Mono) -> Option<LegTensor> {
        let sh = self.base.antipode_mono(p, Mono::basis(x.index))?;
        if x.degree == 0 {
            return Some(sh);
        }
        Some(axioms::multiply(self, &self.antipode_y_power(p, x.degree)?, &sh))
    }

    fn test_monomials(&self, p: Grade) -> Vec<Mono> {
        monomials(self.base.dim(p), 1)
    }
}

fn monomials(dim: usize, degree: u32) -> Vec<Mono> {
    (0..=degree)
        .flat_map(|n| (0..dim).map(move |i| Mono::new(i, n)))
        .collect()
}

/// The extension with the battery quantifying over degrees `0..=degree`.
struct Bounded<'a> {
    ext: &'a OreExtension,
    degree: u32,
}

impl GradedStructure for Bounded<'_> {
    fn field(&self) -> Field {
        self.ext.field()
    }
    fn group(&self) -> &GroupTable {
        self.ext.base.group()
    }
    fn dim(&self, p: Grade) -> usize {
        self.ext.base.dim(p)
    }
    fn label(&self, p: Grade, m: Mono) -> String {
        self.ext.label(p, m)
    }
    fn unit(&self, p: Grade) -> LegTensor {
        GradedStructure::unit(self.ext, p)
    }
    fn mul_mono(&self, p: Grade, a: Mono, b: Mono) -> LegTensor {
        self.ext.mul_mono(p, a, b)
    }
    fn comult_mono(&self, p: Grade, q: Grade, x: Mono) -> LegTensor {
        self.ext.comult_mono(p, q, x)
    }
    fn counit_mono(&self, x: Mono) -> Scalar {
        self.ext.counit_mono(x)
    }
    fn antipode_mono(&self, p: Grade, x: Mono) -> Option<LegTensor> {
        self.ext.antipode_mono(p, x)
    }
    fn test_monomials(&self, p: Grade) -> Vec<Mono> {
        monomials(self.ext.base.dim(p), self.degree)
    }
}
