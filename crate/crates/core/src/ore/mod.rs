//! Ore extensions `R_p = H_p[y_p; τ_p, δ_p]` of a group-cograded Hopf
//! coquasigroup: the input datum, the condition checkers, normalization of
//! generators, skew-polynomial arithmetic and the extended structure maps.

mod extension;
mod skew;

pub use extension::{build_extension, OreExtension, Provenance};
pub use skew::SkewPoly;

use crate::error::{Error, Result};
use crate::exactlin::{add_vec, dot, kron, kron_apply, Field, Mat, Scalar};
use crate::grading::Grade;
use crate::hcq::{GCHopfCoquasigroup, GradedElement};
use crate::report::VerificationReport;

/// Character `χ` on `H_1`, group-like family `r`, derivations `δ_p` and an
/// optional explicit `τ_p` (otherwise derived from `χ`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OreDatum {
    pub chi: Vec<Scalar>,
    pub r: Vec<GradedElement>,
    pub delta: Vec<Mat>,
    pub tau_override: Option<Vec<Mat>>,
}

impl OreDatum {
    pub fn new(chi: Vec<Scalar>, r: Vec<GradedElement>, delta: Vec<Mat>) -> Self {
        OreDatum {
            chi,
            r,
            delta,
            tau_override: None,
        }
    }

    pub fn with_tau(mut self, tau: Vec<Mat>) -> Self {
        self.tau_override = Some(tau);
        self
    }

    /// The datum `χ = ε`, `r = 1`, `δ = 0`, whose extension is `H[y]` with `y` primitive.
    pub fn trivial(h: &GCHopfCoquasigroup) -> Self {
        let g = h.group();
        OreDatum::new(
            h.counit().to_vec(),
            g.elements().map(|p| h.unit_element(p)).collect(),
            g.elements()
                .map(|p| Mat::zeros(h.field(), h.dim(p), h.dim(p)))
                .collect(),
        )
    }

    /// Checks lengths, shapes and fields against the base instance.
    pub fn check_shapes(&self, h: &GCHopfCoquasigroup) -> Result<()> {
        let g = h.group();
        let n = g.order();
        let field = h.field();
        let e = g.identity();
        check_vec(field, &self.chi, h.dim(e), "/chi")?;
        if self.r.len() != n {
            return Err(Error::shape("/r", format!("expected {n} entries")));
        }
        for (p, r) in self.r.iter().enumerate() {
            if r.grade != p {
                return Err(Error::shape(format!("/r/{p}"), format!("element has grade {}", r.grade)));
            }
            check_vec(field, &r.coeffs, h.dim(p), &format!("/r/{p}"))?;
        }
        check_square_family(h, &self.delta, "/delta")?;
        if let Some(tau) = &self.tau_override {
            check_square_family(h, tau, "/tau")?;
        }
        Ok(())
    }

    /// `τ_p`: the override if present, else the map determined by `χ`.
    pub fn tau(&self, h: &GCHopfCoquasigroup, p: Grade) -> Result<Mat> {
        match &self.tau_override {
            Some(t) => Ok(t[p].clone()),
            None => derive_tau(h, &self.chi, p),
        }
    }

    pub fn taus(&self, h: &GCHopfCoquasigroup) -> Result<Vec<Mat>> {
        h.group().elements().map(|p| self.tau(h, p)).collect()
    }
}

fn check_vec(field: Field, v: &[Scalar], dim: usize, loc: &str) -> Result<()> {
    if v.len() != dim {
        return Err(Error::shape(loc, format!("expected {dim} entries, got {}", v.len())));
    }
    if let Some(x) = v.iter().find(|x| x.field() != field) {
        return Err(Error::shape(loc, format!("scalar {x} is not in {field}")));
    }
    Ok(())
}

fn check_square_family(h: &GCHopfCoquasigroup, ms: &[Mat], loc: &str) -> Result<()> {
    let n = h.group().order();
    if ms.len() != n {
        return Err(Error::shape(loc, format!("expected {n} maps")));
    }
    for (p, m) in ms.iter().enumerate() {
        let d = h.dim(p);
        if m.shape() != (d, d) {
            return Err(Error::shape(
                format!("{loc}/{p}"),
                format!("expected {d}×{d}, got {}×{}", m.rows(), m.cols()),
            ));
        }
        if let Some(x) = m.entries().iter().find(|x| x.field() != h.field()) {
            return Err(Error::shape(format!("{loc}/{p}"), format!("scalar {x} is not in {}", h.field())));
        }
    }
    Ok(())
}

/// Matrix of `h ↦ χ(h_(1,1)) h_(2,p)`, read off `Δ_{1,p}`.
pub fn derive_tau(h: &GCHopfCoquasigroup, chi: &[Scalar], p: Grade) -> Result<Mat> {
    let e = h.group().identity();
    check_vec(h.field(), chi, h.dim(e), "/chi")?;
    let dp = h.dim(p);
    let delta = h.delta(e, p);
    let mut m = Mat::zeros(h.field(), dp, dp);
    for k in 0..dp {
        for (i, c) in chi.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for j in 0..dp {
                let x = delta.get(i * dp + j, k);
                if !x.is_zero() {
                    let v = m.get(j, k) + &(c * x);
                    m.set(j, k, v);
                }
            }
        }
    }
    Ok(m)
}

/// Shared state for the per-element condition checks.
struct Conditions<'a> {
    h: &'a GCHopfCoquasigroup,
    datum: &'a OreDatum,
    /// τ as used by the extension.
    tau: Vec<Mat>,
    /// τ as determined by `χ`.
    tau_chi: Vec<Mat>,
    ident: Vec<Mat>,
    left_r: Vec<Mat>,
    ad_r: Vec<Option<Mat>>,
}

impl<'a> Conditions<'a> {
    fn new(h: &'a GCHopfCoquasigroup, datum: &'a OreDatum) -> Result<Self> {
        let g = h.group();
        let tau_chi: Vec<Mat> = g
            .elements()
            .map(|p| derive_tau(h, &datum.chi, p))
            .collect::<Result<_>>()?;
        Ok(Conditions {
            h,
            datum,
            tau: datum.taus(h)?,
            tau_chi,
            ident: g.elements().map(|p| Mat::identity(h.field(), h.dim(p))).collect(),
            left_r: datum
                .r
                .iter()
                .map(|r| h.component(r.grade).left_mul_matrix(&r.coeffs))
                .collect(),
            ad_r: datum.r.iter().map(|r| h.adjoint_matrix(r).ok()).collect(),
        })
    }

    fn label(&self, p: Grade, i: usize) -> String {
        self.h.component(p).labels()[i].clone()
    }

    #[allow(clippy::too_many_arguments)]
    fn compare_vec(
        &self,
        report: &mut VerificationReport,
        id: &str,
        grades: &[Grade],
        basis: Vec<String>,
        leg_grades: &[Grade],
        left: &[Scalar],
        right: &[Scalar],
    ) {
        if left == right {
            report.pass(id, grades, basis);
        } else {
            report.fail(
                id,
                grades,
                basis,
                self.h.render_vec(leg_grades, left),
                self.h.render_vec(leg_grades, right),
            );
        }
    }

    fn character(&self, report: &mut VerificationReport) {
        let h = self.h;
        let e = h.group().identity();
        let chi = &self.datum.chi;
        let c = h.component(e);
        report.compare("ore.character", &[e], vec!["1".into()], &dot(chi, c.unit()), &h.field().one());
        for a in 0..c.dim() {
            for b in 0..c.dim() {
                let ab = c.constants().fibre(a, b);
                let l = dot(chi, ab);
                let r = &chi[a] * &chi[b];
                report.compare("ore.character", &[e], vec![self.label(e, a), self.label(e, b)], &l, &r);
            }
        }
    }

    fn tau_endomorphism(&self, report: &mut VerificationReport) {
        let h = self.h;
        for p in h.group().elements() {
            let c = h.component(p);
            let t = &self.tau[p];
            let unit = c.unit().to_vec();
            self.compare_vec(report, "ore.tau_endomorphism", &[p], vec!["1".into()], &[p], &t.mul_vec(&unit), &unit);
            let images: Vec<Vec<Scalar>> = (0..c.dim()).map(|a| t.column(a)).collect();
            for a in 0..c.dim() {
                for b in 0..c.dim() {
                    let l = t.mul_vec(c.constants().fibre(a, b));
                    let r = c.mul_vec(&images[a], &images[b]);
                    let basis = vec![self.label(p, a), self.label(p, b)];
                    self.compare_vec(report, "ore.tau_endomorphism", &[p], basis, &[p], &l, &r);
                }
            }
        }
    }

    fn derivation(&self, report: &mut VerificationReport) {
        let h = self.h;
        for p in h.group().elements() {
            let c = h.component(p);
            let (t, d) = (&self.tau[p], &self.datum.delta[p]);
            let zero = vec![h.field().zero(); c.dim()];
            self.compare_vec(report, "ore.derivation", &[p], vec!["1".into()], &[p], &d.mul_vec(c.unit()), &zero);
            for a in 0..c.dim() {
                for b in 0..c.dim() {
                    let l = d.mul_vec(c.constants().fibre(a, b));
                    let eb = h.basis_element(p, b).coeffs;
                    let r = add_vec(
                        &c.mul_vec(&d.column(a), &eb),
                        &c.mul_vec(&t.column(a), &d.column(b)),
                    );
                    let basis = vec![self.label(p, a), self.label(p, b)];
                    self.compare_vec(report, "ore.derivation", &[p], basis, &[p], &l, &r);
                }
            }
        }
    }

    fn grouplike(&self, report: &mut VerificationReport) {
        let h = self.h;
        let g = h.group();
        let r = &self.datum.r;
        for p in g.elements() {
            for q in g.elements() {
                let pq = g.mul(p, q);
                let l = h.delta(p, q).mul_vec(&r[pq].coeffs);
                let rr = kron(&r[p].coeffs, &r[q].coeffs).expect("same field");
                self.compare_vec(report, "ore.grouplike", &[p, q], vec!["r".into()], &[p, q], &l, &rr);
            }
        }
        for p in g.elements() {
            match h.invert_element(&r[p]) {
                Ok(inv) => {
                    let via_s = h.antipode(g.inv(p)).mul_vec(&r[g.inv(p)].coeffs);
                    self.compare_vec(report, "ore.grouplike", &[p], vec!["r^-1".into()], &[p], &inv.coeffs, &via_s);
                }
                Err(err) => report.fail(
                    "ore.grouplike",
                    &[p],
                    vec!["r^-1".into()],
                    err.to_string(),
                    "invertible",
                ),
            }
        }
    }

    /// The three expressions of the D2 chain, with the contractions against `χ`
    /// carried out through the `χ`-determined `τ`.
    fn d2(&self, report: &mut VerificationReport) {
        let h = self.h;
        let g = h.group();
        for p in g.elements() {
            for q in g.elements() {
                let pq = g.mul(p, q);
                let delta = h.delta(p, q);
                for x in 0..h.dim(pq) {
                    let basis = vec![self.label(pq, x)];
                    let hx = h.basis_element(pq, x).coeffs;
                    let dh = delta.mul_vec(&hx);
                    let a = delta.mul_vec(&self.tau_chi[pq].mul_vec(&hx));
                    let c = kron_apply(&self.tau_chi[p], &self.ident[q], &dh);
                    match &self.ad_r[p] {
                        Some(ad) => {
                            let b = kron_apply(ad, &self.tau_chi[q], &dh);
                            self.compare_vec(report, "ore.d2.left", &[p, q], basis.clone(), &[p, q], &a, &b);
                        }
                        None => report.info("ore.d2.left", &[p, q], "skipped: r_p is not invertible"),
                    }
                    self.compare_vec(report, "ore.d2.right", &[p, q], basis, &[p, q], &a, &c);
                }
            }
        }
    }

    fn d3(&self, report: &mut VerificationReport) {
        let h = self.h;
        let g = h.group();
        let delta = &self.datum.delta;
        for p in g.elements() {
            for q in g.elements() {
                let pq = g.mul(p, q);
                let cm = h.delta(p, q);
                for x in 0..h.dim(pq) {
                    let dh = cm.column(x);
                    let l = cm.mul_vec(&delta[pq].column(x));
                    let r = add_vec(
                        &kron_apply(&delta[p], &self.ident[q], &dh),
                        &kron_apply(&self.left_r[p], &delta[q], &dh),
                    );
                    self.compare_vec(report, "ore.d3", &[p, q], vec![self.label(pq, x)], &[p, q], &l, &r);
                }
            }
        }
    }

    fn counit_delta(&self, report: &mut VerificationReport) {
        let h = self.h;
        let e = h.group().identity();
        for x in 0..h.dim(e) {
            let v = dot(h.counit(), &self.datum.delta[e].column(x));
            report.compare("ore.counit_delta", &[e], vec![self.label(e, x)], &v, &h.field().zero());
        }
    }

    /// Checks that only apply to an explicit `τ`: `ε∘τ_1 = χ` and the two
    /// comultiplication compatibilities of `τ`.
    fn tau_override(&self, report: &mut VerificationReport) {
        let h = self.h;
        let g = h.group();
        let e = g.identity();
        for x in 0..h.dim(e) {
            let v = dot(h.counit(), &self.tau[e].column(x));
            report.compare("ore.tau_consistency", &[e], vec![self.label(e, x)], &v, &self.datum.chi[x]);
        }
        for p in g.elements() {
            for q in g.elements() {
                let pq = g.mul(p, q);
                let cm = h.delta(p, q);
                for x in 0..h.dim(pq) {
                    let basis = vec![self.label(pq, x)];
                    let dh = cm.column(x);
                    let l = cm.mul_vec(&self.tau[pq].column(x));
                    let f1 = kron_apply(&self.tau[p], &self.ident[q], &dh);
                    self.compare_vec(report, "ore.f1", &[p, q], basis.clone(), &[p, q], &l, &f1);
                    match &self.ad_r[p] {
                        Some(ad) => {
                            let f2 = kron_apply(ad, &self.tau[q], &dh);
                            self.compare_vec(report, "ore.f2", &[p, q], basis, &[p, q], &l, &f2);
                        }
                        None => report.info("ore.f2", &[p, q], "skipped: r_p is not invertible"),
                    }
                }
            }
        }
    }
}

/// Every condition an Ore datum must satisfy for its extension to be a
/// group-cograded Hopf coquasigroup, one entry per grade (pair) and basis element.
pub fn check_ore_conditions(h: &GCHopfCoquasigroup, datum: &OreDatum) -> Result<VerificationReport> {
    datum.check_shapes(h)?;
    let c = Conditions::new(h, datum)?;
    let mut report = VerificationReport::new();
    c.character(&mut report);
    c.tau_endomorphism(&mut report);
    c.derivation(&mut report);
    c.grouplike(&mut report);
    c.d2(&mut report);
    c.d3(&mut report);
    c.counit_delta(&mut report);
    if datum.tau_override.is_some() {
        c.tau_override(&mut report);
    }
    Ok(report)
}

/// Generator data `r¹, r²` with `Δ(y_{pq}) = y_p⊗r²_q + r¹_p⊗y_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnnormalizedGenerators {
    pub r1: Vec<GradedElement>,
    pub r2: Vec<GradedElement>,
}

/// Replaces `y_p` by `y_p(r²_p)⁻¹` and returns `r_p = r¹_p(r²_p)⁻¹`, with a
/// report of the identities the replacement relies on.
pub fn normalize_generators(
    h: &GCHopfCoquasigroup,
    u: &UnnormalizedGenerators,
) -> Result<(Vec<GradedElement>, VerificationReport)> {
    let g = h.group();
    let n = g.order();
    for (name, fam) in [("r1", &u.r1), ("r2", &u.r2)] {
        if fam.len() != n {
            return Err(Error::shape(format!("/{name}"), format!("expected {n} entries")));
        }
        for (p, x) in fam.iter().enumerate() {
            if x.grade != p {
                return Err(Error::shape(format!("/{name}/{p}"), format!("element has grade {}", x.grade)));
            }
            check_vec(h.field(), &x.coeffs, h.dim(p), &format!("/{name}/{p}"))?;
        }
        for p in g.elements() {
            for q in g.elements() {
                let l = h.delta(p, q).mul_vec(&fam[g.mul(p, q)].coeffs);
                let r = kron(&fam[p].coeffs, &fam[q].coeffs)?;
                if l != r {
                    return Err(Error::GrouplikeViolation(format!(
                        "{name}: Δ_{{{p},{q}}}({name}) = {} but {name}⊗{name} = {}",
                        h.render_vec(&[p, q], &l),
                        h.render_vec(&[p, q], &r)
                    )));
                }
            }
        }
    }
    let r2_inv: Vec<GradedElement> = u.r2.iter().map(|x| h.invert_element(x)).collect::<Result<_>>()?;
    let r: Vec<GradedElement> = g
        .elements()
        .map(|p| h.mul(&u.r1[p], &r2_inv[p]))
        .collect::<Result<_>>()?;

    let mut report = VerificationReport::new();
    for (name, fam) in [("r1", &u.r1), ("r2", &u.r2)] {
        let id = format!("normalize.inverse.{name}");
        for q in g.elements() {
            let s = h.antipode_apply(&fam[g.inv(q)])?;
            let one = h.unit_element(q);
            let left = h.mul(&s, &fam[q])?;
            let right = h.mul(&fam[q], &s)?;
            for (side, v) in [("left", left), ("right", right)] {
                let basis = vec![format!("{name}·S({name}) {side}")];
                if v == one {
                    report.pass(&id, &[q], basis);
                } else {
                    report.fail(&id, &[q], basis, h.render_element(&v), h.render_element(&one));
                }
            }
        }
    }
    for p in g.elements() {
        for q in g.elements() {
            let pq = g.mul(p, q);
            let l = h.delta(p, q).mul_vec(&r2_inv[pq].coeffs);
            let rr = kron(&r2_inv[p].coeffs, &r2_inv[q].coeffs)?;
            record_vec(h, &mut report, "normalize.inverse_grouplike", &[p, q], "(r2)^-1", &l, &rr);
            let l = h.delta(p, q).mul_vec(&r[pq].coeffs);
            let rr = kron(&r[p].coeffs, &r[q].coeffs)?;
            record_vec(h, &mut report, "normalize.grouplike", &[p, q], "r", &l, &rr);
        }
    }
    for p in g.elements() {
        report.info(
            "normalize.generator_form",
            &[p],
            format!("Δ(y'_pq) = y'_p⊗1 + r_p⊗y'_q with r_{p} = {}", h.render_element(&r[p])),
        );
    }
    Ok((r, report))
}

fn record_vec(
    h: &GCHopfCoquasigroup,
    report: &mut VerificationReport,
    id: &str,
    grades: &[Grade],
    label: &str,
    l: &[Scalar],
    r: &[Scalar],
) {
    if l == r {
        report.pass(id, grades, vec![label.into()]);
    } else {
        report.fail(id, grades, vec![label.into()], h.render_vec(grades, l), h.render_vec(grades, r));
    }
}

#[cfg(test)]
mod tests;
