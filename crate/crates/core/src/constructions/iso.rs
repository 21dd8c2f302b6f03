use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactlin::{add_vec, dot, kron, kron_apply, solve_invert, sub_vec, Mat, Scalar};
use crate::grading::Grade;
use crate::hcq::axioms::{self, GradedStructure};
use crate::hcq::{GCHopfCoquasigroup, GradedElement, LegTensor, Mono};
use crate::ore::{OreDatum, OreExtension, SkewPoly};
use crate::report::VerificationReport;

/// A base isomorphism `φ_p: H_p → H'_p` (matrices `d'_p × d_p`) and the
/// shift family `d_p ∈ H'_p`, giving `φ̄(y_p) = y'_p + d_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoDatum {
    pub phi: Vec<Mat>,
    pub d: Vec<GradedElement>,
}

impl IsoDatum {
    /// `φ = id`, `d = 0`, between instances with equal dimensions.
    pub fn identity(h: &GCHopfCoquasigroup) -> Self {
        let g = h.group();
        IsoDatum {
            phi: g.elements().map(|p| Mat::identity(h.field(), h.dim(p))).collect(),
            d: g.elements().map(|p| h.zero_element(p)).collect(),
        }
    }

    pub fn check_shapes(&self, h: &GCHopfCoquasigroup, h2: &GCHopfCoquasigroup) -> Result<()> {
        let n = h.group().order();
        if h2.group() != h.group() {
            return Err(Error::shape("/group", "source and target are graded by different tables"));
        }
        if self.phi.len() != n || self.d.len() != n {
            return Err(Error::shape("/", format!("expected {n} entries in phi and d")));
        }
        for p in 0..n {
            if self.phi[p].shape() != (h2.dim(p), h.dim(p)) {
                return Err(Error::shape(
                    format!("/phi/{p}"),
                    format!("expected {}×{}", h2.dim(p), h.dim(p)),
                ));
            }
            if self.d[p].grade != p || self.d[p].coeffs.len() != h2.dim(p) {
                return Err(Error::shape(format!("/d/{p}"), format!("expected {} entries", h2.dim(p))));
            }
            let bad = self.phi[p]
                .entries()
                .iter()
                .chain(&self.d[p].coeffs)
                .find(|x| x.field() != h.field());
            if let Some(x) = bad {
                return Err(Error::shape(format!("/phi/{p}"), format!("scalar {x} is not in {}", h.field())));
            }
        }
        Ok(())
    }
}

struct IsoCtx<'a> {
    h2: &'a GCHopfCoquasigroup,
    report: VerificationReport,
}

impl IsoCtx<'_> {
    fn compare(&mut self, id: &str, grades: &[Grade], basis: String, legs: &[Grade], l: &[Scalar], r: &[Scalar]) {
        if l == r {
            self.report.pass(id, grades, vec![basis]);
        } else {
            let (lw, rw) = (self.h2.render_vec(legs, l), self.h2.render_vec(legs, r));
            self.report.fail(id, grades, vec![basis], lw, rw);
        }
    }
}

/// The base-isomorphism checks and the four compatibility conditions
/// between the two Ore data, per grade (pair) and basis element.
/// `ε'(d_1)` is reported as information only.
pub fn check_iso_conditions(
    h: &GCHopfCoquasigroup,
    h2: &GCHopfCoquasigroup,
    datum: &OreDatum,
    datum2: &OreDatum,
    iso: &IsoDatum,
) -> Result<VerificationReport> {
    iso.check_shapes(h, h2)?;
    datum.check_shapes(h)?;
    datum2.check_shapes(h2)?;
    let g = h.group();
    let phi = &iso.phi;
    let tau = datum.taus(h)?;
    let tau2 = datum2.taus(h2)?;
    let mut cx = IsoCtx {
        h2,
        report: VerificationReport::new(),
    };
    let label = |p: Grade, i: usize| h.component(p).labels()[i].clone();

    for p in g.elements() {
        match solve_invert(&phi[p]) {
            Ok(_) => cx.report.pass("iso.bijective", &[p], vec!["phi".into()]),
            Err(e) => cx.report.fail("iso.bijective", &[p], vec!["phi".into()], e.to_string(), "invertible"),
        }
        let (c, c2) = (h.component(p), h2.component(p));
        cx.compare("iso.unit", &[p], "1".into(), &[p], &phi[p].mul_vec(c.unit()), c2.unit());
        let images: Vec<Vec<Scalar>> = (0..c.dim()).map(|a| phi[p].column(a)).collect();
        for a in 0..c.dim() {
            for b in 0..c.dim() {
                let l = phi[p].mul_vec(c.constants().fibre(a, b));
                let r = c2.mul_vec(&images[a], &images[b]);
                cx.compare("iso.mult", &[p], format!("{}·{}", label(p, a), label(p, b)), &[p], &l, &r);
            }
        }
        let s_img = h2.antipode(p).matmul(&phi[p]);
        let img_s = phi[g.inv(p)].matmul(h.antipode(p));
        for a in 0..c.dim() {
            cx.compare("iso.antipode", &[p], label(p, a), &[g.inv(p)], &s_img.column(a), &img_s.column(a));
        }
        cx.compare("iso.r", &[p], "r".into(), &[p], &phi[p].mul_vec(&datum.r[p].coeffs), &datum2.r[p].coeffs);
        let t_l = tau2[p].matmul(&phi[p]);
        let t_r = phi[p].matmul(&tau[p]);
        for a in 0..c.dim() {
            cx.compare("iso.tau", &[p], label(p, a), &[p], &t_l.column(a), &t_r.column(a));
        }
        let d = &iso.d[p].coeffs;
        for (a, img) in images.iter().enumerate() {
            let l = datum2.delta[p].mul_vec(img);
            let r = sub_vec(
                &add_vec(
                    &phi[p].mul_vec(&datum.delta[p].column(a)),
                    &c2.mul_vec(&phi[p].mul_vec(&tau[p].column(a)), d),
                ),
                &c2.mul_vec(d, img),
            );
            cx.compare("iso.delta", &[p], label(p, a), &[p], &l, &r);
        }
    }
    let e = g.identity();
    for x in 0..h.dim(e) {
        let l = dot(h2.counit(), &phi[e].column(x));
        cx.report.compare("iso.counit", &[e], vec![label(e, x)], &l, &h.counit()[x]);
    }
    for p in g.elements() {
        for q in g.elements() {
            let pq = g.mul(p, q);
            for x in 0..h.dim(pq) {
                let l = h2.delta(p, q).mul_vec(&phi[pq].column(x));
                let r = kron_apply(&phi[p], &phi[q], &h.delta(p, q).column(x));
                cx.compare("iso.comult", &[p, q], label(pq, x), &[p, q], &l, &r);
            }
            let l = h2.delta(p, q).mul_vec(&iso.d[pq].coeffs);
            let r = add_vec(
                &kron(&iso.d[p].coeffs, h2.component(q).unit())?,
                &kron(&datum2.r[p].coeffs, &iso.d[q].coeffs)?,
            );
            cx.compare("iso.d_family", &[p, q], "d".into(), &[p, q], &l, &r);
        }
    }
    let eps_d = dot(h2.counit(), &iso.d[e].coeffs);
    cx.report.info("iso.counit_d", &[e], format!("ε'(d_1) = {eps_d}"));
    Ok(cx.report)
}

/// `φ̄(h yⁿ) = φ(h)(y' + d)ⁿ`, evaluated in the target extension.
struct Extended<'a> {
    dst: &'a OreExtension,
    iso: &'a IsoDatum,
    shifts: HashMap<(Grade, u32), SkewPoly>,
}

impl Extended<'_> {
    fn shift_power(&mut self, p: Grade, n: u32) -> SkewPoly {
        if let Some(s) = self.shifts.get(&(p, n)) {
            return s.clone();
        }
        let comp = self.dst.base().component(p);
        let s = if n == 0 {
            SkewPoly::constant(p, comp.unit().to_vec())
        } else {
            let prev = self.shift_power(p, n - 1);
            let y = self.dst.y(p);
            let shift = SkewPoly::new(p, vec![self.iso.d[p].coeffs.clone(), y.coeff(1).expect("y").to_vec()]);
            self.dst.skew_mul(&prev, &shift).expect("same grade")
        };
        self.shifts.insert((p, n), s.clone());
        s
    }

    fn mono(&mut self, p: Grade, m: Mono) -> SkewPoly {
        let head = SkewPoly::constant(p, self.iso.phi[p].column(m.index));
        let tail = self.shift_power(p, m.degree);
        self.dst.skew_mul(&head, &tail).expect("same grade")
    }

    fn tensor(&mut self, t: &LegTensor) -> LegTensor {
        let dst = self.dst;
        let legs: Vec<_> = t.legs().iter().map(|l| axioms::leg(dst, l.grade)).collect();
        let mut out = t.clone();
        for (k, leg) in legs.iter().enumerate() {
            out = out.map_leg(k, &[*leg], |m| {
                let f = self.mono(leg.grade, m);
                dst.tensor(&f)
            });
        }
        out
    }
}

/// Extends `φ` to `φ̄` and checks on all monomials of degree `≤ degree` that
/// it is multiplicative, comultiplicative, counital, commutes with the
/// antipode and is bijective degreewise. Failing conditions are an error
/// unless `force` is set.
pub fn build_and_verify_iso(
    src: &OreExtension,
    dst: &OreExtension,
    iso: &IsoDatum,
    degree: u32,
    force: bool,
) -> Result<VerificationReport> {
    let mut report = check_iso_conditions(src.base(), dst.base(), src.datum(), dst.datum(), iso)?;
    let failed = report.failed_ids();
    if !failed.is_empty() && !force {
        return Err(Error::ConditionFailure { failed });
    }
    let g = src.base().group();
    let mut ext = Extended {
        dst,
        iso,
        shifts: HashMap::new(),
    };
    let monos = |p: Grade| -> Vec<Mono> {
        (0..=degree)
            .flat_map(|n| (0..src.base().dim(p)).map(move |i| Mono::new(i, n)))
            .collect()
    };
    let poly_eq = |report: &mut VerificationReport, id: &str, grades: &[Grade], basis: Vec<String>, l: &SkewPoly, r: &SkewPoly| {
        if l == r {
            report.pass(id, grades, basis);
        } else {
            report.fail(id, grades, basis, dst.render(l), dst.render(r));
        }
    };

    for p in g.elements() {
        let ms = monos(p);
        let images: Vec<SkewPoly> = ms.iter().map(|&m| ext.mono(p, m)).collect();
        for (i, &a) in ms.iter().enumerate() {
            for (j, &b) in ms.iter().enumerate() {
                let ab = src.poly(&src.mul_mono(p, a, b));
                let l = ext.tensor(&src.tensor(&ab));
                let r = dst.skew_mul(&images[i], &images[j])?;
                let basis = vec![src.label(p, a), src.label(p, b)];
                poly_eq(&mut report, "iso.ext.mult", &[p], basis, &dst.poly(&l), &r);
            }
        }
        for (i, &a) in ms.iter().enumerate() {
            let basis = vec![src.label(p, a)];
            match (src.antipode_mono(p, a), dst.antipode(&images[i])) {
                (Some(s), Ok(r)) => {
                    let l = dst.poly(&ext.tensor(&s));
                    poly_eq(&mut report, "iso.ext.antipode", &[p], basis, &l, &r);
                }
                _ => report.fail("iso.ext.antipode", &[p], basis, "undefined", "defined"),
            }
        }
        // columns: coefficients of φ̄(e_a yⁿ) in degrees 0..=degree
        let d = dst.base().dim(p);
        let size = d * (degree as usize + 1);
        let cols: Vec<Vec<Scalar>> = images
            .iter()
            .map(|f| {
                let mut v = vec![src.base().field().zero(); size];
                for (n, c) in f.coeffs().iter().enumerate() {
                    v[n * d..(n + 1) * d].clone_from_slice(c);
                }
                v
            })
            .collect();
        let m = Mat::from_columns(src.base().field(), size, &cols);
        let basis = vec![format!("degree ≤ {degree}")];
        match solve_invert(&m) {
            Ok(_) => report.pass("iso.ext.bijective", &[p], basis),
            Err(e) => report.fail("iso.ext.bijective", &[p], basis, e.to_string(), "invertible"),
        }
    }
    let e = g.identity();
    for &x in &monos(e) {
        let l = dst.counit(&ext.mono(e, x))?;
        report.compare("iso.ext.counit", &[e], vec![src.label(e, x)], &l, &src.counit_mono(x));
    }
    for p in g.elements() {
        for q in g.elements() {
            let pq = g.mul(p, q);
            for &x in &monos(pq) {
                let img = ext.mono(pq, x);
                let l = dst.comult(p, q, &img)?;
                let r = ext.tensor(&src.comult_mono(p, q, x));
                let basis = vec![src.label(pq, x)];
                if l == r {
                    report.pass("iso.ext.comult", &[p, q], basis);
                } else {
                    report.fail(
                        "iso.ext.comult",
                        &[p, q],
                        basis,
                        axioms::render(dst, &l),
                        axioms::render(dst, &r),
                    );
                }
            }
        }
    }
    report.sort();
    Ok(report)
}
