//! Group-cograded Hopf coquasigroups given by structure constants.
//!
//! An instance is a family of finite-dimensional algebras `H_p`, one per
//! element of the grading group, together with exact matrices for
//! `Δ_{p,q}: H_{pq} → H_p⊗H_q`, the counit on `H_1` and `S_p: H_p → H_{p⁻¹}`.
//! Multiplication is only defined inside a component; a product of elements
//! of different grades is reported as [`Error::GradeMismatch`].
//!
//! Constructors only check shapes. The axioms are checked explicitly by
//! [`GCHopfCoquasigroup::verify_structure`] and
//! [`GCHopfCoquasigroup::verify_coquasigroup`], so deliberately broken
//! instances can be built and inspected.

pub mod axioms;
pub mod tensor;

use crate::error::{Error, Result};
use crate::exactlin::{basis_vec, dot, kron, solve_invert, Field, Mat, Scalar, Tensor3};
use crate::grading::{Grade, GroupTable};
use crate::report::VerificationReport;

pub use axioms::{CoassociativityWitness, GradedStructure};
pub use tensor::{Leg, LegTensor, Mono};

/// One component `H_p`: structure constants `c[i][j][k]` (coefficient of
/// `e_k` in `eᵢ·eⱼ`) and the unit `1_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentAlgebra {
    dim: usize,
    mul: Tensor3,
    unit: Vec<Scalar>,
    labels: Vec<String>,
}

impl ComponentAlgebra {
    pub fn new(mul: Tensor3, unit: Vec<Scalar>) -> Result<Self> {
        let [a, b, c] = mul.dims();
        if a != b || b != c || a == 0 {
            return Err(Error::shape("mul", format!("expected d×d×d constants, got {a}×{b}×{c}")));
        }
        if unit.len() != a {
            return Err(Error::shape("unit", format!("expected {a} entries, got {}", unit.len())));
        }
        Ok(ComponentAlgebra {
            dim: a,
            mul,
            unit,
            labels: (0..a).map(|i| format!("e{i}")).collect(),
        })
    }

    /// Replaces the default `e{i}` basis labels used in reports.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::shape("basis", "one label per basis element expected"));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &Tensor3 {
        &self.mul
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Bilinear product of coefficient vectors.
    pub fn mul_vec(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let field = self.unit[0].field();
        let mut out = vec![field.zero(); self.dim];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, c) in self.mul.fibre(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&xy * c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `h ↦ x·h`.
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> Mat {
        let field = self.unit[0].field();
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.mul_vec(x, &basis_vec(field, self.dim, j)))
            .collect();
        Mat::from_columns(field, self.dim, &cols)
    }
}

/// An element `h_p` of one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedElement {
    pub grade: Grade,
    pub coeffs: Vec<Scalar>,
}

impl GradedElement {
    pub fn new(grade: Grade, coeffs: Vec<Scalar>) -> Self {
        GradedElement { grade, coeffs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coassociativity {
    Coassociative,
    Witness(CoassociativityWitness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GCHopfCoquasigroup {
    field: Field,
    group: GroupTable,
    components: Vec<ComponentAlgebra>,
    /// `Δ_{p,q}` at index `p·n + q`, shape `(d_p·d_q) × d_{pq}`.
    delta: Vec<Mat>,
    counit: Vec<Scalar>,
    /// `S_p`, shape `d_{p⁻¹} × d_p`.
    antipode: Vec<Mat>,
}

impl GCHopfCoquasigroup {
    /// Assembles an instance, checking that every map has the right shape and
    /// every scalar lies in `field`.
    pub fn new(
        field: Field,
        group: GroupTable,
        components: Vec<ComponentAlgebra>,
        delta: Vec<Mat>,
        counit: Vec<Scalar>,
        antipode: Vec<Mat>,
    ) -> Result<Self> {
        let n = group.order();
        if components.len() != n {
            return Err(Error::shape(
                "/components",
                format!("expected {n} components, got {}", components.len()),
            ));
        }
        let in_field = |xs: &[Scalar], loc: String| -> Result<()> {
            match xs.iter().find(|x| x.field() != field) {
                Some(x) => Err(Error::shape(loc, format!("scalar {x} is not in {field}"))),
                None => Ok(()),
            }
        };
        for (p, c) in components.iter().enumerate() {
            let [d, _, _] = c.mul.dims();
            let mut all = Vec::with_capacity(d * d * d);
            for i in 0..d {
                for j in 0..d {
                    all.extend_from_slice(c.mul.fibre(i, j));
                }
            }
            in_field(&all, format!("/components/{p}/mul"))?;
            in_field(&c.unit, format!("/components/{p}/unit"))?;
        }
        let dim = |p: Grade| components[p].dim;
        if delta.len() != n * n {
            return Err(Error::shape("/delta", format!("expected {} maps", n * n)));
        }
        for p in 0..n {
            for q in 0..n {
                let m = &delta[p * n + q];
                let want = (dim(p) * dim(q), dim(group.mul(p, q)));
                if m.shape() != want {
                    return Err(Error::shape(
                        format!("/delta/{p},{q}"),
                        format!("expected {}×{}, got {}×{}", want.0, want.1, m.rows(), m.cols()),
                    ));
                }
                in_field(m.entries(), format!("/delta/{p},{q}"))?;
            }
        }
        let e = group.identity();
        if counit.len() != dim(e) {
            return Err(Error::shape(
                "/counit",
                format!("expected {} entries, got {}", dim(e), counit.len()),
            ));
        }
        in_field(&counit, "/counit".into())?;
        if antipode.len() != n {
            return Err(Error::shape("/antipode", format!("expected {n} maps")));
        }
        for (p, m) in antipode.iter().enumerate() {
            let want = (dim(group.inv(p)), dim(p));
            if m.shape() != want {
                return Err(Error::shape(
                    format!("/antipode/{p}"),
                    format!("expected {}×{}, got {}×{}", want.0, want.1, m.rows(), m.cols()),
                ));
            }
            in_field(m.entries(), format!("/antipode/{p}"))?;
        }
        Ok(GCHopfCoquasigroup {
            field,
            group,
            components,
            delta,
            counit,
            antipode,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn component(&self, p: Grade) -> &ComponentAlgebra {
        &self.components[p]
    }

    pub fn components(&self) -> &[ComponentAlgebra] {
        &self.components
    }

    pub fn dim(&self, p: Grade) -> usize {
        self.components[p].dim
    }

    pub fn delta(&self, p: Grade, q: Grade) -> &Mat {
        &self.delta[p * self.group.order() + q]
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode(&self, p: Grade) -> &Mat {
        &self.antipode[p]
    }

    pub fn unit_element(&self, p: Grade) -> GradedElement {
        GradedElement::new(p, self.components[p].unit.clone())
    }

    pub fn basis_element(&self, p: Grade, i: usize) -> GradedElement {
        GradedElement::new(p, basis_vec(self.field, self.dim(p), i))
    }

    pub fn zero_element(&self, p: Grade) -> GradedElement {
        GradedElement::new(p, vec![self.field.zero(); self.dim(p)])
    }

    fn check_element(&self, x: &GradedElement) -> Result<()> {
        if x.grade >= self.group.order() {
            return Err(Error::IndexOutOfRange {
                index: x.grade,
                order: self.group.order(),
            });
        }
        if x.coeffs.len() != self.dim(x.grade) {
            return Err(Error::shape(
                format!("element of grade {}", x.grade),
                format!("expected {} coefficients, got {}", self.dim(x.grade), x.coeffs.len()),
            ));
        }
        Ok(())
    }

    /// Product inside `H_p`.
    pub fn mul(&self, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        if a.grade != b.grade {
            return Err(Error::GradeMismatch {
                left: a.grade,
                right: b.grade,
            });
        }
        Ok(GradedElement::new(
            a.grade,
            self.components[a.grade].mul_vec(&a.coeffs, &b.coeffs),
        ))
    }

    /// `Δ_{p,q}(x)` for `x ∈ H_{pq}`, as a Kronecker-indexed vector.
    pub fn comult(&self, p: Grade, q: Grade, x: &GradedElement) -> Result<Vec<Scalar>> {
        self.check_element(x)?;
        let pq = self.group.mul(p, q);
        if x.grade != pq {
            return Err(Error::GradeMismatch {
                left: x.grade,
                right: pq,
            });
        }
        Ok(self.delta(p, q).mul_vec(&x.coeffs))
    }

    pub fn counit_apply(&self, x: &GradedElement) -> Result<Scalar> {
        self.check_element(x)?;
        let e = self.group.identity();
        if x.grade != e {
            return Err(Error::GradeMismatch {
                left: x.grade,
                right: e,
            });
        }
        Ok(dot(&self.counit, &x.coeffs))
    }

    /// `S_p(x)`, an element of grade `p⁻¹`.
    pub fn antipode_apply(&self, x: &GradedElement) -> Result<GradedElement> {
        self.check_element(x)?;
        Ok(GradedElement::new(
            self.group.inv(x.grade),
            self.antipode[x.grade].mul_vec(&x.coeffs),
        ))
    }

    /// Two-sided inverse by solving the left-multiplication system.
    pub fn invert_element(&self, x: &GradedElement) -> Result<GradedElement> {
        self.check_element(x)?;
        let c = &self.components[x.grade];
        let inv = solve_invert(&c.left_mul_matrix(&x.coeffs))?;
        let y = inv.mul_vec(&c.unit);
        if c.mul_vec(&y, &x.coeffs) != c.unit {
            return Err(Error::OneSidedOnly { grade: x.grade });
        }
        Ok(GradedElement::new(x.grade, y))
    }

    /// `Ad_r(h) = r·h·r⁻¹`.
    pub fn adjoint_conjugate(&self, r: &GradedElement, h: &GradedElement) -> Result<GradedElement> {
        let r_inv = self.invert_element(r)?;
        self.mul(&self.mul(r, h)?, &r_inv)
    }

    /// Equality of all structure constants, ignoring basis labels.
    pub fn structure_eq(&self, other: &GCHopfCoquasigroup) -> bool {
        self.field == other.field
            && self.group == other.group
            && self.delta == other.delta
            && self.counit == other.counit
            && self.antipode == other.antipode
            && self.components.len() == other.components.len()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| a.mul == b.mul && a.unit == b.unit)
    }

    /// Algebra, comultiplication, counit and antipode-homomorphism checks.
    pub fn verify_structure(&self) -> VerificationReport {
        axioms::check_structure(self)
    }

    /// The four coquasigroup composites for every grade pair and basis element.
    pub fn verify_coquasigroup(&self) -> VerificationReport {
        axioms::check_coquasigroup(self)
    }

    pub fn coassociativity_witness(&self) -> Coassociativity {
        match axioms::find_coassociativity_witness(self) {
            Some(w) => Coassociativity::Witness(w),
            None => Coassociativity::Coassociative,
        }
    }

    /// Element as a one-leg tensor, for use with the [`axioms`] helpers.
    pub fn element_tensor(&self, x: &GradedElement) -> LegTensor {
        LegTensor::from_vec(self.field, axioms::leg(self, x.grade), 0, x.coeffs.clone())
    }

    /// Reads back a one-leg degree-zero tensor.
    pub fn tensor_element(&self, t: &LegTensor) -> GradedElement {
        assert_eq!(t.legs().len(), 1, "expected one leg");
        GradedElement::new(t.legs()[0].grade, t.block_or_zero(&[0]))
    }

    /// Kronecker vector of a two-leg degree-zero tensor.
    pub fn tensor_vec(&self, t: &LegTensor) -> Vec<Scalar> {
        t.block_or_zero(&[0, 0])
    }

    /// Builds `a⊗b` as a Kronecker vector.
    pub fn pure_tensor(&self, a: &GradedElement, b: &GradedElement) -> Vec<Scalar> {
        kron(&a.coeffs, &b.coeffs).expect("same field")
    }

    /// Renders a degree-zero Kronecker vector over the given leg grades.
    pub fn render_vec(&self, grades: &[Grade], v: &[Scalar]) -> String {
        let legs: Vec<Leg> = grades.iter().map(|&g| axioms::leg(self, g)).collect();
        let t = LegTensor::from_block(self.field, legs, &vec![0; grades.len()], v.to_vec());
        axioms::render(self, &t)
    }

    /// Matrix of `h ↦ r·h·r⁻¹` on `H_p`.
    pub fn adjoint_matrix(&self, r: &GradedElement) -> Result<Mat> {
        let p = r.grade;
        let r_inv = self.invert_element(r)?;
        let cols = (0..self.dim(p))
            .map(|j| Ok(self.mul(&self.mul(r, &self.basis_element(p, j))?, &r_inv)?.coeffs))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat::from_columns(self.field, self.dim(p), &cols))
    }

    pub fn render_element(&self, x: &GradedElement) -> String {
        axioms::render(self, &self.element_tensor(x))
    }
}

impl GradedStructure for GCHopfCoquasigroup {
    fn field(&self) -> Field {
        self.field
    }

    fn group(&self) -> &GroupTable {
        &self.group
    }

    fn dim(&self, p: Grade) -> usize {
        self.components[p].dim
    }

    fn label(&self, p: Grade, m: Mono) -> String {
        self.components[p].labels[m.index].clone()
    }

    fn unit(&self, p: Grade) -> LegTensor {
        LegTensor::from_vec(self.field, axioms::leg(self, p), 0, self.components[p].unit.clone())
    }

    fn mul_mono(&self, p: Grade, a: Mono, b: Mono) -> LegTensor {
        debug_assert!(a.degree == 0 && b.degree == 0);
        let v = self.components[p].mul.fibre(a.index, b.index).to_vec();
        LegTensor::from_vec(self.field, axioms::leg(self, p), 0, v)
    }

    fn comult_mono(&self, p: Grade, q: Grade, x: Mono) -> LegTensor {
        debug_assert_eq!(x.degree, 0);
        let mut t = LegTensor::zero(self.field, vec![axioms::leg(self, p), axioms::leg(self, q)]);
        let col = self.delta(p, q).column(x.index);
        let dq = self.dim(q);
        for (flat, c) in col.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let m = [Mono::basis(flat / dq), Mono::basis(flat % dq)];
            t.add_assign(&LegTensor::pure(self.field, t.legs().to_vec(), &m, c.clone()));
        }
        t
    }

    fn counit_mono(&self, x: Mono) -> Scalar {
        debug_assert_eq!(x.degree, 0);
        self.counit[x.index].clone()
    }

    fn antipode_mono(&self, p: Grade, x: Mono) -> Option<LegTensor> {
        debug_assert_eq!(x.degree, 0);
        let pinv = self.group.inv(p);
        Some(LegTensor::from_vec(
            self.field,
            axioms::leg(self, pinv),
            0,
            self.antipode[p].column(x.index),
        ))
    }

    fn test_monomials(&self, p: Grade) -> Vec<Mono> {
        (0..self.dim(p)).map(Mono::basis).collect()
    }
}

#[cfg(test)]
mod tests;
