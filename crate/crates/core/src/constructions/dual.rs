use super::{element_labels, permutation_matrix, LoopTable};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Mat, Scalar, Tensor3};
use crate::grading::GroupTable;
use crate::hcq::{ComponentAlgebra, GCHopfCoquasigroup};

/// A `Q`-graded Hopf quasigroup: graded multiplication
/// `m_{p,q}: H_p⊗H_q → H_{pq}` (possibly non-associative), unit in `H_1`,
/// a coassociative coalgebra `(Δ_p, ε_p)` on each component and
/// `S_p: H_p → H_{p⁻¹}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfQuasigroupData {
    pub field: Field,
    pub group: GroupTable,
    pub dims: Vec<usize>,
    /// `m_{p,q}` at `p·n + q`, shape `d_{pq} × (d_p·d_q)`.
    pub mul: Vec<Mat>,
    pub unit: Vec<Scalar>,
    /// `Δ_p`, shape `(d_p·d_p) × d_p`.
    pub comult: Vec<Mat>,
    pub counit: Vec<Vec<Scalar>>,
    /// `S_p`, shape `d_{p⁻¹} × d_p`.
    pub antipode: Vec<Mat>,
    pub labels: Vec<Vec<String>>,
}

impl HopfQuasigroupData {
    pub fn check_shapes(&self) -> Result<()> {
        let g = &self.group;
        let n = g.order();
        let d = &self.dims;
        let want = |loc: String, m: &Mat, shape: (usize, usize)| {
            if m.shape() == shape {
                Ok(())
            } else {
                Err(Error::shape(loc, format!("expected {}×{}, got {}×{}", shape.0, shape.1, m.rows(), m.cols())))
            }
        };
        if d.len() != n || self.comult.len() != n || self.counit.len() != n || self.antipode.len() != n {
            return Err(Error::shape("/", format!("expected one entry per grade ({n})")));
        }
        if self.labels.len() != n || self.labels.iter().zip(d).any(|(l, &dp)| l.len() != dp) {
            return Err(Error::shape("/basis", "one label per basis element expected"));
        }
        if self.mul.len() != n * n {
            return Err(Error::shape("/mul", format!("expected {} maps", n * n)));
        }
        for p in 0..n {
            for q in 0..n {
                want(format!("/mul/{p},{q}"), &self.mul[p * n + q], (d[g.mul(p, q)], d[p] * d[q]))?;
            }
            want(format!("/comult/{p}"), &self.comult[p], (d[p] * d[p], d[p]))?;
            want(format!("/antipode/{p}"), &self.antipode[p], (d[g.inv(p)], d[p]))?;
            if self.counit[p].len() != d[p] {
                return Err(Error::shape(format!("/counit/{p}"), format!("expected {} entries", d[p])));
            }
        }
        if self.unit.len() != d[g.identity()] {
            return Err(Error::shape("/unit", format!("expected {} entries", d[g.identity()])));
        }
        Ok(())
    }
}

/// The loop algebra `kL`, trivially graded: basis `L`, `Δ(x) = x⊗x`,
/// `ε(x) = 1`, `S(x) = x⁻¹`. A group table gives the group algebra.
pub fn loop_algebra_hq(l: &LoopTable, field: Field) -> HopfQuasigroupData {
    let n = l.order();
    let mut mul = Mat::zeros(field, n, n * n);
    let mut comult = Mat::zeros(field, n * n, n);
    for x in 0..n {
        for y in 0..n {
            mul.set(l.mul(x, y), x * n + y, field.one());
        }
        comult.set(x * n + x, x, field.one());
    }
    let mut unit = vec![field.zero(); n];
    unit[l.identity()] = field.one();
    HopfQuasigroupData {
        field,
        group: GroupTable::trivial(),
        dims: vec![n],
        mul: vec![mul],
        unit,
        comult: vec![comult],
        counit: vec![vec![field.one(); n]],
        antipode: vec![permutation_matrix(field, n, |x| l.left_inv(x))],
        labels: vec![element_labels(l.table(), l.identity())],
    }
}

/// Transposes every structure map: the product of `H*_p` is `Δ_pᵀ`, its unit
/// is `ε_p`, `Δ*_{p,q} = m_{p,q}ᵀ`, the counit is `1 ∈ H_1` and
/// `S*_p = S_{p⁻¹}ᵀ`. Dual bases are indexed like the primal ones.
pub fn dualize(hq: &HopfQuasigroupData) -> Result<GCHopfCoquasigroup> {
    hq.check_shapes()?;
    let g = &hq.group;
    let field = hq.field;
    let components = g
        .elements()
        .map(|p| {
            let d = hq.dims[p];
            let mut c = Tensor3::zeros(field, [d, d, d]);
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        c.set(i, j, k, hq.comult[p].get(i * d + j, k).clone());
                    }
                }
            }
            ComponentAlgebra::new(c, hq.counit[p].clone())
                .and_then(|c| c.with_labels(hq.labels[p].clone()))
                .map_err(|e| relocate(e, &format!("/components/{p}")))
        })
        .collect::<Result<Vec<_>>>()?;
    GCHopfCoquasigroup::new(
        field,
        g.clone(),
        components,
        hq.mul.iter().map(Mat::transpose).collect(),
        hq.unit.clone(),
        g.elements().map(|p| hq.antipode[g.inv(p)].transpose()).collect(),
    )
}

/// The inverse of [`dualize`]: reads a coquasigroup's structure maps back as
/// Hopf quasigroup data.
pub fn dualize_coquasigroup(h: &GCHopfCoquasigroup) -> HopfQuasigroupData {
    let g = h.group();
    let field = h.field();
    let comult = g
        .elements()
        .map(|p| {
            let comp = h.component(p);
            let d = comp.dim();
            let mut m = Mat::zeros(field, d * d, d);
            for i in 0..d {
                for j in 0..d {
                    for (k, x) in comp.constants().fibre(i, j).iter().enumerate() {
                        m.set(i * d + j, k, x.clone());
                    }
                }
            }
            m
        })
        .collect();
    let n = g.order();
    HopfQuasigroupData {
        field,
        group: g.clone(),
        dims: g.elements().map(|p| h.dim(p)).collect(),
        mul: (0..n * n).map(|i| h.delta(i / n, i % n).transpose()).collect(),
        unit: h.counit().to_vec(),
        comult,
        counit: g.elements().map(|p| h.component(p).unit().to_vec()).collect(),
        antipode: g.elements().map(|p| h.antipode(g.inv(p)).transpose()).collect(),
        labels: g.elements().map(|p| h.component(p).labels().to_vec()).collect(),
    }
}

fn relocate(e: Error, prefix: &str) -> Error {
    match e {
        Error::Shape { location, message } => Error::Shape {
            location: format!("{prefix}/{location}"),
            message,
        },
        other => other,
    }
}
