//! Builders for the standard instance families and the isomorphism checker
//! for Ore extensions.

mod dual;
mod iso;
mod loops;

pub use dual::{dualize, dualize_coquasigroup, loop_algebra_hq, HopfQuasigroupData};
pub use iso::{build_and_verify_iso, check_iso_conditions, IsoDatum};
pub use loops::LoopTable;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Mat, Tensor3};
use crate::exactlin::Scalar;
use crate::grading::GroupTable;
use crate::hcq::GradedElement;
use crate::ore::OreDatum;
use crate::hcq::{ComponentAlgebra, GCHopfCoquasigroup};

/// `e, g, g^2, …` for a cyclic table generated by element 1, otherwise `e, x1, x2, …`.
pub(crate) fn element_labels(table: &[Vec<usize>], identity: usize) -> Vec<String> {
    let n = table.len();
    let cyclic = identity == 0 && (0..n).all(|a| (0..n).all(|b| table[a][b] == (a + b) % n));
    (0..n)
        .map(|x| match x {
            _ if x == identity => "e".to_string(),
            1 if cyclic => "g".to_string(),
            _ if cyclic => format!("g^{x}"),
            _ => format!("x{x}"),
        })
        .collect()
}

fn permutation_matrix(field: Field, n: usize, image: impl Fn(usize) -> usize) -> Mat {
    let mut m = Mat::zeros(field, n, n);
    for x in 0..n {
        m.set(image(x), x, field.one());
    }
    m
}

/// The group algebra `k[G]` as a trivially graded instance: basis `G`,
/// `Δ(x) = x⊗x`, `ε(x) = 1`, `S(x) = x⁻¹`.
pub fn group_algebra_hcq(g: &GroupTable, field: Field) -> GCHopfCoquasigroup {
    let n = g.order();
    let mut mul = Tensor3::zeros(field, [n, n, n]);
    let mut delta = Mat::zeros(field, n * n, n);
    for x in 0..n {
        for y in 0..n {
            mul.set(x, y, g.mul(x, y), field.one());
        }
        delta.set(x * n + x, x, field.one());
    }
    let mut unit = vec![field.zero(); n];
    unit[g.identity()] = field.one();
    let component = ComponentAlgebra::new(mul, unit)
        .and_then(|c| c.with_labels(element_labels(g.table(), g.identity())))
        .expect("group algebra shapes");
    GCHopfCoquasigroup::new(
        field,
        GroupTable::trivial(),
        vec![component],
        vec![delta],
        vec![field.one(); n],
        vec![permutation_matrix(field, n, |x| g.inv(x))],
    )
    .expect("group algebra shapes")
}

/// The function algebra `k^L` of an IP loop: basis of indicator functions
/// `δ_x`, pointwise product, `Δ(δ_z) = Σ_{xy=z} δ_x⊗δ_y`, `ε(δ_x) = [x = e]`,
/// `S(δ_x) = δ_{x⁻¹}`.
pub fn loop_function_hcq(l: &LoopTable, field: Field) -> Result<GCHopfCoquasigroup> {
    l.check_inverse_property()?;
    let n = l.order();
    let mut mul = Tensor3::zeros(field, [n, n, n]);
    let mut delta = Mat::zeros(field, n * n, n);
    for x in 0..n {
        mul.set(x, x, x, field.one());
        for y in 0..n {
            delta.set(x * n + y, l.mul(x, y), field.one());
        }
    }
    let mut counit = vec![field.zero(); n];
    counit[l.identity()] = field.one();
    let labels = (0..n).map(|x| format!("d{x}")).collect();
    let component = ComponentAlgebra::new(mul, vec![field.one(); n])?.with_labels(labels)?;
    GCHopfCoquasigroup::new(
        field,
        GroupTable::trivial(),
        vec![component],
        vec![delta],
        counit,
        vec![permutation_matrix(field, n, |x| l.left_inv(x))],
    )
}

/// Copies a trivially graded instance into every grade of `g`:
/// `Δ_{p,q}(i_{pq}(h)) = i_p(h₁)⊗i_q(h₂)`, `ε(i_1(h)) = ε(h)`,
/// `S_p(i_p(h)) = i_{p⁻¹}(S(h))`. The group acts on nothing.
pub fn mirror_construction(h0: &GCHopfCoquasigroup, g: &GroupTable) -> Result<GCHopfCoquasigroup> {
    if !h0.group().is_trivial() {
        return Err(Error::shape(
            "/group",
            format!("mirror needs a trivially graded base, got order {}", h0.group().order()),
        ));
    }
    let n = g.order();
    let e0 = h0.group().identity();
    let comp = h0.component(e0).clone();
    let delta = h0.delta(e0, e0).clone();
    let s = h0.antipode(e0).clone();
    GCHopfCoquasigroup::new(
        h0.field(),
        g.clone(),
        vec![comp; n],
        vec![delta; n * n],
        h0.counit().to_vec(),
        vec![s; n],
    )
}

/// `k[C_n]` with `χ(g) = q`, `r = g`, `δ = 0`. The conditions hold when
/// `qⁿ = 1`; the datum is returned either way.
pub fn taft_example(n: usize, q: Scalar) -> (GCHopfCoquasigroup, OreDatum) {
    let field = q.field();
    let h = group_algebra_hcq(&GroupTable::cyclic(n), field);
    let chi = (0..n).map(|k| q.pow(k as u32)).collect();
    let mut g = vec![field.zero(); n];
    g[1 % n] = field.one();
    let datum = OreDatum::new(chi, vec![GradedElement::new(0, g)], vec![Mat::zeros(field, n, n)]);
    (h, datum)
}

#[cfg(test)]
mod tests;
