//! Multi-leg tensors over graded components, stored as dense coefficient
//! blocks keyed by the tuple of y-degrees of the legs.
//!
//! A leg of grade `p` carries monomials `eᵢ·yⁿ` of the component `p`. For a
//! plain component every degree is zero and a tensor is a single dense block
//! in the row-major Kronecker convention. Ore-extension elements use one
//! block per degree tuple, so legwise arithmetic never needs a monomial
//! ordering.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::exactlin::{Field, Scalar};
use crate::grading::Grade;

/// Basis monomial `e_index · y^degree` of one component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub index: usize,
    pub degree: u32,
}

impl Mono {
    pub fn basis(index: usize) -> Self {
        Mono { index, degree: 0 }
    }

    pub fn new(index: usize, degree: u32) -> Self {
        Mono { index, degree }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Leg {
    pub grade: Grade,
    pub dim: usize,
}

#[derive(Debug, Clone)]
pub struct LegTensor {
    field: Field,
    legs: Vec<Leg>,
    blocks: BTreeMap<Vec<u32>, Vec<Scalar>>,
}

fn block_size(legs: &[Leg]) -> usize {
    legs.iter().map(|l| l.dim).product()
}

fn split_index(flat: usize, legs: &[Leg]) -> Vec<usize> {
    let mut out = vec![0; legs.len()];
    let mut rest = flat;
    for (slot, leg) in out.iter_mut().zip(legs).rev() {
        *slot = rest % leg.dim;
        rest /= leg.dim;
    }
    out
}

impl LegTensor {
    pub fn zero(field: Field, legs: Vec<Leg>) -> Self {
        LegTensor {
            field,
            legs,
            blocks: BTreeMap::new(),
        }
    }

    /// A tensor with no legs, i.e. a scalar.
    pub fn scalar(c: Scalar) -> Self {
        let mut t = LegTensor::zero(c.field(), Vec::new());
        if !c.is_zero() {
            t.blocks.insert(Vec::new(), vec![c]);
        }
        t
    }

    /// One-leg tensor `Σᵢ v[i]·eᵢ·y^degree`.
    pub fn from_vec(field: Field, leg: Leg, degree: u32, v: Vec<Scalar>) -> Self {
        assert_eq!(v.len(), leg.dim, "vector length");
        let mut t = LegTensor::zero(field, vec![leg]);
        if v.iter().any(|x| !x.is_zero()) {
            t.blocks.insert(vec![degree], v);
        }
        t
    }

    /// Tensor with a single dense block at the given leg degrees.
    pub fn from_block(field: Field, legs: Vec<Leg>, degrees: &[u32], v: Vec<Scalar>) -> Self {
        assert_eq!(v.len(), block_size(&legs), "block length");
        assert_eq!(degrees.len(), legs.len(), "one degree per leg");
        let mut t = LegTensor::zero(field, legs);
        if v.iter().any(|x| !x.is_zero()) {
            t.blocks.insert(degrees.to_vec(), v);
        }
        t
    }

    /// Pure tensor `coef · m₁⊗…⊗m_k`.
    pub fn pure(field: Field, legs: Vec<Leg>, monos: &[Mono], coef: Scalar) -> Self {
        assert_eq!(legs.len(), monos.len());
        let mut t = LegTensor::zero(field, legs);
        if !coef.is_zero() {
            let degs: Vec<u32> = monos.iter().map(|m| m.degree).collect();
            let mut flat = 0;
            for (m, l) in monos.iter().zip(&t.legs) {
                assert!(m.index < l.dim, "basis index out of range");
                flat = flat * l.dim + m.index;
            }
            t.add_entry(&degs, flat, &coef);
        }
        t
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn grades(&self) -> Vec<Grade> {
        self.legs.iter().map(|l| l.grade).collect()
    }

    pub fn blocks(&self) -> &BTreeMap<Vec<u32>, Vec<Scalar>> {
        &self.blocks
    }

    pub fn block(&self, degrees: &[u32]) -> Option<&[Scalar]> {
        self.blocks.get(degrees).map(Vec::as_slice)
    }

    /// Dense coefficient vector of one block, zeros when absent.
    pub fn block_or_zero(&self, degrees: &[u32]) -> Vec<Scalar> {
        self.block(degrees)
            .map(<[Scalar]>::to_vec)
            .unwrap_or_else(|| vec![self.field.zero(); block_size(&self.legs)])
    }

    /// Largest degree appearing on each leg.
    pub fn max_degrees(&self) -> Vec<u32> {
        let mut out = vec![0; self.legs.len()];
        for (degs, block) in &self.blocks {
            if block.iter().any(|x| !x.is_zero()) {
                for (o, d) in out.iter_mut().zip(degs) {
                    *o = (*o).max(*d);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|b| b.iter().all(Scalar::is_zero))
    }

    /// Value of a leg-free tensor.
    pub fn as_scalar(&self) -> Scalar {
        assert!(self.legs.is_empty(), "tensor still has legs");
        self.blocks
            .get(&Vec::new())
            .map(|b| b[0].clone())
            .unwrap_or_else(|| self.field.zero())
    }

    fn add_entry(&mut self, degs: &[u32], flat: usize, value: &Scalar) {
        if value.is_zero() {
            return;
        }
        let size = block_size(&self.legs);
        let field = self.field;
        let block = self
            .blocks
            .entry(degs.to_vec())
            .or_insert_with(|| vec![field.zero(); size]);
        block[flat] = &block[flat] + value;
    }

    /// Nonzero entries as (degrees, flat index, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, usize, &Scalar)> {
        self.blocks.iter().flat_map(|(degs, block)| {
            block
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, c)| (degs, i, c))
        })
    }

    /// Nonzero entries as (monomial per leg, coefficient).
    pub fn mono_terms(&self) -> Vec<(Vec<Mono>, Scalar)> {
        self.terms()
            .map(|(degs, flat, c)| {
                let idx = split_index(flat, &self.legs);
                let monos = idx
                    .into_iter()
                    .zip(degs)
                    .map(|(index, &degree)| Mono { index, degree })
                    .collect();
                (monos, c.clone())
            })
            .collect()
    }

    fn assert_same_shape(&self, other: &LegTensor) {
        assert_eq!(self.legs, other.legs, "tensor legs differ");
    }

    pub fn add_assign(&mut self, other: &LegTensor) {
        self.assert_same_shape(other);
        for (degs, flat, c) in other.terms() {
            self.add_entry(degs, flat, c);
        }
    }

    pub fn add(&self, other: &LegTensor) -> LegTensor {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &LegTensor) -> LegTensor {
        self.add(&other.scale(&-&self.field.one()))
    }

    pub fn scale(&self, c: &Scalar) -> LegTensor {
        let mut out = LegTensor::zero(self.field, self.legs.clone());
        if c.is_zero() {
            return out;
        }
        for (degs, block) in &self.blocks {
            out.blocks
                .insert(degs.clone(), block.iter().map(|x| x * c).collect());
        }
        out
    }

    pub fn neg(&self) -> LegTensor {
        self.scale(&-&self.field.one())
    }

    /// Tensor product; legs of `self` come first.
    pub fn kron(&self, other: &LegTensor) -> LegTensor {
        let mut legs = self.legs.clone();
        legs.extend_from_slice(&other.legs);
        let mut out = LegTensor::zero(self.field, legs);
        let inner = block_size(&other.legs);
        for (da, fa, ca) in self.terms() {
            for (db, fb, cb) in other.terms() {
                let mut degs = da.clone();
                degs.extend_from_slice(db);
                out.add_entry(&degs, fa * inner + fb, &(ca * cb));
            }
        }
        out
    }

    /// Replaces leg `k` by the legs `out_legs`, sending each monomial on that
    /// leg through `f` (which must return a tensor with legs `out_legs`).
    pub fn map_leg(
        &self,
        k: usize,
        out_legs: &[Leg],
        mut f: impl FnMut(Mono) -> LegTensor,
    ) -> LegTensor {
        assert!(k < self.legs.len(), "leg index");
        let mut legs = self.legs[..k].to_vec();
        legs.extend_from_slice(out_legs);
        legs.extend_from_slice(&self.legs[k + 1..]);
        let mut out = LegTensor::zero(self.field, legs);
        let suffix: usize = block_size(&self.legs[k + 1..]);
        let dk = self.legs[k].dim;
        let inner = block_size(out_legs);
        let mut cache: HashMap<Mono, LegTensor> = HashMap::new();
        for (degs, flat, c) in self.terms() {
            let q = flat % suffix;
            let a = (flat / suffix) % dk;
            let prefix = flat / (suffix * dk);
            let m = Mono {
                index: a,
                degree: degs[k],
            };
            let image = cache.entry(m).or_insert_with(|| f(m));
            debug_assert_eq!(image.legs, out_legs);
            for (edegs, eflat, ec) in image.terms() {
                let mut tdegs = degs[..k].to_vec();
                tdegs.extend_from_slice(edegs);
                tdegs.extend_from_slice(&degs[k + 1..]);
                out.add_entry(&tdegs, (prefix * inner + eflat) * suffix + q, &(c * ec));
            }
        }
        out
    }

    /// Applies a functional to leg `k`, removing it.
    pub fn apply_functional(&self, k: usize, mut f: impl FnMut(Mono) -> Scalar) -> LegTensor {
        self.map_leg(k, &[], |m| LegTensor::scalar(f(m)))
    }

    /// Replaces legs `k, k+1` by the single leg `out_leg`, sending each pair
    /// of monomials through `f` (typically a multiplication).
    pub fn merge_legs(
        &self,
        k: usize,
        out_leg: Leg,
        mut f: impl FnMut(Mono, Mono) -> LegTensor,
    ) -> LegTensor {
        assert!(k + 1 < self.legs.len(), "leg index");
        let mut legs = self.legs[..k].to_vec();
        legs.push(out_leg);
        legs.extend_from_slice(&self.legs[k + 2..]);
        let mut out = LegTensor::zero(self.field, legs);
        let suffix: usize = block_size(&self.legs[k + 2..]);
        let (d0, d1) = (self.legs[k].dim, self.legs[k + 1].dim);
        let mut cache: HashMap<(Mono, Mono), LegTensor> = HashMap::new();
        for (degs, flat, c) in self.terms() {
            let q = flat % suffix;
            let b = (flat / suffix) % d1;
            let a = (flat / (suffix * d1)) % d0;
            let prefix = flat / (suffix * d1 * d0);
            let ma = Mono::new(a, degs[k]);
            let mb = Mono::new(b, degs[k + 1]);
            let image = cache.entry((ma, mb)).or_insert_with(|| f(ma, mb));
            for (edegs, eflat, ec) in image.terms() {
                let mut tdegs = degs[..k].to_vec();
                tdegs.extend_from_slice(edegs);
                tdegs.extend_from_slice(&degs[k + 2..]);
                out.add_entry(
                    &tdegs,
                    (prefix * out_leg.dim + eflat) * suffix + q,
                    &(c * ec),
                );
            }
        }
        out
    }

    /// Legwise product `(a₁⊗…⊗a_k)(b₁⊗…⊗b_k) = a₁b₁⊗…⊗a_kb_k`, with each leg
    /// product given by `f(leg, a, b)` as a one-leg tensor of that leg.
    pub fn legwise_mul(
        &self,
        other: &LegTensor,
        mut f: impl FnMut(usize, Mono, Mono) -> LegTensor,
    ) -> LegTensor {
        self.assert_same_shape(other);
        let mut out = LegTensor::zero(self.field, self.legs.clone());
        let mut cache: HashMap<(usize, Mono, Mono), LegTensor> = HashMap::new();
        let lhs = self.mono_terms();
        let rhs = other.mono_terms();
        for (ma, ca) in &lhs {
            'pairs: for (mb, cb) in &rhs {
                let mut acc = LegTensor::scalar(ca * cb);
                for leg in 0..self.legs.len() {
                    let key = (leg, ma[leg], mb[leg]);
                    let prod = cache.entry(key).or_insert_with(|| f(leg, ma[leg], mb[leg]));
                    if prod.is_zero() {
                        continue 'pairs;
                    }
                    acc = acc.kron(prod);
                }
                out.add_assign(&acc);
            }
        }
        out
    }

    /// Renders the tensor with `label(leg grade, monomial)` for each leg;
    /// unit coefficients are left implicit, e.g. `e⊗g - 2·g⊗y`.
    pub fn render(&self, label: &dyn Fn(Grade, Mono) -> String) -> String {
        let terms = self.mono_terms();
        if terms.is_empty() {
            return "0".to_string();
        }
        let one = self.field.one();
        let mut s = String::new();
        for (i, (monos, c)) in terms.iter().enumerate() {
            let body = monos
                .iter()
                .zip(&self.legs)
                .map(|(m, l)| label(l.grade, *m))
                .collect::<Vec<_>>()
                .join("⊗");
            let negative = c.to_string().starts_with('-');
            let magnitude = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if body.is_empty() {
                let _ = write!(s, "{magnitude}");
            } else if magnitude == one {
                s.push_str(&body);
            } else {
                let _ = write!(s, "{magnitude}·{body}");
            }
        }
        s
    }
}

impl PartialEq for LegTensor {
    fn eq(&self, other: &LegTensor) -> bool {
        if self.legs != other.legs {
            return false;
        }
        let zero = self.field.zero();
        let keys: std::collections::BTreeSet<&Vec<u32>> =
            self.blocks.keys().chain(other.blocks.keys()).collect();
        keys.into_iter().all(|k| {
            let size = block_size(&self.legs);
            (0..size).all(|i| {
                let a = self.blocks.get(k).map_or(&zero, |b| &b[i]);
                let b = other.blocks.get(k).map_or(&zero, |b| &b[i]);
                a == b
            })
        })
    }
}

impl Eq for LegTensor {}
