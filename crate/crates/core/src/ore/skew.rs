use crate::exactlin::{Field, Scalar};
use crate::grading::Grade;
use crate::hcq::{Leg, LegTensor};

/// An element `Σᵢ hᵢ yⁱ` of `R_p` in left normal form. Trailing zero
/// coefficients are trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewPoly {
    grade: Grade,
    coeffs: Vec<Vec<Scalar>>,
}

impl SkewPoly {
    pub fn new(grade: Grade, mut coeffs: Vec<Vec<Scalar>>) -> Self {
        while coeffs
            .last()
            .is_some_and(|c| c.iter().all(Scalar::is_zero))
        {
            coeffs.pop();
        }
        SkewPoly { grade, coeffs }
    }

    pub fn zero(grade: Grade) -> Self {
        SkewPoly {
            grade,
            coeffs: Vec::new(),
        }
    }

    /// `h·yⁿ`.
    pub fn monomial(grade: Grade, h: Vec<Scalar>, n: usize) -> Self {
        let field = h.first().map(Scalar::field).unwrap_or(Field::Rational);
        let mut coeffs = vec![vec![field.zero(); h.len()]; n];
        coeffs.push(h);
        SkewPoly::new(grade, coeffs)
    }

    pub fn constant(grade: Grade, h: Vec<Scalar>) -> Self {
        SkewPoly::monomial(grade, h, 0)
    }

    pub fn grade(&self) -> Grade {
        self.grade
    }

    pub fn coeffs(&self) -> &[Vec<Scalar>] {
        &self.coeffs
    }

    /// Coefficient of `yⁿ`, `None` above the degree.
    pub fn coeff(&self, n: usize) -> Option<&[Scalar]> {
        self.coeffs.get(n).map(Vec::as_slice)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn to_tensor(&self, field: Field, dim: usize) -> LegTensor {
        let leg = Leg {
            grade: self.grade,
            dim,
        };
        let mut t = LegTensor::zero(field, vec![leg]);
        for (n, c) in self.coeffs.iter().enumerate() {
            t.add_assign(&LegTensor::from_vec(field, leg, n as u32, c.clone()));
        }
        t
    }

    pub(crate) fn from_tensor(t: &LegTensor) -> Self {
        assert_eq!(t.legs().len(), 1, "expected a one-leg tensor");
        let grade = t.legs()[0].grade;
        let top = t.max_degrees()[0] as usize;
        let coeffs = (0..=top).map(|n| t.block_or_zero(&[n as u32])).collect();
        SkewPoly::new(grade, coeffs)
    }
}
