use std::fmt;

use super::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over one field. Linear maps act on column vectors,
/// so column `j` holds the image of basis vector `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != c) {
            return Err(Error::shape(
                format!("/{i}"),
                format!("row has {} entries, expected {c}", row.len()),
            ));
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Mat::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Mat {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let field = self.field_of(other);
        let mut out = Mat::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = &out.data[i * other.cols + j] + &(a * b);
                        out.data[i * other.cols + j] = cur;
                    }
                }
            }
        }
        out
    }

    fn field_of(&self, other: &Mat) -> Field {
        self.data
            .first()
            .or(other.data.first())
            .map(Scalar::field)
            .unwrap_or(Field::Rational)
    }

    /// Rank by row reduction.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce(None)
    }

    /// Gauss-Jordan elimination in place, mirroring every row operation onto
    /// `companion` when given. Returns the rank.
    fn row_reduce(&mut self, mut companion: Option<&mut Mat>) -> usize {
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(rank, pivot);
            if let Some(c) = companion.as_deref_mut() {
                c.swap_rows(rank, pivot);
            }
            let inv = self.get(rank, col).inverse().expect("nonzero pivot");
            self.scale_row(rank, &inv);
            if let Some(c) = companion.as_deref_mut() {
                c.scale_row(rank, &inv);
            }
            for r in 0..self.rows {
                if r == rank {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                self.sub_row_multiple(r, rank, &factor);
                if let Some(c) = companion.as_deref_mut() {
                    c.sub_row_multiple(r, rank, &factor);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Scalar) {
        for j in 0..self.cols {
            let x = &self.data[r * self.cols + j] * factor;
            self.data[r * self.cols + j] = x;
        }
    }

    /// row[target] -= factor · row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &Scalar) {
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let x = &self.data[target * self.cols + j] - &(factor * s);
            self.data[target * self.cols + j] = x;
        }
    }
}

/// Exact inverse of a square matrix, or `NotInvertible` carrying the rank.
pub fn solve_invert(m: &Mat) -> Result<Mat> {
    if m.rows != m.cols {
        return Err(Error::shape(
            "matrix",
            format!("expected square matrix, got {}x{}", m.rows, m.cols),
        ));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(m.clone());
    }
    let field = m.data[0].field();
    let mut work = m.clone();
    let mut inv = Mat::identity(field, n);
    let rank = work.row_reduce(Some(&mut inv));
    if rank < n {
        return Err(Error::NotInvertible { rank, size: n });
    }
    Ok(inv)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = match a.first() {
        Some(x) => x.field().zero(),
        None => return Field::Rational.zero(),
    };
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// Kronecker product with the row-major convention `(i·n + j) ↔ eᵢ⊗eⱼ`.
pub fn kron(v: &[Scalar], w: &[Scalar]) -> Result<Vec<Scalar>> {
    if let (Some(a), Some(b)) = (v.first(), w.first()) {
        if a.field() != b.field() {
            return Err(Error::FieldMismatch {
                left: a.field(),
                right: b.field(),
            });
        }
    }
    let mut out = Vec::with_capacity(v.len() * w.len());
    for x in v {
        for y in w {
            out.push(x.checked_mul(y)?);
        }
    }
    Ok(out)
}

/// `(A⊗B)·v` for `v` in Kronecker layout, without forming `A⊗B`.
pub fn kron_apply(a: &Mat, b: &Mat, v: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(v.len(), a.cols() * b.cols(), "vector length");
    let field = a.field_of(b);
    let mut out = vec![field.zero(); a.rows() * b.rows()];
    for (flat, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        let (i, j) = (flat / b.cols(), flat % b.cols());
        for i2 in 0..a.rows() {
            let ai = a.get(i2, i);
            if ai.is_zero() {
                continue;
            }
            let axi = ai * x;
            for j2 in 0..b.rows() {
                let bj = b.get(j2, j);
                if !bj.is_zero() {
                    let k = i2 * b.rows() + j2;
                    out[k] = &out[k] + &(&axi * bj);
                }
            }
        }
    }
    out
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len(), "vector length");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len(), "vector length");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c * x).collect()
}

pub fn basis_vec(field: Field, dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    v[i] = field.one();
    v
}

/// Dense order-3 tensor indexed `(i, j, k)`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor3 {
    dims: [usize; 3],
    data: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(field: Field, dims: [usize; 3]) -> Self {
        Tensor3 {
            dims,
            data: vec![field.zero(); dims[0] * dims[1] * dims[2]],
        }
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[(i * self.dims[1] + j) * self.dims[2] + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, x: Scalar) {
        let idx = (i * self.dims[1] + j) * self.dims[2] + k;
        self.data[idx] = x;
    }

    /// The fibre `(i, j, ·)`.
    pub fn fibre(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.dims[1] + j) * self.dims[2];
        &self.data[start..start + self.dims[2]]
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
