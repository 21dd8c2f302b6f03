//! Exact scalar arithmetic over `Q` and `GF(p)` with dense vectors, matrices,
//! order-3 tensors, Kronecker products and exact inversion.
//!
//! Vectors are plain `Vec<Scalar>` slices. Tensor products follow the
//! row-major convention `(i·n + j) ↔ eᵢ⊗eⱼ` everywhere in the crate.

mod field;
mod mat;
mod scalar;

pub use field::{is_prime, Field};
pub use mat::{add_vec, basis_vec, dot, kron, kron_apply, scale_vec, solve_invert, sub_vec, Mat, Tensor3};
pub use scalar::{field_arith, ArithOp, Scalar};
