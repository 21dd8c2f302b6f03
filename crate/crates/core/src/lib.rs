//! Exact computer-algebra kernel for finite-dimensional group-cograded Hopf
//! coquasigroups, their Ore extensions, and the standard example families.
//!
//! All arithmetic is exact (rationals or a prime field). Instances are given
//! by structure constants and every axiom is checked by explicit evaluation
//! on basis elements, producing a [`report::VerificationReport`].

pub mod error;
pub mod exactlin;
pub mod grading;
pub mod hcq;
pub mod ore;
pub mod constructions;
pub mod report;

pub use error::{Error, Result};
