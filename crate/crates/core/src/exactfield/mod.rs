//! Exact linear algebra over GF(p) and the rationals.

mod dense;
mod field;
mod gf2;
mod matrix;

pub use field::{FieldSpec, Scalar};
pub use gf2::BitMatrix;
pub use matrix::PrimeFieldMatrix;
