//! Graded rings with pure-power relations, twisted free modules and homogeneous maps.

mod matrix;
mod module;
mod pieces;
mod poly;
mod presented;
mod ring;

pub use matrix::GradedMatrix;
pub use module::GradedFreeModule;
pub use pieces::{evaluate_in_degree, Chain, FineGrading, Key, Piece};
pub use poly::Polynomial;
pub use presented::{ModuleKind, PresentedModule};
pub use ring::{BasisTable, DegreeBasis, Monomial, RingSpec};

/// Normal-form monomials of `degree` in descending lexicographic order.
pub fn monomial_basis(ring: &RingSpec, degree: i64) -> Vec<Monomial> {
    ring.monomial_basis(degree)
}

/// Dimension of the degree-`degree` piece of `module`.
pub fn hilbert_function(module: &PresentedModule, degree: i64) -> usize {
    module.hilbert_function(degree)
}
