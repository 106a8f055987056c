//! The two explicit families: matrices, resolutions, Tor/Ext summands, coefficient
//! ideals, and the predicted closed forms.

mod closed_forms;
mod coefficient;
mod minors;
pub mod setup1;
pub mod setup2;
mod xyz;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::FieldSpec;
use crate::graded::{GradedFreeModule, GradedMatrix, Polynomial, PresentedModule, RingSpec};

pub use closed_forms::{closed_form, f_of, Quantity};
pub use coefficient::{coefficient_ideal, expand_power, frobenius_product, CoefficientIdeal};
pub use minors::determinant;
pub use xyz::{delta_apply, xyz_basis, XyzForm};

/// Parameters of the one-parameter family over `K[y,z,v,w]/(y², z²)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Setup1Params {
    pub m: u32,
    pub field: FieldSpec,
}

impl Setup1Params {
    pub fn new(m: u32, field: FieldSpec) -> Result<Self> {
        if m < 1 {
            return Err(Error::Parameter("m must be at least 1".into()));
        }
        Ok(Setup1Params { m, field })
    }
}

/// Parameters of the family over `K[x,y,z,u,v,w]/(x², y², z²)` in characteristic 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Setup2Params {
    pub field: FieldSpec,
}

impl Setup2Params {
    pub fn new(field: FieldSpec) -> Result<Self> {
        if field.characteristic() != 2 {
            return Err(Error::UnsupportedRing(format!(
                "this family needs characteristic 2, got {}",
                field.characteristic()
            )));
        }
        Ok(Setup2Params { field })
    }
}

impl Default for Setup2Params {
    fn default() -> Self {
        Setup2Params {
            field: FieldSpec::gf2(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Setup {
    One(Setup1Params),
    Two(Setup2Params),
}

impl Setup {
    /// Ring over which the resolution lives.
    pub fn ring(&self) -> RingSpec {
        match self {
            Setup::One(p) => setup1::ring_a(p),
            Setup::Two(p) => setup2::ring_a(p),
        }
    }

    /// Polynomial ring the Tor and Ext summands are computed over.
    pub fn reduced_ring(&self) -> RingSpec {
        match self {
            Setup::One(p) => setup1::ring_r(p),
            Setup::Two(p) => setup2::ring_r(p),
        }
    }

    /// The map whose kernel and cokernel give `Tor_n`.
    pub fn phi(&self, n: usize) -> Result<GradedMatrix> {
        match self {
            Setup::One(p) => setup1::phi(p, n),
            Setup::Two(p) => setup2::phi(p, n),
        }
    }

    /// The dual map, whose cokernel and kernel give `Ext^n`.
    pub fn psi(&self, n: usize) -> Result<GradedMatrix> {
        Ok(self.phi(n)?.dual_map())
    }
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n < 1 {
        Err(Error::Parameter("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `rows × (rows + 1)` matrix with `a(r)` at `(r, r)` and `b(r)` at `(r, r + 1)`.
pub(crate) fn bidiagonal(
    ring: &RingSpec,
    rows: usize,
    dom_twist: i64,
    cod_twist: i64,
    a: impl Fn(usize) -> Polynomial,
    b: impl Fn(usize) -> Polynomial,
) -> Result<GradedMatrix> {
    GradedMatrix::from_fn(
        GradedFreeModule::uniform(ring, rows + 1, dom_twist),
        GradedFreeModule::uniform(ring, rows, cod_twist),
        |i, j| {
            if j == i {
                a(i)
            } else if j == i + 1 {
                b(i)
            } else {
                Polynomial::zero()
            }
        },
    )
}

/// `[[top, 0], [bottom, low]]`.
pub(crate) fn cone(
    top: &GradedMatrix,
    bottom: &GradedMatrix,
    low: &GradedMatrix,
) -> Result<GradedMatrix> {
    let dom = top.domain().direct_sum(low.domain());
    let cod = top.codomain().direct_sum(low.codomain());
    let (r, c) = (top.rows(), top.cols());
    GradedMatrix::from_blocks(dom, cod, &[(0, 0, top), (r, 0, bottom), (r, c, low)])
}

/// Tor resolution differentials `D_1, …, D_{n_max}`.
pub fn resolution_of_m(setup: &Setup, n_max: usize) -> Result<Vec<GradedMatrix>> {
    check_n(n_max)?;
    (1..=n_max)
        .map(|n| match setup {
            Setup::One(p) => setup1::build_d(p, n),
            Setup::Two(p) => setup2::build_d(p, n),
        })
        .collect()
}

/// `Tor_n` as `(Ker Φ_n, Coker Φ_{n+1})` over the reduced ring.
pub fn tor_module(setup: &Setup, n: usize) -> Result<(PresentedModule, PresentedModule)> {
    check_n(n)?;
    Ok((
        PresentedModule::kernel(setup.phi(n)?),
        PresentedModule::cokernel(setup.phi(n + 1)?),
    ))
}

/// `Ext^n` as `(Coker Ψ_n, Ker Ψ_{n+1})` over the reduced ring.
pub fn ext_module(setup: &Setup, n: usize) -> Result<(PresentedModule, PresentedModule)> {
    check_n(n)?;
    Ok((
        PresentedModule::cokernel(setup.psi(n)?),
        PresentedModule::kernel(setup.psi(n + 1)?),
    ))
}
