use crate::error::{Error, Result};
use crate::graded::{Polynomial, RingSpec};

/// Exponent vectors of degree-`n` monomials in `X, Y, Z`, descending lexicographic.
pub fn xyz_basis(n: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::with_capacity(((n + 1) * (n + 2) / 2) as usize);
    for a in (0..=n).rev() {
        for b in (0..=n - a).rev() {
            out.push([a, b, n - a - b]);
        }
    }
    out
}

/// Position of `e` in `xyz_basis(e[0] + e[1] + e[2])`.
pub fn xyz_index(e: &[u32; 3]) -> usize {
    let k = (e[1] + e[2]) as usize;
    k * (k + 1) / 2 + e[2] as usize
}

/// Homogeneous element of `R[X,Y,Z]` of some degree in `X, Y, Z`, with coefficients in
/// `R`, indexed by [`xyz_basis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XyzForm {
    degree: u32,
    coeffs: Vec<Polynomial>,
}

impl XyzForm {
    pub fn zero(degree: u32) -> Self {
        let len = ((degree + 1) * (degree + 2) / 2) as usize;
        XyzForm {
            degree,
            coeffs: vec![Polynomial::zero(); len],
        }
    }

    /// `c · X^a Y^b Z^c`.
    pub fn term(e: [u32; 3], c: Polynomial) -> Self {
        let mut f = Self::zero(e.iter().sum());
        f.coeffs[xyz_index(&e)] = c;
        f
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coefficient(&self, e: &[u32; 3]) -> &Polynomial {
        &self.coeffs[xyz_index(e)]
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    fn add_at(&mut self, ring: &RingSpec, e: &[u32; 3], p: &Polynomial) {
        let k = xyz_index(e);
        self.coeffs[k] = self.coeffs[k].add(ring, p);
    }
}

/// `δ = U ∂_X + V ∂_Y + W ∂_Z` where `∂_X X^a = X^{a−1}` (and `0` when `a = 0`); `ring` is
/// `K[U,V,W]`.
pub fn delta_apply(ring: &RingSpec, f: &XyzForm) -> Result<XyzForm> {
    if ring.nvars() != 3 {
        return Err(Error::InvalidRing(format!(
            "expected three variables, got {ring}"
        )));
    }
    if f.degree == 0 {
        return Err(Error::Parameter(
            "δ lowers the degree; input has degree 0".into(),
        ));
    }
    let mut out = XyzForm::zero(f.degree - 1);
    for (e, c) in xyz_basis(f.degree).iter().zip(&f.coeffs) {
        if c.is_zero() {
            continue;
        }
        for t in 0..3 {
            if e[t] > 0 {
                let mut lower = *e;
                lower[t] -= 1;
                out.add_at(ring, &lower, &c.mul(ring, &Polynomial::var(ring, t)));
            }
        }
    }
    Ok(out)
}
