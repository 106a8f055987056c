use serde::Serialize;

use super::check_n;
use crate::error::{Error, Result};
use crate::exactfield::FieldSpec;
use crate::graded::{
    GradedFreeModule, GradedMatrix, Monomial, Polynomial, PresentedModule, RingSpec,
};

/// Monomial ideal of `K[U,V,W]` generated by the coefficients of `(UX + VY + WZ)^n` over a
/// field of characteristic 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientIdeal {
    pub n: u32,
    /// Exponent vectors in `U, V, W`, descending lexicographic.
    pub generators: Vec<Monomial>,
}

impl CoefficientIdeal {
    /// `R(−n)^k → R` sending the basis to the generators.
    pub fn presentation(&self, ring: &RingSpec) -> Result<GradedMatrix> {
        let k = self.generators.len();
        GradedMatrix::from_fn(
            GradedFreeModule::uniform(ring, k, self.n as i64),
            GradedFreeModule::new(ring, vec![0]),
            |_, j| Polynomial::monomial(ring, self.generators[j].clone()),
        )
    }

    /// `R / I_n` as a cokernel.
    pub fn quotient(&self, ring: &RingSpec) -> Result<PresentedModule> {
        Ok(PresentedModule::cokernel(self.presentation(ring)?))
    }
}

/// Whether `U^a V^b W^c` occurs in `(UX + VY + WZ)^{a+b+c}` over GF(2): the multinomial
/// coefficient is odd exactly when the binary digits of `a, b, c` are disjoint.
pub(crate) fn in_support(e: &[i64]) -> bool {
    e.iter().all(|&x| x >= 0) && e[0] & e[1] == 0 && e[0] & e[2] == 0 && e[1] & e[2] == 0
}

fn sorted(mut v: Vec<Monomial>) -> Vec<Monomial> {
    v.sort_by(|a, b| b.cmp(a));
    v.dedup();
    v
}

/// Generators of `∏_{i ∈ S_n} (U^{2^i}, V^{2^i}, W^{2^i})`, with `S_n` the set of binary
/// digits of `n`.
pub fn frobenius_product(n: u32) -> Vec<Monomial> {
    let mut acc = vec![Monomial::one(3)];
    for i in 0..32 {
        if n >> i & 1 == 0 {
            continue;
        }
        let q = 1u32 << i;
        acc = acc
            .iter()
            .flat_map(|m| (0..3).map(move |t| m.mul(&Monomial::new(pow_vec(t, q)))))
            .collect();
    }
    sorted(acc)
}

fn pow_vec(t: usize, q: u32) -> Vec<u32> {
    let mut e = vec![0; 3];
    e[t] = q;
    e
}

/// Coefficient monomials of `(UX + VY + WZ)^n` computed by repeated multiplication in
/// `GF(2)[U,V,W,X,Y,Z]`.
pub fn expand_power(n: u32) -> Vec<Monomial> {
    let ring = RingSpec::polynomial(FieldSpec::gf2(), &["U", "V", "W", "X", "Y", "Z"])
        .expect("valid names");
    let x = |i| Polynomial::var(&ring, i);
    let lin = x(0)
        .mul(&ring, &x(3))
        .add(&ring, &x(1).mul(&ring, &x(4)))
        .add(&ring, &x(2).mul(&ring, &x(5)));
    let mut acc = Polynomial::one(&ring);
    for _ in 0..n {
        acc = acc.mul(&ring, &lin);
    }
    sorted(
        acc.terms()
            .iter()
            .map(|(m, _)| Monomial::new(m.exponents()[..3].to_vec()))
            .collect(),
    )
}

/// The coefficient ideal `I_n`, from the Frobenius factorisation.
pub fn coefficient_ideal(field: FieldSpec, n: u32) -> Result<CoefficientIdeal> {
    if field.characteristic() != 2 {
        return Err(Error::UnsupportedRing(format!(
            "coefficient ideals are taken in characteristic 2, got {}",
            field.characteristic()
        )));
    }
    check_n(n as usize)?;
    Ok(CoefficientIdeal {
        n,
        generators: frobenius_product(n),
    })
}
