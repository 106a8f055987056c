//! `A = K[x,y,z,u,v,w]/(x², y², z²)` over a field of characteristic 2, and
//! `R = K[U,V,W]`.
//!
//! Free modules of rank `binom(n+2, 2)` are identified with `R[X,Y,Z]_n` through the
//! monomial basis in descending lexicographic order; in that basis `F_n` is the matrix of
//! `δ = U ∂_X + V ∂_Y + W ∂_Z` (with `∂` the exponent-lowering shift), and `F_n^t` is
//! multiplication by `UX + VY + WZ`.

use super::coefficient::in_support;
use super::xyz::{xyz_basis, xyz_index};
use super::{check_n, cone, Setup2Params};
use crate::error::Result;
use crate::graded::{GradedFreeModule, GradedMatrix, Monomial, Polynomial, RingSpec};

pub fn ring_a(p: &Setup2Params) -> RingSpec {
    RingSpec::with_squares(p.field, &["x", "y", "z", "u", "v", "w"], &["x", "y", "z"])
        .expect("valid names")
}

pub fn ring_r(p: &Setup2Params) -> RingSpec {
    RingSpec::polynomial(p.field, &["U", "V", "W"]).expect("valid names")
}

fn binom2(k: usize) -> usize {
    k * (k - 1) / 2
}

/// Block matrix with `d·I_k` at block `(k, k)` and the bidiagonal `[a b]` pattern at block
/// `(k, k+1)`; rows `binom(n+1, 2)`, columns `binom(n+2, 2)`.
fn staircase(
    ring: &RingSpec,
    n: usize,
    (d, a, b): (usize, usize, usize),
    dom: i64,
    cod: i64,
) -> Result<GradedMatrix> {
    let rows = binom2(n + 1);
    let cols = binom2(n + 2);
    let mut block_of_col = Vec::with_capacity(cols);
    for c in 1..=n + 1 {
        for r in 0..c {
            block_of_col.push((c, r));
        }
    }
    let mut block_of_row = Vec::with_capacity(rows);
    for k in 1..=n {
        for r in 0..k {
            block_of_row.push((k, r));
        }
    }
    GradedMatrix::from_fn(
        GradedFreeModule::uniform(ring, cols, dom),
        GradedFreeModule::uniform(ring, rows, cod),
        |i, j| {
            let (k, r) = block_of_row[i];
            let (c, s) = block_of_col[j];
            if c == k && s == r {
                Polynomial::var(ring, d)
            } else if c == k + 1 && s == r {
                Polynomial::var(ring, a)
            } else if c == k + 1 && s == r + 1 {
                Polynomial::var(ring, b)
            } else {
                Polynomial::zero()
            }
        },
    )
}

/// `E_n : A(−n)^{binom(n+2,2)} → A(−n+1)^{binom(n+1,2)}`.
pub fn build_e(p: &Setup2Params, n: usize) -> Result<GradedMatrix> {
    check_n(n)?;
    staircase(&ring_a(p), n, (0, 1, 2), n as i64, n as i64 - 1)
}

/// `F_n`, same shape as `E_n` with `u, v, w`.
pub fn build_f(p: &Setup2Params, n: usize) -> Result<GradedMatrix> {
    check_n(n)?;
    staircase(&ring_a(p), n, (3, 4, 5), n as i64, n as i64 - 1)
}

/// `D_n = [[E_n, 0], [F_n, E_n]]`.
pub fn build_d(p: &Setup2Params, n: usize) -> Result<GradedMatrix> {
    let e = build_e(p, n)?;
    cone(&e, &build_f(p, n)?, &e)
}

/// `E_n F_{n+1} + F_n E_{n+1}`.
pub fn ef_plus_fe(p: &Setup2Params, n: usize) -> Result<GradedMatrix> {
    let left = build_e(p, n)?.compose(&build_f(p, n + 1)?)?;
    let right = build_f(p, n)?.compose(&build_e(p, n + 1)?)?;
    left.add(&right)
}

/// `Φ_n = F_n : R(−n)^{binom(n+2,2)} → R(−n+1)^{binom(n+1,2)}` with `u,v,w ↦ U,V,W`.
pub fn phi(p: &Setup2Params, n: usize) -> Result<GradedMatrix> {
    check_n(n)?;
    staircase(&ring_r(p), n, (0, 1, 2), n as i64, n as i64 - 1)
}

/// `Ψ_n = F_n^t : R(n−1)^{binom(n+1,2)} → R(n)^{binom(n+2,2)}`.
pub fn psi(p: &Setup2Params, n: usize) -> Result<GradedMatrix> {
    Ok(phi(p, n)?.dual_map())
}

/// Multiplication by `UX + VY + WZ` from `R[X,Y,Z]_{n−1}` to `R[X,Y,Z]_n`, with the twists
/// of `Ψ_n`.
pub fn mu_multiply(p: &Setup2Params, n: usize) -> Result<GradedMatrix> {
    check_n(n)?;
    let r = ring_r(p);
    let src = xyz_basis(n as u32 - 1);
    let tgt = xyz_basis(n as u32);
    GradedMatrix::from_fn(
        GradedFreeModule::uniform(&r, src.len(), 1 - n as i64),
        GradedFreeModule::uniform(&r, tgt.len(), -(n as i64)),
        |i, j| {
            let (a, b) = (tgt[i], src[j]);
            let diff: Vec<i64> = (0..3).map(|t| a[t] as i64 - b[t] as i64).collect();
            match diff.iter().position(|&e| e == 1) {
                Some(t) if diff.iter().filter(|&&e| e == 0).count() == 2 => Polynomial::var(&r, t),
                _ => Polynomial::zero(),
            }
        },
    )
}

/// Matrix of `δ^n` from the basis `X^nY^nZ^n / m_j` to the basis `m_i` of `R[X,Y,Z]_n`:
/// entry `U^{n−a_i−a_j} V^{…} W^{…}` when that monomial has an odd multinomial coefficient,
/// else 0. Twists `2n → n`.
pub fn build_g(p: &Setup2Params, n: usize) -> Result<GradedMatrix> {
    check_n(n)?;
    let r = ring_r(p);
    let basis = xyz_basis(n as u32);
    let n1 = n as i64;
    GradedMatrix::from_fn(
        GradedFreeModule::uniform(&r, basis.len(), 2 * n1),
        GradedFreeModule::uniform(&r, basis.len(), n1),
        |i, j| {
            let e: Vec<i64> = (0..3)
                .map(|t| n1 - basis[i][t] as i64 - basis[j][t] as i64)
                .collect();
            if e.iter().all(|&x| x >= 0) && in_support(&e) {
                Polynomial::monomial(&r, Monomial::new(e.iter().map(|&x| x as u32).collect()))
            } else {
                Polynomial::zero()
            }
        },
    )
}

/// `0 → R(−2n−1)^{binom(n+1,2)} → R(−2n)^{binom(n+2,2)} → R(−n)^{binom(n+2,2)} → R(−n+1)^{binom(n+1,2)}`
/// as `[F_n, G_n, F_n^t]`.
pub fn four_term_complex(p: &Setup2Params, n: usize) -> Result<Vec<GradedMatrix>> {
    Ok(vec![
        phi(p, n)?,
        build_g(p, n)?,
        psi(p, n)?.retwist(3 * n as i64),
    ])
}

/// `Φ_1 Φ_2 ⋯ Φ_n : R(−n)^{binom(n+2,2)} → R`.
pub fn phi_product(p: &Setup2Params, n: usize) -> Result<GradedMatrix> {
    let mut acc = phi(p, 1)?;
    for k in 2..=n {
        acc = acc.compose(&phi(p, k)?)?;
    }
    Ok(acc)
}

/// Rows `X^{n−i}Y^i` and columns `X^nY^nZ^n / X^{n−j}Y^j`, for `0 ≤ i, j ≤ n`.
pub fn antidiagonal_indices(n: usize) -> Vec<usize> {
    let n = n as u32;
    (0..=n).map(|i| xyz_index(&[n - i, i, 0])).collect()
}
