//! `A = K[y,z,v,w]/(y², z²)` with `M` presented through `v^m, w^m`, and `R = K[V,W]`.

use super::{bidiagonal, check_n, cone, determinant, Setup1Params};
use crate::error::Result;
use crate::graded::{GradedFreeModule, GradedMatrix, Polynomial, RingSpec};

pub fn ring_a(p: &Setup1Params) -> RingSpec {
    RingSpec::with_squares(p.field, &["y", "z", "v", "w"], &["y", "z"]).expect("valid names")
}

pub fn ring_r(p: &Setup1Params) -> RingSpec {
    RingSpec::polynomial(p.field, &["V", "W"]).expect("valid names")
}

fn b_sign(n: usize, r: usize) -> i64 {
    match (n % 2, r % 2) {
        (0, 0) | (1, 1) => -1,
        _ => 1,
    }
}

fn c_signs(n: usize, r: usize) -> (i64, i64) {
    let alt = if r % 2 == 0 { 1 } else { -1 };
    if n % 2 == 0 {
        (alt, 1)
    } else {
        (-alt, -1)
    }
}

fn c_over(
    ring: &RingSpec,
    m: u32,
    n: usize,
    (vi, wi): (usize, usize),
    dom: i64,
    cod: i64,
) -> Result<GradedMatrix> {
    bidiagonal(
        ring,
        n,
        dom,
        cod,
        |r| Polynomial::var_power(ring, vi, m, c_signs(n, r).0),
        |r| Polynomial::var_power(ring, wi, m, c_signs(n, r).1),
    )
}

/// `B_n : A(−n)^{n+1} → A(−n+1)^n`.
pub fn build_b(p: &Setup1Params, n: usize) -> Result<GradedMatrix> {
    check_n(n)?;
    let a = ring_a(p);
    let n1 = n as i64;
    bidiagonal(
        &a,
        n,
        n1,
        n1 - 1,
        |_| Polynomial::var(&a, 0),
        |r| Polynomial::var_power(&a, 1, 1, b_sign(n, r)),
    )
}

/// `C_n : A(−m−n+1)^{n+1} → A(−n+1)^n`.
pub fn build_c(p: &Setup1Params, n: usize) -> Result<GradedMatrix> {
    check_n(n)?;
    let n1 = n as i64;
    c_over(&ring_a(p), p.m, n, (2, 3), p.m as i64 + n1 - 1, n1 - 1)
}

/// `D_n = [[B_n, 0], [C_n, B_n]]`, from `A(−m−n+1)^{n+1} ⊕ A(−n)^{n+1}` to
/// `A(−m−n+2)^n ⊕ A(−n+1)^n`.
pub fn build_d(p: &Setup1Params, n: usize) -> Result<GradedMatrix> {
    let b = build_b(p, n)?;
    let top = b.retwist(p.m as i64 - 1);
    cone(&top, &build_c(p, n)?, &b)
}

/// `B_n C_{n+1} + C_n B_{n+1}`, with `B_{n+1}` shifted so both products share twists.
pub fn bc_plus_cb(p: &Setup1Params, n: usize) -> Result<GradedMatrix> {
    let left = build_b(p, n)?.compose(&build_c(p, n + 1)?)?;
    let right = build_c(p, n)?.compose(&build_b(p, n + 1)?.retwist(p.m as i64 - 1))?;
    left.add(&right)
}

/// `Φ_n = C_n : R(−m−n+1)^{n+1} → R(−n+1)^n`.
pub fn phi(p: &Setup1Params, n: usize) -> Result<GradedMatrix> {
    check_n(n)?;
    let n1 = n as i64;
    c_over(&ring_r(p), p.m, n, (0, 1), p.m as i64 + n1 - 1, n1 - 1)
}

/// `Ψ_n = C_n^t : R(n−1)^n → R(m+n−1)^{n+1}`.
pub fn psi(p: &Setup1Params, n: usize) -> Result<GradedMatrix> {
    Ok(phi(p, n)?.dual_map())
}

/// Signed maximal minors `[−δ_1, δ_2, …, (−1)^{n+1} δ_{n+1}]` of `C_n^t`, as a map
/// `R(m+n−1)^{n+1} → R(mn+m+n−1)`.
pub fn minors_map(p: &Setup1Params, n: usize) -> Result<GradedMatrix> {
    let ct = psi(p, n)?;
    let r = ring_r(p);
    let rows: Vec<usize> = (0..=n).collect();
    let cols: Vec<usize> = (0..n).collect();
    let field = p.field;
    let entries: Vec<Polynomial> = (0..=n)
        .map(|i| {
            let keep: Vec<usize> = rows.iter().copied().filter(|&k| k != i).collect();
            let det = determinant(&ct.submatrix(&keep, &cols));
            let sign = if i % 2 == 0 { -1 } else { 1 };
            det.scale(&r, &field.from_i64(sign))
        })
        .collect();
    let top = (p.m as i64) * (n as i64) + p.m as i64 + n as i64 - 1;
    GradedMatrix::new(
        ct.codomain().clone(),
        GradedFreeModule::new(&r, vec![-top]),
        entries,
    )
}

/// `0 → R(n−1)^n → R(m+n−1)^{n+1} → R(mn+m+n−1)` as `[E_n, Ψ_n]`.
pub fn hilbert_burch_complex(p: &Setup1Params, n: usize) -> Result<Vec<GradedMatrix>> {
    Ok(vec![minors_map(p, n)?, psi(p, n)?])
}

/// `0 → R(−mn−m−n+1) → R(−m−n+1)^{n+1} → R(−n+1)^n → 0` as `[Φ_n, E_n^t]`.
pub fn dual_minors_complex(p: &Setup1Params, n: usize) -> Result<Vec<GradedMatrix>> {
    Ok(vec![phi(p, n)?, minors_map(p, n)?.dual_map()])
}
