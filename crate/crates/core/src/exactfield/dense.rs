//! Scalar Gaussian elimination, shared by the GF(p) and rational backends.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::inv_mod;

pub(crate) trait FieldOps {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct ModP(pub u64);

impl FieldOps for ModP {
    type Elem = u32;
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.0 - *b as u64) % self.0) as u32
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.0) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            (self.0 - *a as u64) as u32
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        inv_mod(*a as u64, self.0) as u32
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Rationals;

impl FieldOps for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

/// In-place reduced row echelon form of a row-major `rows × cols` matrix.
/// Returns the pivot columns in increasing order.
pub(crate) fn rref<F: FieldOps>(
    f: &F,
    data: &mut [F::Elem],
    rows: usize,
    cols: usize,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !f.is_zero(&data[r * cols + col])) else {
            continue;
        };
        if p != rank {
            for k in 0..cols {
                data.swap(p * cols + k, rank * cols + k);
            }
        }
        let inv = f.inv(&data[rank * cols + col]);
        for k in col..cols {
            data[rank * cols + k] = f.mul(&data[rank * cols + k], &inv);
        }
        for r in 0..rows {
            if r == rank {
                continue;
            }
            let factor = data[r * cols + col].clone();
            if f.is_zero(&factor) {
                continue;
            }
            for k in col..cols {
                let t = f.mul(&factor, &data[rank * cols + k]);
                data[r * cols + k] = f.sub(&data[r * cols + k], &t);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

/// Rank by forward elimination only.
pub(crate) fn rank<F: FieldOps>(f: &F, data: &[F::Elem], rows: usize, cols: usize) -> usize {
    let mut m = data.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !f.is_zero(&m[r * cols + col])) else {
            continue;
        };
        if p != rank {
            for k in 0..cols {
                m.swap(p * cols + k, rank * cols + k);
            }
        }
        let inv = f.inv(&m[rank * cols + col]);
        for r in rank + 1..rows {
            let factor = f.mul(&m[r * cols + col], &inv);
            if f.is_zero(&factor) {
                continue;
            }
            for k in col..cols {
                let t = f.mul(&factor, &m[rank * cols + k]);
                m[r * cols + k] = f.sub(&m[r * cols + k], &t);
            }
        }
        rank += 1;
    }
    rank
}

/// Right-kernel basis as a row-major `cols × nullity` matrix.
pub(crate) fn kernel<F: FieldOps>(
    f: &F,
    data: &[F::Elem],
    rows: usize,
    cols: usize,
) -> (Vec<F::Elem>, usize) {
    let mut m = data.to_vec();
    let pivots = rref(f, &mut m, rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let n = free.len();
    let mut out = vec![f.zero(); cols * n];
    for (fi, &fc) in free.iter().enumerate() {
        out[fc * n + fi] = f.one();
        for (ri, &p) in pivots.iter().enumerate() {
            let v = &m[ri * cols + fc];
            if !f.is_zero(v) {
                out[p * n + fi] = f.neg(v);
            }
        }
    }
    (out, n)
}

/// Solves `A x = b` for the row-major `rows × cols` matrix `A`.
pub(crate) fn solve<F: FieldOps>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
    rows: usize,
    cols: usize,
) -> Option<Vec<F::Elem>> {
    let w = cols + 1;
    let mut m = Vec::with_capacity(rows * w);
    for r in 0..rows {
        m.extend_from_slice(&a[r * cols..(r + 1) * cols]);
        m.push(b[r].clone());
    }
    let pivots = rref(f, &mut m, rows, w);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (ri, &p) in pivots.iter().enumerate() {
        x[p] = m[ri * w + cols].clone();
    }
    Some(x)
}
