use std::collections::HashMap;

use crate::graded::{GradedMatrix, Polynomial};

/// Determinant of a square matrix, by expansion over sets of used columns.
pub fn determinant(m: &GradedMatrix) -> Polynomial {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let ring = m.ring();
    let n = m.rows();
    assert!(n < 64, "matrix too large for subset expansion");
    let mut layer: HashMap<u64, Polynomial> = HashMap::from([(0, Polynomial::one(ring))]);
    for i in 0..n {
        let mut next: HashMap<u64, Polynomial> = HashMap::new();
        for (mask, acc) in &layer {
            for j in 0..n {
                let a = m.entry(i, j);
                if mask >> j & 1 == 1 || a.is_zero() {
                    continue;
                }
                let above = (mask >> (j + 1)).count_ones();
                let mut t = acc.mul(ring, a);
                if above % 2 == 1 {
                    t = t.neg(ring);
                }
                let e = next.entry(mask | 1 << j).or_insert_with(Polynomial::zero);
                *e = e.add(ring, &t);
            }
        }
        next.retain(|_, p| !p.is_zero());
        layer = next;
    }
    layer.remove(&((1u64 << n) - 1)).unwrap_or_else(|| {
        if n == 0 {
            Polynomial::one(ring)
        } else {
            Polynomial::zero()
        }
    })
}
