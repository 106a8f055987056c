//! Bit-packed dense matrices over GF(2).
//!
//! Rows are stored as runs of `u64` words; elimination is word-wise XOR.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

#[inline]
fn words_for(cols: usize) -> usize {
    cols.div_ceil(64)
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = words_for(cols);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        let mask = 1u64 << (j % 64);
        if bit {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] ^= 1u64 << (j % 64);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            for (wi, &w) in row.iter().enumerate() {
                let mut bits = w;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    t.set(wi * 64 + b, i, true);
                    bits &= bits - 1;
                }
            }
        }
        t
    }

    /// `self * other` over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        let ow = out.words;
        for i in 0..self.rows {
            let row = &self.data[i * self.words..(i + 1) * self.words];
            let dst = i * ow;
            for (wi, &w) in row.iter().enumerate() {
                let mut bits = w;
                while bits != 0 {
                    let k = wi * 64 + bits.trailing_zeros() as usize;
                    let src = other.row(k);
                    for (d, s) in out.data[dst..dst + ow].iter_mut().zip(src) {
                        *d ^= s;
                    }
                    bits &= bits - 1;
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    out.set(i, j, true);
                }
            }
            for j in 0..other.cols {
                if other.get(i, j) {
                    out.set(i, self.cols + j, true);
                }
            }
        }
        out
    }

    /// Rank by forward elimination on a scratch copy.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut m = self.data.clone();
        let w = self.words;
        let mut rank = 0;
        for col in 0..self.cols {
            let (wi, mask) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (rank..self.rows).find(|&r| m[r * w + wi] & mask != 0) else {
                continue;
            };
            if p != rank {
                for k in 0..w {
                    m.swap(p * w + k, rank * w + k);
                }
            }
            let (head, tail) = m.split_at_mut((rank + 1) * w);
            let pivot = &head[rank * w..];
            for r in 0..(self.rows - rank - 1) {
                let row = &mut tail[r * w..(r + 1) * w];
                if row[wi] & mask != 0 {
                    for k in wi..w {
                        row[k] ^= pivot[k];
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let w = self.words;
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let (wi, mask) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (rank..self.rows).find(|&r| self.data[r * w + wi] & mask != 0) else {
                continue;
            };
            if p != rank {
                for k in 0..w {
                    self.data.swap(p * w + k, rank * w + k);
                }
            }
            let pivot: Vec<u64> = self.data[rank * w..(rank + 1) * w].to_vec();
            for r in 0..self.rows {
                if r != rank && self.data[r * w + wi] & mask != 0 {
                    for k in wi..w {
                        self.data[r * w + k] ^= pivot[k];
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        pivots
    }

    /// Basis of the right kernel, one column per free variable.
    pub fn kernel_basis(&self) -> BitMatrix {
        let mut r = self.clone();
        let pivots = r.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = BitMatrix::zeros(self.cols, free.len());
        for (fi, &f) in free.iter().enumerate() {
            k.set(f, fi, true);
            for (ri, &p) in pivots.iter().enumerate() {
                if r.get(ri, f) {
                    k.set(p, fi, true);
                }
            }
        }
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_all_ones() {
        let mut m = BitMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                m.set(i, j, true);
            }
        }
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_annihilated() {
        let mut m = BitMatrix::zeros(3, 130);
        for j in 0..130 {
            if j % 3 == 0 {
                m.set(0, j, true);
            }
            if j % 5 == 1 {
                m.set(1, j, true);
            }
            if j % 7 == 2 || j == 129 {
                m.set(2, j, true);
            }
        }
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 130 - m.rank());
        assert!(m.mul(&k).is_zero());
    }
}
