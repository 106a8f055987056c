use num_rational::BigRational;
use num_traits::Zero;

use super::dense::{self, ModP, Rationals};
use super::field::{FieldSpec, Scalar};
use super::gf2::BitMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Entries {
    Binary(BitMatrix),
    Modular(Vec<u32>),
    Rational(Vec<BigRational>),
}

/// Dense exact matrix over GF(p) or the rationals.
///
/// Over GF(2) the rows are bit-packed. [`PrimeFieldMatrix::to_scalar_storage`] switches a
/// GF(2) matrix to the generic one-word-per-entry representation, which is kept as an
/// independent reference path for the bit-packed routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Entries,
}

impl PrimeFieldMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let entries = match field.characteristic() {
            0 => Entries::Rational(vec![BigRational::zero(); rows * cols]),
            2 => Entries::Binary(BitMatrix::zeros(rows, cols)),
            _ => Entries::Modular(vec![0; rows * cols]),
        };
        PrimeFieldMatrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        let one = field.one();
        for i in 0..n {
            m.set(i, i, &one);
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                if !field.is_zero(&v) {
                    m.set(i, j, &v);
                }
            }
        }
        m
    }

    /// Builds a matrix from integer rows, reducing into the field.
    pub fn from_i64_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_bit_packed(&self) -> bool {
        matches!(self.entries, Entries::Binary(_))
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols);
        match &self.entries {
            Entries::Binary(b) => Scalar::Mod(b.get(i, j) as u32),
            Entries::Modular(v) => Scalar::Mod(v[i * self.cols + j]),
            Entries::Rational(v) => Scalar::Rat(v[i * self.cols + j].clone()),
        }
    }

    /// Whether entry `(i, j)` is nonzero, without materializing a scalar.
    #[inline]
    pub fn is_nonzero(&self, i: usize, j: usize) -> bool {
        match &self.entries {
            Entries::Binary(b) => b.get(i, j),
            Entries::Modular(v) => v[i * self.cols + j] != 0,
            Entries::Rational(v) => !v[i * self.cols + j].is_zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: &Scalar) {
        assert!(i < self.rows && j < self.cols);
        let cols = self.cols;
        match (&mut self.entries, value) {
            (Entries::Binary(b), Scalar::Mod(x)) => b.set(i, j, x & 1 == 1),
            (Entries::Modular(v), Scalar::Mod(x)) => v[i * cols + j] = *x,
            (Entries::Rational(v), Scalar::Rat(x)) => v[i * cols + j] = x.clone(),
            _ => panic!("scalar does not belong to {}", self.field),
        }
    }

    /// `self[i][j] += value`.
    pub fn add_at(&mut self, i: usize, j: usize, value: &Scalar) {
        let cols = self.cols;
        let p = self.field.characteristic() as u64;
        match (&mut self.entries, value) {
            (Entries::Binary(b), Scalar::Mod(x)) => {
                if x & 1 == 1 {
                    b.flip(i, j)
                }
            }
            (Entries::Modular(v), Scalar::Mod(x)) => {
                let e = &mut v[i * cols + j];
                *e = ((*e as u64 + *x as u64) % p) as u32;
            }
            (Entries::Rational(v), Scalar::Rat(x)) => v[i * cols + j] += x,
            _ => panic!("scalar does not belong to {}", self.field),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.entries {
            Entries::Binary(b) => b.is_zero(),
            Entries::Modular(v) => v.iter().all(|&x| x == 0),
            Entries::Rational(v) => v.iter().all(Zero::is_zero),
        }
    }

    /// Re-stores a GF(2) matrix one word per entry; other fields are returned unchanged.
    pub fn to_scalar_storage(&self) -> Self {
        match &self.entries {
            Entries::Binary(b) => {
                let mut v = vec![0u32; self.rows * self.cols];
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        v[i * self.cols + j] = b.get(i, j) as u32;
                    }
                }
                self.with_entries(self.rows, self.cols, Entries::Modular(v))
            }
            _ => self.clone(),
        }
    }

    fn with_entries(&self, rows: usize, cols: usize, entries: Entries) -> Self {
        PrimeFieldMatrix {
            field: self.field,
            rows,
            cols,
            entries,
        }
    }

    pub fn transpose(&self) -> Self {
        match &self.entries {
            Entries::Binary(b) => {
                self.with_entries(self.cols, self.rows, Entries::Binary(b.transpose()))
            }
            Entries::Modular(v) => {
                let mut t = vec![0u32; v.len()];
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        t[j * self.rows + i] = v[i * self.cols + j];
                    }
                }
                self.with_entries(self.cols, self.rows, Entries::Modular(t))
            }
            Entries::Rational(v) => {
                let mut t = vec![BigRational::zero(); v.len()];
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        t[j * self.rows + i] = v[i * self.cols + j].clone();
                    }
                }
                self.with_entries(self.cols, self.rows, Entries::Rational(t))
            }
        }
    }

    pub fn mul(&self, other: &PrimeFieldMatrix) -> Result<PrimeFieldMatrix> {
        if self.field != other.field {
            return Err(Error::Dimension(format!(
                "fields differ: {} vs {}",
                self.field, other.field
            )));
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let entries = match (&self.entries, &other.entries) {
            (Entries::Binary(a), Entries::Binary(b)) => Entries::Binary(a.mul(b)),
            (Entries::Modular(a), Entries::Modular(b)) => {
                let p = self.field.characteristic() as u64;
                let mut out = vec![0u64; n * m];
                for i in 0..n {
                    for l in 0..k {
                        let x = a[i * k + l] as u64;
                        if x == 0 {
                            continue;
                        }
                        for j in 0..m {
                            out[i * m + j] = (out[i * m + j] + x * b[l * m + j] as u64) % p;
                        }
                    }
                }
                Entries::Modular(out.into_iter().map(|x| x as u32).collect())
            }
            (Entries::Rational(a), Entries::Rational(b)) => {
                let mut out = vec![BigRational::zero(); n * m];
                for i in 0..n {
                    for l in 0..k {
                        let x = &a[i * k + l];
                        if x.is_zero() {
                            continue;
                        }
                        for j in 0..m {
                            if !b[l * m + j].is_zero() {
                                out[i * m + j] += x * &b[l * m + j];
                            }
                        }
                    }
                }
                Entries::Rational(out)
            }
            _ => return self.to_scalar_storage().mul(&other.to_scalar_storage()),
        };
        Ok(self.with_entries(n, m, entries))
    }

    /// `[self | other]`.
    pub fn hcat(&self, other: &PrimeFieldMatrix) -> Result<PrimeFieldMatrix> {
        if self.rows != other.rows || self.field != other.field {
            return Err(Error::Dimension(format!(
                "hcat of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if let (Entries::Binary(a), Entries::Binary(b)) = (&self.entries, &other.entries) {
            return Ok(self.with_entries(
                self.rows,
                self.cols + other.cols,
                Entries::Binary(a.hcat(b)),
            ));
        }
        Ok(PrimeFieldMatrix::from_fn(
            self.field,
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j)
                } else {
                    other.get(i, j - self.cols)
                }
            },
        ))
    }

    /// Adds `±other` into the window starting at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, other: &PrimeFieldMatrix, negate: bool) {
        assert!(r0 + other.rows <= self.rows && c0 + other.cols <= self.cols);
        for i in 0..other.rows {
            for j in 0..other.cols {
                if other.is_nonzero(i, j) {
                    let mut v = other.get(i, j);
                    if negate {
                        v = self.field.neg(&v);
                    }
                    self.add_at(r0 + i, c0 + j, &v);
                }
            }
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> PrimeFieldMatrix {
        PrimeFieldMatrix::from_fn(self.field, self.rows, cols.len(), |i, j| {
            self.get(i, cols[j])
        })
    }

    pub fn rank(&self) -> usize {
        match &self.entries {
            Entries::Binary(b) => b.rank(),
            Entries::Modular(v) => dense::rank(
                &ModP(self.field.characteristic() as u64),
                v,
                self.rows,
                self.cols,
            ),
            Entries::Rational(v) => dense::rank(&Rationals, v, self.rows, self.cols),
        }
    }

    /// Pivot columns of the reduced row echelon form: the lexicographically first maximal
    /// set of independent columns.
    pub fn pivot_columns(&self) -> Vec<usize> {
        match &self.entries {
            Entries::Binary(b) => b.clone().rref(),
            Entries::Modular(v) => dense::rref(
                &ModP(self.field.characteristic() as u64),
                &mut v.clone(),
                self.rows,
                self.cols,
            ),
            Entries::Rational(v) => dense::rref(&Rationals, &mut v.clone(), self.rows, self.cols),
        }
    }

    /// Columns form a basis of the right kernel.
    pub fn kernel_basis(&self) -> PrimeFieldMatrix {
        match &self.entries {
            Entries::Binary(b) => {
                let k = b.kernel_basis();
                self.with_entries(self.cols, k.cols(), Entries::Binary(k))
            }
            Entries::Modular(v) => {
                let (k, n) = dense::kernel(
                    &ModP(self.field.characteristic() as u64),
                    v,
                    self.rows,
                    self.cols,
                );
                self.with_entries(self.cols, n, Entries::Modular(k))
            }
            Entries::Rational(v) => {
                let (k, n) = dense::kernel(&Rationals, v, self.rows, self.cols);
                self.with_entries(self.cols, n, Entries::Rational(k))
            }
        }
    }

    /// Some `x` with `self · x = b` for a column vector `b`, if one exists.
    pub fn solve(&self, b: &PrimeFieldMatrix) -> Result<Option<PrimeFieldMatrix>> {
        if b.rows != self.rows || b.cols != 1 || b.field != self.field {
            return Err(Error::Dimension(format!(
                "solve with {}x{} right-hand side for {}x{} system",
                b.rows, b.cols, self.rows, self.cols
            )));
        }
        let a = self.to_scalar_storage();
        let rhs = b.to_scalar_storage();
        let x = match (&a.entries, &rhs.entries) {
            (Entries::Modular(m), Entries::Modular(v)) => dense::solve(
                &ModP(self.field.characteristic() as u64),
                m,
                v,
                self.rows,
                self.cols,
            )
            .map(|x| PrimeFieldMatrix::from_fn(self.field, self.cols, 1, |i, _| Scalar::Mod(x[i]))),
            (Entries::Rational(m), Entries::Rational(v)) => {
                dense::solve(&Rationals, m, v, self.rows, self.cols).map(|x| {
                    PrimeFieldMatrix::from_fn(self.field, self.cols, 1, |i, _| {
                        Scalar::Rat(x[i].clone())
                    })
                })
            }
            _ => unreachable!("scalar storage is never bit-packed"),
        };
        Ok(x)
    }
}
