use super::module::GradedFreeModule;
use super::poly::Polynomial;
use super::ring::RingSpec;
use crate::error::{Error, Result};
use crate::exactfield::Scalar;

/// Homogeneous map `domain → codomain`; entry `(i, j)` is the coefficient of the i-th
/// codomain generator in the image of the j-th domain generator, of degree
/// `domain.twists[j] − codomain.twists[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    domain: GradedFreeModule,
    codomain: GradedFreeModule,
    entries: Vec<Polynomial>,
}

impl GradedMatrix {
    /// Checks homogeneity of every entry; `entries` is row-major.
    pub fn new(
        domain: GradedFreeModule,
        codomain: GradedFreeModule,
        entries: Vec<Polynomial>,
    ) -> Result<Self> {
        if domain.ring() != codomain.ring() {
            return Err(Error::InvalidRing(
                "domain and codomain rings differ".into(),
            ));
        }
        if entries.len() != domain.rank() * codomain.rank() {
            return Err(Error::Dimension(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                codomain.rank(),
                domain.rank()
            )));
        }
        let cols = domain.rank();
        for (k, p) in entries.iter().enumerate() {
            let (i, j) = (k / cols, k % cols);
            let expected = domain.twists()[j] - codomain.twists()[i];
            if !p.is_homogeneous_of(expected) {
                return Err(Error::Homogeneity {
                    row: i,
                    col: j,
                    expected,
                });
            }
        }
        Ok(GradedMatrix {
            domain,
            codomain,
            entries,
        })
    }

    pub fn from_rows(
        ring: &RingSpec,
        row_twists: Vec<i64>,
        col_twists: Vec<i64>,
        rows: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if rows.len() != row_twists.len() || rows.iter().any(|r| r.len() != col_twists.len()) {
            return Err(Error::Dimension("entry grid does not match twists".into()));
        }
        Self::new(
            GradedFreeModule::new(ring, col_twists),
            GradedFreeModule::new(ring, row_twists),
            rows.into_iter().flatten().collect(),
        )
    }

    /// Builds entries from a function of `(row, col)`.
    pub fn from_fn(
        domain: GradedFreeModule,
        codomain: GradedFreeModule,
        mut f: impl FnMut(usize, usize) -> Polynomial,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(domain.rank() * codomain.rank());
        for i in 0..codomain.rank() {
            for j in 0..domain.rank() {
                entries.push(f(i, j));
            }
        }
        Self::new(domain, codomain, entries)
    }

    pub fn zero(domain: GradedFreeModule, codomain: GradedFreeModule) -> Self {
        let n = domain.rank() * codomain.rank();
        GradedMatrix {
            domain,
            codomain,
            entries: vec![Polynomial::zero(); n],
        }
    }

    pub fn identity(module: &GradedFreeModule) -> Self {
        let ring = module.ring().clone();
        let n = module.rank();
        let mut entries = vec![Polynomial::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Polynomial::one(&ring);
        }
        GradedMatrix {
            domain: module.clone(),
            codomain: module.clone(),
            entries,
        }
    }

    /// Places blocks at `(row_offset, col_offset)`; blocks must agree with the twists
    /// of the target positions.
    pub fn from_blocks(
        domain: GradedFreeModule,
        codomain: GradedFreeModule,
        blocks: &[(usize, usize, &GradedMatrix)],
    ) -> Result<Self> {
        let (rows, cols) = (codomain.rank(), domain.rank());
        let mut entries = vec![Polynomial::zero(); rows * cols];
        for &(r0, c0, b) in blocks {
            if r0 + b.rows() > rows || c0 + b.cols() > cols {
                return Err(Error::Dimension("block does not fit".into()));
            }
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    entries[(r0 + i) * cols + c0 + j] = b.entry(i, j).clone();
                }
            }
        }
        Self::new(domain, codomain, entries)
    }

    pub fn ring(&self) -> &RingSpec {
        self.domain.ring()
    }

    pub fn domain(&self) -> &GradedFreeModule {
        &self.domain
    }

    pub fn codomain(&self) -> &GradedFreeModule {
        &self.codomain
    }

    pub fn rows(&self) -> usize {
        self.codomain.rank()
    }

    pub fn cols(&self) -> usize {
        self.domain.rank()
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols() + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// Largest degree of a nonzero entry (`None` for the zero matrix).
    pub fn max_entry_degree(&self) -> Option<i64> {
        let cols = self.cols();
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, _)| self.domain.twists()[k % cols] - self.codomain.twists()[k / cols])
            .max()
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &GradedMatrix) -> Result<GradedMatrix> {
        if self.domain != g.codomain {
            return Err(Error::Composition(format!(
                "domain twists {:?} differ from codomain twists {:?}",
                self.domain.twists(),
                g.codomain.twists()
            )));
        }
        let ring = self.ring();
        let (n, k, m) = (self.rows(), self.cols(), g.cols());
        let mut entries = vec![Polynomial::zero(); n * m];
        for i in 0..n {
            for l in 0..k {
                let a = self.entry(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let b = g.entry(l, j);
                    if !b.is_zero() {
                        let e = &mut entries[i * m + j];
                        *e = e.add(ring, &a.mul(ring, b));
                    }
                }
            }
        }
        Ok(GradedMatrix {
            domain: g.domain.clone(),
            codomain: self.codomain.clone(),
            entries,
        })
    }

    pub fn add(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::Dimension(
                "sum of maps between different modules".into(),
            ));
        }
        let ring = self.ring();
        Ok(GradedMatrix {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(ring, b))
                .collect(),
        })
    }

    pub fn neg(&self) -> GradedMatrix {
        self.scale(&self.ring().field().from_i64(-1))
    }

    pub fn scale(&self, c: &Scalar) -> GradedMatrix {
        let ring = self.ring();
        GradedMatrix {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            entries: self.entries.iter().map(|p| p.scale(ring, c)).collect(),
        }
    }

    /// The transpose `G* → F*`, with negated twists.
    pub fn dual_map(&self) -> GradedMatrix {
        let (rows, cols) = (self.rows(), self.cols());
        let mut entries = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                entries.push(self.entry(i, j).clone());
            }
        }
        GradedMatrix {
            domain: self.codomain.negated(),
            codomain: self.domain.negated(),
            entries,
        }
    }

    /// Adds `shift` to every twist of both modules.
    pub fn retwist(&self, shift: i64) -> GradedMatrix {
        GradedMatrix {
            domain: self.domain.shifted(shift),
            codomain: self.codomain.shifted(shift),
            entries: self.entries.clone(),
        }
    }

    /// Restriction to the given codomain rows and domain columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> GradedMatrix {
        let ring = self.ring();
        let dom = GradedFreeModule::new(
            ring,
            cols.iter().map(|&j| self.domain.twists()[j]).collect(),
        );
        let cod = GradedFreeModule::new(
            ring,
            rows.iter().map(|&i| self.codomain.twists()[i]).collect(),
        );
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.entry(i, j).clone());
            }
        }
        GradedMatrix {
            domain: dom,
            codomain: cod,
            entries,
        }
    }

    /// The same entries over another ring with the same variables and field, reduced
    /// into its normal form.
    pub fn change_ring(&self, ring: &RingSpec) -> Result<GradedMatrix> {
        if ring.variables() != self.ring().variables() || ring.field() != self.ring().field() {
            return Err(Error::InvalidRing(format!(
                "cannot move a map from {} to {}",
                self.ring(),
                ring
            )));
        }
        Ok(GradedMatrix {
            domain: GradedFreeModule::new(ring, self.domain.twists().to_vec()),
            codomain: GradedFreeModule::new(ring, self.codomain.twists().to_vec()),
            entries: self.entries.iter().map(|p| p.reduce_into(ring)).collect(),
        })
    }

    /// Entry grid rendered with the ring's variable names.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        let ring = self.ring();
        (0..self.rows())
            .map(|i| {
                (0..self.cols())
                    .map(|j| self.entry(i, j).to_string_in(ring))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;

    fn ring() -> RingSpec {
        RingSpec::polynomial(FieldSpec::rationals(), &["U", "V", "W"]).unwrap()
    }

    #[test]
    fn homogeneity_is_enforced() {
        let r = ring();
        let u = Polynomial::var(&r, 0);
        let bad = GradedMatrix::from_rows(&r, vec![0], vec![2], vec![vec![u.clone()]]);
        assert_eq!(
            bad.unwrap_err(),
            Error::Homogeneity {
                row: 0,
                col: 0,
                expected: 2
            }
        );
        assert!(GradedMatrix::from_rows(&r, vec![0], vec![1], vec![vec![u]]).is_ok());
    }

    #[test]
    fn composition_checks_modules() {
        let r = ring();
        let f = GradedMatrix::from_rows(
            &r,
            vec![0],
            vec![1, 1, 1],
            vec![(0..3).map(|i| Polynomial::var(&r, i)).collect()],
        )
        .unwrap();
        assert!(f.compose(&f).is_err());
        let id = GradedMatrix::identity(f.domain());
        assert_eq!(f.compose(&id).unwrap(), f);
        assert_eq!(GradedMatrix::identity(f.codomain()).compose(&f).unwrap(), f);
        assert_eq!(f.dual_map().dual_map(), f);
        assert_eq!(f.dual_map().domain().twists(), &[0]);
        assert_eq!(f.dual_map().codomain().twists(), &[-1, -1, -1]);
    }
}
