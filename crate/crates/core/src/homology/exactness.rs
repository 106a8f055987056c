use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{Chain, GradedMatrix};
use crate::par;

/// Homology of `C_{k+1} → C_k → C_{k−1}` in one internal degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositionVerdict {
    pub position: usize,
    pub degree: i64,
    pub kernel_dim: usize,
    pub image_rank: usize,
    /// `dim ker − rank im` from rank–nullity.
    pub homology: usize,
    /// Same quantity from an explicit kernel basis stacked against the image.
    pub homology_alt: usize,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeftEndVerdict {
    pub degree: i64,
    pub injective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub is_complex: bool,
    /// Indices `k` with `maps[k−1] ∘ maps[k] ≠ 0`.
    pub nonzero_compositions: Vec<usize>,
    pub positions: Vec<PositionVerdict>,
    pub left_end: Vec<LeftEndVerdict>,
    /// Complex, exact at every interior position and injective on the left.
    pub exact: bool,
}

impl ExactnessReport {
    pub fn exact_at_interior(&self) -> bool {
        self.is_complex && self.positions.iter().all(|p| p.exact)
    }

    pub fn routes_agree(&self) -> bool {
        self.positions.iter().all(|p| p.homology == p.homology_alt)
    }
}

/// Checks that `maps[k] : C_{k+1} → C_k` form a complex and tests exactness at every
/// interior `C_k` and injectivity of the last map, in all internal degrees `≤ degree_cap`.
pub fn check_complex_exactness(maps: &[GradedMatrix], degree_cap: i64) -> Result<ExactnessReport> {
    if maps.is_empty() {
        return Err(Error::Dimension("no maps given".into()));
    }
    let mut nonzero = Vec::new();
    for k in 1..maps.len() {
        if !maps[k - 1].compose(&maps[k])?.is_zero() {
            nonzero.push(k);
        }
    }
    if !nonzero.is_empty() {
        return Ok(ExactnessReport {
            is_complex: false,
            nonzero_compositions: nonzero,
            positions: Vec::new(),
            left_end: Vec::new(),
            exact: false,
        });
    }
    let refs: Vec<&GradedMatrix> = maps.iter().collect();
    let chain = Chain::new(&refs, degree_cap)?;
    let nmod = maps.len() + 1;
    let lo = (0..nmod)
        .filter_map(|k| chain.module_at(k).min_twist())
        .min()
        .unwrap_or(degree_cap + 1);
    let degrees: Vec<i64> = (lo..=degree_cap).collect();
    let per_degree = par::map_vec(degrees, |d| degree_verdicts(&chain, d));
    let mut positions = Vec::new();
    let mut left_end = Vec::new();
    for (ps, l) in per_degree {
        positions.extend(ps);
        left_end.push(l);
    }
    positions.sort_by_key(|p| (p.position, p.degree));
    let exact = positions.iter().all(|p| p.exact) && left_end.iter().all(|l| l.injective);
    Ok(ExactnessReport {
        is_complex: true,
        nonzero_compositions: Vec::new(),
        positions,
        left_end,
        exact,
    })
}

fn degree_verdicts(chain: &Chain<'_>, d: i64) -> (Vec<PositionVerdict>, LeftEndVerdict) {
    let nmaps = chain.map_count();
    let pieces: Vec<_> = (0..=nmaps).map(|k| chain.piece(k, d)).collect();
    let ranks: Vec<usize> = (0..nmaps)
        .map(|k| {
            (0..pieces[k + 1].block_count())
                .map(|b| chain.block(k, &pieces[k + 1], &pieces[k], b).rank())
                .sum()
        })
        .collect();
    let mut out = Vec::new();
    for k in 1..nmaps {
        let kernel_dim = pieces[k].dim() - ranks[k - 1];
        let homology = kernel_dim - ranks[k];
        let here = &pieces[k];
        let homology_alt = (0..here.block_count())
            .map(|c| {
                let kb = chain.block(k - 1, here, &pieces[k - 1], c).kernel_basis();
                match pieces[k + 1].block_of(&here.keys()[c]) {
                    None => kb.cols(),
                    Some(b) => {
                        let im = chain.block(k, &pieces[k + 1], here, b);
                        let joint = kb.hcat(&im).expect("same row count");
                        joint.rank() - im.rank()
                    }
                }
            })
            .sum();
        out.push(PositionVerdict {
            position: k,
            degree: d,
            kernel_dim,
            image_rank: ranks[k],
            homology,
            homology_alt,
            exact: homology == 0 && homology_alt == 0,
        });
    }
    let left = LeftEndVerdict {
        degree: d,
        injective: ranks[nmaps - 1] == pieces[nmaps].dim(),
    };
    (out, left)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;
    use crate::graded::{GradedFreeModule, Polynomial, RingSpec};

    fn koszul(r: &RingSpec) -> Vec<GradedMatrix> {
        let x = |i| Polynomial::var(r, i);
        let z = Polynomial::zero;
        let n = |i| x(i).neg(r);
        let d1 = GradedMatrix::from_rows(r, vec![0], vec![1, 1, 1], vec![vec![x(0), x(1), x(2)]])
            .unwrap();
        // basis of the middle term: e01, e02, e12
        let d2 = GradedMatrix::from_rows(
            r,
            vec![1, 1, 1],
            vec![2, 2, 2],
            vec![
                vec![n(1), n(2), z()],
                vec![x(0), z(), n(2)],
                vec![z(), x(0), x(1)],
            ],
        )
        .unwrap();
        let d3 = GradedMatrix::from_rows(
            r,
            vec![2, 2, 2],
            vec![3],
            vec![vec![x(2)], vec![n(1)], vec![x(0)]],
        )
        .unwrap();
        vec![d1, d2, d3]
    }

    #[test]
    fn koszul_complex_is_exact() {
        let r = RingSpec::polynomial(FieldSpec::new(5).unwrap(), &["U", "V", "W"]).unwrap();
        let rep = check_complex_exactness(&koszul(&r), 12).unwrap();
        assert!(rep.is_complex);
        assert!(rep.exact);
        assert!(rep.routes_agree());
        assert_eq!(rep.positions.len(), 2 * 13);
    }

    #[test]
    fn truncation_is_not_exact() {
        let r = RingSpec::polynomial(FieldSpec::gf2(), &["U", "V", "W"]).unwrap();
        let maps = koszul(&r);
        let rep = check_complex_exactness(&maps[..2], 6).unwrap();
        assert!(rep.exact_at_interior());
        assert!(!rep.exact);
    }

    #[test]
    fn homology_in_degree_zero() {
        let r = RingSpec::polynomial(FieldSpec::gf2(), &["U"]).unwrap();
        let free = |a| GradedFreeModule::new(&r, vec![a]);
        let u = GradedMatrix::from_rows(&r, vec![0], vec![1], vec![vec![Polynomial::var(&r, 0)]])
            .unwrap();
        let rep = check_complex_exactness(&[GradedMatrix::zero(free(0), free(0)), u], 5).unwrap();
        assert!(rep.is_complex);
        let bad: Vec<i64> = rep
            .positions
            .iter()
            .filter(|p| !p.exact)
            .map(|p| p.degree)
            .collect();
        assert_eq!(bad, vec![0]);
        assert!(rep.routes_agree());
    }

    #[test]
    fn nonzero_square_is_reported() {
        let r = RingSpec::polynomial(FieldSpec::gf2(), &["U"]).unwrap();
        let u = GradedMatrix::from_rows(&r, vec![0], vec![1], vec![vec![Polynomial::var(&r, 0)]])
            .unwrap();
        let g = u.retwist(1);
        let rep = check_complex_exactness(&[u, g], 4).unwrap();
        assert!(!rep.is_complex);
        assert_eq!(rep.nonzero_compositions, vec![1]);
    }
}
