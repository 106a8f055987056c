use crate::exactfield::PrimeFieldMatrix;
use crate::graded::{
    Chain, GradedFreeModule, GradedMatrix, ModuleKind, Monomial, Piece, Polynomial, PresentedModule,
};
use crate::homology::report::BettiTable;
use crate::par;

/// Turns block coordinate vectors (columns of `basis`, members of block `b`) into
/// polynomial columns over the generators of `module`.
fn columns_to_polys(
    chain: &Chain<'_>,
    module_index: usize,
    piece: &Piece,
    b: usize,
    basis: &PrimeFieldMatrix,
    cols: &[usize],
) -> Vec<Vec<Polynomial>> {
    let module = chain.module_at(module_index);
    let ring = module.ring();
    let d = piece.degree();
    cols.iter()
        .map(|&c| {
            let mut terms: Vec<Vec<(Monomial, crate::exactfield::Scalar)>> =
                vec![Vec::new(); module.rank()];
            for (pos, &(g, mono)) in piece.members(b).iter().enumerate() {
                if !basis.is_nonzero(pos, c) {
                    continue;
                }
                let g = g as usize;
                let m = &chain
                    .table()
                    .get(d - module.twists()[g])
                    .unwrap()
                    .monomials()[mono as usize];
                terms[g].push((m.clone(), basis.get(pos, c)));
            }
            terms
                .into_iter()
                .map(|t| Polynomial::from_terms(ring, t))
                .collect()
        })
        .collect()
}

fn assemble(codomain: &GradedFreeModule, gens: Vec<(i64, Vec<Polynomial>)>) -> GradedMatrix {
    let ring = codomain.ring();
    let domain = GradedFreeModule::new(ring, gens.iter().map(|g| g.0).collect());
    let n = gens.len();
    let mut entries = vec![Polynomial::zero(); codomain.rank() * n];
    for (c, (_, col)) in gens.into_iter().enumerate() {
        for (r, p) in col.into_iter().enumerate() {
            entries[r * n + c] = p;
        }
    }
    GradedMatrix::new(domain, codomain.clone(), entries).expect("syzygies are homogeneous")
}

fn hcat_opt(acc: Option<PrimeFieldMatrix>, m: PrimeFieldMatrix) -> Option<PrimeFieldMatrix> {
    Some(match acc {
        None => m,
        Some(a) => a.hcat(&m).expect("same block rows"),
    })
}

/// Minimal homogeneous generators of `ker f` in degrees `≤ degree_cap`, as a map
/// `G → domain(f)`. Generators are listed by degree, then block, then basis order.
pub fn kernel_generators(f: &GradedMatrix, degree_cap: i64) -> GradedMatrix {
    let domain = f.domain();
    let Some(lo) = domain.min_twist().filter(|&lo| lo <= degree_cap) else {
        return assemble(domain, Vec::new());
    };
    let chain = Chain::new(&[f], degree_cap).expect("single map chain");
    let v = f.ring().nvars();
    let mut prev: Option<(Piece, Vec<PrimeFieldMatrix>)> = None;
    let mut gens = Vec::new();
    for d in lo..=degree_cap {
        let dom = chain.piece(1, d);
        let cod = chain.piece(0, d);
        let blocks: Vec<usize> = (0..dom.block_count()).collect();
        let results = par::map_vec(blocks, |b| {
            let k = chain.block(0, &dom, &cod, b).kernel_basis();
            let mut s = None;
            if let Some((pp, pk)) = &prev {
                for var in 0..v {
                    if let Some((sb, mm)) = chain.multiply_block(1, var, pp, &dom, b) {
                        if pk[sb].cols() > 0 {
                            s = hcat_opt(s, mm.mul(&pk[sb]).expect("shapes agree"));
                        }
                    }
                }
            }
            let fresh: Vec<usize> = match &s {
                None => (0..k.cols()).collect(),
                Some(s) => {
                    let sc = s.cols();
                    s.hcat(&k)
                        .expect("same block rows")
                        .pivot_columns()
                        .into_iter()
                        .filter(|&p| p >= sc)
                        .map(|p| p - sc)
                        .collect()
                }
            };
            let cols = columns_to_polys(&chain, 1, &dom, b, &k, &fresh);
            (k, cols)
        });
        let mut kernels = Vec::with_capacity(results.len());
        for (k, cols) in results {
            gens.extend(cols.into_iter().map(|c| (d, c)));
            kernels.push(k);
        }
        prev = Some((dom, kernels));
    }
    assemble(domain, gens)
}

/// Removes generator pairs joined by a unit entry until no entry is a nonzero constant.
pub fn minimize_presentation(f: &GradedMatrix) -> GradedMatrix {
    let mut cur = f.clone();
    loop {
        let ring = cur.ring().clone();
        let field = ring.field();
        let mut pivot = None;
        'find: for i in 0..cur.rows() {
            for j in 0..cur.cols() {
                if let Some(c) = cur.entry(i, j).as_unit() {
                    pivot = Some((i, j, c.clone()));
                    break 'find;
                }
            }
        }
        let Some((pi, pj, c)) = pivot else {
            return cur;
        };
        let cinv = field.inv(&c).expect("unit");
        let rows: Vec<usize> = (0..cur.rows()).filter(|&i| i != pi).collect();
        let cols: Vec<usize> = (0..cur.cols()).filter(|&j| j != pj).collect();
        let dom = GradedFreeModule::new(
            &ring,
            cols.iter().map(|&j| cur.domain().twists()[j]).collect(),
        );
        let cod = GradedFreeModule::new(
            &ring,
            rows.iter().map(|&i| cur.codomain().twists()[i]).collect(),
        );
        let next = GradedMatrix::from_fn(dom, cod, |r, s| {
            let (i, j) = (rows[r], cols[s]);
            let corr = cur
                .entry(i, pj)
                .mul(&ring, cur.entry(pi, j))
                .scale(&ring, &cinv);
            cur.entry(i, j).sub(&ring, &corr)
        })
        .expect("elimination keeps homogeneity");
        cur = next;
    }
}

/// Columns of `f` forming a minimal generating set of its image, among columns of
/// degree `≤ degree_cap`. Returns the column indices in increasing order.
pub fn image_generators(f: &GradedMatrix, degree_cap: i64) -> Vec<usize> {
    let domain = f.domain();
    let Some(lo) = domain.min_twist().filter(|&lo| lo <= degree_cap) else {
        return Vec::new();
    };
    let hi = domain.max_twist().unwrap().min(degree_cap);
    let chain = Chain::new(&[f], hi).expect("single map chain");
    let mut chosen = Vec::new();
    for d in lo..=hi {
        if !domain.twists().contains(&d) {
            continue;
        }
        let dom = chain.piece(1, d);
        let cod = chain.piece(0, d);
        let blocks: Vec<usize> = (0..dom.block_count()).collect();
        let picks = par::map_vec(blocks, |b| {
            let members = dom.members(b);
            let (fresh, old): (Vec<usize>, Vec<usize>) =
                (0..members.len()).partition(|&p| domain.twists()[members[p].0 as usize] == d);
            if fresh.is_empty() {
                return Vec::new();
            }
            let m = chain.block(0, &dom, &cod, b);
            let order: Vec<usize> = old.iter().chain(&fresh).copied().collect();
            m.select_columns(&order)
                .pivot_columns()
                .into_iter()
                .filter(|&p| p >= old.len())
                .map(|p| members[fresh[p - old.len()]].0 as usize)
                .collect::<Vec<_>>()
        });
        chosen.extend(picks.into_iter().flatten());
    }
    chosen.sort_unstable();
    chosen
}

/// A (possibly truncated) minimal graded free resolution `… → P_1 → P_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    /// `P_0, P_1, …`; trailing zero modules are omitted.
    pub terms: Vec<GradedFreeModule>,
    /// `maps[k] : P_{k+1} → P_k`.
    pub maps: Vec<GradedMatrix>,
    /// For a kernel module, the inclusion `P_0 → domain` of its generators.
    pub augmentation: Option<GradedMatrix>,
    pub complete: bool,
    pub degree_cap: i64,
    pub homological_cap: usize,
}

impl Resolution {
    pub fn betti_table(&self) -> BettiTable {
        let mut t = BettiTable::new(self.degree_cap, self.homological_cap);
        for (j, p) in self.terms.iter().enumerate() {
            for &a in p.twists() {
                t.add(j, a, 1);
            }
        }
        t.complete = self.complete;
        t
    }

    /// Degrees in `lo..=hi` where `Σ (−1)^j dim (P_j)_d` differs from `hilbert[d − lo]`.
    pub fn euler_defects(&self, lo: i64, hilbert: &[usize]) -> Vec<i64> {
        hilbert
            .iter()
            .enumerate()
            .filter_map(|(k, &h)| {
                let d = lo + k as i64;
                let alt: i64 = self
                    .terms
                    .iter()
                    .enumerate()
                    .map(|(j, p)| {
                        let s = p.hilbert_function(d) as i64;
                        if j % 2 == 0 {
                            s
                        } else {
                            -s
                        }
                    })
                    .sum();
                (alt != h as i64).then_some(d)
            })
            .collect()
    }
}

/// Whether a kernel computed up to `cap` is trusted: `cap ≥ (top generator degree of the
/// source) + v · (top entry degree)`.
fn margin_ok(f: &GradedMatrix, cap: i64) -> bool {
    let v = f.ring().nvars() as i64;
    match f.domain().max_twist() {
        None => true,
        Some(top) => cap >= top + v * f.max_entry_degree().unwrap_or(0),
    }
}

/// Successive minimal syzygies of `module` in degrees `≤ degree_cap`, with at most
/// `homological_cap` differentials. The result is complete when a syzygy step comes back
/// empty and every kernel step met the degree margin.
pub fn minimal_resolution(
    module: &PresentedModule,
    homological_cap: usize,
    degree_cap: i64,
) -> Resolution {
    let mut trusted = true;
    let mut maps = Vec::new();
    let mut terms = Vec::new();
    let mut augmentation = None;
    // the map whose domain is the next term to record
    let mut pending = match module.kind() {
        ModuleKind::Cokernel => {
            let f = minimize_presentation(module.map());
            if f.domain().max_twist().is_some_and(|t| t > degree_cap) {
                trusted = false;
            }
            let cols = image_generators(&f, degree_cap);
            let all: Vec<usize> = (0..f.rows()).collect();
            let d1 = f.submatrix(&all, &cols);
            if d1.rows() > 0 {
                terms.push(d1.codomain().clone());
            }
            d1
        }
        ModuleKind::Kernel => {
            trusted &= margin_ok(module.map(), degree_cap);
            let g0 = kernel_generators(module.map(), degree_cap);
            augmentation = Some(g0.clone());
            g0
        }
    };
    let mut is_augmentation = module.kind() == ModuleKind::Kernel;
    let complete = loop {
        if pending.domain().rank() == 0 {
            break trusted;
        }
        terms.push(pending.domain().clone());
        if !is_augmentation {
            maps.push(pending.clone());
        }
        is_augmentation = false;
        trusted &= margin_ok(&pending, degree_cap);
        let next = kernel_generators(&pending, degree_cap);
        if maps.len() >= homological_cap {
            break trusted && next.domain().rank() == 0;
        }
        pending = next;
    };
    Resolution {
        terms,
        maps,
        augmentation,
        complete,
        degree_cap,
        homological_cap,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;
    use crate::graded::RingSpec;

    fn uvw(p: u64) -> RingSpec {
        RingSpec::polynomial(FieldSpec::new(p).unwrap(), &["U", "V", "W"]).unwrap()
    }

    fn linear_row(r: &RingSpec) -> GradedMatrix {
        GradedMatrix::from_rows(
            r,
            vec![0],
            vec![1, 1, 1],
            vec![(0..3).map(|i| Polynomial::var(r, i)).collect()],
        )
        .unwrap()
    }

    #[test]
    fn koszul_syzygies() {
        let r = uvw(0);
        let k = kernel_generators(&linear_row(&r), 6);
        assert_eq!(k.domain().twists(), &[2, 2, 2]);
        assert!(linear_row(&r).compose(&k).unwrap().is_zero());
    }

    #[test]
    fn residue_field_resolution() {
        let r = uvw(2);
        let res = minimal_resolution(&PresentedModule::cokernel(linear_row(&r)), 5, 8);
        assert!(res.complete);
        let t = res.betti_table();
        for (j, rank) in [1, 3, 3, 1].into_iter().enumerate() {
            assert_eq!(t.get(j, j as i64), rank);
        }
        assert_eq!(t.entries().count(), 4);
        for w in res.maps.windows(2) {
            assert!(w[0].compose(&w[1]).unwrap().is_zero());
        }
    }

    #[test]
    fn small_cap_is_not_complete() {
        let r = uvw(2);
        let res = minimal_resolution(&PresentedModule::cokernel(linear_row(&r)), 5, 4);
        assert!(!res.complete);
    }

    #[test]
    fn unit_entries_are_eliminated() {
        let r = uvw(5);
        let u = Polynomial::var(&r, 0);
        let one = Polynomial::one(&r);
        let f = GradedMatrix::from_rows(
            &r,
            vec![0, 1],
            vec![1, 2],
            vec![vec![u.clone(), u.mul(&r, &u)], vec![one, u]],
        )
        .unwrap();
        let g = minimize_presentation(&f);
        assert_eq!((g.rows(), g.cols()), (1, 1));
        assert!(g.is_zero());
        assert_eq!(g.codomain().twists(), &[0]);
    }

    #[test]
    fn free_module_resolution() {
        let r = uvw(3);
        let m = PresentedModule::free(&GradedFreeModule::new(&r, vec![2, 5]));
        let res = minimal_resolution(&m, 4, 10);
        assert!(res.complete);
        assert_eq!(res.terms.len(), 1);
        assert_eq!(
            res.betti_table().regularity(),
            crate::extint::ExtInt::Finite(5)
        );
    }
}
