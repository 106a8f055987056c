//! `Tor_j(M, K)` as homology of the Koszul complex on all variables with coefficients in
//! `M`, computed block by block in the fine grading.
//! A module is handled as a subquotient `Z/B` of its ambient free module: `Z` is the
//! kernel of the map for kernel modules, and `B` the image for cokernels.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::exactfield::PrimeFieldMatrix;
use crate::graded::{Chain, Key, ModuleKind, Piece, PresentedModule};
use crate::homology::report::BettiTable;
use crate::par;

struct Layer {
    piece: Piece,
    /// Basis of Z per block; `None` means the whole block.
    z: Vec<Option<PrimeFieldMatrix>>,
    /// Spanning set of B per block; `None` means zero.
    b: Vec<Option<PrimeFieldMatrix>>,
    brank: Vec<usize>,
    zdim: Vec<usize>,
}

impl Layer {
    fn build(chain: &Chain<'_>, kind: ModuleKind, d: i64) -> Layer {
        let dom = chain.piece(1, d);
        let cod = chain.piece(0, d);
        match kind {
            ModuleKind::Cokernel => {
                let blocks: Vec<usize> = (0..cod.block_count()).collect();
                let bs = par::map_vec(blocks, |c| {
                    dom.block_of(&cod.keys()[c]).map(|b| {
                        let m = chain.block(0, &dom, &cod, b);
                        let r = m.rank();
                        (m, r)
                    })
                });
                let zdim = (0..cod.block_count()).map(|c| cod.block_len(c)).collect();
                let mut b = Vec::with_capacity(bs.len());
                let mut brank = Vec::with_capacity(bs.len());
                for x in bs {
                    match x {
                        Some((m, r)) if r > 0 => {
                            b.push(Some(m));
                            brank.push(r);
                        }
                        _ => {
                            b.push(None);
                            brank.push(0);
                        }
                    }
                }
                Layer {
                    z: vec![None; cod.block_count()],
                    piece: cod,
                    b,
                    brank,
                    zdim,
                }
            }
            ModuleKind::Kernel => {
                let blocks: Vec<usize> = (0..dom.block_count()).collect();
                let z = par::map_vec(blocks, |b| chain.block(0, &dom, &cod, b).kernel_basis());
                let zdim = z.iter().map(PrimeFieldMatrix::cols).collect();
                let n = z.len();
                Layer {
                    piece: dom,
                    z: z.into_iter().map(Some).collect(),
                    b: vec![None; n],
                    brank: vec![0; n],
                    zdim,
                }
            }
        }
    }

    fn dim(&self, blk: usize) -> usize {
        self.zdim[blk] - self.brank[blk]
    }
}

/// Subsets of `0..v` of each size, as sorted index lists in lexicographic order.
fn subsets(v: usize) -> Vec<Vec<Vec<usize>>> {
    let mut by_size = vec![Vec::new(); v + 1];
    for mask in 0u32..(1 << v) {
        let s: Vec<usize> = (0..v).filter(|&i| mask >> i & 1 == 1).collect();
        by_size[s.len()].push(s);
    }
    for s in &mut by_size {
        s.sort();
    }
    by_size
}

fn shifted(key: &[i64], shifts: &[Key], set: &[usize], sign: i64) -> Key {
    let mut k = key.to_vec();
    for &i in set {
        for (a, b) in k.iter_mut().zip(&shifts[i]) {
            *a += sign * b;
        }
    }
    k
}

/// Rank of the Koszul differential `C_j(κ) → C_{j−1}(κ)` on the subquotient.
fn differential_rank(
    chain: &Chain<'_>,
    ambient: usize,
    shifts: &[Key],
    subsets: &[Vec<Vec<usize>>],
    key: &[i64],
    src: &Layer,
    tgt: &Layer,
    j: usize,
) -> usize {
    let field = chain.field();
    // columns: Z-bases of the source blocks
    let mut cols = Vec::new();
    let mut ncols = 0;
    for s in &subsets[j] {
        if let Some(b) = src.piece.block_of(&shifted(key, shifts, s, -1)) {
            if src.zdim[b] > 0 {
                cols.push((s, b, ncols));
                ncols += src.zdim[b];
            }
        }
    }
    if ncols == 0 {
        return 0;
    }
    let mut rows = Vec::new();
    let mut nrows = 0;
    let mut row_of: BTreeMap<&[usize], (usize, usize)> = BTreeMap::new();
    for t in &subsets[j - 1] {
        if let Some(b) = tgt.piece.block_of(&shifted(key, shifts, t, -1)) {
            row_of.insert(t.as_slice(), (b, nrows));
            rows.push((b, nrows));
            nrows += tgt.piece.block_len(b);
        }
    }
    let bcols: usize = rows
        .iter()
        .map(|&(b, _)| tgt.b[b].as_ref().map_or(0, PrimeFieldMatrix::cols))
        .sum();
    let mut m = PrimeFieldMatrix::zeros(field, nrows, ncols + bcols);
    for &(s, sb, c0) in &cols {
        for (pos, &var) in s.iter().enumerate() {
            let t: Vec<usize> = s.iter().copied().filter(|&x| x != var).collect();
            let Some(&(tb, r0)) = row_of.get(t.as_slice()) else {
                continue;
            };
            let Some((from, mult)) = chain.multiply_block(ambient, var, &src.piece, &tgt.piece, tb)
            else {
                continue;
            };
            debug_assert_eq!(from, sb);
            let image = match &src.z[sb] {
                Some(z) => mult.mul(z).expect("shapes agree"),
                None => mult,
            };
            m.add_block(r0, c0, &image, pos % 2 == 1);
        }
    }
    let mut c = ncols;
    let mut brank = 0;
    for &(b, r0) in &rows {
        if let Some(bm) = &tgt.b[b] {
            m.add_block(r0, c, bm, false);
            c += bm.cols();
            brank += tgt.brank[b];
        }
    }
    m.rank() - brank
}

/// Koszul Betti numbers `dim Tor_j(M, K)_d` for all `j` and all `d ≤ degree_cap`.
/// The table is not marked complete; callers that can certify it do so.
pub fn koszul_table(module: &PresentedModule, degree_cap: i64) -> Result<BettiTable> {
    let ring = module.ring();
    if !ring.is_polynomial_ring() {
        return Err(Error::UnsupportedRing(format!(
            "Koszul Betti numbers need a polynomial ring, got {ring}"
        )));
    }
    let v = ring.nvars();
    let mut table = BettiTable::new(degree_cap, v);
    let Some(lo) = module.ambient().min_twist().filter(|&lo| lo <= degree_cap) else {
        return Ok(table);
    };
    let chain = Chain::new(&[module.map()], degree_cap)?;
    let ambient = match module.kind() {
        ModuleKind::Cokernel => 0,
        ModuleKind::Kernel => 1,
    };
    let shifts: Vec<Key> = (0..v).map(|i| chain.grading().var_shift(i)).collect();
    let subs = subsets(v);
    // layers of degrees first..=d
    let mut window: VecDeque<Layer> = VecDeque::new();
    let mut first = lo;
    for d in lo..=degree_cap {
        window.push_back(Layer::build(&chain, module.kind(), d));
        while window.len() > v + 1 {
            window.pop_front();
            first += 1;
        }
        let layer = |e: i64| -> Option<&Layer> {
            if e < first {
                None
            } else {
                window.get((e - first) as usize)
            }
        };
        let mut keys: BTreeSet<Key> = BTreeSet::new();
        for (j, sets) in subs.iter().enumerate() {
            let Some(l) = layer(d - j as i64) else {
                continue;
            };
            for (b, k) in l.piece.keys().iter().enumerate() {
                if l.dim(b) == 0 {
                    continue;
                }
                for s in sets {
                    keys.insert(shifted(k, &shifts, s, 1));
                }
            }
        }
        let keys: Vec<Key> = keys.into_iter().collect();
        let homology = par::map_vec(keys, |key| {
            let dims: Vec<usize> = (0..=v)
                .map(|j| {
                    layer(d - j as i64).map_or(0, |l| {
                        subs[j]
                            .iter()
                            .filter_map(|s| l.piece.block_of(&shifted(&key, &shifts, s, -1)))
                            .map(|b| l.dim(b))
                            .sum()
                    })
                })
                .collect();
            let mut ranks = vec![0usize; v + 2];
            for j in 1..=v {
                if dims[j] == 0 || dims[j - 1] == 0 {
                    continue;
                }
                if let (Some(src), Some(tgt)) = (layer(d - j as i64), layer(d - j as i64 + 1)) {
                    ranks[j] =
                        differential_rank(&chain, ambient, &shifts, &subs, &key, src, tgt, j);
                }
            }
            (0..=v)
                .map(|j| dims[j] - ranks[j] - ranks[j + 1])
                .collect::<Vec<usize>>()
        });
        for h in homology {
            for (j, r) in h.into_iter().enumerate() {
                table.add(j, d, r);
            }
        }
    }
    Ok(table)
}

/// Graded ranks of `Tor_j(M, K)` in degrees `≤ degree_cap`.
pub fn koszul_betti(
    module: &PresentedModule,
    j: usize,
    degree_cap: i64,
) -> Result<BTreeMap<i64, usize>> {
    Ok(koszul_table(module, degree_cap)?.row(j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;
    use crate::graded::{GradedFreeModule, GradedMatrix, Polynomial, RingSpec};

    fn uvw() -> RingSpec {
        RingSpec::polynomial(FieldSpec::new(3).unwrap(), &["U", "V", "W"]).unwrap()
    }

    #[test]
    fn free_module_has_only_tor_zero() {
        let r = uvw();
        let m = PresentedModule::free(&GradedFreeModule::new(&r, vec![0]));
        let t = koszul_table(&m, 6).unwrap();
        assert_eq!(t.row(0), BTreeMap::from([(0, 1)]));
        for j in 1..=3 {
            assert!(t.row(j).is_empty());
        }
    }

    #[test]
    fn residue_field_is_self_dual() {
        let r = uvw();
        let f = GradedMatrix::from_rows(
            &r,
            vec![0],
            vec![1, 1, 1],
            vec![(0..3).map(|i| Polynomial::var(&r, i)).collect()],
        )
        .unwrap();
        let t = koszul_table(&PresentedModule::cokernel(f.clone()), 6).unwrap();
        assert_eq!(t.row(3), BTreeMap::from([(3, 1)]));
        assert_eq!(t.row(1), BTreeMap::from([(1, 3)]));
        // the kernel is the second syzygy module of K
        let k = koszul_table(&PresentedModule::kernel(f), 6).unwrap();
        assert_eq!(k.row(0), BTreeMap::from([(2, 3)]));
        assert_eq!(k.row(1), BTreeMap::from([(3, 1)]));
    }

    #[test]
    fn quotient_rings_are_refused() {
        let r = RingSpec::with_squares(FieldSpec::gf2(), &["x", "y"], &["x"]).unwrap();
        let m = PresentedModule::free(&GradedFreeModule::new(&r, vec![0]));
        assert!(matches!(
            koszul_table(&m, 3),
            Err(Error::UnsupportedRing(_))
        ));
    }
}
