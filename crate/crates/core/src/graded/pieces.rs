//! Graded pieces of free modules and of homogeneous maps between them.
//!
//! Besides the plain degree-`d` matrix of a map, this module finds the finest
//! `Z^s`-grading that refines the standard grading and makes every map of a chain
//! homogeneous. The degree-`d` pieces then split into blocks indexed by the finer
//! degree and every map is block diagonal, so ranks are computed block by block.
//!
//! The grading is found from the generator graph: a spanning forest assigns each
//! generator a multidegree in `Z^v` (relative to its component), and weight vectors
//! must annihilate every inconsistency left by the remaining edges and by entries
//! with more than one term.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::GradedMatrix;
use super::module::GradedFreeModule;
use super::poly::Polynomial;
use super::ring::BasisTable;
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, PrimeFieldMatrix, Scalar};
use crate::par;

/// Matrix of the K-linear map `F_d → G_d` induced by `f`. Rows and columns follow the
/// generator order, then the monomial basis order within each generator.
pub fn evaluate_in_degree(f: &GradedMatrix, degree: i64) -> PrimeFieldMatrix {
    let ring = f.ring();
    let field = ring.field();
    let rows: Vec<(usize, super::ring::DegreeBasis)> = f
        .codomain()
        .twists()
        .iter()
        .enumerate()
        .map(|(i, &b)| (i, super::ring::DegreeBasis::new(ring, degree - b)))
        .collect();
    let mut row_offset = Vec::with_capacity(rows.len());
    let mut total = 0;
    for (_, b) in &rows {
        row_offset.push(total);
        total += b.len();
    }
    let mut col_count = 0;
    let dom: Vec<super::ring::DegreeBasis> = f
        .domain()
        .twists()
        .iter()
        .map(|&a| {
            let b = super::ring::DegreeBasis::new(ring, degree - a);
            col_count += b.len();
            b
        })
        .collect();
    let mut m = PrimeFieldMatrix::zeros(field, total, col_count);
    let mut col = 0;
    let mut buf = vec![0u32; ring.nvars()];
    for (j, basis) in dom.iter().enumerate() {
        for alpha in basis.monomials() {
            for (i, tgt) in &rows {
                for (beta, c) in f.entry(*i, j).terms() {
                    for (t, x) in buf.iter_mut().enumerate() {
                        *x = alpha.exponents()[t] + beta.exponents()[t];
                    }
                    if let Some(r) = tgt.position(&buf) {
                        m.add_at(row_offset[*i] + r, col, c);
                    }
                }
            }
            col += 1;
        }
    }
    m
}

/// Block label: `[degree, component, fine coordinates...]`.
pub type Key = Vec<i64>;

/// A refinement of the standard grading shared by the modules of a chain.
#[derive(Debug, Clone)]
pub struct FineGrading {
    weights: Vec<Vec<i64>>,
    /// Per module, per generator: component and fine offset.
    gens: Vec<Vec<(i64, Vec<i64>)>>,
}

impl FineGrading {
    /// Only the standard grading.
    pub fn coarse(modules: &[&GradedFreeModule]) -> Self {
        FineGrading {
            weights: Vec::new(),
            gens: modules
                .iter()
                .map(|m| vec![(0, Vec::new()); m.rank()])
                .collect(),
        }
    }

    /// Finest grading for `modules` making each `(codomain index, domain index, map)`
    /// homogeneous.
    pub fn detect(modules: &[&GradedFreeModule], maps: &[(usize, usize, &GradedMatrix)]) -> Self {
        let v = modules.first().map_or(0, |m| m.ring().nvars());
        let mut base = Vec::with_capacity(modules.len());
        let mut total = 0;
        for m in modules {
            base.push(total);
            total += m.rank();
        }
        // edges: (codomain node, domain node, first-term exponents)
        let mut adj: Vec<Vec<(usize, Vec<i64>)>> = vec![Vec::new(); total];
        let mut edges: Vec<(usize, usize, Vec<i64>)> = Vec::new();
        let mut constraints: HashSet<Vec<i64>> = HashSet::new();
        for &(ci, di, f) in maps {
            for i in 0..f.rows() {
                for j in 0..f.cols() {
                    let terms = f.entry(i, j).terms();
                    let Some((first, _)) = terms.first() else {
                        continue;
                    };
                    let beta: Vec<i64> = first.exponents().iter().map(|&a| a as i64).collect();
                    for (m, _) in &terms[1..] {
                        let c: Vec<i64> = m
                            .exponents()
                            .iter()
                            .zip(&beta)
                            .map(|(&a, b)| a as i64 - b)
                            .collect();
                        constraints.insert(c);
                    }
                    let (c, d) = (base[ci] + i, base[di] + j);
                    adj[c].push((d, beta.clone()));
                    adj[d].push((c, beta.iter().map(|b| -b).collect()));
                    edges.push((c, d, beta));
                }
            }
        }
        // spanning forest: form(d) = form(c) + beta along an edge c -> d
        let mut form: Vec<Option<Vec<i64>>> = vec![None; total];
        let mut comp = vec![0i64; total];
        let mut ncomp = 0;
        for root in 0..total {
            if form[root].is_some() {
                continue;
            }
            form[root] = Some(vec![0; v]);
            comp[root] = ncomp;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                let fx = form[x].clone().expect("visited");
                for (y, delta) in &adj[x] {
                    if form[*y].is_none() {
                        form[*y] = Some(fx.iter().zip(delta).map(|(a, b)| a + b).collect());
                        comp[*y] = ncomp;
                        queue.push_back(*y);
                    }
                }
            }
            ncomp += 1;
        }
        for (c, d, beta) in &edges {
            let (fc, fd) = (form[*c].as_ref().unwrap(), form[*d].as_ref().unwrap());
            let gap: Vec<i64> = (0..v).map(|t| fd[t] - fc[t] - beta[t]).collect();
            if gap.iter().any(|&g| g != 0) {
                constraints.insert(gap);
            }
        }
        constraints.retain(|c| c.iter().any(|&x| x != 0));
        let weights = integer_nullspace(&constraints.into_iter().collect::<Vec<_>>(), v);
        let gens = modules
            .iter()
            .enumerate()
            .map(|(k, m)| {
                (0..m.rank())
                    .map(|g| {
                        let node = base[k] + g;
                        let f = form[node].as_ref().unwrap();
                        let off = weights
                            .iter()
                            .map(|w| w.iter().zip(f).map(|(a, b)| a * b).sum())
                            .collect();
                        (comp[node], off)
                    })
                    .collect()
            })
            .collect();
        FineGrading { weights, gens }
    }

    /// Number of fine coordinates beyond degree and component.
    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    #[inline]
    pub fn key(&self, module: usize, gen: usize, degree: i64, exps: &[u32]) -> Key {
        let (c, off) = &self.gens[module][gen];
        let mut k = Vec::with_capacity(2 + off.len());
        k.push(degree);
        k.push(*c);
        for (w, o) in self.weights.iter().zip(off) {
            k.push(o + w.iter().zip(exps).map(|(a, &e)| a * e as i64).sum::<i64>());
        }
        k
    }

    /// Key change caused by multiplying with the i-th variable.
    pub fn var_shift(&self, i: usize) -> Key {
        let mut k = vec![1, 0];
        k.extend(self.weights.iter().map(|w| w[i]));
        k
    }
}

/// Primitive integer basis of `{w ∈ Q^v : c·w = 0 for every constraint c}`.
fn integer_nullspace(constraints: &[Vec<i64>], v: usize) -> Vec<Vec<i64>> {
    let q = FieldSpec::rationals();
    let m = PrimeFieldMatrix::from_fn(q, constraints.len(), v, |i, j| {
        q.from_i64(constraints[i][j])
    });
    let k = m.kernel_basis();
    (0..k.cols())
        .map(|c| {
            let col: Vec<num_rational::BigRational> = (0..v)
                .map(|r| match k.get(r, c) {
                    Scalar::Rat(x) => x,
                    Scalar::Mod(_) => unreachable!("rational kernel"),
                })
                .collect();
            let lcm = col.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<BigInt> = col.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            ints.iter()
                .map(|x| {
                    let y = if g.is_zero() { x.clone() } else { x / &g };
                    y.to_i64().expect("weight fits in i64")
                })
                .collect()
        })
        .collect()
}

/// The degree-d piece of one module, split into fine blocks.
#[derive(Debug, Clone)]
pub struct Piece {
    degree: i64,
    keys: Vec<Key>,
    index: HashMap<Key, usize>,
    members: Vec<Vec<(u32, u32)>>,
    locate: Vec<Vec<(u32, u32)>>,
}

impl Piece {
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.members.iter().map(Vec::len).sum()
    }

    pub fn block_count(&self) -> usize {
        self.keys.len()
    }

    pub fn keys(&self) -> &[Key] {
        &self.keys
    }

    pub fn block_of(&self, key: &[i64]) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn block_len(&self, b: usize) -> usize {
        self.members[b].len()
    }

    /// `(generator, monomial index)` pairs of a block, in basis order.
    pub fn members(&self, b: usize) -> &[(u32, u32)] {
        &self.members[b]
    }

    /// Block and position of a basis element.
    #[inline]
    pub fn locate(&self, gen: usize, mono: usize) -> (usize, usize) {
        let (b, p) = self.locate[gen][mono];
        (b as usize, p as usize)
    }
}

/// A chain of maps `maps[k] : M_{k+1} → M_k` together with its fine grading and the
/// monomial bases needed up to a degree bound.
#[derive(Debug, Clone)]
pub struct Chain<'a> {
    maps: Vec<&'a GradedMatrix>,
    modules: Vec<GradedFreeModule>,
    grading: FineGrading,
    table: BasisTable,
    columns: Vec<Vec<Vec<(usize, &'a Polynomial)>>>,
    field: FieldSpec,
    max_degree: i64,
}

impl<'a> Chain<'a> {
    pub fn new(maps: &[&'a GradedMatrix], max_degree: i64) -> Result<Self> {
        Self::build(maps, max_degree, true)
    }

    /// Same blocks as the standard grading alone (used to cross-check block ranks).
    pub fn coarse(maps: &[&'a GradedMatrix], max_degree: i64) -> Result<Self> {
        Self::build(maps, max_degree, false)
    }

    /// A single free module with no maps.
    pub fn module(module: &GradedFreeModule, max_degree: i64) -> Self {
        let mut table = BasisTable::new(module.ring());
        table.reserve(max_degree - module.min_twist().unwrap_or(max_degree));
        Chain {
            maps: Vec::new(),
            modules: vec![module.clone()],
            grading: FineGrading::detect(&[module], &[]),
            table,
            columns: Vec::new(),
            field: module.ring().field(),
            max_degree,
        }
    }

    fn build(maps: &[&'a GradedMatrix], max_degree: i64, fine: bool) -> Result<Self> {
        let first = maps
            .first()
            .ok_or_else(|| Error::Dimension("empty chain".into()))?;
        let mut modules = vec![first.codomain().clone()];
        for (k, f) in maps.iter().enumerate() {
            if f.codomain() != &modules[k] {
                return Err(Error::Composition(format!(
                    "map {k} does not start where map {} ends",
                    k.saturating_sub(1)
                )));
            }
            modules.push(f.domain().clone());
        }
        let refs: Vec<&GradedFreeModule> = modules.iter().collect();
        let grading = if fine {
            let links: Vec<(usize, usize, &GradedMatrix)> = maps
                .iter()
                .enumerate()
                .map(|(k, f)| (k, k + 1, *f))
                .collect();
            FineGrading::detect(&refs, &links)
        } else {
            FineGrading::coarse(&refs)
        };
        let min_twist = modules
            .iter()
            .filter_map(|m| m.min_twist())
            .min()
            .unwrap_or(0);
        let ring = first.ring();
        let mut table = BasisTable::new(ring);
        table.reserve(max_degree - min_twist);
        let columns = maps
            .iter()
            .map(|f| {
                (0..f.cols())
                    .map(|j| {
                        (0..f.rows())
                            .filter(|&i| !f.entry(i, j).is_zero())
                            .map(|i| (i, f.entry(i, j)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Chain {
            maps: maps.to_vec(),
            modules,
            grading,
            table,
            columns,
            field: ring.field(),
            max_degree,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn grading(&self) -> &FineGrading {
        &self.grading
    }

    pub fn module_at(&self, k: usize) -> &GradedFreeModule {
        &self.modules[k]
    }

    pub fn map_count(&self) -> usize {
        self.maps.len()
    }

    pub fn max_degree(&self) -> i64 {
        self.max_degree
    }

    pub fn table(&self) -> &BasisTable {
        &self.table
    }

    /// The degree-d piece of module `k`.
    pub fn piece(&self, k: usize, d: i64) -> Piece {
        assert!(d <= self.max_degree, "degree {d} beyond chain bound");
        let module = &self.modules[k];
        let mut keys = Vec::new();
        let mut index: HashMap<Key, usize> = HashMap::new();
        let mut members: Vec<Vec<(u32, u32)>> = Vec::new();
        let mut locate = Vec::with_capacity(module.rank());
        for (g, &a) in module.twists().iter().enumerate() {
            let Some(basis) = self.table.get(d - a) else {
                locate.push(Vec::new());
                continue;
            };
            let mut loc = Vec::with_capacity(basis.len());
            for (mi, m) in basis.monomials().iter().enumerate() {
                let key = self.grading.key(k, g, d, m.exponents());
                let b = match index.get(&key) {
                    Some(&b) => b,
                    None => {
                        let b = keys.len();
                        index.insert(key.clone(), b);
                        keys.push(key);
                        members.push(Vec::new());
                        b
                    }
                };
                loc.push((b as u32, members[b].len() as u32));
                members[b].push((g as u32, mi as u32));
            }
            locate.push(loc);
        }
        Piece {
            degree: d,
            keys,
            index,
            members,
            locate,
        }
    }

    /// Block of `maps[k]` with columns the domain block `b` and rows the codomain block
    /// with the same key (no rows when the codomain has no such block).
    pub fn block(&self, k: usize, dom: &Piece, cod: &Piece, b: usize) -> PrimeFieldMatrix {
        let d = dom.degree;
        let key = &dom.keys[b];
        let target = cod.block_of(key);
        let rows = target.map_or(0, |c| cod.block_len(c));
        let cols = dom.block_len(b);
        let mut m = PrimeFieldMatrix::zeros(self.field, rows, cols);
        let Some(target) = target else {
            return m;
        };
        let ring = self.table.ring();
        let (dm, cm) = (&self.modules[k + 1], &self.modules[k]);
        let mut buf = vec![0u32; ring.nvars()];
        for (col, &(j, a)) in dom.members[b].iter().enumerate() {
            let j = j as usize;
            let alpha = &self.table.get(d - dm.twists()[j]).unwrap().monomials()[a as usize];
            for &(i, p) in &self.columns[k][j] {
                let tb = self.table.get(d - cm.twists()[i]).unwrap();
                for (beta, c) in p.terms() {
                    for (t, x) in buf.iter_mut().enumerate() {
                        *x = alpha.exponents()[t] + beta.exponents()[t];
                    }
                    let Some(idx) = tb.position(&buf) else {
                        continue;
                    };
                    let (blk, pos) = cod.locate(i, idx);
                    debug_assert_eq!(blk, target);
                    m.add_at(pos, col, c);
                }
            }
        }
        m
    }

    /// Multiplication by variable `var` from the block of `src` (degree d−1, module k)
    /// with key `key − shift(var)` into block `tb` of `tgt` (degree d, module k).
    /// Returns `None` when the source block is absent.
    pub fn multiply_block(
        &self,
        k: usize,
        var: usize,
        src: &Piece,
        tgt: &Piece,
        tb: usize,
    ) -> Option<(usize, PrimeFieldMatrix)> {
        let shift = self.grading.var_shift(var);
        let skey: Key = tgt.keys[tb]
            .iter()
            .zip(&shift)
            .map(|(a, b)| a - b)
            .collect();
        let sb = src.block_of(&skey)?;
        let module = &self.modules[k];
        let one = self.field.one();
        let mut m = PrimeFieldMatrix::zeros(self.field, tgt.block_len(tb), src.block_len(sb));
        let mut buf = vec![0u32; self.table.ring().nvars()];
        for (col, &(g, a)) in src.members[sb].iter().enumerate() {
            let g = g as usize;
            let alpha = &self
                .table
                .get(src.degree - module.twists()[g])
                .unwrap()
                .monomials()[a as usize];
            buf.copy_from_slice(alpha.exponents());
            buf[var] += 1;
            let Some(idx) = self
                .table
                .get(tgt.degree - module.twists()[g])
                .unwrap()
                .position(&buf)
            else {
                continue;
            };
            let (blk, pos) = tgt.locate(g, idx);
            debug_assert_eq!(blk, tb);
            m.set(pos, col, &one);
        }
        Some((sb, m))
    }

    /// Rank of `maps[k]` in degree d, summed over blocks.
    pub fn rank_in_degree(&self, k: usize, d: i64) -> usize {
        let dom = self.piece(k + 1, d);
        let cod = self.piece(k, d);
        par::sum_range(dom.block_count(), |b| self.block(k, &dom, &cod, b).rank())
    }
}
