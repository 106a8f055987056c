use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reglab::asymptotics::{detect_linear, Verdict};
use reglab::exactfield::{FieldSpec, PrimeFieldMatrix};
use reglab::graded::{
    evaluate_in_degree, Chain, GradedFreeModule, GradedMatrix, Polynomial, PresentedModule,
    RingSpec,
};
use reglab::homology::{koszul_table, minimal_resolution, regularity};
use reglab::ExtInt;

const CHARS: [u64; 4] = [0, 2, 3, 7];

fn field(k: usize) -> FieldSpec {
    FieldSpec::new(CHARS[k % CHARS.len()]).unwrap()
}

fn random_matrix(rng: &mut ChaCha8Rng, f: FieldSpec, rows: usize, cols: usize) -> PrimeFieldMatrix {
    let density = rng.gen_range(0.1..0.9);
    PrimeFieldMatrix::from_fn(f, rows, cols, |_, _| {
        if rng.gen_bool(density) {
            f.from_i64(rng.gen_range(-3..=3))
        } else {
            f.zero()
        }
    })
}

/// Homogeneous matrix with entry degrees in `0..=max_deg`. Sparse columns keep the
/// degree pieces small.
fn random_graded(
    rng: &mut ChaCha8Rng,
    ring: &RingSpec,
    rows: usize,
    cols: usize,
    max_deg: i64,
) -> GradedMatrix {
    let row_twists: Vec<i64> = (0..rows).map(|_| rng.gen_range(0..=1)).collect();
    let col_twists: Vec<i64> = (0..cols).map(|_| rng.gen_range(1..=max_deg + 1)).collect();
    let f = ring.field();
    GradedMatrix::from_fn(
        GradedFreeModule::new(ring, col_twists.clone()),
        GradedFreeModule::new(ring, row_twists.clone()),
        |i, j| {
            let d = col_twists[j] - row_twists[i];
            if !(0..=max_deg).contains(&d) || rng.gen_bool(0.3) {
                return Polynomial::zero();
            }
            let mut terms = Vec::new();
            for m in ring.monomial_basis(d) {
                if rng.gen_bool(0.4) {
                    terms.push((m, f.from_i64(rng.gen_range(1..=4))));
                }
            }
            Polynomial::from_terms(ring, terms)
        },
    )
    .unwrap()
}

fn uvw(f: FieldSpec) -> RingSpec {
    RingSpec::polynomial(f, &["U", "V", "W"]).unwrap()
}

/// Exponent vectors of total degree `d` in `v` variables, counted by enumeration.
fn count_monomials(v: usize, d: i64) -> usize {
    if d < 0 {
        return 0;
    }
    if v == 1 {
        return 1;
    }
    (0..=d).map(|e| count_monomials(v - 1, d - e)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_nullity(seed: u64, k in 0usize..4, rows in 1usize..12, cols in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, field(k), rows, cols);
        let ker = a.kernel_basis();
        prop_assert_eq!(a.rank() + ker.cols(), cols);
        prop_assert!(a.mul(&ker).unwrap().is_zero());
        prop_assert_eq!(ker.rank(), ker.cols());
    }

    #[test]
    fn rank_of_transpose(seed: u64, k in 0usize..4, rows in 1usize..12, cols in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, field(k), rows, cols);
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn solve_finds_preimages(seed: u64, k in 0usize..4, rows in 1usize..10, cols in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = field(k);
        let a = random_matrix(&mut rng, f, rows, cols);
        let x = random_matrix(&mut rng, f, cols, 1);
        let b = a.mul(&x).unwrap();
        let y = a.solve(&b).unwrap().expect("b is in the image");
        prop_assert_eq!(a.mul(&y).unwrap(), b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn bit_packed_rank_matches_word_storage(seed: u64, rows in 1usize..90, cols in 1usize..90) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, FieldSpec::gf2(), rows, cols);
        prop_assert!(a.is_bit_packed());
        let s = a.to_scalar_storage();
        prop_assert!(!s.is_bit_packed());
        prop_assert_eq!(a.rank(), s.rank());
        prop_assert_eq!(a.pivot_columns(), s.pivot_columns());
        prop_assert_eq!(a.kernel_basis().cols(), s.kernel_basis().cols());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_commutes_with_evaluation(seed: u64, k in 0usize..4, d in 0i64..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = uvw(field(k));
        let g = random_graded(&mut rng, &r, 3, 4, 2);
        // f has domain g.codomain
        let twists = g.codomain().twists().to_vec();
        let low: Vec<i64> = twists.iter().map(|&t| t - rng.gen_range(0..=1)).collect();
        let low_min = *low.iter().min().unwrap();
        let fm = GradedMatrix::from_fn(
            g.codomain().clone(),
            GradedFreeModule::new(&r, vec![low_min]),
            |_, j| {
                let deg = twists[j] - low_min;
                let basis = r.monomial_basis(deg);
                match basis.first() {
                    Some(m) => Polynomial::monomial(&r, m.clone()),
                    None => Polynomial::zero(),
                }
            },
        )
        .unwrap();
        let fg = fm.compose(&g).unwrap();
        let lhs = evaluate_in_degree(&fg, d);
        let rhs = evaluate_in_degree(&fm, d).mul(&evaluate_in_degree(&g, d)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn free_hilbert_function_counts_monomials(
        twists in prop::collection::vec(-3i64..4, 0..5),
        v in 1usize..5,
        d in -4i64..9,
    ) {
        let names = ["a", "b", "c", "e"];
        let r = RingSpec::polynomial(FieldSpec::gf2(), &names[..v]).unwrap();
        let m = GradedFreeModule::new(&r, twists.clone());
        let want: usize = twists.iter().map(|&a| count_monomials(v, d - a)).sum();
        prop_assert_eq!(m.hilbert_function(d), want);
    }

    #[test]
    fn block_rank_matches_dense_rank(seed: u64, k in 0usize..4, d in 0i64..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = uvw(field(k));
        let f = random_graded(&mut rng, &r, 3, 5, 2);
        let chain = Chain::new(&[&f], 7).unwrap();
        prop_assert_eq!(chain.rank_in_degree(0, d), evaluate_in_degree(&f, d).rank());
    }

    #[test]
    fn free_module_regularity(a in -5i64..6, rank in 1usize..4) {
        let r = uvw(FieldSpec::new(5).unwrap());
        let m = PresentedModule::free(&GradedFreeModule::new(&r, vec![a; rank]));
        let rep = regularity(&m, a.max(0) + 4).unwrap();
        prop_assert_eq!(rep.regularity, ExtInt::Finite(a));
        prop_assert_eq!(rep.indeg, ExtInt::Finite(a));
        prop_assert!(rep.certified);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn koszul_matches_resolution(seed: u64, k in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = uvw(field(k));
        let f = random_graded(&mut rng, &r, 4, 6, 2);
        let m = PresentedModule::cokernel(f);
        let cap = 9;
        let kos = koszul_table(&m, cap).unwrap();
        let res = minimal_resolution(&m, 4, cap);
        prop_assert!(res.betti_table().truncated(cap).same_ranks(&kos));
        if let Some(lo) = m.ambient().min_twist() {
            let hf = m.hilbert_range(lo, cap);
            prop_assert!(res.euler_defects(lo, &hf).is_empty());
        }
    }
}

fn line(slope: i64, intercept: i64, len: usize) -> Vec<(i64, ExtInt)> {
    (0..len as i64)
        .map(|i| (i, ExtInt::Finite(slope * i + intercept)))
        .collect()
}

proptest! {
    #[test]
    fn linear_sequences_are_recovered(a in -10i64..10, e in -50i64..50, len in 4usize..20, parity in 0u32..2) {
        let fit = detect_linear(&line(a, e, len), parity).unwrap();
        prop_assert_eq!(fit.slope, a);
        prop_assert_eq!(fit.intercept, ExtInt::Finite(e));
        prop_assert_eq!(fit.onset, 0);
        prop_assert_eq!(fit.verdict, Verdict::EventuallyLinear);
        prop_assert_eq!(fit.parity, parity);
    }

    #[test]
    fn prefix_does_not_change_the_fit(
        a in -10i64..10,
        e in -50i64..50,
        len in 4usize..20,
        prefix in prop::collection::vec(-100i64..100, 0..=3),
    ) {
        let base = detect_linear(&line(a, e, len), 0).unwrap();
        let shift = prefix.len() as i64;
        let mut seq: Vec<(i64, ExtInt)> = prefix
            .iter()
            .enumerate()
            .map(|(i, &x)| (i as i64 - shift, ExtInt::Finite(x)))
            .collect();
        seq.extend(line(a, e, len));
        let fit = detect_linear(&seq, 0).unwrap();
        prop_assert_eq!(fit.slope, base.slope);
        prop_assert_eq!(fit.intercept, base.intercept);
        prop_assert_eq!(fit.verdict, base.verdict);
    }
}
