//! One worker against the full rayon pool on the heavy paths. Build with
//! `--no-default-features` to time the sequential fallback alone.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

use reglab::exactfield::{FieldSpec, PrimeFieldMatrix};
use reglab::families::{self, Setup, Setup1Params, Setup2Params};
use reglab::graded::PresentedModule;
use reglab::homology::{koszul_table, regularity};
use reglab::par;

fn pools() -> [(&'static str, usize); 2] {
    [("jobs1", 1), ("pool", 0)]
}

fn coker_phi(c: &mut Criterion) {
    let s = Setup::Two(Setup2Params::default());
    let mut g = c.benchmark_group("coker_phi_regularity");
    g.sample_size(10);
    for n in [6usize, 10] {
        let m = PresentedModule::cokernel(s.phi(n).unwrap());
        let cap = 3 * n as i64 + 3;
        for (name, jobs) in pools() {
            g.bench_with_input(BenchmarkId::new(name, n), &m, |b, m| {
                b.iter(|| par::with_jobs(jobs, || regularity(black_box(m), cap).unwrap()))
            });
        }
    }
    g.finish();
}

fn tor_summands(c: &mut Criterion) {
    let s = Setup::One(Setup1Params::new(2, FieldSpec::rationals()).unwrap());
    let mut g = c.benchmark_group("tor_kernel_koszul");
    g.sample_size(10);
    for n in [4usize, 8] {
        let (k, _) = families::tor_module(&s, n).unwrap();
        let cap = 3 * n as i64 + 5;
        for (name, jobs) in pools() {
            g.bench_with_input(BenchmarkId::new(name, n), &k, |b, k| {
                b.iter(|| par::with_jobs(jobs, || koszul_table(black_box(k), cap).unwrap()))
            });
        }
    }
    g.finish();
}

fn gf2_rank(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut g = c.benchmark_group("gf2_rank");
    for size in [256usize, 1024] {
        let a = PrimeFieldMatrix::from_fn(FieldSpec::gf2(), size, size, |_, _| {
            FieldSpec::gf2().from_i64(rng.gen_range(0..2))
        });
        let words = a.to_scalar_storage();
        g.bench_with_input(BenchmarkId::new("bit_packed", size), &a, |b, a| {
            b.iter(|| a.rank())
        });
        if size <= 256 {
            g.bench_with_input(BenchmarkId::new("word_per_entry", size), &words, |b, a| {
                b.iter(|| a.rank())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, coker_phi, tor_summands, gf2_rank);
criterion_main!(benches);
