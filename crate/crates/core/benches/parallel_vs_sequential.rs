//! Each workload runs inside a one-thread rayon pool and inside the full
//! pool. Built with `--no-default-features` both arms run the sequential
//! fallback.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use csmm_core::arithgeo::seifert_data;
use csmm_core::diagrams::{lmo_pair_monomial, psi, JacobiDiagram};
use csmm_core::seifert::{gue_sample_moments, seifert_integral_numeric, QuadratureOptions};
use csmm_core::symfun::{Monomial, Partition};
use rayon::ThreadPool;

fn pools() -> Vec<(String, ThreadPool)> {
    // at least two workers so the second arm exists on one-core hosts
    let full = std::thread::available_parallelism().map_or(1, |n| n.get()).max(2);
    [1, full]
        .into_iter()
        .map(|t| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build().unwrap();
            (format!("{t}-threads"), pool)
        })
        .collect()
}

fn bench(c: &mut Criterion) {
    let pools = pools();
    let mono = Monomial::single(Partition::new(vec![4, 2, 2]));
    let wheels = JacobiDiagram::wheel(6, 0)
        .unwrap()
        .disjoint_union(&JacobiDiagram::wheel(4, 0).unwrap());
    let closed = wheels.close_legs(&[(0, 6), (1, 7), (2, 8), (3, 9), (4, 5)]).unwrap();
    let d = seifert_data(&[(2, 1), (3, 1), (5, -4)]).unwrap();
    let lambda = Partition::new(vec![2, 2]);
    let opts = QuadratureOptions {
        tol: 1e-12,
        ..Default::default()
    };

    let mut g = c.benchmark_group("parallel_vs_sequential");
    g.sample_size(10);
    for (name, pool) in &pools {
        g.bench_function(BenchmarkId::new("surface_pairing", name), |b| {
            b.iter(|| pool.install(|| lmo_pair_monomial(&mono, 4).unwrap()))
        });
        g.bench_function(BenchmarkId::new("thickening", name), |b| {
            b.iter(|| pool.install(|| psi(&closed).unwrap()))
        });
        g.bench_function(BenchmarkId::new("gue_monte_carlo", name), |b| {
            b.iter(|| pool.install(|| gue_sample_moments(3, &lambda, 50_000, 0).unwrap()))
        });
        g.bench_function(BenchmarkId::new("quadrature", name), |b| {
            b.iter(|| pool.install(|| seifert_integral_numeric(&d, 3, 0.05, None, &opts).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
