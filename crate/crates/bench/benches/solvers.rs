use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use knapsack_bench::scaling_instance;
use knapsack_core::instance::normalize;
use knapsack_core::solver::{solve_bellman, solve_fast, solve_proximity_smawk, SolverConfig, BELLMAN_DEFAULT_BUDGET};

fn solvers(c: &mut Criterion) {
    let mut g = c.benchmark_group("solvers");
    g.sample_size(10);
    let config = SolverConfig::default();
    for w in [32u64, 64, 128] {
        let (items, t) = scaling_instance(w, 1);
        let inst = normalize(&items, t);
        g.bench_with_input(BenchmarkId::new("fast", w), &w, |b, _| {
            b.iter(|| solve_fast(&items, t, &config).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("bellman", w), &w, |b, _| {
            b.iter(|| solve_bellman(&inst, BELLMAN_DEFAULT_BUDGET).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("proximity", w), &w, |b, _| {
            b.iter(|| solve_proximity_smawk(&inst).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, solvers);
criterion_main!(benches);
