//! Parallel vs sequential throughput of the core sweeps: the oracle-scored
//! 2x2 random instance sweep, and exhaustive minimax certification.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use scenario_sched::algorithms::AlgorithmId;
use scenario_sched::harness::{
    map_collect, map_collect_seq, random_instance, run_static, WeightMode,
};
use scenario_sched::oracle::OracleConfig;

fn alg53_ratio(seed: u64) -> scenario_sched::Weight {
    let inst = random_instance(2, 2, 10, WeightMode::rational(10, 10), seed);
    let mut alg = AlgorithmId::Alg53.instantiate();
    run_static(alg.as_mut(), &inst, &OracleConfig::default())
        .map(|r| r.ratio)
        .expect("2x2 instances are in range")
}

fn bench_ratio_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("alg53-ratio-sweep");
    for &n in &[64u64, 256] {
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, &n| {
            b.iter(|| {
                let seeds: Vec<u64> = (0..n).collect();
                map_collect(seeds, alg53_ratio)
            })
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
            b.iter(|| {
                let seeds: Vec<u64> = (0..n).collect();
                map_collect_seq(seeds, alg53_ratio)
            })
        });
    }
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle-rational-m4");
    let instances: Vec<_> = (0..128u64)
        .map(|seed| random_instance(4, 3, 12, WeightMode::rational(10, 10), seed))
        .collect();
    group.bench_function("parallel", |b| {
        b.iter(|| {
            map_collect(instances.clone(), |inst| {
                scenario_sched::oracle::exact_opt(&inst).expect("in range").value
            })
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            map_collect_seq(instances.clone(), |inst| {
                scenario_sched::oracle::exact_opt(&inst).expect("in range").value
            })
        })
    });
    group.finish();
}

criterion_group!(benches, bench_ratio_sweep, bench_oracle);
criterion_main!(benches);
