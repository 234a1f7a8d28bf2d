use std::hint::black_box;

use altcsit_core::channel::{draw_channels, split_seed};
use altcsit_core::{
    build_trace, check_decodable, rate_sweep_with, Execution, SchemeId, SweepConfig,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("rate_sweep");
    group.sample_size(10);
    for trials in [256, 2048] {
        let cfg = SweepConfig::uniform(20.0, 60.0, 5.0, trials, 1).unwrap();
        for (name, exec) in [
            ("sequential", Execution::Sequential),
            ("parallel", Execution::Parallel),
        ] {
            group.bench_with_input(BenchmarkId::new(name, trials), &cfg, |b, cfg| {
                b.iter(|| rate_sweep_with(black_box(SchemeId::S85), cfg, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn decodability(c: &mut Criterion) {
    let mut group = c.benchmark_group("decodability_1000");
    group.sample_size(10);
    let seeds: Vec<u64> = (0..1000).map(|i| split_seed(9, i)).collect();
    for (name, exec) in [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel),
    ] {
        group.bench_function(name, |b| {
            b.iter(|| {
                exec.map(seeds.clone(), |s| {
                    let ch = draw_channels(s, 5).unwrap();
                    check_decodable(&build_trace(SchemeId::S85, &ch).unwrap())
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, sweeps, decodability);
criterion_main!(benches);
