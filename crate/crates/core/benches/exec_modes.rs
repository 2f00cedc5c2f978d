use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use jacpair::corners::corner_grid;
use jacpair::corpus::{random_pairs, CorpusShape};
use jacpair::intersection::sum_degrees_at_roots;
use jacpair::par::{self, Exec};

fn corner_grid_modes(c: &mut Criterion) {
    let mut g = c.benchmark_group("corner_grid");
    g.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| corner_grid(60, 4, exec).unwrap())
        });
    }
    g.finish();
}

fn corpus_identity_modes(c: &mut Criterion) {
    let pairs = random_pairs(1, 12, &CorpusShape::default()).unwrap();
    let mut g = c.benchmark_group("puiseux_identity");
    g.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| par::map(exec, &pairs, |(p, q)| sum_degrees_at_roots(p, q).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, corner_grid_modes, corpus_identity_modes);
criterion_main!(benches);
