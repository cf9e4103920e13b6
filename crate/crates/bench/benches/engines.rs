use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tightgraph::{canonical_form, deconstruct, generate_by_moves, is_tight, random_tight_graph, SimpleGraph, SparsityParams};

fn sample(l: u8, n: usize, count: usize) -> (SparsityParams, Vec<SimpleGraph>) {
    let p = SparsityParams::new(l).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (p, (0..count).map(|_| random_tight_graph(&mut rng, p, n).unwrap()).collect())
}

fn pebble_game(c: &mut Criterion) {
    let mut group = c.benchmark_group("pebble_game");
    for n in [16, 64, 256] {
        let (p, graphs) = sample(2, n, 8);
        group.bench_with_input(BenchmarkId::from_parameter(n), &graphs, |b, gs| b.iter(|| gs.iter().filter(|g| is_tight(g, p)).count()));
    }
    group.finish();
}

fn canonical(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical_form");
    for n in [8, 12, 20] {
        let (_, graphs) = sample(1, n, 8);
        group.bench_with_input(BenchmarkId::from_parameter(n), &graphs, |b, gs| {
            b.iter(|| gs.iter().map(canonical_form).collect::<Vec<_>>())
        });
    }
    group.finish();
}

fn reducer(c: &mut Criterion) {
    let mut group = c.benchmark_group("deconstruct");
    for l in 1..=3 {
        let (p, graphs) = sample(l, 30, 8);
        group.bench_with_input(BenchmarkId::new("n30", l), &graphs, |b, gs| {
            b.iter(|| gs.iter().map(|g| deconstruct(g, p).unwrap()).collect::<Vec<_>>())
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate_by_moves");
    group.sample_size(10);
    for l in 1..=3 {
        let p = SparsityParams::new(l).unwrap();
        group.bench_with_input(BenchmarkId::new("n7", l), &p, |b, &p| b.iter(|| generate_by_moves(7, p)));
    }
    group.finish();
}

criterion_group!(benches, pebble_game, canonical, reducer, enumeration);
criterion_main!(benches);
