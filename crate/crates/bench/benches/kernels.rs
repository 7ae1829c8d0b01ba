use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use linoptics_bench::{collision_free_input, dense_block, network};
use linoptics_core::{
    determinant, fermion_distribution, output_distribution, permanent_glynn, permanent_naive,
    permanent_ryser, FermionState,
};

fn permanents(c: &mut Criterion) {
    let mut group = c.benchmark_group("permanent");
    for n in [4usize, 8, 12, 16] {
        let m = dense_block(n, n as u64);
        group.bench_with_input(BenchmarkId::new("ryser", n), &m, |b, m| {
            b.iter(|| permanent_ryser(black_box(m)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("glynn", n), &m, |b, m| {
            b.iter(|| permanent_glynn(black_box(m)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("determinant", n), &m, |b, m| {
            b.iter(|| determinant(black_box(m)).unwrap())
        });
        if n <= 8 {
            group.bench_with_input(BenchmarkId::new("naive", n), &m, |b, m| {
                b.iter(|| permanent_naive(black_box(m)).unwrap())
            });
        }
    }
    group.finish();
}

fn distributions(c: &mut Criterion) {
    let mut group = c.benchmark_group("distribution");
    group.sample_size(10);
    let u = network(8);
    let input = collision_free_input(8, 4);
    group.bench_function("bosonic d8 n4", |b| {
        b.iter(|| output_distribution(&u, black_box(&input)).unwrap())
    });

    let u = network(16);
    let input = FermionState::new(collision_free_input(16, 8)).unwrap();
    group.bench_function("fermionic d16 n8", |b| {
        b.iter(|| fermion_distribution(&u, black_box(&input)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, permanents, distributions);
criterion_main!(benches);
