use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use leavitt_bench::{free_words, normal_elements, rational};
use leavitt_core::{
    center, derivation_d, families, partial_map, verify_exactness_finite, verify_exactness_truncated,
    verify_identities, Algebra, Bound, VerifyConfig,
};

fn normal_form(c: &mut Criterion) {
    let alg = rational(families::rose(2));
    let mut group = c.benchmark_group("normal_form/rose2");
    for len in [4, 8, 12] {
        let words = free_words(&alg, len, 64, 1);
        group.bench_with_input(BenchmarkId::from_parameter(len), &words, |b, words| {
            b.iter(|| {
                for w in words {
                    black_box(alg.normal_form(w).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn multiply(c: &mut Criterion) {
    let alg = rational(families::rose(3));
    let xs = normal_elements(&alg, 4, 32, 2);
    c.bench_function("multiply/rose3", |b| {
        b.iter(|| {
            for pair in xs.chunks(2) {
                black_box(alg.multiply(&pair[0], &pair[1]).unwrap());
            }
        })
    });
}

fn resolution_maps(c: &mut Criterion) {
    let alg = rational(families::rose(2));
    let xs = normal_elements(&alg, 4, 32, 3);
    c.bench_function("partial_after_d/rose2", |b| {
        b.iter(|| {
            for x in &xs {
                black_box(partial_map(&alg, &derivation_d(&alg, x).unwrap()).unwrap());
            }
        })
    });
}

fn verifiers(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    let rose2 = rational(families::rose(2));
    let config = VerifyConfig {
        samples: 100,
        ..VerifyConfig::default()
    };
    group.bench_function("identities/rose2/100", |b| {
        b.iter(|| verify_identities(&rose2, &config).unwrap())
    });
    let a4 = rational(families::linear(4));
    group.bench_function("exactness_full/a4", |b| {
        b.iter(|| verify_exactness_finite(&a4).unwrap())
    });
    group.bench_function("exactness_truncated/rose2/4", |b| {
        b.iter(|| verify_exactness_truncated(&rose2, 4, 2).unwrap())
    });
    let lp = rational(families::loop_quiver());
    group.bench_function("center/loop/6", |b| b.iter(|| center(&lp, Bound::MaxLen(6)).unwrap()));
    group.finish();
}

criterion_group!(benches, normal_form, multiply, resolution_maps, verifiers);
criterion_main!(benches);
