//! Hot-path benchmarks: feature extraction, lexical diversity, normality
//! testing, and model fitting.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use reprospect_bench::{blob_data, gaussian_sample, synthetic_record, token_stream};
use reprospect_core::models::{fit_random_forest, ForestParams};
use reprospect_core::stats::{kruskal_wallis, shapiro_wilk};
use reprospect_core::textfeat::{featurize_record, mtld, MTLD_THRESHOLD};

fn bench_featurize(c: &mut Criterion) {
    let mut group = c.benchmark_group("featurize_record");
    for paragraphs in [10usize, 50, 200] {
        let record = synthetic_record(7, paragraphs);
        group.bench_with_input(
            BenchmarkId::from_parameter(paragraphs),
            &record,
            |b, record| b.iter(|| featurize_record(black_box(record))),
        );
    }
    group.finish();
}

fn bench_mtld(c: &mut Criterion) {
    let mut group = c.benchmark_group("mtld");
    for len in [1_000usize, 10_000, 50_000] {
        let tokens = token_stream(11, len, 2_000);
        group.bench_with_input(BenchmarkId::from_parameter(len), &tokens, |b, tokens| {
            b.iter(|| mtld(black_box(tokens), MTLD_THRESHOLD).unwrap())
        });
    }
    group.finish();
}

fn bench_shapiro(c: &mut Criterion) {
    let mut group = c.benchmark_group("shapiro_wilk");
    for n in [20usize, 200, 2_000] {
        let sample = gaussian_sample(13, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &sample, |b, sample| {
            b.iter(|| shapiro_wilk(black_box(sample)).unwrap())
        });
    }
    group.finish();
}

fn bench_kruskal_wallis(c: &mut Criterion) {
    let groups: Vec<Vec<f64>> = (0..3).map(|s| gaussian_sample(17 + s, 500)).collect();
    let refs: Vec<&[f64]> = groups.iter().map(|g| g.as_slice()).collect();
    c.bench_function("kruskal_wallis_3x500", |b| {
        b.iter(|| kruskal_wallis(black_box(&refs)).unwrap())
    });
}

fn bench_forest_fit(c: &mut Criterion) {
    let (x, y) = blob_data(19, 100, 14);
    let params = ForestParams {
        n_trees: 50,
        master_seed: 19,
        ..ForestParams::default()
    };
    c.bench_function("random_forest_fit_300x16_50trees", |b| {
        b.iter(|| fit_random_forest(black_box(&x), black_box(&y), 3, &params).unwrap())
    });
}

criterion_group!(
    benches,
    bench_featurize,
    bench_mtld,
    bench_shapiro,
    bench_kruskal_wallis,
    bench_forest_fit
);
criterion_main!(benches);
