use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gcnlab_bench::{line_product, nodeset};
use gcnlab_core::gen::GeneratorKind;
use gcnlab_core::{certify_gc, interp};

fn bench_certify(c: &mut Criterion) {
    let mut g = c.benchmark_group("certify_gc");
    g.sample_size(10);
    for kind in GeneratorKind::ALL {
        let xs = nodeset(kind, 5);
        g.bench_with_input(BenchmarkId::new(kind.name(), 5), &xs, |b, xs| b.iter(|| certify_gc(black_box(xs)).unwrap()));
    }
    g.finish();
}

fn bench_fundamentals(c: &mut Criterion) {
    let mut g = c.benchmark_group("fundamentals");
    g.sample_size(20);
    for n in [3, 5] {
        let xs = nodeset(GeneratorKind::ProjectiveImage, n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &xs, |b, xs| b.iter(|| interp::fundamentals(black_box(xs)).unwrap()));
    }
    g.finish();
}

fn bench_divide(c: &mut Criterion) {
    let (p, l) = line_product(5);
    c.bench_function("divide_by_line/5", |b| b.iter(|| black_box(&p).divide_by_line(black_box(&l)).unwrap()));
}

criterion_group!(benches, bench_certify, bench_fundamentals, bench_divide);
criterion_main!(benches);
