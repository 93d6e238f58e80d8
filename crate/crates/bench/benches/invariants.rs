use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use uniruled::bundle::{self, BundleContext};
use uniruled::classify::{classify, Hypotheses, PolarizedPair};
use uniruled::fano;
use uniruled::rational::int;
use uniruled::veronese::{self, SectionCoefficients};

fn table(c: &mut Criterion) {
    c.bench_function("fano/derive_d_n all rows", |b| {
        b.iter(|| {
            for r in fano::table() {
                black_box(fano::derive_d_n(&r.rho(), &int(r.k_squared as i64)).unwrap());
            }
        })
    });
    c.bench_function("fano/verify_table", |b| b.iter(|| black_box(fano::verify_table())));
}

fn bundle_invariants(c: &mut Criterion) {
    let mut group = c.benchmark_group("bundle/invariants");
    for (g, twist) in [(0u32, -2i64), (5, 7), (20, -40)] {
        let ctx = BundleContext::new(g, twist);
        group.bench_with_input(BenchmarkId::from_parameter(format!("g{g}_b{twist}")), &ctx, |b, ctx| {
            b.iter(|| black_box(bundle::invariants(ctx, black_box(17)).unwrap()))
        });
    }
    group.finish();
}

fn determinant(c: &mut Criterion) {
    let mut group = c.benchmark_group("veronese/det_and_roots");
    for a in [1u32, 2, 3, 5] {
        let coeffs = SectionCoefficients::random(a, 42).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(a), &coeffs, |b, coeffs| {
            b.iter(|| black_box(veronese::count_degenerate_fibers(coeffs).unwrap()))
        });
    }
    group.finish();

    let coeffs = SectionCoefficients::random(3, 42).unwrap();
    let m = veronese::build_matrix(&coeffs).unwrap();
    c.bench_function("veronese/det3 a=3", |b| b.iter(|| black_box(m.det())));
}

fn classifier(c: &mut Criterion) {
    let pairs: Vec<PolarizedPair> = (3..=5)
        .flat_map(|dim| (1..=40).flat_map(move |d| (1..=30).map(move |n| (dim, d, n))))
        .map(|(dim, d, n)| PolarizedPair::new(dim, d, n, Hypotheses::gg_big()).unwrap())
        .collect();
    c.bench_function("classify/grid 3600", |b| {
        b.iter(|| {
            for p in &pairs {
                black_box(classify(p).unwrap());
            }
        })
    });
}

criterion_group!(benches, table, bundle_invariants, determinant, classifier);
criterion_main!(benches);
