use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use geodual_bench::regular_surface;
use geodual_core::classify::{classify, partial_search, verify_uncollapsed};
use geodual_core::fp_group::{coset_enumeration, geodesic_presentation};
use geodual_core::surface::is_geodesic_self_dual;
use geodual_core::voltage::{prop_assignment, verify_lift};

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("coset_enumeration");
    for d in [8, 9] {
        let p = geodesic_presentation(d);
        g.bench_function(format!("H_{d}"), |b| b.iter(|| coset_enumeration(black_box(&p), &[], 10_000).unwrap()));
    }
    g.finish();
}

fn classification(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    g.sample_size(10);
    for d in [8, 9] {
        g.bench_function(format!("d={d}"), |b| b.iter(|| classify(black_box(d)).unwrap()));
    }
    g.bench_function("bounded search d=8 cap 96", |b| b.iter(|| partial_search(8, black_box(96)).unwrap()));
    g.finish();
}

fn surfaces(c: &mut Criterion) {
    let s = regular_surface(9);
    c.bench_function("self-duality test, 3420 flags", |b| b.iter(|| is_geodesic_self_dual(black_box(&s))));
    let h5 = regular_surface(5);
    let va = prop_assignment(&h5, 5).unwrap();
    c.bench_function("verify_lift H_5 p=5", |b| b.iter(|| verify_lift(black_box(&va)).unwrap()));
}

fn uncollapsed(c: &mut Criterion) {
    let mut g = c.benchmark_group("uncollapsed");
    g.sample_size(10);
    g.bench_function("H_16 vs H_8", |b| b.iter(|| verify_uncollapsed(16, 8, black_box(10_000)).unwrap()));
    g.finish();
}

criterion_group!(benches, enumeration, classification, surfaces, uncollapsed);
criterion_main!(benches);
