use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use slicegenus::bounds::defect_upper;
use slicegenus::braid::{subsurface_split, torus};
use slicegenus::search::{search, SearchBudget};
use slicegenus::seifert::seifert_matrix;
use slicegenus::signatures::{lt_profile, lt_signature, Theta};
use slicegenus_bench::torus_inputs;

fn seifert(c: &mut Criterion) {
    let mut g = c.benchmark_group("seifert");
    for (name, w) in torus_inputs() {
        g.bench_with_input(BenchmarkId::new("matrix", &name), &w, |b, w| b.iter(|| seifert_matrix(w)));
        let d = seifert_matrix(&w).unwrap();
        g.bench_with_input(BenchmarkId::new("alexander", &name), &d, |b, d| b.iter(|| d.alexander()));
    }
    g.finish();
}

fn signatures(c: &mut Criterion) {
    let mut g = c.benchmark_group("signatures");
    g.sample_size(10);
    for (name, w) in torus_inputs() {
        let s = seifert_matrix(&w).unwrap().matrix;
        let half = Theta::new(1, 2).unwrap();
        g.bench_with_input(BenchmarkId::new("single", &name), &s, |b, s| b.iter(|| lt_signature(s, half)));
        g.bench_with_input(BenchmarkId::new("profile_32", &name), &s, |b, s| b.iter(|| lt_profile(s, 32)));
    }
    g.finish();
}

fn searching(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    let budget = SearchBudget {
        restarts: 1,
        ..SearchBudget::default()
    };
    for (p, q) in [(3, 7), (4, 7)] {
        let w = torus(p, q).unwrap();
        g.bench_function(format!("T({p},{q})"), |b| b.iter(|| search(&w, 0, &budget)));
    }
    g.finish();
}

fn misc(c: &mut Criterion) {
    let mut g = c.benchmark_group("misc");
    g.sample_size(10);
    g.bench_function("split_14_3", |b| b.iter(|| subsurface_split(14, 3)));
    g.bench_function("defect_upper_5_11", |b| b.iter(|| defect_upper(5, 11)));
    g.finish();
}

criterion_group!(benches, seifert, signatures, searching, misc);
criterion_main!(benches);
