use std::hint::black_box;
use std::sync::Arc;

use amconst_bench::{alternating, mathieu11, symmetric};
use amconst_core::amen::AnalysisOptions;
use amconst_core::fourier::{anti_diagonal, NormEngine, EIGEN_TOLERANCE};
use amconst_core::perm::DEFAULT_ELEMENT_CAP;
use amconst_core::{analyze, character_degrees, eigenvalues_symmetric, GroupElements, SymMatrix};
use criterion::{criterion_group, criterion_main, Criterion};

fn schreier_sims(c: &mut Criterion) {
    let mut group = c.benchmark_group("schreier_sims");
    group.bench_function("S10", |b| b.iter(|| symmetric(black_box(10))));
    group.bench_function("M11", |b| b.iter(mathieu11));
    group.finish();
}

fn degrees(c: &mut Criterion) {
    let a5 = GroupElements::new(&alternating(5), DEFAULT_ELEMENT_CAP).unwrap();
    let s5 = GroupElements::new(&symmetric(5), DEFAULT_ELEMENT_CAP).unwrap();
    c.bench_function("classes_A5", |b| b.iter(|| a5.conjugacy_classes()));
    let classes = a5.conjugacy_classes();
    c.bench_function("dixon_A5", |b| {
        b.iter(|| character_degrees(&a5, &classes).unwrap())
    });
    c.bench_function("analyze_S5", |b| {
        b.iter(|| analyze("S5", s5.group(), &AnalysisOptions::default()).unwrap())
    });
}

fn jacobi(c: &mut Criterion) {
    let n = 120;
    let m = SymMatrix::from_fn(n, |i, j| {
        ((i * 7 + j * 13) % 17) as f64 - 8.0 + if i == j { 3.0 } else { 0.0 }
    })
    .unwrap();
    c.bench_function("jacobi_120", |b| {
        b.iter(|| eigenvalues_symmetric(&m, 1e-12).unwrap())
    });
}

fn antidiagonal_norm(c: &mut Criterion) {
    let s3 = GroupElements::new(&symmetric(3), DEFAULT_ELEMENT_CAP).unwrap();
    let a4 = GroupElements::new(&alternating(4), DEFAULT_ELEMENT_CAP).unwrap();
    let mut group = c.benchmark_group("antidiagonal_norm");
    group.sample_size(10);
    for (label, g) in [("S3", s3), ("A4", a4)] {
        let chi = anti_diagonal(&g, DEFAULT_ELEMENT_CAP).unwrap();
        let engine = NormEngine::new(Arc::clone(chi.group()), 1000, EIGEN_TOLERANCE).unwrap();
        group.bench_function(label, |b| b.iter(|| engine.norm(&chi).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, schreier_sims, degrees, jacobi, antidiagonal_norm);
criterion_main!(benches);
