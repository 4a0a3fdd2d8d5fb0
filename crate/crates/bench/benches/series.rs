use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use permlab_core::series::{MSeries, Ring, SeriesLab};

fn named(c: &mut Criterion) {
    let mut group = c.benchmark_group("named");
    group.sample_size(10);
    for (name, order) in [
        ("large-schroder", 40),
        ("C-star", 30),
        ("s-closed", 20),
        ("Y", 20),
    ] {
        group.bench_with_input(BenchmarkId::new(name, order), &order, |b, &order| {
            b.iter(|| SeriesLab::new().named(name, order).unwrap())
        });
    }
    group.finish();
}

fn arithmetic(c: &mut Criterion) {
    let r = Ring::total(24);
    let a = (r.int(1) - r.x() - r.t() - r.u()).reciprocal().unwrap();
    c.bench_function("mul/total-24", |b| b.iter(|| &a * &a));
    c.bench_function("reciprocal/total-24", |b| {
        b.iter(|| a.reciprocal().unwrap())
    });
    c.bench_function("sqrt1/x-300", |b| {
        let d = MSeries::from_x_coefficients(&[1, -6, 1], 300);
        b.iter(|| d.sqrt1().unwrap())
    });
}

fn identities(c: &mut Criterion) {
    let mut group = c.benchmark_group("identity");
    group.sample_size(10);
    let lab = SeriesLab::new();
    for id in ["cubic-B", "s-two-ways", "Y-eq-3.3"] {
        group.bench_function(id, |b| b.iter(|| lab.check(id, 16).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, named, arithmetic, identities);
criterion_main!(benches);
