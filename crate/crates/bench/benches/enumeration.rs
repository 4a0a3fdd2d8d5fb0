use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use permlab_core::class::{Enumerator, RefinedCountTable};
use permlab_core::{perm, Filter, PatternBasis, Permutation, Stat};

fn counts(c: &mut Criterion) {
    let mut group = c.benchmark_group("count");
    group.sample_size(10);
    for tau in ["254613", "263514"] {
        let basis = PatternBasis::parse(&format!("2143,3142,{tau}")).unwrap();
        for threads in [1, 0] {
            let e = Enumerator::new(&basis).with_threads(threads);
            let label = if threads == 1 {
                "sequential"
            } else {
                "parallel"
            };
            group.bench_with_input(BenchmarkId::new(label, tau), &e, |b, e| {
                b.iter(|| e.counts(9).unwrap())
            });
        }
    }
    group.finish();
}

fn refine(c: &mut Criterion) {
    let basis = PatternBasis::parse("132").unwrap();
    let levels = Enumerator::new(&basis).levels(10).unwrap();
    let stats = [Stat::Bond, Stat::LrMin];
    c.bench_function("refine/132-bond-lrmin-10", |b| {
        b.iter(|| {
            RefinedCountTable::from_levels(&levels, 10, &stats, Filter::LastEntryEqualsLength)
        })
    });
}

fn containment(c: &mut Criterion) {
    let hosts = Permutation::all_of_length(8);
    let pattern = perm("254613");
    c.bench_function("contains/S8-254613", |b| {
        b.iter(|| hosts.iter().filter(|h| h.contains(&pattern)).count())
    });
}

criterion_group!(benches, counts, refine, containment);
criterion_main!(benches);
