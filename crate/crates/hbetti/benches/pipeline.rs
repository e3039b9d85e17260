//! Parallel versus sequential pipeline. The sequential side pins the pool to a
//! single worker, which is the same code path as building without `parallel`.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hbetti::braid::{close, split_union, BraidWord};
use hbetti::linkbetti::analyze;
use hbetti::par;
use hbetti::resolve::{betti_table, koszul_betti_table};

fn cases() -> Vec<(&'static str, BraidWord)> {
    let hopf = BraidWord::new(2, vec![1, 1]).unwrap();
    vec![
        ("hopf", hopf.clone()),
        ("trefoil", BraidWord::new(3, vec![1, 2, 1, 2]).unwrap()),
        ("hopf-hopf", split_union(&hopf, &hopf)),
    ]
}

fn analysis(c: &mut Criterion) {
    let mut group = c.benchmark_group("analyze");
    group.sample_size(20);
    let wide = par::default_jobs();
    for (name, word) in cases() {
        let d = close(&word);
        for (label, jobs) in [("sequential", 1), ("parallel", wide)] {
            group.bench_with_input(BenchmarkId::new(label, name), &d, |b, d| {
                b.iter(|| par::with_jobs(jobs, || analyze(d).unwrap()))
            });
        }
    }
    group.finish();
}

fn strata_resolutions(c: &mut Criterion) {
    let a = analyze(&close(&split_union(
        &BraidWord::new(2, vec![1, 1]).unwrap(),
        &BraidWord::new(2, vec![1, 1]).unwrap(),
    )))
    .unwrap();
    let modules: Vec<_> = a.homology.strata.values().cloned().collect();
    let mut group = c.benchmark_group("strata");
    group.sample_size(20);
    for (label, jobs) in [("sequential", 1), ("parallel", par::default_jobs())] {
        group.bench_function(BenchmarkId::new(label, "betti+koszul"), |b| {
            b.iter(|| {
                par::with_jobs(jobs, || {
                    par::map(modules.clone(), |m| (betti_table(&m), koszul_betti_table(&m)))
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, analysis, strata_resolutions);
criterion_main!(benches);
