use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use focml::{driver, emit, generators, par};
use std::hint::black_box;

const EXAMPLE: &str = include_str!("../fixtures/example.fcl");

/// Analyse, plan and emit both targets for one source.
fn compile(text: &str) -> usize {
    let a = driver::analyze_sources(&[("example.fcl".into(), text.to_string())]);
    let p = generators::plan_unit(&a.unit, &a.env);
    emit::logical(&p).len() + emit::computational(&p).len()
}

fn pipeline(c: &mut Criterion) {
    let mut g = c.benchmark_group("pipeline");
    for n in [8usize, 64] {
        let units = vec![EXAMPLE.to_string(); n];
        g.bench_with_input(BenchmarkId::new("seq", n), &units, |b, u| {
            b.iter(|| par::map_seq(black_box(u), |t| compile(t)))
        });
        g.bench_with_input(BenchmarkId::new("par", n), &units, |b, u| {
            b.iter(|| par::map(black_box(u), |t| compile(t)))
        });
    }
    g.finish();
}

criterion_group!(benches, pipeline);
criterion_main!(benches);
