use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rnashapes::counting::{kappa_table, shape_polynomial, TraceTable};

fn counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("counting");
    for g in [2, 4, 6] {
        group.bench_with_input(BenchmarkId::new("kappa_table", g), &g, |b, &g| b.iter(|| kappa_table(g)));
        group.bench_with_input(BenchmarkId::new("shape_polynomial", g), &g, |b, &g| b.iter(|| shape_polynomial(g)));
        group.bench_with_input(BenchmarkId::new("trace_table", g), &g, |b, &g| b.iter(|| TraceTable::new(g)));
    }
    group.finish();
}

criterion_group!(benches, counting);
criterion_main!(benches);
