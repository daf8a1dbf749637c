use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rnashapes::oracle::{count_maps_by_genus, count_shape_maps};
use rnashapes::OracleCaps;

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for m in [5, 6, 7] {
        group.bench_with_input(BenchmarkId::new("all_maps", m), &m, |b, &m| {
            b.iter(|| count_maps_by_genus(m, OracleCaps::default()).unwrap())
        });
    }
    for n in [4, 5, 6] {
        group.bench_with_input(BenchmarkId::new("genus2_shapes", n), &n, |b, &n| {
            b.iter(|| count_shape_maps(n, 2, OracleCaps::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, oracle);
criterion_main!(benches);
