use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rnashapes::ShapeSampler;
use rnashapes_bench::bench_rng;

fn sample_by_genus(c: &mut Criterion) {
    let mut group = c.benchmark_group("sample");
    for g in 1..=5 {
        let sampler = ShapeSampler::new(g, None).unwrap();
        let mut i = 0;
        group.bench_with_input(BenchmarkId::from_parameter(g), &sampler, |b, s| {
            b.iter(|| {
                i += 1;
                s.sample(&mut bench_rng(i)).unwrap()
            })
        });
    }
    group.finish();
}

fn sample_fixed_arcs(c: &mut Criterion) {
    let mut group = c.benchmark_group("sample_genus3_arcs");
    for n in [6, 9, 12, 16] {
        let sampler = ShapeSampler::new(3, Some(n)).unwrap();
        let mut i = 0;
        group.bench_with_input(BenchmarkId::from_parameter(n), &sampler, |b, s| {
            b.iter(|| {
                i += 1;
                s.sample(&mut bench_rng(i)).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, sample_by_genus, sample_fixed_arcs);
criterion_main!(benches);
