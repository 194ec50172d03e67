//! Compares the data-parallel enumeration sweeps against the sequential
//! fallback. Run with `cargo bench -p chaindec`.

use criterion::{criterion_group, criterion_main, Criterion};

use chaindec::oracle;

fn bench_count_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_sweep_n6");
    group.sample_size(20);
    group.bench_function("sequential", |b| {
        b.iter(|| oracle::count_summary_sequential(6, 7).unwrap())
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| oracle::count_summary(6, 7).unwrap())
    });
    group.finish();
}

fn bench_verify_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_sweep_n5");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| oracle::verify_class_sequential(5, 7).unwrap())
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| oracle::verify_class_with_cap(5, 7).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_count_sweep, bench_verify_sweep);
criterion_main!(benches);
