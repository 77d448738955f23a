use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use qwalk::qmeasure::{complement_event, mu_complement_closed, mu_complement_rowsum};
use qwalk::{mu_fast, mu_pairsum, psd_certificate, Event};
use rand::SeedableRng;

fn measure_routes(c: &mut Criterion) {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let mut group = c.benchmark_group("mu");
    for n in [6u32, 9, 12] {
        let a = Event::random(n, &mut rng).unwrap();
        group.bench_with_input(BenchmarkId::new("fast", n), &a, |b, a| {
            b.iter(|| mu_fast(black_box(a)))
        });
        group.bench_with_input(BenchmarkId::new("pairsum", n), &a, |b, a| {
            b.iter(|| mu_pairsum(black_box(a)).unwrap())
        });
    }
    group.finish();
}

fn complement_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("complement");
    for n in [10u32, 20] {
        let a = complement_event(n).unwrap();
        group.bench_with_input(BenchmarkId::new("fast", n), &a, |b, a| {
            b.iter(|| mu_fast(a))
        });
        group.bench_with_input(BenchmarkId::new("rowsum", n), &n, |b, &n| {
            b.iter(|| mu_complement_rowsum(black_box(n)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("closed", n), &n, |b, &n| {
            b.iter(|| mu_complement_closed(black_box(n)).unwrap())
        });
    }
    group.bench_function("closed/10000", |b| {
        b.iter(|| mu_complement_closed(black_box(10_000)).unwrap())
    });
    group.finish();
}

fn certificate(c: &mut Criterion) {
    c.bench_function("psd_certificate/10", |b| {
        b.iter(|| psd_certificate(black_box(10)).unwrap())
    });
}

criterion_group!(benches, measure_routes, complement_routes, certificate);
criterion_main!(benches);
