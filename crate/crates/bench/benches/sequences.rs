use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use qwalk::combinatorics::{quads_by_recurrence, THIRD_ORDER_INITS};
use qwalk::{binom_sum_mod4, quad_closed_form, third_order_sequence};

fn four_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("quad");
    for n in [50u64, 200, 1000] {
        group.bench_with_input(BenchmarkId::new("binomial_sum", n), &n, |b, &n| {
            b.iter(|| {
                (0..4)
                    .map(|j| binom_sum_mod4(black_box(n), j))
                    .collect::<Vec<_>>()
            })
        });
        group.bench_with_input(BenchmarkId::new("coupled_recurrence", n), &n, |b, &n| {
            b.iter(|| quads_by_recurrence(black_box(n)))
        });
        group.bench_with_input(BenchmarkId::new("third_order", n), &n, |b, &n| {
            b.iter(|| third_order_sequence(THIRD_ORDER_INITS[0], black_box(n)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("closed_form", n), &n, |b, &n| {
            b.iter(|| quad_closed_form(black_box(n)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, four_routes);
criterion_main!(benches);
