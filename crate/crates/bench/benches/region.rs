use criterion::{black_box, criterion_group, criterion_main, Criterion};

use seit_bench::{asymmetric_channel, symmetric_channel};
use seit_core::region::{contains, sample_boundary, solve_rho_star, sum_capacity_fb, sum_capacity_nf};
use seit_core::RateTriplet;

fn rho_star(c: &mut Criterion) {
    let cfg = asymmetric_channel();
    c.bench_function("solve_rho_star", |b| {
        b.iter(|| solve_rho_star(black_box(&cfg), 0.7, 0.4))
    });
}

fn sum_capacities(c: &mut Criterion) {
    let cfg = symmetric_channel();
    c.bench_function("sum_capacity_fb", |b| b.iter(|| sum_capacity_fb(&cfg, black_box(30.0))));
    c.bench_function("sum_capacity_nf", |b| b.iter(|| sum_capacity_nf(&cfg, black_box(30.0))));
}

fn membership(c: &mut Criterion) {
    let cfg = asymmetric_channel();
    let t = RateTriplet::new(1.0, 0.5, 12.0);
    c.bench_function("contains_fb_grid32", |b| {
        b.iter(|| contains(&cfg, black_box(&t), true, 32))
    });
}

fn boundary(c: &mut Criterion) {
    let cfg = asymmetric_channel();
    let mut g = c.benchmark_group("sample_boundary");
    g.sample_size(10);
    g.bench_function("nf_res64", |b| b.iter(|| sample_boundary(&cfg, false, 64)));
    g.bench_function("fb_res32", |b| b.iter(|| sample_boundary(&cfg, true, 32)));
    g.finish();
}

criterion_group!(benches, rho_star, sum_capacities, membership, boundary);
criterion_main!(benches);
