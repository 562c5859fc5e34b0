use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use seit_bench::half_rate_params;
use seit_core::coder::Scheme;

fn run_trial(c: &mut Criterion) {
    let mut g = c.benchmark_group("run_trial");
    g.sample_size(10);
    for n in [100usize, 1000, 10000] {
        let scheme = Scheme::new(half_rate_params(n)).expect("valid scheme");
        g.bench_with_input(BenchmarkId::from_parameter(n), &scheme, |b, s| {
            let mut trial = 0;
            b.iter(|| {
                trial += 1;
                s.run_trial(trial).expect("trial runs")
            })
        });
    }
    g.finish();
}

criterion_group!(benches, run_trial);
criterion_main!(benches);
