//! Sequential against parallel batch evaluation on the same workloads.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ivrf_core::constructions::{verify_theta, SingularData};
use ivrf_core::par::Mode;
use ivrf_core::suites::{self, grid, Suite, SuiteConfig};

const MODES: [(&str, Mode); 2] = [("sequential", Mode::Sequential), ("parallel", Mode::Parallel)];

fn theta_grid(c: &mut Criterion) {
    let s = SingularData::preset("2-3").unwrap();
    let points = grid(40);
    let mut g = c.benchmark_group("theta_grid_40");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &m| b.iter(|| verify_theta(&s, &points, m)));
    }
    g.finish();
}

fn envelope_suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("envelope_suite_50");
    g.sample_size(10);
    for (name, mode) in MODES {
        let cfg = SuiteConfig { seed: 1, samples: Some(50), mode, ..SuiteConfig::default() };
        g.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| {
            b.iter(|| suites::run(Suite::Envelope, cfg).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, theta_grid, envelope_suite);
criterion_main!(benches);
