use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use capfreedom::axioms::{random_scaling, SuiteConfig};
use capfreedom::geometry::{Being, CapabilitySet};
use capfreedom::measures::{compromise_ie_with, compromise_mc};
use capfreedom::par::Execution;
use capfreedom::{Sensitivity, ValueModel};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn staircase(n: usize) -> CapabilitySet {
    let pts = (0..n)
        .map(|i| {
            let t = (i as f64 + 0.5) / n as f64;
            Being::new(vec![10.0 * t, 10.0 * (1.0 - t * t)]).unwrap()
        })
        .collect();
    CapabilitySet::points(pts).unwrap()
}

fn monte_carlo(c: &mut Criterion) {
    let set = staircase(12);
    let v = ValueModel::sum(2);
    let phi = Sensitivity::Power(0.5);
    let mut g = c.benchmark_group("monte_carlo_1e6");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| compromise_mc(black_box(&set), &v, &phi, 1_000_000, 3, exec).unwrap())
        });
    }
    g.finish();
}

fn inclusion_exclusion(c: &mut Criterion) {
    let v = ValueModel::sum(2);
    let phi = Sensitivity::Power(2.0);
    let mut g = c.benchmark_group("inclusion_exclusion");
    g.sample_size(10);
    for n in [14, 18] {
        let set = staircase(n);
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &set, |b, s| {
                b.iter(|| compromise_ie_with(black_box(s), &v, &phi, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn axiom_suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("scaling_suite_200");
    g.sample_size(10);
    for (name, exec) in MODES {
        let cfg = SuiteConfig { trials: 200, exec, ..SuiteConfig::default() };
        g.bench_function(name, |b| b.iter(|| random_scaling(black_box(&cfg))));
    }
    g.finish();
}

criterion_group!(benches, monte_carlo, inclusion_exclusion, axiom_suite);
criterion_main!(benches);
