use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use incidence_core::configurations::{generate, search_min_dirac_with, GeneratorSpec};
use incidence_core::constants::{optimize_c_with, Mode, PipelineParams};
use incidence_core::geometry::compute_arrangement_with;
use incidence_core::Execution;

const POLICIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn arrangement(c: &mut Criterion) {
    let mut group = c.benchmark_group("compute_arrangement");
    group.sample_size(10);
    for k in [8u64, 16] {
        let ps = generate(&GeneratorSpec::Grid { width: k, height: k }).unwrap();
        for (name, exec) in POLICIES {
            group.bench_with_input(BenchmarkId::new(name, k * k), &ps, |b, ps| {
                b.iter(|| compute_arrangement_with(black_box(ps), exec))
            });
        }
    }
    group.finish();
}

fn cutoff_sweep(c: &mut Criterion) {
    let params = PipelineParams::default();
    let mut group = c.benchmark_group("optimize_c_8_200");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_function(name, |b| b.iter(|| optimize_c_with(8, 200, &params, Mode::Dirac, exec).unwrap()));
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search_min_dirac_n12");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_function(name, |b| b.iter(|| search_min_dirac_with(12, 11, 2000, 42, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, arrangement, cutoff_sweep, search);
criterion_main!(benches);
