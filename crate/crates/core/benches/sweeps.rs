use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use fopkit::par::Exec;
use fopkit::reductions::{by_name, verify_reduction, Fidelity, VerifyOptions};

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for (name, size) in [("qsat2-qunsat2", 2), ("qsat2-vcsat", 2), ("gen-qsat2", 3)] {
        let red = by_name(name, Fidelity::Corrected).unwrap();
        for exec in [Exec::Parallel, Exec::Sequential] {
            let opts = VerifyOptions { exec, ..VerifyOptions::default() };
            group.bench_with_input(BenchmarkId::new(format!("{name}/n={size}"), format!("{exec:?}")), &opts, |b, opts| {
                b.iter(|| black_box(verify_reduction(&red, &[size], opts).unwrap().agreements))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
