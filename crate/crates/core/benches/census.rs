use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use prmq::census::{self, DEFAULT_BUDGET};
use prmq::prm::Method;
use prmq::Exec;

fn census_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("census_q3_n3_characterization");
    group.sample_size(10);
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        group.bench_function(name, |b| {
            b.iter(|| {
                census::brute_force_census(3, 3, Method::Characterization, DEFAULT_BUDGET, exec)
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn interpolation_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("census_q2_n4_interpolation");
    group.sample_size(10);
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        group.bench_function(name, |b| {
            b.iter(|| {
                census::brute_force_census(2, 4, Method::Interpolation, DEFAULT_BUDGET, exec)
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn containment_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("containment_q2_n3");
    group.sample_size(10);
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        group.bench_function(name, |b| {
            b.iter(|| black_box(census::find_containments(2, 3, DEFAULT_BUDGET, exec).unwrap().len()))
        });
    }
    group.finish();
}

criterion_group!(benches, census_scan, interpolation_scan, containment_scan);
criterion_main!(benches);
