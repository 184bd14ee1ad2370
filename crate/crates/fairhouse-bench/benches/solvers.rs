use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use fairhouse::oracle::{oracle_solve, Constraint, Objective};
use fairhouse::solvers::{ef, esw, usw};
use fairhouse_bench::{binary_instance, weighted_instance};

fn bench_polynomial_solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("solvers");
    for houses in [5usize, 10, 20] {
        let inst = weighted_instance(houses, 11);
        group.bench_with_input(BenchmarkId::new("ef_max_size", houses), &inst, |b, inst| {
            b.iter(|| black_box(ef::max_size_envy_free(inst)))
        });
        group.bench_with_input(
            BenchmarkId::new("min_num_envy_max_usw", houses),
            &inst,
            |b, inst| b.iter(|| black_box(usw::min_num_envy_max_usw(inst))),
        );
        group.bench_with_input(
            BenchmarkId::new("min_total_envy_max_usw", houses),
            &inst,
            |b, inst| b.iter(|| black_box(usw::min_total_envy_max_usw(inst))),
        );
        group.bench_with_input(BenchmarkId::new("max_esw", houses), &inst, |b, inst| {
            b.iter(|| black_box(esw::max_esw(inst)))
        });
    }
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(20);
    for houses in [6usize, 8] {
        let inst = binary_instance(houses, 23);
        group.bench_with_input(
            BenchmarkId::new("min_num_envy_complete", houses),
            &inst,
            |b, inst| {
                b.iter(|| {
                    black_box(
                        oracle_solve(inst, Objective::MinNumEnvy, Constraint::Complete, 10_000_000)
                            .unwrap(),
                    )
                })
            },
        );
    }
    group.finish();
}

criterion_group!(benches, bench_polynomial_solvers, bench_oracle);
criterion_main!(benches);
