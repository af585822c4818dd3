use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qls_bench::{dense_model, planted, planted_with_spins};
use qls_core::solver::{solve_anneal, solve_exact, AnnealSchedule};
use qls_core::variational::{prepare_state, solve_variational};
use qls_core::{
    build_subproblem, init_gains, modularity, populate_subset, run_qls, AnsatzParams, QlsConfig, SolverKind,
};

fn modularity_eval(c: &mut Criterion) {
    let mut group = c.benchmark_group("modularity");
    for n in [500, 2000] {
        let (g, s) = planted_with_spins(n);
        group.bench_with_input(BenchmarkId::new("scratch", n), &n, |b, _| {
            b.iter(|| modularity(black_box(&g), black_box(&s)))
        });
        group.bench_with_input(BenchmarkId::new("init_gains", n), &n, |b, _| {
            b.iter(|| init_gains(black_box(&g), black_box(&s)))
        });
    }
    group.finish();
}

fn incremental_move(c: &mut Criterion) {
    let (g, s) = planted_with_spins(2000);
    let table = init_gains(&g, &s).unwrap();
    let subset = populate_subset(&table, 16);
    let flipped: Vec<i8> = subset.iter().map(|&v| -s.get(v)).collect();
    c.bench_function("apply_move/n2000_k16", |b| {
        b.iter_batched(
            || (table.clone(), s.clone()),
            |(mut t, mut spins)| t.apply_move(&g, &mut spins, &subset, &flipped).unwrap(),
            criterion::BatchSize::SmallInput,
        )
    });
    c.bench_function("build_subproblem/n2000_k16", |b| {
        b.iter(|| build_subproblem(&g, &s, black_box(&subset)).unwrap())
    });
}

fn solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("solvers");
    group.sample_size(10);
    let model = dense_model(16, 1);
    group.bench_function("exact/16", |b| b.iter(|| solve_exact(black_box(&model)).unwrap()));
    let wide = dense_model(32, 2);
    group.bench_function("exact/32", |b| b.iter(|| solve_exact(black_box(&wide)).unwrap()));
    let schedule = AnnealSchedule::new(100, 2.0, 0.01, 500).unwrap();
    group.bench_function("anneal/16x500", |b| {
        b.iter(|| solve_anneal(&model, &schedule, 0).unwrap())
    });
    let small = dense_model(8, 3);
    group.bench_function("variational/8", |b| {
        b.iter(|| solve_variational(&small, 1, 100, 1000, 0).unwrap())
    });
    let params = AnsatzParams::new(vec![0.3; AnsatzParams::len_for(16, 1)], 1);
    group.bench_function("prepare_state/16", |b| {
        b.iter(|| prepare_state(16, black_box(&params)).unwrap())
    });
    group.finish();
}

fn local_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_qls");
    group.sample_size(10);
    let g = planted(500);
    for k in [4, 16, 32] {
        let cfg = QlsConfig::new(SolverKind::Exact, 1).with_subset_size(k);
        group.bench_with_input(BenchmarkId::new("exact_n500", k), &k, |b, _| {
            b.iter(|| run_qls(&g, &cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, modularity_eval, incremental_move, solvers, local_search);
criterion_main!(benches);
