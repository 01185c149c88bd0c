//! Benchmarks for the two solver hot paths: the path-and-cycle pair solver
//! on friend games and the grand-coalition subset enumeration on additive
//! games, plus the Steiner search that backs core-stability queries.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hgctl_bench::{additive_instance, friend_instance};
use hgctl_core::{
    agent, control_add::solve_add, control_fri::solve_fri, Action, ControlQuery, Goal,
    SolverConfig, Stability,
};

fn pair_solver(c: &mut Criterion) {
    let cfg = SolverConfig::default();
    let mut group = c.benchmark_group("fri_pair_ir_add");
    for &n in &[100usize, 250, 500] {
        let fg = friend_instance(n, 0.2, 42);
        let (x, y) = {
            let orig = fg.original_agents();
            (orig[0], orig[1])
        };
        let query = ControlQuery {
            stability: Stability::Ir,
            goal: Goal::Together(x, y),
            action: Action::AddAgents,
            budget: 2,
        };
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| solve_fri(&fg, &query, &cfg).unwrap())
        });
    }
    group.finish();
}

fn grand_coalition_solver(c: &mut Criterion) {
    let cfg = SolverConfig::default();
    let mut group = c.benchmark_group("add_gr_addag_k2");
    group.sample_size(10);
    for &n in &[200usize, 500, 1000] {
        let g = additive_instance(n, n / 5, 0.05, 7);
        let query = ControlQuery {
            stability: Stability::Ir,
            goal: Goal::GrandCoalition,
            action: Action::AddAgents,
            budget: 2,
        };
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| solve_add(&g, &query, &cfg).unwrap())
        });
    }
    group.finish();
}

fn steiner_search(c: &mut Criterion) {
    use hgctl_core::graphs::{split_additional, two_scss};
    let mut group = c.benchmark_group("two_scss");
    for &n in &[50usize, 100, 200] {
        let fg = friend_instance(n, 0.1, 11);
        let (sg, map) = split_additional(&fg);
        let (x, y) = (map.in_vertex[agent(0).idx()], map.in_vertex[agent(1).idx()]);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| two_scss(&sg, x, y))
        });
    }
    group.finish();
}

criterion_group!(benches, pair_solver, grand_coalition_solver, steiner_search);
criterion_main!(benches);
