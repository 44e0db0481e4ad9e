use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use matchkit_core::count::{count_pm_cochain, count_pm_cograph, count_pm_td, make_nice, minfill_td};
use matchkit_core::gadgets::{ladder, mobius_ladder, slow_gk, spiders_web};
use matchkit_core::recognition::{is_odd_chordal, is_switchable, recognize_cochain};
use matchkit_core::{build_transition_graph, find_perfect_matching, run_chain, Budget, ChainConfig, Graph};

const B: Budget = Budget::DEFAULT;

fn counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("count");
    for k in [5, 10, 20] {
        let g = slow_gk(k).unwrap();
        group.bench_with_input(BenchmarkId::new("cograph_gk", k), &g, |b, g| b.iter(|| count_pm_cograph(black_box(g))));
    }
    for len in [10, 40] {
        let g = ladder(len);
        let nice = make_nice(&minfill_td(&g)).unwrap();
        group.bench_with_input(BenchmarkId::new("treewidth_ladder", len), &g, |b, g| {
            b.iter(|| count_pm_td(black_box(g), &nice))
        });
    }
    let cochain = Graph::from_fn(40, |u, v| (u < 20) == (v < 20) || (u < 20 && v - 20 <= u));
    let model = recognize_cochain(&cochain).unwrap();
    group.bench_function("cochain_40", |b| b.iter(|| count_pm_cochain(black_box(&model))));
    group.finish();
}

fn chain(c: &mut Criterion) {
    let g = mobius_ladder(16).unwrap();
    let m0 = find_perfect_matching(&g, B).unwrap().unwrap();
    let cfg = ChainConfig { steps: 10_000, seed: 1, record_trajectory: false };
    c.bench_function("chain/run_mobius16_10k", |b| b.iter(|| run_chain(&g, black_box(&m0), &cfg)));
}

fn transition(c: &mut Criterion) {
    let web = spiders_web(2).unwrap();
    c.bench_function("tgraph/build_web2", |b| b.iter(|| build_transition_graph(black_box(&web), B)));
    let gk = slow_gk(4).unwrap();
    c.bench_function("tgraph/build_gk4", |b| b.iter(|| build_transition_graph(black_box(&gk), B)));
}

fn recognition(c: &mut Criterion) {
    let ml8 = mobius_ladder(8).unwrap();
    c.bench_function("recognize/switchable_ml8", |b| b.iter(|| is_switchable(black_box(&ml8), B)));
    let g = ladder(6);
    c.bench_function("recognize/och_ladder6", |b| b.iter(|| is_odd_chordal(black_box(&g), B)));
}

criterion_group!(benches, counting, chain, transition, recognition);
criterion_main!(benches);
