use catec_bench::{planted_graph, planted_hypergraph, random_network};
use catec_core::flow::min_cut;
use catec_core::lp::{build_lp, round_deterministic, solve_lp};
use catec_core::multiway::cat_isocut;
use catec_core::two_color::solve_two_color;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn flow(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_cut");
    for n in [200, 1000, 5000] {
        let net = random_network(n, 8 * n, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &net, |b, net| {
            b.iter(|| min_cut(black_box(net)).unwrap())
        });
    }
    group.finish();
}

fn two_color(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact2");
    for n in [300, 1000] {
        let graph = planted_graph(n, 2, 2);
        group.bench_with_input(BenchmarkId::new("graph", n), &graph, |b, h| {
            b.iter(|| solve_two_color(black_box(h)).unwrap())
        });
        let hyper = planted_hypergraph(n / 2, 2, 2);
        group.bench_with_input(BenchmarkId::new("hypergraph", n / 2), &hyper, |b, h| {
            b.iter(|| solve_two_color(black_box(h)).unwrap())
        });
    }
    group.finish();
}

fn lp(c: &mut Criterion) {
    let mut group = c.benchmark_group("lp_round");
    group.sample_size(10);
    for n in [100, 300] {
        let h = planted_graph(n, 10, 3);
        group.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| {
            b.iter(|| round_deterministic(&solve_lp(&build_lp(black_box(h)).unwrap()).unwrap()))
        });
    }
    group.finish();
}

fn isocut(c: &mut Criterion) {
    let mut group = c.benchmark_group("isocut");
    for n in [300, 1000] {
        let h = planted_graph(n, 10, 4);
        group.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| {
            b.iter(|| cat_isocut(black_box(h)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, flow, two_color, lp, isocut);
criterion_main!(benches);
