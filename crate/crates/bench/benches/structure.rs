use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use orbifukaya::ainf::category::AInf;
use orbifukaya::ainf::check::{check_relations, CheckOptions};
use orbifukaya::ainf::hochschild::Hochschild;
use orbifukaya::fukaya::{build_category, building_block, BlockType};
use orbifukaya::orbit::orbifold_pipeline;
use orbifukaya::surface::builders;
use orbifukaya::twisted::minimal_model;

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_category");
    for n in [3, 6, 9] {
        let star = builders::orbifold_disk_star(n).unwrap();
        g.bench_with_input(BenchmarkId::new("star", n), &star, |b, s| b.iter(|| build_category(s).unwrap()));
    }
    g.finish();
}

fn relations(c: &mut Criterion) {
    let mut g = c.benchmark_group("check_relations");
    for n in [2, 4, 6] {
        let degrees: Vec<i64> = (0..n).map(|i| i64::from(i + 1 < n)).collect();
        let cat = building_block(BlockType::AtildeOrb(n as usize - 1), &degrees).unwrap();
        let opts = CheckOptions::new(2 * n as usize, 2 * n as usize + 2);
        g.bench_with_input(BenchmarkId::new("orbifold block", n), &cat, |b, cat| b.iter(|| check_relations(cat, opts)));
    }
    g.finish();
}

fn transfer(c: &mut Criterion) {
    let mut g = c.benchmark_group("minimal_model");
    let cat = build_category(&builders::example_dissection(4).unwrap()).unwrap();
    let all: Vec<usize> = (0..cat.objects().len()).collect();
    for arity in [3, 5] {
        g.bench_with_input(BenchmarkId::new("worked example 4", arity), &arity, |b, &k| b.iter(|| minimal_model(&cat, &all, k)));
    }
    g.finish();
}

fn hochschild(c: &mut Criterion) {
    let mut g = c.benchmark_group("hochschild");
    for n in [3, 5] {
        let cat = build_category(&builders::cylinder_one_stop(n).unwrap()).unwrap();
        g.bench_with_input(BenchmarkId::new("cylinder HH2", n), &cat, |b, cat| b.iter(|| Hochschild::new(cat).cohomology(2, 4)));
    }
    g.finish();
}

fn pipeline(c: &mut Criterion) {
    let mut g = c.benchmark_group("pipeline");
    g.sample_size(10);
    for n in [2, 3, 4] {
        g.bench_with_input(BenchmarkId::new("double cover", n), &n, |b, &n| b.iter(|| orbifold_pipeline(n, n, (n + 1).max(4)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, build, relations, transfer, hochschild, pipeline);
criterion_main!(benches);
