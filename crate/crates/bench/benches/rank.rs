use criterion::{criterion_group, criterion_main, Criterion};
use hadarank_bench::{binomial_point, point, rank_options, zoo_ideal};
use hadarank_core::rankengine::{border_rank, hadamard_rank};
use std::hint::black_box;

fn ranks(c: &mut Criterion) {
    let mut group = c.benchmark_group("hadamard_rank");
    group.sample_size(10);
    let conic = zoo_ideal("conic-c");
    for p in ["0:2:3", "0:1:-1"] {
        let p = point(p);
        group.bench_function(format!("conic-c/{p}"), |b| b.iter(|| hadamard_rank(black_box(&p), &conic, &rank_options(4)).unwrap()));
    }
    let binomial = zoo_ideal("binomial-2-2-2");
    for m in [2, 3] {
        let p = binomial_point(m);
        group.bench_function(format!("binomial/m={m}"), |b| b.iter(|| hadamard_rank(&p, &binomial, &rank_options(4)).unwrap()));
    }
    group.finish();
}

fn border(c: &mut Criterion) {
    let conic = zoo_ideal("conic-c");
    let p = point("0:1:-1");
    c.bench_function("border_rank/conic-c/0:1:-1", |b| b.iter(|| border_rank(&p, &conic, &rank_options(4)).unwrap()));
}

criterion_group!(benches, ranks, border);
criterion_main!(benches);
