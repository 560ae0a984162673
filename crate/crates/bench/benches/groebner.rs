use criterion::{criterion_group, criterion_main, Criterion};
use hadarank_bench::{gb, zoo_ideal};
use hadarank_core::groebner::reduced_basis;
use hadarank_core::hadamard::{variety_power, PowerCache};
use hadarank_core::zoo::grassmannian_ideal;
use std::hint::black_box;

fn bases(c: &mut Criterion) {
    let c_conic = zoo_ideal("conic-c");
    c.bench_function("reduced_basis/conic-c", |b| b.iter(|| reduced_basis(black_box(&c_conic), &gb()).unwrap()));
    c.bench_function("grassmannian_ideal/2-4", |b| b.iter(|| grassmannian_ideal(2, 4, &gb()).unwrap()));
}

fn powers(c: &mut Criterion) {
    let mut group = c.benchmark_group("variety_power");
    group.sample_size(10);
    for name in ["conic-c", "binomial-2-2-2"] {
        let ideal = zoo_ideal(name);
        group.bench_function(format!("{name}/m=2"), |b| {
            b.iter(|| {
                let mut cache = PowerCache::new(ideal.clone());
                variety_power(&mut cache, 2, &gb()).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bases, powers);
criterion_main!(benches);
