use std::hint::black_box;

use chevbounds::bounds::{compare_thresholds, scan_exponent_lemma};
use chevbounds::{
    graded_power, invariant_page, nilradical_dual_weights, weyl_character, Caps, CartanType, PowerKind, RootSystem,
    Weight, WeightMultiset,
};
use criterion::{criterion_group, criterion_main, Criterion};

fn rs(name: &str) -> RootSystem {
    RootSystem::new(name.parse::<CartanType>().unwrap()).unwrap()
}

fn characters(c: &mut Criterion) {
    let caps = Caps::default();
    let mut group = c.benchmark_group("weyl_character");
    for (name, lambda) in [("A4", vec![1, 1, 0, 1]), ("F4", vec![0, 0, 0, 1]), ("E8", vec![0, 0, 0, 0, 0, 0, 0, 1])] {
        let r = rs(name);
        let w = Weight::new(lambda);
        group.bench_function(name, |b| b.iter(|| weyl_character(&r, black_box(&w), &caps).unwrap()));
    }
    group.finish();
}

fn powers(c: &mut Criterion) {
    let caps = Caps::default();
    let r = rs("B3");
    let u = nilradical_dual_weights(&r);
    let mut group = c.benchmark_group("graded_power");
    for (label, kind, n) in [("sym4", PowerKind::Symmetric, 4), ("ext5", PowerKind::Exterior, 5)] {
        group.bench_function(label, |b| b.iter(|| graded_power(kind, black_box(&u), n, &caps).unwrap()));
    }
    group.finish();
}

fn pages(c: &mut Criterion) {
    let caps = Caps::default();
    let r = rs("B2");
    let lambda = Weight::new(vec![1, 2]);
    let mu = weyl_character(&r, &Weight::fundamental(2, 0), &caps).unwrap();
    c.bench_function("invariant_page/B2_p3_s2_f1_m4", |b| {
        b.iter(|| invariant_page(&r, 3, 2, 1, black_box(&lambda), &mu, 4, &caps).unwrap())
    });
}

fn thresholds(c: &mut Criterion) {
    let caps = Caps::default();
    let r = rs("E7");
    let module: WeightMultiset = weyl_character(&r, &Weight::fundamental(7, 6), &caps).unwrap();
    c.bench_function("compare_thresholds/E7_omega7", |b| {
        b.iter(|| compare_thresholds(&r, 5, 4, black_box(&module)).unwrap())
    });
    c.bench_function("scan_exponent_lemma/max12", |b| {
        b.iter(|| scan_exponent_lemma(black_box(&[2, 3, 5, 7]), 12).unwrap())
    });
}

criterion_group!(benches, characters, powers, pages, thresholds);
criterion_main!(benches);
