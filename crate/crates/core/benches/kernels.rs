//! Hot kernels under the default rayon pool and under a one-thread pool.
//! Built without the `parallel` feature only the sequential path exists.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use skewalg::finring::{all_ideals, build, is_simple};
use skewalg::harness::{run, scenario, CheckGroup, Instance, ScenarioParams};
use skewalg::invsgrp::FinGroupoid;
use skewalg::paction::GroupoidPartialAction;
use skewalg::skew::GroupoidSkew;
use skewalg::steinberg::SteinbergCase;

type Kernel = (&'static str, Box<dyn Fn() + Sync>);

fn kernels() -> Vec<Kernel> {
    let f2 = build::prime_field(2).unwrap();
    let m3 = build::matrix_ring(&f2, 3, 4096).unwrap();
    let f2xf2 = Arc::new(build::product(&f2, &f2, 4096).unwrap());
    let pair2 = Arc::new(FinGroupoid::pair(2).unwrap());
    let f8 = Arc::new(GroupoidPartialAction::galois(2, 3, 4096).unwrap());
    let file = scenario("group-as-groupoid", &ScenarioParams::default()).unwrap();
    let inst = Instance::build(file, 4096).unwrap();
    let f16 = build::power(&f2, 4, 4096).unwrap();
    vec![
        ("is_simple M3(F2)", Box::new(move || assert!(black_box(is_simple(&m3))))),
        ("all_ideals F2^4", Box::new(move || assert_eq!(all_ideals(&f16, 64).unwrap().len(), 16))),
        (
            "steinberg F2xF2 pair2",
            Box::new(move || {
                black_box(SteinbergCase::new(f2xf2.clone(), pair2.clone(), 4096).unwrap());
            }),
        ),
        (
            "galois skew F8",
            Box::new(move || {
                black_box(GroupoidSkew::new(f8.clone(), 4096).unwrap());
            }),
        ),
        ("report group-as-groupoid", Box::new(move || assert!(!run(&inst, &CheckGroup::ALL).has_failure()))),
    ]
}

fn bench(c: &mut Criterion) {
    #[cfg(feature = "parallel")]
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    for (name, f) in kernels() {
        let mut g = c.benchmark_group(name);
        g.sample_size(10);
        #[cfg(feature = "parallel")]
        g.bench_function("parallel", |b| b.iter(&f));
        #[cfg(feature = "parallel")]
        g.bench_function("sequential", |b| b.iter(|| one.install(&f)));
        #[cfg(not(feature = "parallel"))]
        g.bench_function("sequential", |b| b.iter(&f));
        g.finish();
    }
}

criterion_group!(benches, bench);
criterion_main!(benches);
