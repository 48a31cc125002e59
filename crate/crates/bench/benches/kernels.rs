use std::hint::black_box;
use std::ops::ControlFlow;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use setfam_core::claims::count_extremal_intersecting;
use setfam_core::lex::compatible_profile;
use setfam_core::search::{sample_cross_intersecting, sample_intersecting, CrossSpec};
use setfam_core::{
    enumerate_ksets, for_each_maximal_intersecting, shift_ad_extremis, shift_to_initial, PropertyPredicate,
};

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_ksets");
    for (n, k) in [(16, 4), (20, 5)] {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{n}-{k}")), &(n, k), |b, &(n, k)| {
            b.iter(|| enumerate_ksets(black_box(n), black_box(k)).unwrap().len())
        });
    }
    g.finish();
}

fn maximal_stream(c: &mut Criterion) {
    let mut g = c.benchmark_group("maximal_intersecting");
    g.sample_size(10);
    for (n, k) in [(7, 3), (40, 2)] {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{n}-{k}")), &(n, k), |b, &(n, k)| {
            b.iter(|| {
                let mut count = 0usize;
                for_each_maximal_intersecting(n, k, false, |_| {
                    count += 1;
                    ControlFlow::Continue(())
                })
                .unwrap();
                count
            })
        });
    }
    g.bench_function("extremal-count-6-3", |b| b.iter(|| count_extremal_intersecting(6, 3).unwrap()));
    g.finish();
}

fn shifting(c: &mut Criterion) {
    let f = sample_intersecting(14, 5, 200, 3).unwrap();
    c.bench_function("shift_to_initial/intersecting-14-5", |b| b.iter(|| shift_to_initial(black_box(&f))));

    let (f, g) = sample_cross_intersecting(CrossSpec::new(10, 3, 3, 1), 7).unwrap();
    let pair = [f, g];
    c.bench_function("shift_ad_extremis/cross-10-3-3", |b| {
        b.iter(|| shift_ad_extremis(black_box(&pair), &PropertyPredicate::True).unwrap().shifts_applied)
    });
}

fn lex_profile(c: &mut Criterion) {
    c.bench_function("compatible_profile/16-4-6", |b| b.iter(|| compatible_profile(black_box(16), 4, 6).unwrap()));
}

fn sampling(c: &mut Criterion) {
    let mut g = c.benchmark_group("sample_intersecting");
    for n in [20, 144] {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{n}-3")), &n, |b, &n| {
            let mut seed = 0;
            b.iter(|| {
                seed += 1;
                sample_intersecting(n, 3, 36, seed).unwrap().len()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, enumeration, maximal_stream, shifting, lex_profile, sampling);
criterion_main!(benches);
