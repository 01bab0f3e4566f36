use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mahler_bench::{fredholm, intro, line_cone, points, thue_morse};
use mahler_core::analysis::{eval_value, regular_point_check, EvalOptions, Point};
use mahler_core::certify::certify;
use mahler_core::cones::{bound_bd_check, line_cone_intersection};
use mahler_core::multlat::lvdp_decompose;
use mahler_core::RootOfUnity;

fn multlat(c: &mut Criterion) {
    let intro = points(&[(1, 2), (1, 5), (1, 10)]);
    let radical = points(&[(3, 4), (2, 9), (1, 2)]);
    let wide = points(&[(1, 6), (4, 45), (2, 27), (5, 48), (1, 30)]);
    c.bench_function("lvdp/intro", |b| b.iter(|| lvdp_decompose(black_box(&intro))));
    c.bench_function("lvdp/radical", |b| b.iter(|| lvdp_decompose(black_box(&radical))));
    c.bench_function("lvdp/five_points", |b| b.iter(|| lvdp_decompose(black_box(&wide))));
}

fn cones(c: &mut Criterion) {
    let inst = line_cone();
    c.bench_function("cones/line_intersection", |b| {
        b.iter(|| line_cone_intersection(black_box(&inst)))
    });
    c.bench_function("cones/distance_bound", |b| b.iter(|| bound_bd_check(black_box(&inst))));
}

fn mahler(c: &mut Criterion) {
    let f = fredholm();
    let tm = thue_morse();
    let zeta = RootOfUnity::new(1, 8).unwrap();
    c.bench_function("mahler/expand_fredholm_512", |b| b.iter(|| f.expand(black_box(512))));
    c.bench_function("mahler/twist_thue_morse_order8", |b| {
        b.iter(|| tm.twist(black_box(&zeta)))
    });
    c.bench_function("mahler/iterate_fredholm_3", |b| b.iter(|| f.iterate(black_box(3))));
}

fn analysis(c: &mut Criterion) {
    let f = fredholm();
    let half = Point::parse("1/2").unwrap();
    let opts = EvalOptions::default();
    c.bench_function("analysis/eval_fredholm_40_digits", |b| {
        b.iter(|| eval_value(&f, black_box(&half), &opts))
    });
    c.bench_function("analysis/regularity_fredholm", |b| {
        b.iter(|| regular_point_check(&f, black_box(&half), 64))
    });
}

fn pipeline(c: &mut Criterion) {
    let input = intro();
    let mut group = c.benchmark_group("certify");
    group.sample_size(10);
    group.bench_function("intro_without_evidence", |b| b.iter(|| certify(black_box(&input))));
    group.finish();
}

criterion_group!(benches, multlat, cones, mahler, analysis, pipeline);
criterion_main!(benches);
