use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mahler_bench::{fibonacci, fredholm, point, thue_morse};
use mahler_core::eval::{choose_depth, eval_function, EvalOptions};
use mahler_core::exact::rational::qi;
use mahler_core::multiseq::{iteration_vectors, theta};
use mahler_core::points::{admissible_pair, AdmissibilityBounds};
use mahler_core::relations::find_integer_relations;
use mahler_core::systems::{gauge_construct, series_solve};
use mahler_core::transform::class_m_check;
use mahler_core::{Interval, Transform};
use num_bigint::BigInt;

fn exact(c: &mut Criterion) {
    let fib = Transform::from_u64(&[vec![1, 1], vec![1, 0]]);
    c.bench_function("class_m_check fibonacci", |b| b.iter(|| class_m_check(black_box(&fib))));
    let diag = Transform::from_u64(&[vec![2, 0], vec![0, 2]]);
    let alpha = point(&["1/2", "1/4"]);
    c.bench_function("admissible_pair dependent diagonal", |b| {
        b.iter(|| admissible_pair(&diag, black_box(&alpha), AdmissibilityBounds::default()).unwrap())
    });
    let f = fibonacci();
    c.bench_function("series_solve fibonacci order 24", |b| b.iter(|| series_solve(&f, &[qi(1), qi(0)], 24).unwrap()));
    let tm = thue_morse();
    c.bench_function("gauge_construct thue-morse order 32", |b| b.iter(|| gauge_construct(&tm, 32).unwrap()));
}

fn numeric(c: &mut Criterion) {
    let s = fredholm();
    let f0 = [qi(1), qi(0)];
    let half = point(&["1/2"]);
    for prec in [128u32, 512] {
        let k = choose_depth(&s, &f0, &half, 32, prec, 64).unwrap();
        c.bench_function(&format!("eval fredholm at 1/2, {prec} bits"), |b| {
            b.iter(|| eval_function(&s, &f0, black_box(&half), &EvalOptions::new(k, 32, prec)).unwrap())
        });
    }
    let quarter = point(&["1/4"]);
    let values = |p: u32| -> mahler_core::Result<Vec<Interval>> {
        let a = eval_function(&s, &f0, &half, &EvalOptions::new(choose_depth(&s, &f0, &half, 32, p, 64)?, 32, p))?;
        let b = eval_function(&s, &f0, &quarter, &EvalOptions::new(choose_depth(&s, &f0, &quarter, 32, p, 64)?, 32, p))?;
        Ok(vec![a.enclosures[1].clone(), b.enclosures[1].clone(), Interval::one(p)])
    };
    c.bench_function("integer relation among fredholm values", |b| {
        b.iter(|| find_integer_relations(values, &BigInt::from(1000), 232).unwrap())
    });
    let th = theta(&[Transform::scalar(2), Transform::scalar(3)], 128).unwrap();
    c.bench_function("iteration vectors (2, 3), l <= 1000", |b| b.iter(|| iteration_vectors(&th, 1, 1000, &[]).unwrap()));
}

criterion_group!(benches, exact, numeric);
criterion_main!(benches);
