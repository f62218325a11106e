use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use flagcurve_core::algebra::{Elementary, TruncatedSeries};
use flagcurve_core::classify::{classify_curve, reproduce_table, row_normal_form, TableExpectations};
use flagcurve_core::criterion::build_criterion_system;
use flagcurve_core::lie::{FlagContext, LieElement};
use flagcurve_core::r;
use flagcurve_core::solver::{buchberger, Budget, MonomialOrder, DEFAULT_BUDGET};

fn groebner(c: &mut Criterion) {
    let ctx = FlagContext::borel(3);
    let x = row_normal_form(7, Some(&r!(2))).unwrap();
    let sys = build_criterion_system(&ctx, &x).unwrap();
    c.bench_function("grevlex basis, row 7 (x = 2)", |b| {
        b.iter(|| {
            buchberger(
                black_box(sys.equations()),
                sys.unknowns(),
                MonomialOrder::Grevlex,
                &mut Budget::new(DEFAULT_BUDGET),
            )
        })
    });
}

fn classification(c: &mut Criterion) {
    let ctx = FlagContext::borel(3);
    let x = LieElement::unit(ctx.clone(), 1, 0);
    c.bench_function("classify E21", |b| b.iter(|| classify_curve(&ctx, black_box(&x), DEFAULT_BUDGET)));
    let mut g = c.benchmark_group("table");
    g.sample_size(10);
    g.bench_function("reproduce", |b| {
        b.iter(|| reproduce_table(&TableExpectations::default(), DEFAULT_BUDGET))
    });
    g.finish();
}

fn series(c: &mut Criterion) {
    c.bench_function("tan series, order 24", |b| {
        b.iter(|| TruncatedSeries::elementary(Elementary::Tan, black_box(&r!(1, 2)), "x", 24))
    });
}

criterion_group!(benches, groebner, classification, series);
criterion_main!(benches);
