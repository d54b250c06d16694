use std::hint::black_box;
use std::sync::Arc;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};

use wbt_core::criteria::validate;
use wbt_core::export::{from_fold, to_fold, to_svg, SvgStyle};
use wbt_core::families::{generate, FamilyId, FamilyParams};
use wbt_core::molecule::{build_universal_molecule, ConvexPolygon};
use wbt_core::search::{enumerate, SearchParams};

fn molecule(c: &mut Criterion) {
    let t = ConvexPolygon::triangle_from_sides([4.0, 5.0, 6.0]).unwrap();
    c.bench_function("universal_molecule/triangle", |b| {
        b.iter(|| build_universal_molecule(black_box(&t)).unwrap())
    });
}

fn patterns(c: &mut Criterion) {
    let t = ConvexPolygon::triangle_from_sides([4.0, 5.0, 6.0]).unwrap();
    let p = FamilyParams::triangle(&t).with_extent(6, 6);
    c.bench_function("generate/T31 6x6", |b| b.iter(|| generate(FamilyId::T31, black_box(&p)).unwrap()));

    let cp = generate(FamilyId::T31, &p).unwrap();
    c.bench_function("validate/T31 6x6", |b| b.iter(|| validate(black_box(&cp))));

    let bytes = to_fold(&cp);
    c.bench_function("to_fold/T31 6x6", |b| b.iter(|| to_fold(black_box(&cp))));
    c.bench_function("from_fold/T31 6x6", |b| b.iter(|| from_fold(black_box(&bytes)).unwrap()));
    let style = SvgStyle::default();
    c.bench_function("to_svg/T31 6x6", |b| b.iter(|| to_svg(black_box(&cp), &style)));
}

fn search(c: &mut Criterion) {
    let t = ConvexPolygon::equilateral(2.0).unwrap();
    let mut sp = SearchParams::new(Arc::new(build_universal_molecule(&t).unwrap()));
    sp.activations_allowed = vec![3];
    sp.max_copies_per_cell = 2;
    sp.time_budget = Duration::from_secs(60);
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("equilateral/3 hinges/2 copies", |b| b.iter(|| enumerate(black_box(&sp)).unwrap()));
    g.finish();
}

criterion_group!(benches, molecule, patterns, search);
criterion_main!(benches);
