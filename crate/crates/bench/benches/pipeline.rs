use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hecke_core::forms::{j_series, FormBuilder};
use hecke_core::interp::{extract_structure, interpolate_family, sample_budget, DEFAULT_GUARD};
use hecke_core::roots::find_roots;
use hecke_core::{FormKind, FormTable};

const N: i64 = 8;

fn series(c: &mut Criterion) {
    c.bench_function("j_series m=7 N=20", |b| b.iter(|| j_series(black_box(7), 20).unwrap()));
    c.bench_function("all forms m=11 N=20", |b| {
        b.iter(|| FormBuilder::new(black_box(11), 20).unwrap().all().unwrap())
    });
}

fn interpolation(c: &mut Criterion) {
    let table = FormTable::build(3..=2 + sample_budget(N, DEFAULT_GUARD) as u32, N as usize + 3).unwrap();
    c.bench_function("interpolate A_8", |b| {
        b.iter(|| interpolate_family(&table, FormKind::J, black_box(N), DEFAULT_GUARD).unwrap())
    });
    let p = interpolate_family(&table, FormKind::J, N, DEFAULT_GUARD).unwrap();
    c.bench_function("extract structure A_8", |b| {
        b.iter(|| extract_structure(FormKind::J, N, black_box(&p)).unwrap())
    });
    let core = extract_structure(FormKind::J, N, &p).unwrap().core;
    c.bench_function("roots of a_8", |b| b.iter(|| find_roots(black_box(&core), 1e-8).unwrap()));
    c.bench_function("squarefree A_8", |b| b.iter(|| black_box(&p).squarefree_decomposition()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = series, interpolation
}
criterion_main!(benches);
