//! Benchmarks for the hot paths: wedge products, exterior derivatives,
//! the direct SKT checks on worked examples, cohomology ranks, and the
//! fixture manifest sweep.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use coframe_core::model::fixtures;

fn bench_wedge(c: &mut Criterion) {
    let model = fixtures::load("solvable5").unwrap();
    let frame = &model.frame;
    let omega = &model.contact("S").unwrap().omega;
    let domega = frame.d(omega);
    c.bench_function("wedge_3form_2form_dim5", |b| {
        b.iter(|| black_box(domega.wedge(black_box(omega))))
    });
}

fn bench_exterior_d(c: &mut Criterion) {
    let model = fixtures::load("su2_r4_triple").unwrap();
    let frame = &model.frame;
    let triple = model.triple("T").unwrap();
    let omega1 = &triple.structures[0].omega;
    c.bench_function("exterior_d_dim7", |b| {
        b.iter(|| black_box(frame.d(black_box(omega1))))
    });
}

fn bench_direct_skt(c: &mut Criterion) {
    let model = fixtures::load("heisenberg5").unwrap();
    let frame = &model.frame;
    let acs = model.contact("S").unwrap();
    let omega = model.form("Omega").unwrap();
    c.bench_function("bundle_skt_check_heisenberg", |b| {
        b.iter(|| {
            black_box(
                coframe_core::constructions::check_skt_bundle(frame, acs, omega).unwrap(),
            )
        })
    });
}

fn bench_symbolic_cone(c: &mut Criterion) {
    let model = fixtures::load("cone_family_abc").unwrap();
    let frame = &model.frame;
    let acs = model.contact("S").unwrap();
    c.bench_function("cone_skt_check_three_parameters", |b| {
        b.iter(|| black_box(coframe_core::constructions::check_skt_cone(frame, acs)))
    });
}

fn bench_cohomology(c: &mut Criterion) {
    let model = fixtures::load("su2_r4_triple").unwrap();
    c.bench_function("cohomology_h2_dim7", |b| {
        b.iter(|| black_box(coframe_core::cohomology::cohomology(&model.frame, 2).unwrap()))
    });
}

fn bench_evolution(c: &mut Criterion) {
    let model = fixtures::load("evolved_su2_family").unwrap();
    let family = model.family("FAM").unwrap();
    c.bench_function("evolution_check_rational_family", |b| {
        b.iter(|| {
            black_box(coframe_core::constructions::check_evolution(
                &model.frame,
                family,
                &|_| None,
            ))
        })
    });
}

criterion_group!(
    benches,
    bench_wedge,
    bench_exterior_d,
    bench_direct_skt,
    bench_symbolic_cone,
    bench_cohomology,
    bench_evolution
);
criterion_main!(benches);
