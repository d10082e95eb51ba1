use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fitdiv::divisor::{presentation_mu, presentation_sylvester};
use fitdiv::fitting::fitting_ideal;
use fitdiv::oracle::ideal_degree_span;
use fitdiv::pkd::{verify_pkd_rank, PkdContext};
use fitdiv::universal::{verify_int_basis, UniversalSetup};
use fitdiv::CoeffRing;
use fitdiv_bench::generic_pair;

fn sylvester(c: &mut Criterion) {
    let (d0, d1) = generic_pair(3, 3, 6);
    let p = presentation_sylvester(&d0, &d1).unwrap();
    c.bench_function("sylvester determinant (3,3)", |b| b.iter(|| black_box(p.matrix()).det().unwrap()));
    c.bench_function("sylvester minors I_2 (3,3)", |b| b.iter(|| fitting_ideal(black_box(&p), 2)));
}

fn hnf_span(c: &mut Criterion) {
    let (d0, d1) = generic_pair(2, 3, 6);
    let ideal = fitting_ideal(&presentation_mu(&d0, &d1).unwrap(), 1);
    c.bench_function("ideal span degree 6 (2,3)", |b| b.iter(|| ideal_degree_span(black_box(&ideal), None, 6).unwrap()));
}

fn int_basis(c: &mut Criterion) {
    let setup = UniversalSetup::new(2, 2, 1, 6).unwrap();
    c.bench_function("verify_int_basis (2,2,1) over Z", |b| {
        b.iter(|| verify_int_basis(black_box(&setup), 6, &[CoeffRing::Integers]).unwrap())
    });
}

fn pkd_rank(c: &mut Criterion) {
    let (d, _) = generic_pair(4, 1, 5);
    let ctx = PkdContext::new(&d, 2).unwrap();
    c.bench_function("P_2 rank d=4", |b| b.iter(|| verify_pkd_rank(black_box(&ctx), 5).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = sylvester, hnf_span, int_basis, pkd_rank
}
criterion_main!(benches);
