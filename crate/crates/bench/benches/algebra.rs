use std::hint::black_box;

use codealg::codes::automorphism_group;
use codealg::fixtures::{even3, hamming8, hamming8_smaps};
use codealg::form::frobenius_form;
use codealg::spectral::{eigen_decompose, fusion_law};
use codealg::structure::is_simple;
use codealg::{LinearCode, Scalar};
use criterion::{criterion_group, criterion_main, Criterion};

fn build(c: &mut Criterion) {
    c.bench_function("build hamming8", |b| b.iter(|| hamming8().unwrap()));
}

fn spectra(c: &mut Criterion) {
    let h8 = hamming8().unwrap();
    let x = hamming8_smaps(&h8).unwrap().swap_remove(0).1;
    let hints = [Scalar::one(), Scalar::zero(), Scalar::frac(1, 4)];
    c.bench_function("eigen_decompose t1 on hamming8", |b| b.iter(|| eigen_decompose(&h8, black_box(&h8.t(0)), &[])));
    c.bench_function("eigen_decompose smap on hamming8", |b| b.iter(|| eigen_decompose(&h8, black_box(&x), &hints)));
    let dec = eigen_decompose(&h8, &x, &hints);
    c.bench_function("fusion_law smap on hamming8", |b| b.iter(|| fusion_law(&h8, black_box(&dec)).unwrap()));
}

fn structure(c: &mut Criterion) {
    let e3 = even3().unwrap();
    let h8 = hamming8().unwrap();
    c.bench_function("is_simple even3", |b| b.iter(|| is_simple(black_box(&e3)).unwrap()));
    c.bench_function("frobenius_form hamming8", |b| b.iter(|| frobenius_form(black_box(&h8), None).unwrap()));
}

fn automorphisms(c: &mut Criterion) {
    let h8 = hamming8().unwrap().code().clone();
    let simplex = LinearCode::simplex(3).unwrap();
    c.bench_function("automorphism_group hamming8", |b| b.iter(|| automorphism_group(black_box(&h8)).unwrap()));
    c.bench_function("automorphism_group simplex(3)", |b| b.iter(|| automorphism_group(black_box(&simplex)).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = build, spectra, structure, automorphisms
}
criterion_main!(benches);
