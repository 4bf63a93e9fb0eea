use aal_core::algebra::{all_congruences, build, homomorphisms, leibniz, leibniz_brute_force, Filter};
use aal_core::glivenko::{quotient_isomorphism, GlivenkoContext};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn algebra(c: &mut Criterion) {
    let b8 = build::boolean(3);
    let h5 = build::chain(5);
    let top = Filter::new(h5.size(), vec![3, 4]).unwrap();
    c.bench_function("leibniz on a 5-chain", |b| b.iter(|| leibniz(black_box(&h5), &top).unwrap()));
    c.bench_function("leibniz brute force on a 5-chain", |b| {
        b.iter(|| leibniz_brute_force(black_box(&h5), &top).unwrap())
    });
    c.bench_function("congruences of B8", |b| b.iter(|| all_congruences(black_box(&b8))));
    c.bench_function("homomorphisms B8 to B8", |b| b.iter(|| homomorphisms(black_box(&b8), &b8).unwrap()));
    c.bench_function("regular-element isomorphism on a 5-chain", |b| {
        b.iter(|| quotient_isomorphism(black_box(&h5)).unwrap())
    });
    let ctx = GlivenkoContext::classical();
    c.bench_function("classical left adjoint on a 5-chain", |b| {
        b.iter(|| ctx.left_adjoint(black_box(&h5)).unwrap())
    });
}

criterion_group!(benches, algebra);
criterion_main!(benches);
