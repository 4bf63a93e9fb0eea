use aal_bench::formula_pool;
use aal_core::provers::{cpc_decide, kripke_countermodel, IpcProver};
use aal_core::Formula;
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn provers(c: &mut Criterion) {
    let pool = formula_pool(3, 3, 200);
    c.bench_function("cpc truth tables, 200 theorems", |b| {
        b.iter(|| pool.iter().filter(|f| cpc_decide(&[], f).unwrap()).count())
    });
    c.bench_function("g4ip, 200 theorems, fresh cache", |b| {
        b.iter(|| {
            let mut p = IpcProver::new();
            pool.iter().filter(|f| p.decide(&[], f).unwrap()).count()
        })
    });
    let peirce = Formula::peirce();
    c.bench_function("kripke countermodel to Peirce", |b| {
        b.iter(|| kripke_countermodel(&[], black_box(&peirce), 3).unwrap())
    });
    let dn: Vec<Formula> = pool.iter().map(|f| Formula::neg(Formula::neg(f.clone()))).collect();
    c.bench_function("g4ip, 200 double negations", |b| {
        b.iter(|| {
            let mut p = IpcProver::new();
            dn.iter().filter(|f| p.decide(&[], f).unwrap()).count()
        })
    });
}

criterion_group!(benches, provers);
criterion_main!(benches);
