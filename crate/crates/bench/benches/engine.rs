use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use pseudoalg::pmodules::{singular_vectors, verify_action};
use pseudoalg::pseudo::{build_W, verify_jacobi};
use pseudoalg::{LieAlgebra, Uea};
use pseudoalg_bench::{current_w_heisenberg, dense_element, twisted_abelian};

fn pbw(c: &mut Criterion) {
    let mut group = c.benchmark_group("pbw");
    for (name, l) in [("heisenberg", LieAlgebra::heisenberg()), ("sl2", LieAlgebra::sl2())] {
        let h = Uea::new(l).unwrap();
        let a = dense_element(&h, 3);
        let b = dense_element(&h, 2);
        // the first call fills the memo table; later calls measure lookups
        group.bench_function(format!("mul {name} deg 3 x 2"), |bch| {
            bch.iter(|| h.mul(black_box(&a), black_box(&b)))
        });
        group.bench_function(format!("coproduct {name} deg 3"), |bch| {
            bch.iter(|| h.coproduct(black_box(&a)))
        });
        group.bench_function(format!("antipode {name} deg 3"), |bch| {
            bch.iter(|| h.antipode(black_box(&a)))
        });
    }
    group.finish();
}

fn axioms(c: &mut Criterion) {
    let mut group = c.benchmark_group("axioms");
    group.sample_size(20);
    let w = build_W(&LieAlgebra::heisenberg()).unwrap();
    group.bench_function("W(heisenberg) Jacobi", |b| b.iter(|| verify_jacobi(black_box(&w))));
    let m = twisted_abelian();
    group.bench_function("twisted module axiom", |b| b.iter(|| verify_action(black_box(&m))));
    group.finish();
}

fn solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("singular");
    group.sample_size(10);
    let m = twisted_abelian();
    group.bench_function("twisted abelian D=3", |b| b.iter(|| singular_vectors(black_box(&m), 3)));
    let w = current_w_heisenberg();
    group.bench_function("Cur W(heisenberg) D=2", |b| {
        b.iter(|| singular_vectors(black_box(&w), 2))
    });
    group.finish();
}

criterion_group!(benches, pbw, axioms, solvers);
criterion_main!(benches);
