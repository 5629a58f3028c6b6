use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use virtalg::limit::{theta_limit, LimitMode};
use virtalg::monomial::enumerate;
use virtalg::suites::{rook_eigentable, sym_eigentable};
use virtalg::*;

fn eigentables(c: &mut Criterion) {
    let trivial = Arc::new(FiniteGroup::trivial());
    c.bench_function("sym eigentable n=6", |b| b.iter(|| sym_eigentable(black_box(6), None).unwrap()));
    c.bench_function("rook eigentable n=4 k=2", |b| {
        b.iter(|| rook_eigentable(black_box(4), &trivial, Some(&[2])).unwrap())
    });
}

fn algebra(c: &mut Criterion) {
    let g = Arc::new(FiniteGroup::trivial());
    let all: Vec<MonomialMatrix> = enumerate(EnumKind::Rook(4), &g).unwrap().collect();
    let mut x = AlgebraElement::zero(4, g.clone());
    let mut y = AlgebraElement::zero(4, g.clone());
    for (i, m) in all.iter().enumerate().take(40) {
        x.add_term(*m, Q::from(i as i64 + 1));
        y.add_term(all[(7 * i + 3) % all.len()], Q::from(1 - i as i64));
    }
    c.bench_function("multiply 40x40 terms in C[Γ(4)]", |b| b.iter(|| black_box(&x).checked_mul(black_box(&y)).unwrap()));

    let model = RepModel::<Q>::rook_sym(&"[2,1]".parse().unwrap(), 5, SymVariant::Seminormal).unwrap();
    let delta = Family::parse("delta(2)").unwrap().build(5, &g).unwrap();
    c.bench_function("rook model central eigenvalue", |b| b.iter(|| model.central_eigenvalue(black_box(&delta)).unwrap()));
}

fn limits(c: &mut Criterion) {
    let g = Arc::new(FiniteGroup::trivial());
    let seq = SequenceFamily::parse("alpha(2)", g).unwrap();
    c.bench_function("exact theta limit alpha(2) r=3", |b| {
        b.iter(|| theta_limit(black_box(&seq), 3, &LimitMode::ExactFit).unwrap())
    });
}

criterion_group!(benches, eigentables, algebra, limits);
criterion_main!(benches);
