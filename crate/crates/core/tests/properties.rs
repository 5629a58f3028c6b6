use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use virtalg::algebra::centralizer_basis;
use virtalg::characters::{char_value, dim_partition};
use virtalg::limit::{theta_limit, LimitMode};
use virtalg::monomial::enumerate;
use virtalg::partition::{multipartitions_up_to, partitions_of, partitions_up_to};
use virtalg::shifted::{eval_psharp, eval_sstar, PsharpVar};
use virtalg::suites;
use virtalg::*;

fn trivial() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::trivial())
}

fn z2() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::builtin("Z2").unwrap())
}

fn rook(n: usize, g: &FiniteGroup) -> Vec<MonomialMatrix> {
    enumerate(EnumKind::Rook(n), g).unwrap().collect()
}

#[test]
fn degree_subadditive_and_involution_exhaustive() {
    for g in [trivial(), z2()] {
        let n = if g.is_trivial() { 3 } else { 2 };
        let all = rook(n, &g);
        for a in &all {
            for b in &all {
                let ab = a.compose(b, &g).unwrap();
                assert!(ab.degree() <= a.degree() + b.degree(), "{a} {b}");
                assert_eq!(ab.star(&g), b.star(&g).compose(&a.star(&g), &g).unwrap());
            }
            for r in 1..=n {
                assert!(a.truncate(r).unwrap().degree() <= a.degree());
            }
        }
    }
}

#[test]
fn truncation_commutes_with_shift() {
    let g = FiniteGroup::trivial();
    for a in rook(3, &g) {
        let left = a.shift().unwrap().truncate(3).unwrap();
        let right = a.truncate(2).unwrap().shift().unwrap();
        assert_eq!(left, right, "{a}");
    }
}

fn gamma4() -> Vec<MonomialMatrix> {
    rook(4, &FiniteGroup::trivial())
}

fn element(terms: &[(usize, i64)], all: &[MonomialMatrix]) -> AlgebraElement {
    let mut x = AlgebraElement::zero(4, trivial());
    for &(i, c) in terms {
        x.add_term(all[i % all.len()], Q::from(c));
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn degree_subadditive_sampled(i in 0usize..209, j in 0usize..209) {
        let all = gamma4();
        let g = FiniteGroup::trivial();
        let (a, b) = (all[i], all[j]);
        prop_assert!(a.compose(&b, &g).unwrap().degree() <= a.degree() + b.degree());
    }

    #[test]
    fn filtration_on_the_algebra(
        xs in proptest::collection::vec((0usize..209, -3i64..=3), 1..6),
        ys in proptest::collection::vec((0usize..209, -3i64..=3), 1..6),
    ) {
        let all = gamma4();
        let (x, y) = (element(&xs, &all), element(&ys, &all));
        let dx = x.degree().unwrap_or(0);
        let dy = y.degree().unwrap_or(0);
        let sum = x.checked_add(&y).unwrap();
        prop_assert!(sum.degree().unwrap_or(0) <= dx.max(dy));
        let prod = x.checked_mul(&y).unwrap();
        prop_assert!(prod.degree().unwrap_or(0) <= dx + dy);
    }
}

#[test]
fn truncation_is_multiplicative_on_the_top_centralizer() {
    for (n, g) in [(4, trivial()), (3, z2())] {
        let basis = centralizer_basis(n, CentralizerSpec::semigroup(n - 1), g.clone()).unwrap();
        for x in &basis {
            for y in &basis {
                let lhs = x.checked_mul(y).unwrap().truncate(n - 1).unwrap();
                let rhs = x.truncate(n - 1).unwrap().checked_mul(&y.truncate(n - 1).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn truncation_preserves_centralizers() {
    for n in 2..=4 {
        for m in 0..n {
            for flavor in [Flavor::Group, Flavor::Semigroup] {
                let spec = CentralizerSpec { m, flavor };
                for x in centralizer_basis(n, spec, trivial()).unwrap() {
                    let t = x.truncate(n - 1).unwrap();
                    assert!(virtalg::algebra::is_in_centralizer(&t, spec).unwrap().is_member(), "n={n} m={m}");
                }
            }
        }
    }
}

#[test]
fn characters_expand_psharp_in_sstar() {
    // Σ_λ χ^λ_ρ s*_λ(ν) = p#_ρ(ν)
    for size in 1..=4 {
        for rho in partitions_of(size) {
            for nu in partitions_up_to(6) {
                let mut s = Q::zero();
                for lambda in partitions_of(size) {
                    s += Q::from(char_value(&lambda, &rho).unwrap()) * eval_sstar(&lambda, &nu).unwrap();
                }
                assert_eq!(s, eval_psharp(&rho, &nu).unwrap(), "ρ={rho} ν={nu}");
            }
        }
    }
}

#[test]
fn branching_dimensions() {
    for lambda in partitions_up_to(8).into_iter().filter(|l| !l.is_empty()) {
        let below: num_bigint::BigUint = lambda.remove_corners().iter().map(dim_partition).sum();
        assert_eq!(below, dim_partition(&lambda), "{lambda}");
    }
}

#[test]
fn multipartition_psharp_reads_one_slot() {
    for ml in multipartitions_up_to(4, 2) {
        for k in 1..=4 {
            for psi in 0..2 {
                let poly = PsharpPolynomial {
                    terms: BTreeMap::from([(vec![PsharpVar { k, psi }], Q::one())]),
                    degree_bound: k,
                    wreath: true,
                };
                assert_eq!(poly.eval_multi(&ml).unwrap(), eval_psharp(&Partition::row(k), ml.get(psi)).unwrap());
            }
        }
    }
}

#[test]
fn wreath_rook_dimension_bookkeeping() {
    // dim T^bλ_n = Σ multiplicity · dim π^bν over the restriction to G(n)
    let g = z2();
    for ml in multipartitions_up_to(2, 2) {
        for n in ml.norm().max(1)..=4 {
            let spec = suites::wreath_spectrum(&ml, n, &g).unwrap();
            assert!(spec.passed, "{ml} n={n}");
            let model = RepModel::<Q>::rook_wreath(&ml, n, g.clone()).unwrap();
            let mut total = Q::zero();
            for nu in virtalg::partition::multipartitions_of(n, 2) {
                let m = &spec.multiplicities[&nu.to_literal()];
                total += m.clone() * Q::from(virtalg::characters::wreath_dim(&nu, &g));
            }
            assert_eq!(total, Q::from(model.dim()), "{ml} n={n}");
        }
    }
}

#[test]
fn limits_are_truncation_consistent() {
    for (g, families, end) in [
        (trivial(), vec!["eps(1,2)", "alpha(1)", "alpha(2)", "delta(2)", "u(1)", "shifted(1, alpha(1))"], 4),
        (z2(), vec!["eps(1,1)", "alpha(1)", "delta(2,id)"], 3),
    ] {
        for text in families {
            let seq = SequenceFamily::parse(text, g.clone()).unwrap();
            let start = seq.level().max(1);
            let mut prev: Option<AlgebraElement> = None;
            for r in start..=end {
                let b = theta_limit(&seq, r, &LimitMode::ExactFit).unwrap().element;
                assert!(b.degree().unwrap_or(0) <= seq.degree_bound(), "{text} r={r}");
                if let Some(p) = &prev {
                    assert_eq!(&b.truncate(r - 1).unwrap(), p, "{text} r={r}");
                }
                prev = Some(b);
            }
        }
    }
}
