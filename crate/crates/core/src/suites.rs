//! Exact finite-level identity suites: eigenvalue tables, relation checks,
//! dimension and spectrum identities, and oracle cross-checks. Every suite
//! returns a serializable report whose `passed` flag is the conjunction of its
//! checks.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use crate::algebra::{
    centralizer_basis, is_in_centralizer, is_in_centralizer_brute_force, AlgebraElement, CentralizerSpec, Flavor,
    Membership,
};
use crate::central::{build_delta, build_u, build_z, build_z_psi, PhiSpec};
use crate::characters::{
    char_value, character_table, cycle_type, dim_partition, dimension_ratio, wreath_char_value, x_set,
};
use crate::error::{Error, Result};
use crate::group::{ClassFunction, FiniteGroup};
use crate::monomial::{closed_form_count, enumerate, EnumKind, MonomialMatrix};
use crate::partition::{multipartitions_of, multipartitions_up_to, partitions_of, partitions_up_to, Multipartition, Partition};
use crate::rational::Q;
use crate::reps::{RepModel, SymVariant};
use crate::shifted::{eval_psharp, express_in_psharp, PsharpPolynomial, PsharpVar, ShiftedExpr, ShiftedFunction};

/// Largest size accepted by the relation and centrality suites.
pub const MAX_RELATION_SIZE: usize = 7;
/// Largest size for the brute-force centralizer comparison.
pub const MAX_BRUTE_FORCE_SIZE: usize = 4;

const DETAIL_LEN: usize = 400;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: serde_json::Value,
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn clip(text: String) -> String {
    if text.chars().count() <= DETAIL_LEN {
        return text;
    }
    let mut s: String = text.chars().take(DETAIL_LEN).collect();
    s.push_str(" …");
    s
}

impl SuiteReport {
    fn new(suite: &str, params: serde_json::Value) -> Self {
        SuiteReport {
            suite: suite.into(),
            params,
            checks: Vec::new(),
            passed: true,
        }
    }

    fn record(&mut self, name: String, passed: bool, detail: Option<String>) {
        self.passed &= passed;
        self.checks.push(Check {
            name,
            passed,
            detail: detail.map(clip),
        });
    }

    fn identity(&mut self, name: String, lhs: &AlgebraElement, rhs: &AlgebraElement) -> Result<()> {
        let d = lhs.checked_sub(rhs)?;
        let ok = d.is_zero();
        self.record(name, ok, (!ok).then(|| format!("lhs - rhs = {d}")));
        Ok(())
    }

    fn membership(&mut self, name: String, x: &AlgebraElement, spec: CentralizerSpec) -> Result<()> {
        match is_in_centralizer(x, spec)? {
            Membership::Member => self.record(name, true, None),
            Membership::NotMember { generator, commutator } => {
                self.record(name, false, Some(format!("[{generator}, x] = {commutator}")))
            }
        }
        Ok(())
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn check_relation_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_RELATION_SIZE {
        return Err(Error::bound("relation suite size", n, MAX_RELATION_SIZE));
    }
    Ok(())
}

// ----- eigenvalue tables -----

#[derive(Clone, Debug, Serialize)]
pub struct EigenRow {
    pub lambda: String,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<usize>,
    pub eigenvalue: Q,
    pub expected: Q,
    pub matched: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenTable {
    pub table: String,
    pub n: usize,
    pub group: String,
    pub rows: Vec<EigenRow>,
    pub passed: bool,
}

impl EigenTable {
    fn new(table: &str, n: usize, group: &FiniteGroup) -> Self {
        EigenTable {
            table: table.into(),
            n,
            group: group.name().into(),
            rows: Vec::new(),
            passed: true,
        }
    }

    fn push(&mut self, lambda: String, k: usize, psi: Option<usize>, eigenvalue: Q, expected: Q) {
        let matched = eigenvalue == expected;
        self.passed &= matched;
        self.rows.push(EigenRow {
            lambda,
            k,
            psi,
            eigenvalue,
            expected,
            matched,
        });
    }

    pub fn first_mismatch(&self) -> Option<&EigenRow> {
        self.rows.iter().find(|r| !r.matched)
    }
}

/// `p#_k` on a diagram, with the empty diagram (and `|ν| < k`) giving 0.
fn psharp_k(k: usize, nu: &Partition) -> Result<Q> {
    if nu.is_empty() {
        return Ok(Q::zero());
    }
    eval_psharp(&Partition::row(k), nu)
}

fn ks_for(ks: Option<&[usize]>, n: usize) -> Vec<usize> {
    match ks {
        Some(v) => v.to_vec(),
        None => (1..=n).collect(),
    }
}

/// `z^(k)_n` on every `π^λ`, `λ ⊢ n`, against `p#_k(λ)`.
pub fn sym_eigentable(n: usize, ks: Option<&[usize]>) -> Result<EigenTable> {
    let trivial = FiniteGroup::trivial();
    let mut table = EigenTable::new("z", n, &trivial);
    let ks = ks_for(ks, n);
    let zs: Vec<AlgebraElement> = ks.iter().map(|&k| build_z(k, n)).collect::<Result<_>>()?;
    for lambda in partitions_of(n) {
        let model = RepModel::<Q>::sym(&lambda, SymVariant::Seminormal)?;
        for (&k, z) in ks.iter().zip(&zs) {
            let ev = model.central_eigenvalue(z)?;
            table.push(lambda.to_string(), k, None, ev, psharp_k(k, &lambda)?);
        }
    }
    Ok(table)
}

/// `z^(k,ψ)_n` on every `π^bλ` of `G(n)` against `p#_k(bλ(ψ))`.
pub fn wreath_eigentable(n: usize, group: &Arc<FiniteGroup>, ks: Option<&[usize]>) -> Result<EigenTable> {
    let mut table = EigenTable::new("zpsi", n, group);
    let ks = ks_for(ks, n);
    let r = group.num_chars();
    let mut zs = Vec::new();
    for &k in &ks {
        for psi in 0..r {
            zs.push((k, psi, build_z_psi(k, psi, n, group)?));
        }
    }
    for ml in multipartitions_of(n, r) {
        let model = RepModel::<Q>::wreath(&ml, group.clone())?;
        for (k, psi, z) in &zs {
            let ev = model.central_eigenvalue(z)?;
            table.push(ml.to_literal(), *k, Some(*psi), ev, psharp_k(*k, ml.get(*psi))?);
        }
    }
    Ok(table)
}

/// `Δ^(k)_n` (trivial group) or `Δ_n(k,φ)` with `φ = (dim ψ/|G|)^k ψ̄` on every
/// rook model `T^λ_n`, `|λ| ≤ n`, against `p#_k`.
pub fn rook_eigentable(n: usize, group: &Arc<FiniteGroup>, ks: Option<&[usize]>) -> Result<EigenTable> {
    let mut table = EigenTable::new("delta", n, group);
    let ks = ks_for(ks, n);
    if group.is_trivial() {
        let ds: Vec<AlgebraElement> = ks.iter().map(|&k| build_delta(k, n, group, None)).collect::<Result<_>>()?;
        for lambda in partitions_up_to(n) {
            let model = RepModel::<Q>::rook_sym(&lambda, n, SymVariant::Seminormal)?;
            for (&k, d) in ks.iter().zip(&ds) {
                let ev = model.central_eigenvalue(d)?;
                table.push(lambda.to_string(), k, None, ev, psharp_k(k, &lambda)?);
            }
        }
        return Ok(table);
    }
    let r = group.num_chars();
    let mut ds = Vec::new();
    for &k in &ks {
        for psi in 0..r {
            let phi = PhiSpec::Character(psi).resolve(group, k)?;
            ds.push((k, psi, build_delta(k, n, group, Some(&phi))?));
        }
    }
    for ml in multipartitions_up_to(n, r) {
        let model = RepModel::<Q>::rook_wreath(&ml, n, group.clone())?;
        for (k, psi, d) in &ds {
            let ev = model.central_eigenvalue(d)?;
            table.push(ml.to_literal(), *k, Some(*psi), ev, psharp_k(*k, ml.get(*psi))?);
        }
    }
    Ok(table)
}

// ----- relation suites -----

struct Letters {
    n: usize,
    group: Arc<FiniteGroup>,
}

impl Letters {
    fn el(&self, m: MonomialMatrix) -> AlgebraElement {
        AlgebraElement::basis(m, self.group.clone())
    }
    fn one(&self) -> AlgebraElement {
        AlgebraElement::one(self.n, self.group.clone())
    }
    fn s(&self, i: usize) -> AlgebraElement {
        self.el(MonomialMatrix::transposition(self.n, i, i + 1))
    }
    fn eps(&self, i: usize) -> AlgebraElement {
        self.el(MonomialMatrix::eps(self.n, &[i]))
    }
    fn eps_bar(&self, i: usize) -> AlgebraElement {
        AlgebraElement::eps_bar(self.n, i, self.group.clone())
    }
    fn label(&self, i: usize, g: usize) -> AlgebraElement {
        self.el(MonomialMatrix::diag_label(self.n, i, g))
    }
    fn u(&self, i: usize) -> Result<AlgebraElement> {
        build_u(i, self.n, &self.group)
    }
}

fn mul(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    a.checked_mul(b)
}

fn mul3(a: &AlgebraElement, b: &AlgebraElement, c: &AlgebraElement) -> Result<AlgebraElement> {
    a.checked_mul(b)?.checked_mul(c)
}

/// Defining relations of `Γ(n,G)` (Coxeter relations, idempotent relations,
/// label relations) and the relations between `s_i`, `ε_i`, labels and the
/// elements `u_i(G)`.
pub fn hecke_suite(n: usize, group: &Arc<FiniteGroup>) -> Result<SuiteReport> {
    check_relation_size(n)?;
    let mut rep = SuiteReport::new("verify-hecke", json!({"n": n, "group": group.name()}));
    let l = Letters { n, group: group.clone() };
    let one = l.one();
    let zero = AlgebraElement::zero(n, group.clone());

    for i in 1..n {
        let s = l.s(i);
        rep.identity(format!("s{i}^2 = 1"), &mul(&s, &s)?, &one)?;
        if i + 1 < n {
            let t = l.s(i + 1);
            rep.identity(format!("s{i} s{} s{i} = s{} s{i} s{}", i + 1, i + 1, i + 1), &mul3(&s, &t, &s)?, &mul3(&t, &s, &t)?)?;
        }
        for j in i + 2..n {
            let t = l.s(j);
            rep.identity(format!("s{i} s{j} = s{j} s{i}"), &mul(&s, &t)?, &mul(&t, &s)?)?;
        }
    }
    for i in 1..=n {
        let e = l.eps(i);
        rep.identity(format!("eps{i}^2 = eps{i}"), &mul(&e, &e)?, &e)?;
        for j in i + 1..=n {
            let f = l.eps(j);
            rep.identity(format!("eps{i} eps{j} = eps{j} eps{i}"), &mul(&e, &f)?, &mul(&f, &e)?)?;
        }
    }
    for i in 1..n {
        let (s, e, f) = (l.s(i), l.eps(i), l.eps(i + 1));
        rep.identity(format!("s{i} eps{i} = eps{} s{i}", i + 1), &mul(&s, &e)?, &mul(&f, &s)?)?;
        let ef = mul(&e, &f)?;
        rep.identity(format!("s{i} eps{i} eps{} = eps{i} eps{}", i + 1, i + 1), &mul(&s, &ef)?, &ef)?;
        for j in (1..=n).filter(|&j| j != i && j != i + 1) {
            let g = l.eps(j);
            rep.identity(format!("s{i} eps{j} = eps{j} s{i}"), &mul(&s, &g)?, &mul(&g, &s)?)?;
        }
    }
    if !group.is_trivial() {
        for &g in group.generators() {
            for i in 1..=n {
                let h = l.label(i, g);
                let e = l.eps(i);
                rep.identity(format!("g{g}@{i} eps{i} = eps{i}"), &mul(&h, &e)?, &e)?;
                rep.identity(format!("eps{i} g{g}@{i} = eps{i}"), &mul(&e, &h)?, &e)?;
                if i < n {
                    let s = l.s(i);
                    rep.identity(format!("s{i} g{g}@{i} = g{g}@{} s{i}", i + 1), &mul(&s, &h)?, &mul(&l.label(i + 1, g), &s)?)?;
                }
            }
        }
    }

    let us: Vec<AlgebraElement> = (1..=n).map(|i| l.u(i)).collect::<Result<_>>()?;
    let u = |i: usize| &us[i - 1];
    for k in 1..n {
        let s = l.s(k);
        let mut corr = AlgebraElement::zero(n, group.clone());
        for g in 0..group.order() {
            let lab = mul(&l.label(k, g), &l.label(k + 1, group.inv(g)))?;
            corr = corr.checked_add(&lab)?;
        }
        let corr = mul3(&corr, &l.eps_bar(k), &l.eps_bar(k + 1))?;
        let rhs = mul(u(k + 1), &s)?.checked_add(&corr)?;
        rep.identity(format!("s{k} u{k} = u{} s{k} + sum_g g@{k} g^-1@{} epsbar{k} epsbar{}", k + 1, k + 1, k + 1), &mul(&s, u(k))?, &rhs)?;
        for j in (1..=n).filter(|&j| j != k && j != k + 1) {
            rep.identity(format!("s{k} u{j} = u{j} s{k}"), &mul(&s, u(j))?, &mul(u(j), &s)?)?;
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            rep.identity(format!("u{i} u{j} = u{j} u{i}"), &mul(u(i), u(j))?, &mul(u(j), u(i))?)?;
        }
        let e = l.eps(i);
        rep.identity(format!("eps{i} u{i} = 0"), &mul(&e, u(i))?, &zero)?;
        rep.identity(format!("u{i} eps{i} = 0"), &mul(u(i), &e)?, &zero)?;
        for j in (1..=n).filter(|&j| j != i) {
            let f = l.eps(j);
            rep.identity(format!("eps{j} u{i} = u{i} eps{j}"), &mul(&f, u(i))?, &mul(u(i), &f)?)?;
        }
        if !group.is_trivial() {
            for j in 1..=n {
                for &g in group.generators() {
                    let h = l.label(j, g);
                    rep.identity(format!("g{g}@{j} u{i} = u{i} g{g}@{j}"), &mul(&h, u(i))?, &mul(u(i), &h)?)?;
                }
            }
        }
    }
    Ok(rep)
}

/// `ξ^t` applied `t` times.
fn shift_times(x: &AlgebraElement, t: usize) -> Result<AlgebraElement> {
    (0..t).try_fold(x.clone(), |acc, _| acc.shift())
}

/// Centrality, `θ`-consistency and shift identities for `Δ`, `z` and `u`.
/// Over a nontrivial group the `Δ` family uses `φ₁` (identity indicator);
/// character weights are checked for centrality.
pub fn central_suite(n: usize, group: &Arc<FiniteGroup>) -> Result<SuiteReport> {
    check_relation_size(n)?;
    let mut rep = SuiteReport::new("verify-central", json!({"n": n, "group": group.name()}));
    let trivial = group.is_trivial();
    let phi1 = ClassFunction::identity_indicator(group);
    let delta = |k: usize, size: usize| -> Result<AlgebraElement> {
        if trivial {
            build_delta(k, size, group, None)
        } else {
            build_delta(k, size, group, Some(&phi1))
        }
    };
    let tag = if trivial { String::new() } else { "(phi1)".to_string() };

    for k in 1..=n {
        rep.membership(format!("Delta{tag}({k})_{n} in A_0({n})"), &delta(k, n)?, CentralizerSpec::semigroup(0))?;
        if trivial {
            if k >= 2 {
                rep.membership(format!("z({k})_{n} central in S({n})"), &build_z(k, n)?, CentralizerSpec::group(0))?;
            }
        } else {
            for psi in 0..group.num_chars() {
                let phi = PhiSpec::Character(psi).resolve(group, k)?;
                let d = build_delta(k, n, group, Some(&phi))?;
                rep.membership(format!("Delta({k},psi{psi})_{n} in A_0({n})"), &d, CentralizerSpec::semigroup(0))?;
                let z = build_z_psi(k, psi, n, group)?;
                rep.membership(format!("z({k},psi{psi})_{n} central in G({n})"), &z, CentralizerSpec::group(0))?;
            }
        }
    }
    for i in 1..n {
        rep.membership(format!("u{i}|{n} in A_{i}({n})"), &build_u(i, n, group)?, CentralizerSpec::semigroup(i))?;
    }
    if n >= 2 {
        for k in 1..=n {
            rep.identity(
                format!("theta(Delta{tag}({k})_{n}) = Delta{tag}({k})_{}", n - 1),
                &delta(k, n)?.truncate(n - 1)?,
                &delta(k, n - 1)?,
            )?;
        }
        for i in 1..=n {
            rep.identity(
                format!("theta(u{i}|{n}) = u{i}|{}", n - 1),
                &build_u(i, n, group)?.truncate(n - 1)?,
                &build_u(i, n - 1, group)?,
            )?;
        }
        let two = Q::from(2i64);
        for i in 1..n {
            // ξ^{i-1}(Δ(2)_{n-i+1}) − ξ^i(Δ(2)_{n-i}) = 2 u_{i|n}
            let upper = shift_times(&delta(2, n - i + 1)?, i - 1)?;
            let lower = shift_times(&delta(2, n - i)?, i)?;
            rep.identity(
                format!("xi^{}(Delta{tag}(2)_{}) - xi^{i}(Delta{tag}(2)_{}) = 2 u{i}|{n}", i - 1, n - i + 1, n - i),
                &upper.checked_sub(&lower)?,
                &build_u(i, n, group)?.scale(&two),
            )?;
        }
        for i in 1..n {
            rep.identity(
                format!("xi(u{i}|{}) = u{}|{n}", n - 1, i + 1),
                &build_u(i, n - 1, group)?.shift()?,
                &build_u(i + 1, n, group)?,
            )?;
        }
    }
    let mut total = AlgebraElement::zero(n, group.clone());
    for i in 1..=n {
        total = total.checked_add(&build_u(i, n, group)?)?;
    }
    rep.identity(format!("Delta{tag}(2)_{n} = 2 sum_i u{{i}}|{n}"), &delta(2, n)?, &total.scale(&Q::from(2i64)))?;
    if !trivial {
        rep.identity(
            format!("Delta(phi1)(2)_{n} = explicit sum over i != j"),
            &delta(2, n)?,
            &explicit_delta2(n, group)?,
        )?;
    }
    Ok(rep)
}

/// `Σ_{i≠j} Σ_g g^{(i)}(g⁻¹)^{(j)}(i,j) ε̄_i ε̄_j`, built from products.
fn explicit_delta2(n: usize, group: &Arc<FiniteGroup>) -> Result<AlgebraElement> {
    let l = Letters { n, group: group.clone() };
    let mut out = AlgebraElement::zero(n, group.clone());
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            let t = l.el(MonomialMatrix::transposition(n, i, j));
            let bars = mul(&l.eps_bar(i), &l.eps_bar(j))?;
            for g in 0..group.order() {
                let lab = mul(&l.label(i, g), &l.label(j, group.inv(g)))?;
                out = out.checked_add(&mul3(&lab, &t, &bars)?)?;
            }
        }
    }
    Ok(out)
}

// ----- dimension identity -----

#[derive(Clone, Debug, Serialize)]
pub struct DimIdentity {
    pub n: usize,
    /// `Σ_{|λ|≤n} (C(n,|λ|) dim λ)²`
    pub sum_of_squares: String,
    /// Same sum over the dimensions of the constructed rook models.
    pub rook_models: String,
    /// `Σ_ℓ C(n,ℓ)² ℓ!`
    pub closed_form: String,
    /// `|Γ(n)|` counted by enumeration.
    pub enumerated: String,
    pub matched: bool,
}

pub fn dim_identity(n: usize) -> Result<DimIdentity> {
    let trivial = FiniteGroup::trivial();
    let mut squares = num_bigint::BigUint::from(0u32);
    let mut models = 0u128;
    for lambda in partitions_up_to(n) {
        let d = num_bigint::BigUint::from(crate::monomial::binom(n, lambda.size())) * dim_partition(&lambda);
        squares += &d * &d;
        let dim = RepModel::<Q>::rook_sym(&lambda, n, SymVariant::Seminormal)?.dim() as u128;
        models += dim * dim;
    }
    let closed = closed_form_count(EnumKind::Rook(n), 1);
    let counted = enumerate(EnumKind::Rook(n), &trivial)?.count() as u128;
    let matched = squares == num_bigint::BigUint::from(closed) && models == closed && counted == closed;
    Ok(DimIdentity {
        n,
        sum_of_squares: squares.to_string(),
        rook_models: models.to_string(),
        closed_form: closed.to_string(),
        enumerated: counted.to_string(),
        matched,
    })
}

// ----- restriction spectrum -----

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub lambda: String,
    pub n: usize,
    pub group: String,
    /// Multiplicity of each irreducible of the unit group in the rook model,
    /// computed from exact traces.
    pub multiplicities: BTreeMap<String, Q>,
    /// The predicted constituents, each with multiplicity one.
    pub expected: Vec<String>,
    pub induced_matches: bool,
    /// `Some` when `n` is large enough for the stable-row statement.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable_row_multiplicity: Option<Q>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support_in_shifted_subdiagrams: Option<bool>,
    pub passed: bool,
}

/// `T^λ_n` restricted to `S(n)`, decomposed through the character table.
pub fn sym_spectrum(lambda: &Partition, n: usize) -> Result<SpectrumReport> {
    let l = lambda.size();
    if n < l || n == 0 {
        return Err(Error::invalid(format!("spectrum needs n >= max(1, |λ|) = {}", l.max(1))));
    }
    let model = RepModel::<Q>::rook_sym(lambda, n, SymVariant::Seminormal)?;
    let (irreps, table) = character_table(n);
    let order = Q::from(crate::rational::factorial(n as u64));
    // traces on class representatives
    let traces: Vec<Q> = irreps
        .iter()
        .map(|rho| model.image(&class_representative(rho, n)).map(|m| m.trace()))
        .collect::<Result<_>>()?;
    let class_sizes: Vec<Q> = irreps
        .iter()
        .map(|rho| order.clone() / Q::from(rho.z()))
        .collect();
    let mut multiplicities = BTreeMap::new();
    for (nu, row) in irreps.iter().zip(&table) {
        let mut s = Q::zero();
        for ((t, c), chi) in traces.iter().zip(&class_sizes).zip(row) {
            s += t.clone() * c * Q::from(chi.clone());
        }
        multiplicities.insert(nu.to_string(), s / &order);
    }
    let expected: Vec<Partition> = if n == l { vec![lambda.clone()] } else { x_set(lambda, n)? };
    let expected_names: Vec<String> = expected.iter().map(ToString::to_string).collect();
    let induced_matches = multiplicities.iter().all(|(name, m)| {
        let want = if expected_names.contains(name) { Q::one() } else { Q::zero() };
        *m == want
    });
    let (stable, support) = if n >= l + lambda.first() {
        let row = lambda.with_row(n)?;
        let sub: Vec<String> = partitions_up_to(l)
            .into_iter()
            .filter(|mu| mu.is_contained_in(lambda))
            .map(|mu| mu.with_row(n).map(|p| p.to_string()))
            .collect::<Result<_>>()?;
        let support_ok = multiplicities.iter().all(|(name, m)| m.is_zero() || sub.contains(name));
        (multiplicities.get(&row.to_string()).cloned(), Some(support_ok))
    } else {
        (None, None)
    };
    let passed = induced_matches && stable.as_ref().is_none_or(|m| m.is_one()) && support.unwrap_or(true);
    Ok(SpectrumReport {
        lambda: lambda.to_string(),
        n,
        group: "trivial".into(),
        multiplicities,
        expected: expected_names,
        induced_matches,
        stable_row_multiplicity: stable,
        support_in_shifted_subdiagrams: support,
        passed,
    })
}

/// A permutation of cycle type `ρ` on consecutive blocks.
fn class_representative(rho: &Partition, n: usize) -> MonomialMatrix {
    let mut images = Vec::with_capacity(n);
    let mut start = 1;
    for &len in rho.parts() {
        images.extend(start + 1..start + len);
        images.push(start);
        start += len;
    }
    MonomialMatrix::permutation(&images).expect("valid permutation")
}

/// `T^bλ_n` restricted to `G(n)`, decomposed by the inner product of
/// characters over all of `G(n)`.
pub fn wreath_spectrum(ml: &Multipartition, n: usize, group: &Arc<FiniteGroup>) -> Result<SpectrumReport> {
    let l = ml.norm();
    if n < l || n == 0 {
        return Err(Error::invalid(format!("spectrum needs n >= max(1, ‖bλ‖) = {}", l.max(1))));
    }
    let model = RepModel::<Q>::rook_wreath(ml, n, group.clone())?;
    let elements: Vec<MonomialMatrix> = enumerate(EnumKind::Wreath(n), group)?.collect();
    let traces: Vec<Q> = elements.iter().map(|x| model.image(x).map(|m| m.trace())).collect::<Result<_>>()?;
    let order = Q::from(elements.len());
    let r = group.num_chars();
    let mut multiplicities = BTreeMap::new();
    for nu in multipartitions_of(n, r) {
        let mut s = Q::zero();
        for (x, t) in elements.iter().zip(&traces) {
            s += t.clone() * wreath_char_value(&nu, group, &x.star(group))?;
        }
        multiplicities.insert(nu.to_literal(), s / &order);
    }
    let trivial_slot = ml.get(0);
    let expected: Vec<Multipartition> = if n == l {
        vec![ml.clone()]
    } else {
        let grown = n - l + trivial_slot.size();
        x_set(trivial_slot, grown)?
            .into_iter()
            .map(|p| {
                let mut slots = ml.slots().to_vec();
                slots[0] = p;
                Multipartition::from_slots(slots)
            })
            .collect()
    };
    let expected_names: Vec<String> = expected.iter().map(Multipartition::to_literal).collect();
    let induced_matches = multiplicities.iter().all(|(name, m)| {
        let want = if expected_names.contains(name) { Q::one() } else { Q::zero() };
        *m == want
    });
    let (stable, support) = if n >= l + trivial_slot.first() {
        let row = ml.with_row(n)?;
        let sub: Vec<String> = multipartitions_up_to(l, r)
            .into_iter()
            .filter(|mu| (0..r).all(|psi| mu.get(psi).is_contained_in(ml.get(psi))))
            .map(|mu| mu.with_row(n).map(|p| p.to_literal()))
            .collect::<Result<_>>()?;
        let support_ok = multiplicities.iter().all(|(name, m)| m.is_zero() || sub.contains(name));
        (multiplicities.get(&row.to_literal()).cloned(), Some(support_ok))
    } else {
        (None, None)
    };
    let passed = induced_matches && stable.as_ref().is_none_or(|m| m.is_one()) && support.unwrap_or(true);
    Ok(SpectrumReport {
        lambda: ml.to_literal(),
        n,
        group: group.name().into(),
        multiplicities,
        expected: expected_names,
        induced_matches,
        stable_row_multiplicity: stable,
        support_in_shifted_subdiagrams: support,
        passed,
    })
}

// ----- dimension ratio -----

#[derive(Clone, Debug, Serialize)]
pub struct RatioTrend {
    pub lambda: String,
    pub points: Vec<(usize, Q)>,
    pub increasing: bool,
}

/// `dim λ[n] / (C(n,|λ|) dim λ)` along `ns`, with a monotonicity flag.
pub fn ratio_trend(lambda: &Partition, ns: &[usize]) -> Result<RatioTrend> {
    let points: Vec<(usize, Q)> = ns
        .iter()
        .map(|&n| dimension_ratio(lambda, n).map(|r| (n, r)))
        .collect::<Result<_>>()?;
    let increasing = points.windows(2).all(|w| w[0].1 < w[1].1);
    Ok(RatioTrend {
        lambda: lambda.to_string(),
        points,
        increasing,
    })
}

// ----- oracle cross-checks -----

/// Murnaghan–Nakayama against traces of the seminormal matrices on every class.
pub fn trace_crosscheck(n: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("trace-crosscheck", json!({"n": n}));
    let trivial = FiniteGroup::trivial();
    let mut reps_by_type: BTreeMap<Partition, MonomialMatrix> = BTreeMap::new();
    for x in enumerate(EnumKind::Symmetric(n), &trivial)? {
        reps_by_type.entry(cycle_type(&x)).or_insert(x);
    }
    for lambda in partitions_of(n) {
        let model = RepModel::<Q>::sym(&lambda, SymVariant::Seminormal)?;
        for (rho, x) in &reps_by_type {
            let tr = model.image(x)?.trace();
            let mn = Q::from(char_value(&lambda, rho)?);
            let ok = tr == mn;
            rep.record(
                format!("chi{lambda}({rho})"),
                ok,
                (!ok).then(|| format!("trace {tr}, Murnaghan-Nakayama {mn}")),
            );
        }
    }
    Ok(rep)
}

/// Wreath characters from the matrix model against the induced-character formula,
/// on every element of `G(n)`.
pub fn wreath_trace_crosscheck(n: usize, group: &Arc<FiniteGroup>) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("wreath-trace-crosscheck", json!({"n": n, "group": group.name()}));
    let elements: Vec<MonomialMatrix> = enumerate(EnumKind::Wreath(n), group)?.collect();
    for ml in multipartitions_of(n, group.num_chars()) {
        let model = RepModel::<Q>::wreath(&ml, group.clone())?;
        let mut bad = None;
        for x in &elements {
            let tr = model.image(x)?.trace();
            let formula = wreath_char_value(&ml, group, x)?;
            if tr != formula {
                bad = Some(format!("at {x}: trace {tr}, formula {formula}"));
                break;
            }
        }
        rep.record(format!("chi{}", ml.to_literal()), bad.is_none(), bad);
    }
    Ok(rep)
}

/// Generating-set membership against brute-force commutation with the whole
/// subsemigroup (or subgroup), over centralizer basis elements, every basis
/// monomial, and perturbed basis elements.
pub fn centralizer_crosscheck(n: usize, group: &Arc<FiniteGroup>) -> Result<SuiteReport> {
    if n == 0 || n > MAX_BRUTE_FORCE_SIZE {
        return Err(Error::bound("brute-force centralizer size", n, MAX_BRUTE_FORCE_SIZE));
    }
    let mut rep = SuiteReport::new("centralizer-crosscheck", json!({"n": n, "group": group.name()}));
    for flavor in [Flavor::Group, Flavor::Semigroup] {
        for m in 0..=n {
            let spec = CentralizerSpec { m, flavor };
            let kind = match flavor {
                Flavor::Group => EnumKind::Wreath(n),
                Flavor::Semigroup => EnumKind::Rook(n),
            };
            let monomials: Vec<MonomialMatrix> = enumerate(kind, group)?.collect();
            let basis = centralizer_basis(n, spec, group.clone())?;
            let mut candidates: Vec<AlgebraElement> = basis.clone();
            candidates.extend(monomials.iter().map(|x| AlgebraElement::basis(*x, group.clone())));
            for (b, x) in basis.iter().zip(monomials.iter().cycle().step_by(3)) {
                candidates.push(b.checked_add(&AlgebraElement::basis(*x, group.clone()))?);
            }
            let mut agree = 0usize;
            let mut members = 0usize;
            let mut bad = None;
            for x in &candidates {
                let fast = is_in_centralizer(x, spec)?.is_member();
                let slow = is_in_centralizer_brute_force(x, spec)?;
                members += usize::from(slow);
                if fast == slow {
                    agree += 1;
                } else if bad.is_none() {
                    bad = Some(format!("{x}: generators say {fast}, brute force says {slow}"));
                }
            }
            let basis_ok = basis.iter().all(|b| is_in_centralizer_brute_force(b, spec).unwrap_or(false));
            let label = match flavor {
                Flavor::Group => "group",
                Flavor::Semigroup => "semigroup",
            };
            rep.record(
                format!("{label} m={m}: {agree}/{} agree, {members} members, basis size {}", candidates.len(), basis.len()),
                bad.is_none() && basis_ok,
                bad.or((!basis_ok).then(|| "a basis element fails brute force".to_string())),
            );
        }
    }
    Ok(rep)
}

/// Builds `Σ c_ρ p#_ρ` as a shifted function, solves it back, and compares the
/// coefficients. `coeffs[i]` goes to the `i`-th partition of size `≤ d`.
pub fn psharp_round_trip(d: usize, coeffs: &[i64]) -> Result<Check> {
    let mut expr = Vec::new();
    let mut want = BTreeMap::new();
    for (rho, &c) in partitions_up_to(d).iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        let c = Q::from(c);
        let factors: Vec<ShiftedExpr> = std::iter::once(ShiftedExpr::Const(c.clone()))
            .chain(rho.parts().iter().map(|&k| ShiftedExpr::psharp_k(k)))
            .collect();
        expr.push(ShiftedExpr::Product(factors));
        let mono: Vec<PsharpVar> = rho.parts().iter().map(|&k| PsharpVar { k, psi: 0 }).collect();
        want.insert(mono, c);
    }
    let f = ShiftedFunction::with_bound(ShiftedExpr::Sum(expr), d);
    let got = express_in_psharp(&f, None)?;
    let expected = PsharpPolynomial {
        terms: want,
        degree_bound: d,
        wreath: false,
    };
    let passed = got.terms == expected.terms;
    Ok(Check {
        name: format!("round trip degree {d}"),
        passed,
        detail: (!passed).then(|| format!("expected {}, got {}", expected.to_text(), got.to_text())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn z2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::builtin("Z2").unwrap())
    }

    #[test]
    fn small_tables() {
        let t = sym_eigentable(4, None).unwrap();
        assert!(t.passed);
        assert_eq!(t.rows.len(), 5 * 4);
        assert!(wreath_eigentable(2, &z2(), None).unwrap().passed);
        assert!(rook_eigentable(3, &Arc::new(FiniteGroup::trivial()), None).unwrap().passed);
        assert!(rook_eigentable(2, &z2(), None).unwrap().passed);
    }

    #[test]
    fn relation_suites_small() {
        let g = Arc::new(FiniteGroup::trivial());
        for n in 1..=4 {
            let h = hecke_suite(n, &g).unwrap();
            assert!(h.passed, "{:?}", h.first_failure());
            let c = central_suite(n, &g).unwrap();
            assert!(c.passed, "{:?}", c.first_failure());
        }
        let h = hecke_suite(3, &z2()).unwrap();
        assert!(h.passed, "{:?}", h.first_failure());
        let c = central_suite(3, &z2()).unwrap();
        assert!(c.passed, "{:?}", c.first_failure());
    }

    #[test]
    fn broken_relation_is_reported() {
        let mut rep = SuiteReport::new("t", json!({}));
        let g = Arc::new(FiniteGroup::trivial());
        let l = Letters { n: 3, group: g };
        rep.identity("s1 s2 = s2 s1".into(), &mul(&l.s(1), &l.s(2)).unwrap(), &mul(&l.s(2), &l.s(1)).unwrap())
            .unwrap();
        assert!(!rep.passed);
        assert!(rep.first_failure().unwrap().detail.as_ref().unwrap().contains("lhs - rhs"));
    }

    #[test]
    fn dims() {
        assert_eq!(dim_identity(2).unwrap().enumerated, "7");
        assert_eq!(dim_identity(3).unwrap().enumerated, "34");
        assert!(dim_identity(4).unwrap().matched);
    }

    #[test]
    fn spectra() {
        let s = sym_spectrum(&p(&[1]), 3).unwrap();
        assert!(s.passed);
        assert_eq!(s.multiplicities["[2,1]"], Q::one());
        assert_eq!(s.multiplicities["[3]"], Q::one());
        assert_eq!(s.multiplicities["[1,1,1]"], Q::zero());
        assert!(sym_spectrum(&p(&[2, 1]), 3).unwrap().passed);
        assert!(sym_spectrum(&Partition::empty(), 2).unwrap().passed);
        let ml = Multipartition::trivial_slot(2, p(&[1]));
        assert!(wreath_spectrum(&ml, 2, &z2()).unwrap().passed);
    }

    #[test]
    fn cross_checks_small() {
        assert!(trace_crosscheck(3).unwrap().passed);
        assert!(wreath_trace_crosscheck(2, &z2()).unwrap().passed);
        let c = centralizer_crosscheck(2, &Arc::new(FiniteGroup::trivial())).unwrap();
        assert!(c.passed, "{:?}", c.first_failure());
        assert!(psharp_round_trip(3, &[1, -2, 0, 3, 1, 0, 0]).unwrap().passed);
    }

    #[test]
    fn ratios() {
        let t = ratio_trend(&p(&[2, 1]), &[5, 6, 10, 40]).unwrap();
        assert!(t.increasing);
    }
}
