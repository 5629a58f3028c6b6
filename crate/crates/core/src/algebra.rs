//! Semigroup algebras `ℚ[Γ(n,G)]` with exact coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::SparseEchelon;
use crate::monomial::{closed_form_count, enumerate, EnumKind, MonomialMatrix};
use crate::rational::Q;

pub const MAX_CENTRALIZER_SIZE: usize = 5;
pub const MAX_CENTRALIZER_AMBIENT: u128 = 60_000;

#[derive(Clone)]
pub struct AlgebraElement {
    size: usize,
    group: Arc<FiniteGroup>,
    terms: HashMap<MonomialMatrix, Q>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && same_group(&self.group, &other.group) && self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl AlgebraElement {
    pub fn zero(size: usize, group: Arc<FiniteGroup>) -> Self {
        AlgebraElement {
            size,
            group,
            terms: HashMap::new(),
        }
    }

    pub fn one(size: usize, group: Arc<FiniteGroup>) -> Self {
        Self::basis(MonomialMatrix::identity(size), group)
    }

    pub fn scalar(c: Q, size: usize, group: Arc<FiniteGroup>) -> Self {
        let mut x = Self::zero(size, group);
        x.add_term(MonomialMatrix::identity(size), c);
        x
    }

    pub fn basis(m: MonomialMatrix, group: Arc<FiniteGroup>) -> Self {
        let mut x = Self::zero(m.size(), group);
        x.terms.insert(m, Q::one());
        x
    }

    pub fn from_terms(
        size: usize,
        group: Arc<FiniteGroup>,
        terms: impl IntoIterator<Item = (MonomialMatrix, Q)>,
    ) -> Result<Self> {
        let mut x = Self::zero(size, group);
        for (m, c) in terms {
            if m.size() != size {
                return Err(Error::SizeMismatch {
                    left: size,
                    right: m.size(),
                });
            }
            m.check_group(&x.group)?;
            x.add_term(m, c);
        }
        Ok(x)
    }

    /// `ε̄_i = 1 − ε_i`
    pub fn eps_bar(size: usize, i: usize, group: Arc<FiniteGroup>) -> Self {
        let mut x = Self::one(size, group);
        x.add_term(MonomialMatrix::eps(size, &[i]), -Q::one());
        x
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn terms(&self) -> &HashMap<MonomialMatrix, Q> {
        &self.terms
    }

    /// Terms in a deterministic order.
    pub fn sorted_terms(&self) -> Vec<(MonomialMatrix, Q)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then(a.0.cmp(&b.0)));
        v
    }

    pub fn coefficient(&self, m: &MonomialMatrix) -> Q {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: MonomialMatrix, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// Degree filtration; `None` stands for the zero element.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(MonomialMatrix::degree).max()
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.size != other.size {
            return Err(Error::SizeMismatch {
                left: self.size,
                right: other.size,
            });
        }
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch {
                left: self.group.name().into(),
                right: other.group.name().into(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut acc: HashMap<MonomialMatrix, Q> = HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let k = a.compose_unchecked(b, &self.group);
                let v = x * y;
                match acc.entry(k) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += v,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(v);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(AlgebraElement {
            size: self.size,
            group: self.group.clone(),
            terms: acc,
        })
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.size, self.group.clone());
        }
        AlgebraElement {
            size: self.size,
            group: self.group.clone(),
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.size, self.group.clone()), |acc, _| &acc * self)
    }

    /// `xy − yx`
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    pub fn star(&self) -> Self {
        AlgebraElement {
            size: self.size,
            group: self.group.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.star(&self.group), v.clone())).collect(),
        }
    }

    /// Linear extension of the corner map; colliding keys add.
    pub fn truncate(&self, r: usize) -> Result<Self> {
        let mut out = Self::zero(r, self.group.clone());
        if r == 0 || r > self.size {
            return Err(Error::invalid(format!("truncation size {r} must be in 1..={}", self.size)));
        }
        for (m, c) in &self.terms {
            out.add_term(m.truncate(r)?, c.clone());
        }
        Ok(out)
    }

    pub fn shift(&self) -> Result<Self> {
        let mut out = Self::zero(self.size + 1, self.group.clone());
        for (m, c) in &self.terms {
            out.add_term(m.shift()?, c.clone());
        }
        Ok(out)
    }

    pub fn embed(&self, n: usize) -> Result<Self> {
        let mut out = Self::zero(n, self.group.clone());
        for (m, c) in &self.terms {
            out.add_term(m.embed(n)?, c.clone());
        }
        Ok(out)
    }

    /// Canonical text `3/2 * (1,3) + -1 * eps{2}`; zero prints as `0`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.sorted_terms()
            .iter()
            .map(|(m, c)| format!("{c} * {m}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses the text form written by [`AlgebraElement::to_text`].
    pub fn parse(text: &str, size: usize, group: Arc<FiniteGroup>) -> Result<Self> {
        let mut out = Self::zero(size, group);
        let t = text.trim();
        if t == "0" {
            return Ok(out);
        }
        for term in split_terms(t) {
            let (c, m) = match term.split_once('*') {
                Some((c, m)) => (c.trim().parse::<Q>()?, m.trim()),
                None => (Q::one(), term.trim()),
            };
            let m = MonomialMatrix::parse(m, size, &out.group)?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

// split on " + " at bracket depth zero
fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        match b[i] {
            b'(' | b'[' | b'{' => depth += 1,
            b')' | b']' | b'}' => depth -= 1,
            b'+' if depth == 0 && i > 0 && b[i - 1] == b' ' => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}[{}]<{}>", self.size, self.group.name(), self.to_text())
    }
}

// Operator forms panic on size or group mismatch; use the checked_* methods
// for fallible arithmetic.
impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_add(rhs).expect("algebra addition")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_sub(rhs).expect("algebra subtraction")
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_mul(rhs).expect("algebra multiplication")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&-Q::one())
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: AlgebraElement) -> AlgebraElement {
        &self + &rhs
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: AlgebraElement) -> AlgebraElement {
        &self - &rhs
    }
}

impl Mul for AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: AlgebraElement) -> AlgebraElement {
        &self * &rhs
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Centralizer of the unit group `G_m(n)`.
    Group,
    /// Centralizer of the monoid `Γ_m(n,G)`.
    Semigroup,
}

/// Centralizer of the copy of `Γ(n−m,G)` (or `G(n−m)`) acting on `{m+1..n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CentralizerSpec {
    pub m: usize,
    pub flavor: Flavor,
}

impl CentralizerSpec {
    pub fn group(m: usize) -> Self {
        CentralizerSpec { m, flavor: Flavor::Group }
    }

    pub fn semigroup(m: usize) -> Self {
        CentralizerSpec {
            m,
            flavor: Flavor::Semigroup,
        }
    }
}

/// Generating set of the monoid whose centralizer is described by `spec`.
pub fn centralizer_generators(n: usize, spec: CentralizerSpec, group: &FiniteGroup) -> Vec<MonomialMatrix> {
    let m = spec.m;
    if m >= n {
        return Vec::new();
    }
    let mut gens: Vec<MonomialMatrix> = (m + 1..n).map(|j| MonomialMatrix::transposition(n, j, j + 1)).collect();
    if spec.flavor == Flavor::Semigroup {
        gens.push(MonomialMatrix::eps(n, &[m + 1]));
    }
    gens.extend(group.generators().iter().map(|&g| MonomialMatrix::diag_label(n, m + 1, g)));
    gens
}

#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    Member,
    NotMember {
        generator: MonomialMatrix,
        commutator: AlgebraElement,
    },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member)
    }
}

pub fn is_in_centralizer(x: &AlgebraElement, spec: CentralizerSpec) -> Result<Membership> {
    if spec.m > x.size() {
        return Err(Error::invalid(format!(
            "centralizer level {} exceeds size {}",
            spec.m,
            x.size()
        )));
    }
    for g in centralizer_generators(x.size(), spec, x.group()) {
        let gx = AlgebraElement::basis(g, x.group().clone());
        let c = gx.commutator(x)?;
        if !c.is_zero() {
            return Ok(Membership::NotMember {
                generator: g,
                commutator: c,
            });
        }
    }
    Ok(Membership::Member)
}

/// Brute-force membership: commutation with every element of `Γ_m(n,G)` (or `G_m(n)`).
pub fn is_in_centralizer_brute_force(x: &AlgebraElement, spec: CentralizerSpec) -> Result<bool> {
    let n = x.size();
    let k = n - spec.m;
    if k == 0 {
        return Ok(true);
    }
    let kind = match spec.flavor {
        Flavor::Group => EnumKind::Wreath(k),
        Flavor::Semigroup => EnumKind::Rook(k),
    };
    for s in enumerate(kind, x.group())? {
        let lifted = s.shift_by(spec.m)?;
        let gx = AlgebraElement::basis(lifted, x.group().clone());
        if !gx.commutator(x)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

impl MonomialMatrix {
    /// Applies the shift `k` times.
    pub fn shift_by(&self, k: usize) -> Result<MonomialMatrix> {
        (0..k).try_fold(*self, |a, _| a.shift())
    }
}

/// Exact basis of the centralizer subspace of `ℚ[Γ(n,G)]` (group flavor:
/// of `ℚ[G(n)]`), by conjugation orbits under the unit generators followed by
/// an exact solve of the remaining idempotent constraint.
pub fn centralizer_basis(n: usize, spec: CentralizerSpec, group: Arc<FiniteGroup>) -> Result<Vec<AlgebraElement>> {
    if n > MAX_CENTRALIZER_SIZE {
        return Err(Error::bound("centralizer size", n, MAX_CENTRALIZER_SIZE));
    }
    if spec.m > n {
        return Err(Error::invalid(format!("centralizer level {} exceeds size {n}", spec.m)));
    }
    let kind = match spec.flavor {
        Flavor::Group => EnumKind::Wreath(n),
        Flavor::Semigroup => EnumKind::Rook(n),
    };
    let count = closed_form_count(kind, group.order());
    if count > MAX_CENTRALIZER_AMBIENT {
        return Err(Error::bound("centralizer ambient dimension", count, MAX_CENTRALIZER_AMBIENT));
    }
    let ambient: Vec<MonomialMatrix> = enumerate(kind, &group)?.collect();
    let index: HashMap<MonomialMatrix, usize> = ambient.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let gens = centralizer_generators(n, spec, &group);
    let (units, idems): (Vec<_>, Vec<_>) = gens.into_iter().partition(MonomialMatrix::is_unit);

    // orbits of x ↦ u x u⁻¹
    let mut orbit_of = vec![usize::MAX; ambient.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..ambient.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = vec![start];
        orbit_of[start] = id;
        let mut i = 0;
        while i < members.len() {
            let x = ambient[members[i]];
            for u in &units {
                let y = u.compose_unchecked(&x, &group).compose_unchecked(&u.star(&group), &group);
                let j = index[&y];
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    members.push(j);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        orbits.push(members);
    }

    let orbit_sum = |coeffs: &[(usize, Q)]| -> AlgebraElement {
        let mut x = AlgebraElement::zero(n, group.clone());
        for (o, c) in coeffs {
            for &i in &orbits[*o] {
                x.add_term(ambient[i], c.clone());
            }
        }
        x
    };

    if idems.is_empty() {
        return Ok((0..orbits.len()).map(|o| orbit_sum(&[(o, Q::one())])).collect());
    }

    // commutator of each idempotent with each orbit sum, collected as equations
    // over orbit coefficients, one per resulting monomial
    let mut equations: BTreeMap<(usize, usize), BTreeMap<usize, Q>> = BTreeMap::new();
    for (gi, e) in idems.iter().enumerate() {
        for (o, members) in orbits.iter().enumerate() {
            let mut com: HashMap<usize, Q> = HashMap::new();
            for &i in members {
                let x = ambient[i];
                *com.entry(index[&e.compose_unchecked(&x, &group)]).or_default() += Q::one();
                *com.entry(index[&x.compose_unchecked(e, &group)]).or_default() -= Q::one();
            }
            for (k, v) in com {
                if !v.is_zero() {
                    equations.entry((gi, k)).or_default().insert(o, v);
                }
            }
        }
    }
    let mut ech = SparseEchelon::new(orbits.len());
    for (_, row) in equations {
        ech.insert(row);
    }
    Ok(ech
        .nullspace()
        .into_iter()
        .map(|v| {
            let coeffs: Vec<(usize, Q)> = v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            orbit_sum(&coeffs)
        })
        .collect())
}
