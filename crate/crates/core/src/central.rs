//! Distinguished central and Jucys–Murphy-type elements, and the lift from
//! shifted symmetric functions to central elements.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::group::{ClassFunction, FiniteGroup};
use crate::monomial::MonomialMatrix;
use crate::rational::Q;
use crate::shifted::{express_in_psharp, PsharpPolynomial, PsharpVar, ShiftedExpr, ShiftedFunction};

fn trivial() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::trivial())
}

/// `g_1^{(i_1)} ⋯ g_k^{(i_k)} (i_1,…,i_k)` with the columns in `killed` emptied.
fn labeled_cycle(n: usize, idx: &[usize], labels: &[usize], killed: u32) -> MonomialMatrix {
    let k = idx.len();
    let mut cols: Vec<Option<(usize, usize)>> = (1..=n).map(|j| Some((j, 0))).collect();
    for a in 0..k {
        let next = (a + 1) % k;
        cols[idx[a] - 1] = Some((idx[next], labels[next]));
    }
    for (a, &i) in idx.iter().enumerate() {
        if killed >> a & 1 == 1 {
            cols[i - 1] = None;
        }
    }
    MonomialMatrix::from_columns(&cols).expect("valid labeled cycle")
}

/// Iterates all `k`-tuples of group elements.
fn group_tuples(order: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..k).map(|_| 0..order).multi_cartesian_product().chain(
        // multi_cartesian_product yields nothing for k = 0
        (k == 0).then(Vec::new),
    )
}

fn ordered_product(group: &FiniteGroup, labels: &[usize]) -> usize {
    // g_k ⋯ g_1
    labels.iter().fold(0, |acc, &g| group.mul(g, acc))
}

/// `z^(k)_n`: the sum of `(i_1,…,i_k)` over ordered tuples of distinct indices.
pub fn build_z(k: usize, n: usize) -> Result<AlgebraElement> {
    if k == 0 {
        return Err(Error::invalid("z^(k) needs k >= 1"));
    }
    let g = trivial();
    let mut x = AlgebraElement::zero(n, g);
    if n < k {
        return Ok(x);
    }
    if k == 1 {
        return Ok(AlgebraElement::scalar(Q::from(n), n, x.group().clone()));
    }
    let zeros = vec![0; k];
    for idx in (1..=n).permutations(k) {
        x.add_term(labeled_cycle(n, &idx, &zeros, 0), Q::one());
    }
    Ok(x)
}

/// `z^(k,ψ)_n = (dim ψ / |G|)^k Σ ψ̄(g_k⋯g_1) g_1^{(i_1)}⋯g_k^{(i_k)}(i_1,…,i_k)`
pub fn build_z_psi(k: usize, psi: usize, n: usize, group: &Arc<FiniteGroup>) -> Result<AlgebraElement> {
    if k == 0 {
        return Err(Error::invalid("z^(k,ψ) needs k >= 1"));
    }
    group.check_char(psi)?;
    let mut x = AlgebraElement::zero(n, group.clone());
    if n < k {
        return Ok(x);
    }
    let conj = ClassFunction::character_conj(group, psi)?;
    let weight = Q::new(group.dim(psi) as i64, group.order() as i64).pow(k as u32);
    for idx in (1..=n).permutations(k) {
        for labels in group_tuples(group.order(), k) {
            let c = conj.value(group, ordered_product(group, &labels));
            if c.is_zero() {
                continue;
            }
            x.add_term(labeled_cycle(n, &idx, &labels, 0), c * &weight);
        }
    }
    Ok(x)
}

/// `Δ_n(k,φ) = Σ φ(g_k⋯g_1) g_1^{(i_1)}⋯g_k^{(i_k)}(i_1,…,i_k) ε̄_{i_1}⋯ε̄_{i_k}`,
/// expanded in the semigroup basis. Without `φ` the group must be trivial and
/// the weight is 1, giving `Δ^(k)_n`.
pub fn build_delta(k: usize, n: usize, group: &Arc<FiniteGroup>, phi: Option<&ClassFunction>) -> Result<AlgebraElement> {
    if k == 0 {
        return Err(Error::invalid("Δ needs k >= 1"));
    }
    if phi.is_none() && !group.is_trivial() {
        return Err(Error::invalid("Δ over a nontrivial group needs a class function"));
    }
    if let Some(p) = phi {
        if p.values().len() != group.classes().len() {
            return Err(Error::invalid("class function does not match the group"));
        }
    }
    let mut x = AlgebraElement::zero(n, group.clone());
    if n < k {
        return Ok(x);
    }
    for idx in (1..=n).permutations(k) {
        for labels in group_tuples(group.order(), k) {
            let w = match phi {
                Some(p) => p.value(group, ordered_product(group, &labels)).clone(),
                None => Q::one(),
            };
            if w.is_zero() {
                continue;
            }
            for killed in 0u32..1 << k {
                let c = if killed.count_ones() % 2 == 0 { w.clone() } else { -&w };
                x.add_term(labeled_cycle(n, &idx, &labels, killed), c);
            }
        }
    }
    Ok(x)
}

/// `u_{i|n}(G) = Σ_{j>i} Σ_g g^{(i)}(g⁻¹)^{(j)}(i,j) ε̄_i ε̄_j`; zero for `n ≤ i`.
pub fn build_u(i: usize, n: usize, group: &Arc<FiniteGroup>) -> Result<AlgebraElement> {
    if i == 0 {
        return Err(Error::invalid("u_i needs i >= 1"));
    }
    let mut x = AlgebraElement::zero(n, group.clone());
    for j in i + 1..=n {
        for g in 0..group.order() {
            let labels = [g, group.inv(g)];
            for killed in 0u32..4 {
                let c = if killed.count_ones() % 2 == 0 { Q::one() } else { -Q::one() };
                x.add_term(labeled_cycle(n, &[i, j], &labels, killed), c);
            }
        }
    }
    Ok(x)
}

/// Substitutes `p#_{k,ψ} ↦ z^(k,ψ)_n` into polynomials, caching the generators
/// and partial products.
pub struct Lifter {
    n: usize,
    group: Arc<FiniteGroup>,
    generators: HashMap<PsharpVar, AlgebraElement>,
    products: HashMap<Vec<PsharpVar>, AlgebraElement>,
}

impl Lifter {
    pub fn new(n: usize, group: Arc<FiniteGroup>) -> Self {
        Lifter {
            n,
            group,
            generators: HashMap::new(),
            products: HashMap::new(),
        }
    }

    fn generator(&mut self, v: PsharpVar) -> Result<AlgebraElement> {
        if let Some(x) = self.generators.get(&v) {
            return Ok(x.clone());
        }
        let x = if self.group.is_trivial() {
            let z = build_z(v.k, self.n)?;
            AlgebraElement::from_terms(self.n, self.group.clone(), z.terms().iter().map(|(m, c)| (*m, c.clone())))?
        } else {
            build_z_psi(v.k, v.psi, self.n, &self.group)?
        };
        self.generators.insert(v, x.clone());
        Ok(x)
    }

    fn monomial(&mut self, mono: &[PsharpVar]) -> Result<AlgebraElement> {
        if mono.is_empty() {
            return Ok(AlgebraElement::one(self.n, self.group.clone()));
        }
        if let Some(x) = self.products.get(mono) {
            return Ok(x.clone());
        }
        let head = self.monomial(&mono[..mono.len() - 1])?;
        let last = self.generator(mono[mono.len() - 1])?;
        let x = mul_scalar_aware(&head, &last)?;
        self.products.insert(mono.to_vec(), x.clone());
        Ok(x)
    }

    pub fn lift_polynomial(&mut self, poly: &PsharpPolynomial) -> Result<AlgebraElement> {
        let mut acc = AlgebraElement::zero(self.n, self.group.clone());
        for (mono, c) in &poly.terms {
            let m = self.monomial(mono)?;
            acc = acc.checked_add(&m.scale(c))?;
        }
        Ok(acc)
    }
}

fn as_scalar(x: &AlgebraElement) -> Option<Q> {
    if x.len() == 1 {
        let id = MonomialMatrix::identity(x.size());
        let (m, c) = x.terms().iter().next()?;
        if *m == id {
            return Some(c.clone());
        }
    }
    None
}

fn mul_scalar_aware(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    if let Some(c) = as_scalar(b) {
        return Ok(a.scale(&c));
    }
    if let Some(c) = as_scalar(a) {
        return Ok(b.scale(&c));
    }
    a.checked_mul(b)
}

/// `c_n(f)`: the central element whose eigenvalue function is `f`.
pub fn lift(f: &ShiftedFunction, n: usize, group: Option<&Arc<FiniteGroup>>) -> Result<AlgebraElement> {
    let g = group.cloned().unwrap_or_else(trivial);
    let poly = express_in_psharp(f, group.filter(|g| !g.is_trivial()).map(|g| g.as_ref()))?;
    Lifter::new(n, g).lift_polynomial(&poly)
}

/// The shifted function `𝔭_j` placed where the lift expects it: plainly for the
/// trivial group, in the trivial-character slot otherwise.
pub fn frakp_for(j: usize, group: &FiniteGroup) -> ShiftedFunction {
    if group.is_trivial() {
        ShiftedFunction::new(ShiftedExpr::frakp(j))
    } else {
        ShiftedFunction::new(ShiftedExpr::slot(0, ShiftedExpr::frakp(j)))
    }
}

/// The `p#` expansions of `𝔭_k, …, 𝔭_{2k}` used by `α_{k,n}`.
pub fn alpha_polynomials(k: usize, group: &FiniteGroup) -> Result<Vec<PsharpPolynomial>> {
    let wreath = (!group.is_trivial()).then_some(group);
    (0..=k).map(|i| express_in_psharp(&frakp_for(k + i, group), wreath)).collect()
}

/// `α_{k,n} = Σ_i (−1)^i C(k,i) n^{−i} c_n(𝔭_{k+i})`
pub fn build_alpha(k: usize, n: usize, group: &Arc<FiniteGroup>) -> Result<AlgebraElement> {
    if k == 0 {
        return Err(Error::invalid("α needs k >= 1"));
    }
    let polys = alpha_polynomials(k, group)?;
    let mut lifter = Lifter::new(n, group.clone());
    let mut acc = AlgebraElement::zero(n, group.clone());
    let nq = Q::from(n);
    for (i, poly) in polys.iter().enumerate() {
        let mut c = Q::binomial(k as u64, i as u64) / nq.pow(i as u32);
        if i % 2 == 1 {
            c = -c;
        }
        acc = acc.checked_add(&lifter.lift_polynomial(poly)?.scale(&c))?;
    }
    Ok(acc)
}

/// Element families addressable by name.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Z(usize),
    ZPsi { k: usize, psi: usize },
    Delta { k: usize, phi: Option<PhiSpec> },
    U(usize),
    Alpha(usize),
    Lift(ShiftedFunction),
}

/// How a class function is named on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum PhiSpec {
    /// Indicator of the identity.
    Identity,
    /// `(dim ψ / |G|)^k ψ̄`
    Character(usize),
    Values(Vec<Q>),
}

impl PhiSpec {
    pub fn resolve(&self, group: &FiniteGroup, k: usize) -> Result<ClassFunction> {
        match self {
            PhiSpec::Identity => Ok(ClassFunction::identity_indicator(group)),
            PhiSpec::Character(psi) => {
                let w = Q::new(group.dim(*psi) as i64, group.order() as i64).pow(k as u32);
                Ok(ClassFunction::character_conj(group, *psi)?.scaled(&w))
            }
            PhiSpec::Values(v) => ClassFunction::new(group, v.clone()),
        }
    }
}

impl Family {
    /// Parses `z(k)`, `zpsi(k,psi)`, `delta(k)`, `delta(k,id)`, `delta(k,psi1)`,
    /// `delta(k,[1,0,0])`, `u(i)`, `alpha(k)`, `lift(<shifted function>)`.
    pub fn parse(text: &str) -> Result<Family> {
        let t = text.trim();
        let bad = || Error::Parse {
            offset: 0,
            message: format!("unrecognized family `{t}`"),
        };
        let open = t.find('(').ok_or_else(bad)?;
        if !t.ends_with(')') {
            return Err(bad());
        }
        let (name, args) = (&t[..open], &t[open + 1..t.len() - 1]);
        let int = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
        let fam = match name {
            "z" => Family::Z(int(args)?),
            "zpsi" => {
                let (k, psi) = args.split_once(',').ok_or_else(bad)?;
                Family::ZPsi { k: int(k)?, psi: int(psi)? }
            }
            "delta" => match args.split_once(',') {
                None => Family::Delta { k: int(args)?, phi: None },
                Some((k, phi)) => {
                    let phi = phi.trim();
                    let spec = if phi == "id" {
                        PhiSpec::Identity
                    } else if let Some(p) = phi.strip_prefix("psi") {
                        PhiSpec::Character(int(p)?)
                    } else if phi.starts_with('[') && phi.ends_with(']') {
                        let vals = phi[1..phi.len() - 1]
                            .split(',')
                            .map(|v| v.trim().parse::<Q>())
                            .collect::<Result<Vec<_>>>()?;
                        PhiSpec::Values(vals)
                    } else {
                        return Err(bad());
                    };
                    Family::Delta { k: int(k)?, phi: Some(spec) }
                }
            },
            "u" => Family::U(int(args)?),
            "alpha" => Family::Alpha(int(args)?),
            "lift" => Family::Lift(ShiftedFunction::parse(args)?),
            _ => return Err(bad()),
        };
        Ok(fam)
    }

    pub fn build(&self, n: usize, group: &Arc<FiniteGroup>) -> Result<AlgebraElement> {
        match self {
            Family::Z(k) => {
                if group.is_trivial() {
                    Lifter::new(n, group.clone()).generator(PsharpVar { k: *k, psi: 0 })
                } else {
                    Err(Error::invalid("z(k) is defined over the trivial group; use zpsi(k,psi)"))
                }
            }
            Family::ZPsi { k, psi } => build_z_psi(*k, *psi, n, group),
            Family::Delta { k, phi } => {
                let cf = phi.as_ref().map(|p| p.resolve(group, *k)).transpose()?;
                build_delta(*k, n, group, cf.as_ref())
            }
            Family::U(i) => build_u(*i, n, group),
            Family::Alpha(k) => build_alpha(*k, n, group),
            Family::Lift(f) => lift(f, n, Some(group)),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Z(k) => write!(f, "z({k})"),
            Family::ZPsi { k, psi } => write!(f, "zpsi({k},{psi})"),
            Family::Delta { k, phi: None } => write!(f, "delta({k})"),
            Family::Delta { k, phi: Some(PhiSpec::Identity) } => write!(f, "delta({k},id)"),
            Family::Delta { k, phi: Some(PhiSpec::Character(p)) } => write!(f, "delta({k},psi{p})"),
            Family::Delta { k, phi: Some(PhiSpec::Values(v)) } => {
                write!(f, "delta({k},[{}])", v.iter().map(ToString::to_string).join(","))
            }
            Family::U(i) => write!(f, "u({i})"),
            Family::Alpha(k) => write!(f, "alpha({k})"),
            Family::Lift(g) => write!(f, "lift({g})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{is_in_centralizer, CentralizerSpec};

    fn t() -> Arc<FiniteGroup> {
        trivial()
    }

    fn z2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::builtin("Z2").unwrap())
    }

    fn el(text: &str, n: usize, g: &Arc<FiniteGroup>) -> AlgebraElement {
        AlgebraElement::parse(text, n, g.clone()).unwrap()
    }

    #[test]
    fn z_examples() {
        assert_eq!(build_z(1, 4).unwrap(), AlgebraElement::scalar(Q::from(4), 4, t()));
        assert_eq!(build_z(2, 3).unwrap(), el("2 * (1,2) + 2 * (1,3) + 2 * (2,3)", 3, &t()));
        assert!(build_z(3, 2).unwrap().is_zero());
        assert_eq!(build_z(3, 3).unwrap().len(), 2);
        assert_eq!(build_z(4, 5).unwrap().degree(), Some(4));
    }

    #[test]
    fn z_psi_examples() {
        let g = z2();
        let sign = build_z_psi(1, 1, 1, &g).unwrap();
        assert_eq!(sign, el("1/2 * e + -1/2 * [g1@1]", 1, &g));
        assert_eq!(build_z_psi(1, 0, 1, &g).unwrap(), el("1/2 * e + 1/2 * [g1@1]", 1, &g));
        for (k, n) in [(1, 2), (2, 3), (3, 3)] {
            let direct = build_z(k, n).unwrap();
            let via = build_z_psi(k, 0, n, &t()).unwrap();
            assert_eq!(direct, via);
        }
        assert_eq!(build_z_psi(1, 1, 3, &g).unwrap().degree(), Some(1));
        assert!(build_z_psi(1, 2, 3, &g).is_err());
    }

    #[test]
    fn delta_examples() {
        let d = build_delta(2, 2, &t(), None).unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(d, el("2 * (1,2) + -2 * (1,2) eps{1} + -2 * (1,2) eps{2} + 2 * eps{1,2}", 2, &t()));
        let d1 = build_delta(1, 3, &t(), None).unwrap();
        assert_eq!(d1, el("3 * e + -1 * eps{1} + -1 * eps{2} + -1 * eps{3}", 3, &t()));
        assert!(build_delta(3, 2, &t(), None).unwrap().is_zero());
        assert!(build_delta(1, 2, &z2(), None).is_err());
    }

    #[test]
    fn u_examples() {
        let u = build_u(1, 2, &t()).unwrap();
        let want = el("(1,2)", 2, &t()) * AlgebraElement::eps_bar(2, 1, t()) * AlgebraElement::eps_bar(2, 2, t());
        assert_eq!(u, want);
        assert!(build_u(2, 2, &t()).unwrap().is_zero());
        let g = z2();
        let uz = build_u(1, 2, &g).unwrap();
        let mut want = AlgebraElement::zero(2, g.clone());
        for lab in ["(1,2)", "(1,2)[g1@1,g1@2]"] {
            want = want + el(lab, 2, &g) * AlgebraElement::eps_bar(2, 1, g.clone()) * AlgebraElement::eps_bar(2, 2, g.clone());
        }
        assert_eq!(uz, want);
    }

    #[test]
    fn lift_examples() {
        let f = ShiftedFunction::new(ShiftedExpr::psharp_k(2));
        assert_eq!(lift(&f, 3, None).unwrap(), build_z(2, 3).unwrap());
        let q1 = ShiftedFunction::new(ShiftedExpr::q(1));
        assert_eq!(lift(&q1, 5, None).unwrap(), AlgebraElement::scalar(Q::from(5), 5, t()));
        let h1 = ShiftedFunction::new(ShiftedExpr::Hstar(1));
        assert_eq!(lift(&h1, 4, None).unwrap(), AlgebraElement::scalar(Q::from(8), 4, t()));
    }

    #[test]
    fn centrality() {
        let center = CentralizerSpec::group(0);
        let semi = CentralizerSpec::semigroup(0);
        for n in 1..=5 {
            for k in 1..=n {
                let z = build_z(k, n).unwrap();
                assert!(is_in_centralizer(&z, center).unwrap().is_member());
                let d = build_delta(k, n, &t(), None).unwrap();
                assert!(is_in_centralizer(&d, semi).unwrap().is_member(), "Δ^({k})_{n}");
            }
            for k in 1..=2 {
                assert!(is_in_centralizer(&build_alpha(k, n, &t()).unwrap(), center).unwrap().is_member());
            }
            let f = ShiftedFunction::parse("hstar(2) + 3*sstar([2,1])").unwrap();
            assert!(is_in_centralizer(&lift(&f, n, None).unwrap(), center).unwrap().is_member());
        }
        for name in ["Z2", "S3"] {
            let g = Arc::new(FiniteGroup::builtin(name).unwrap());
            for n in 1..=3 {
                for k in 1..=n {
                    for psi in 0..g.num_chars() {
                        let z = build_z_psi(k, psi, n, &g).unwrap();
                        assert!(is_in_centralizer(&z, center).unwrap().is_member());
                        let phi = PhiSpec::Character(psi).resolve(&g, k).unwrap();
                        let d = build_delta(k, n, &g, Some(&phi)).unwrap();
                        assert!(is_in_centralizer(&d, semi).unwrap().is_member(), "{name} Δ_{n}({k},ψ{psi})");
                    }
                }
                if n <= 2 {
                    assert!(is_in_centralizer(&build_alpha(1, n, &g).unwrap(), center).unwrap().is_member());
                }
            }
        }
    }

    #[test]
    fn degrees() {
        for n in 2..=6 {
            for k in 2..=n.min(5) {
                assert_eq!(build_z(k, n).unwrap().degree(), Some(k));
            }
            assert_eq!(build_z(1, n).unwrap().degree(), Some(0));
            assert_eq!(build_u(1, n, &t()).unwrap().degree(), Some(2));
        }
        let g = z2();
        for psi in 0..2 {
            assert_eq!(build_z_psi(1, psi, 3, &g).unwrap().degree(), Some(1));
        }
        for n in 2..=5 {
            for k in 1..=2 {
                let d = build_alpha(k, n, &t()).unwrap().degree().unwrap_or(0);
                assert!(d <= 2 * k);
            }
        }
    }

    #[test]
    fn family_parse() {
        for s in ["z(3)", "zpsi(2,1)", "delta(2)", "delta(2,id)", "delta(3,psi1)", "delta(1,[1,0])", "u(1)", "alpha(2)"] {
            let f = Family::parse(s).unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!(matches!(Family::parse("lift(hstar(2))").unwrap(), Family::Lift(_)));
        assert!(Family::parse("zz(1)").is_err());
        assert!(Family::parse("z(1").is_err());
        let g = z2();
        let a = Family::parse("delta(2,id)").unwrap().build(3, &g).unwrap();
        assert_eq!(a, build_delta(2, 3, &g, Some(&ClassFunction::identity_indicator(&g))).unwrap());
    }
}
