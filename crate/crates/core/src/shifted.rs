//! Shifted symmetric functions: evaluation, a small expression language, and
//! exact conversion into polynomials in the `p#` generators.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::characters::{char_value, dim_partition};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::QMatrix;
use crate::partition::{multipartitions_of, multipartitions_up_to, partitions_of, partitions_up_to, Multipartition, Partition};
use crate::rational::{falling, Q};

/// `p*_{k,σ}(λ) = Σ_i ((λ_i + σ − i)^k − (σ − i)^k)`
pub fn eval_pstar(k: usize, sigma: &Q, lambda: &Partition) -> Result<Q> {
    if k == 0 {
        return Err(Error::invalid("p*_{k,σ} needs k >= 1"));
    }
    let mut s = Q::zero();
    for (i, &li) in lambda.parts().iter().enumerate() {
        let base = sigma - &Q::from(i + 1);
        s += (&base + &Q::from(li)).pow(k as u32) - base.pow(k as u32);
    }
    Ok(s)
}

/// `q_k = p*_{k,0}`
pub fn eval_q(k: usize, lambda: &Partition) -> Result<Q> {
    eval_pstar(k, &Q::zero(), lambda)
}

/// `𝔭_k = p*_{k,1}`; the first part plays the role of the index-0 variable.
pub fn eval_frakp(k: usize, lambda: &Partition) -> Result<Q> {
    eval_pstar(k, &Q::one(), lambda)
}

/// `p#_ρ(ν) = n^{↓k} χ^ν_{ρ∪1^{n−k}} / dim ν`, zero when `|ν| < |ρ|`.
pub fn eval_psharp(rho: &Partition, nu: &Partition) -> Result<Q> {
    if rho.is_empty() {
        return Err(Error::invalid("p#_ρ needs ρ nonempty"));
    }
    let (n, k) = (nu.size(), rho.size());
    if n < k {
        return Ok(Q::zero());
    }
    if rho.parts() == [1] {
        return Ok(Q::from(n));
    }
    let chi = char_value(nu, &rho.pad_ones(n))?;
    Ok(Q::frac(falling(n as u64, k as u64) * chi, BigInt::from(dim_partition(nu))))
}

/// `s*_λ(ν) = Σ_{ρ ⊢ |λ|} χ^λ_ρ / z_ρ · p#_ρ(ν)`
pub fn eval_sstar(lambda: &Partition, nu: &Partition) -> Result<Q> {
    if lambda.is_empty() {
        return Err(Error::invalid("s*_λ needs λ nonempty"));
    }
    let mut s = Q::zero();
    for rho in partitions_of(lambda.size()) {
        let chi = char_value(lambda, &rho)?;
        if chi == BigInt::from(0) {
            continue;
        }
        s += Q::frac(chi, BigInt::from(rho.z())) * eval_psharp(&rho, nu)?;
    }
    Ok(s)
}

/// `h*_k = q_k + q_1^k`
pub fn eval_hstar(k: usize, lambda: &Partition) -> Result<Q> {
    Ok(eval_q(k, lambda)? + eval_q(1, lambda)?.pow(k as u32))
}

/// `Σ_{i=0}^k (−1)^i C(k,i) n^{−i} 𝔭_{k+i}(λ[n])`, requiring `n ≥ |λ| + λ₁`.
pub fn binomial_shift_combination(k: usize, lambda: &Partition, n: usize) -> Result<Q> {
    if k == 0 {
        return Err(Error::invalid("combination needs k >= 1"));
    }
    if n < lambda.size() + lambda.first() {
        return Err(Error::invalid(format!(
            "combination needs n >= |λ| + λ₁ = {}",
            lambda.size() + lambda.first()
        )));
    }
    let grown = lambda.with_row(n)?;
    let nq = Q::from(n);
    let mut s = Q::zero();
    for i in 0..=k {
        let term = Q::binomial(k as u64, i as u64) * eval_frakp(k + i, &grown)? / nq.pow(i as u32);
        if i % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq)]
pub enum ShiftedExpr {
    Const(Q),
    Pstar { k: usize, sigma: Q },
    Psharp(Partition),
    Sstar(Partition),
    Hstar(usize),
    /// The inner function placed in the slot of character `psi`.
    Slot { psi: usize, inner: Box<ShiftedExpr> },
    Sum(Vec<ShiftedExpr>),
    Product(Vec<ShiftedExpr>),
    Neg(Box<ShiftedExpr>),
    Pow(Box<ShiftedExpr>, u32),
}

impl ShiftedExpr {
    pub fn q(k: usize) -> Self {
        ShiftedExpr::Pstar { k, sigma: Q::zero() }
    }

    pub fn frakp(k: usize) -> Self {
        ShiftedExpr::Pstar { k, sigma: Q::one() }
    }

    pub fn psharp_k(k: usize) -> Self {
        ShiftedExpr::Psharp(Partition::row(k))
    }

    pub fn slot(psi: usize, inner: ShiftedExpr) -> Self {
        ShiftedExpr::Slot {
            psi,
            inner: Box::new(inner),
        }
    }

    /// Filtration degree read off the generators.
    pub fn natural_degree(&self) -> usize {
        match self {
            ShiftedExpr::Const(_) => 0,
            ShiftedExpr::Pstar { k, .. } | ShiftedExpr::Hstar(k) => *k,
            ShiftedExpr::Psharp(p) | ShiftedExpr::Sstar(p) => p.size(),
            ShiftedExpr::Slot { inner, .. } | ShiftedExpr::Neg(inner) => inner.natural_degree(),
            ShiftedExpr::Sum(v) => v.iter().map(Self::natural_degree).max().unwrap_or(0),
            ShiftedExpr::Product(v) => v.iter().map(Self::natural_degree).sum(),
            ShiftedExpr::Pow(e, p) => e.natural_degree() * *p as usize,
        }
    }

    pub fn uses_slots(&self) -> bool {
        match self {
            ShiftedExpr::Slot { .. } => true,
            ShiftedExpr::Neg(e) | ShiftedExpr::Pow(e, _) => e.uses_slots(),
            ShiftedExpr::Sum(v) | ShiftedExpr::Product(v) => v.iter().any(Self::uses_slots),
            _ => false,
        }
    }

    pub fn eval(&self, lambda: &Partition) -> Result<Q> {
        self.eval_with(&|_| Err(Error::invalid("character slot used on a plain partition")), lambda)
    }

    /// Evaluation at a multipartition: every generator must sit inside a slot.
    pub fn eval_multi(&self, ml: &Multipartition) -> Result<Q> {
        let slot = |psi: usize| -> Result<&Partition> {
            if psi >= ml.num_slots() {
                return Err(Error::invalid(format!("slot {psi} out of range")));
            }
            Ok(ml.get(psi))
        };
        self.eval_multi_rec(&slot)
    }

    fn eval_multi_rec<'a>(&self, slot: &dyn Fn(usize) -> Result<&'a Partition>) -> Result<Q> {
        match self {
            ShiftedExpr::Const(c) => Ok(c.clone()),
            ShiftedExpr::Slot { psi, inner } => inner.eval(slot(*psi)?),
            ShiftedExpr::Sum(v) => v.iter().map(|e| e.eval_multi_rec(slot)).sum(),
            ShiftedExpr::Product(v) => v.iter().map(|e| e.eval_multi_rec(slot)).product(),
            ShiftedExpr::Neg(e) => Ok(-e.eval_multi_rec(slot)?),
            ShiftedExpr::Pow(e, p) => Ok(e.eval_multi_rec(slot)?.pow(*p)),
            _ => Err(Error::invalid(
                "generator outside a character slot evaluated on a multipartition",
            )),
        }
    }

    fn eval_with(&self, on_slot: &dyn Fn(usize) -> Result<Q>, lambda: &Partition) -> Result<Q> {
        match self {
            ShiftedExpr::Const(c) => Ok(c.clone()),
            ShiftedExpr::Pstar { k, sigma } => eval_pstar(*k, sigma, lambda),
            ShiftedExpr::Psharp(rho) => eval_psharp(rho, lambda),
            ShiftedExpr::Sstar(mu) => eval_sstar(mu, lambda),
            ShiftedExpr::Hstar(k) => eval_hstar(*k, lambda),
            ShiftedExpr::Slot { psi, .. } => on_slot(*psi),
            ShiftedExpr::Sum(v) => v.iter().map(|e| e.eval_with(on_slot, lambda)).sum(),
            ShiftedExpr::Product(v) => v.iter().map(|e| e.eval_with(on_slot, lambda)).product(),
            ShiftedExpr::Neg(e) => Ok(-e.eval_with(on_slot, lambda)?),
            ShiftedExpr::Pow(e, p) => Ok(e.eval_with(on_slot, lambda)?.pow(*p)),
        }
    }
}

impl fmt::Display for ShiftedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShiftedExpr::Const(c) => write!(f, "{c}"),
            ShiftedExpr::Pstar { k, sigma } if sigma.is_zero() => write!(f, "q({k})"),
            ShiftedExpr::Pstar { k, sigma } if sigma.is_one() => write!(f, "frakp({k})"),
            ShiftedExpr::Pstar { k, sigma } => write!(f, "pstar({k},{sigma})"),
            ShiftedExpr::Psharp(p) => write!(f, "psharp({p})"),
            ShiftedExpr::Sstar(p) => write!(f, "sstar({p})"),
            ShiftedExpr::Hstar(k) => write!(f, "hstar({k})"),
            ShiftedExpr::Slot { psi, inner } => write!(f, "slot({psi},{inner})"),
            ShiftedExpr::Sum(v) => {
                let s: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "({})", s.join(" + "))
            }
            ShiftedExpr::Product(v) => {
                let s: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "{}", s.join("*"))
            }
            ShiftedExpr::Neg(e) => write!(f, "-({e})"),
            ShiftedExpr::Pow(e, p) => write!(f, "({e})^{p}"),
        }
    }
}

/// A shifted symmetric function with a declared filtration-degree bound.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftedFunction {
    pub expr: ShiftedExpr,
    pub degree_bound: usize,
}

impl ShiftedFunction {
    pub fn new(expr: ShiftedExpr) -> Self {
        let degree_bound = expr.natural_degree();
        ShiftedFunction { expr, degree_bound }
    }

    pub fn with_bound(expr: ShiftedExpr, degree_bound: usize) -> Self {
        ShiftedFunction { expr, degree_bound }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Self::new(parse_expr(text)?))
    }

    pub fn eval(&self, lambda: &Partition) -> Result<Q> {
        self.expr.eval(lambda)
    }

    pub fn eval_multi(&self, ml: &Multipartition) -> Result<Q> {
        self.expr.eval_multi(ml)
    }
}

impl fmt::Display for ShiftedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr)
    }
}

/// A `p#` generator `p#_{k,ψ}`; plain functions use `psi = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PsharpVar {
    pub k: usize,
    pub psi: usize,
}

/// Polynomial in `p#` generators; keys are sorted monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PsharpPolynomial {
    pub terms: BTreeMap<Vec<PsharpVar>, Q>,
    pub degree_bound: usize,
    pub wreath: bool,
}

impl PsharpPolynomial {
    pub fn weighted_degree(mono: &[PsharpVar]) -> usize {
        mono.iter().map(|v| v.k).sum()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| Self::weighted_degree(m)).max()
    }

    pub fn eval(&self, lambda: &Partition) -> Result<Q> {
        let mut s = Q::zero();
        for (mono, c) in &self.terms {
            let mut v = c.clone();
            for var in mono {
                v *= eval_psharp(&Partition::row(var.k), lambda)?;
            }
            s += v;
        }
        Ok(s)
    }

    pub fn eval_multi(&self, ml: &Multipartition) -> Result<Q> {
        let mut s = Q::zero();
        for (mono, c) in &self.terms {
            let mut v = c.clone();
            for var in mono {
                v *= eval_psharp(&Partition::row(var.k), ml.get(var.psi))?;
            }
            s += v;
        }
        Ok(s)
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(mono, c)| {
                if mono.is_empty() {
                    return c.to_string();
                }
                let vars: Vec<String> = mono
                    .iter()
                    .map(|v| {
                        if self.wreath {
                            format!("p#[{},{}]", v.k, v.psi)
                        } else {
                            format!("p#[{}]", v.k)
                        }
                    })
                    .collect();
                format!("{c}*{}", vars.join("*"))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn monomial_of(rho: &Partition, psi: usize) -> Vec<PsharpVar> {
    rho.parts().iter().map(|&k| PsharpVar { k, psi }).collect()
}

fn multi_monomial(ml: &Multipartition) -> Vec<PsharpVar> {
    let mut v: Vec<PsharpVar> = ml
        .slots()
        .iter()
        .enumerate()
        .flat_map(|(psi, p)| monomial_of(p, psi))
        .collect();
    v.sort();
    v
}

/// The unique `p#`-polynomial of weighted degree `≤ d` agreeing with `f`,
/// solved on all (multi)partitions of size `≤ d` and validated on size `d+1`.
pub fn express_in_psharp(f: &ShiftedFunction, group: Option<&FiniteGroup>) -> Result<PsharpPolynomial> {
    let d = f.degree_bound;
    match group {
        None => {
            let pts = partitions_up_to(d);
            let monos: Vec<Vec<PsharpVar>> = pts.iter().map(|p| monomial_of(p, 0)).collect();
            let eval_mono = |m: &[PsharpVar], nu: &Partition| -> Result<Q> {
                m.iter().map(|v| eval_psharp(&Partition::row(v.k), nu)).product()
            };
            let mut a = QMatrix::zeros(pts.len(), monos.len());
            let mut b = Vec::with_capacity(pts.len());
            for (i, nu) in pts.iter().enumerate() {
                for (j, m) in monos.iter().enumerate() {
                    a.set(i, j, eval_mono(m, nu)?);
                }
                b.push(f.eval(nu)?);
            }
            let x = a.solve(&b)?;
            let poly = PsharpPolynomial {
                terms: monos.into_iter().zip(x).filter(|(_, c)| !c.is_zero()).collect(),
                degree_bound: d,
                wreath: false,
            };
            for nu in partitions_of(d + 1) {
                let (want, got) = (f.eval(&nu)?, poly.eval(&nu)?);
                if want != got {
                    return Err(Error::DegreeBound {
                        bound: d,
                        detail: format!("{f} at {nu}: expected {want}, polynomial gives {got}"),
                    });
                }
            }
            Ok(poly)
        }
        Some(g) => {
            let r = g.num_chars();
            let pts = multipartitions_up_to(d, r);
            let monos: Vec<Vec<PsharpVar>> = pts.iter().map(multi_monomial).collect();
            let mut a = QMatrix::zeros(pts.len(), monos.len());
            let mut b = Vec::with_capacity(pts.len());
            for (i, ml) in pts.iter().enumerate() {
                for (j, m) in monos.iter().enumerate() {
                    let v: Q = m
                        .iter()
                        .map(|v| eval_psharp(&Partition::row(v.k), ml.get(v.psi)))
                        .product::<Result<Q>>()?;
                    a.set(i, j, v);
                }
                b.push(f.eval_multi(ml)?);
            }
            let x = a.solve(&b)?;
            let poly = PsharpPolynomial {
                terms: monos.into_iter().zip(x).filter(|(_, c)| !c.is_zero()).collect(),
                degree_bound: d,
                wreath: true,
            };
            for ml in multipartitions_of(d + 1, r) {
                let (want, got) = (f.eval_multi(&ml)?, poly.eval_multi(&ml)?);
                if want != got {
                    return Err(Error::DegreeBound {
                        bound: d,
                        detail: format!("{f} at {ml}: expected {want}, polynomial gives {got}"),
                    });
                }
            }
            Ok(poly)
        }
    }
}

// ---- literal parser ----

struct Parser<'a> {
    s: &'a [u8],
    text: &'a str,
    pos: usize,
}

/// Parses literals such as `pstar(3,1)`, `psharp([2,1])`, `2*hstar(2) - q(1)^2`,
/// `slot(1, hstar(2))`.
pub fn parse_expr(text: &str) -> Result<ShiftedExpr> {
    let mut p = Parser {
        s: text.as_bytes(),
        text,
        pos: 0,
    };
    let e = p.sum()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

impl Parser<'_> {
    fn err(&self, m: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: m.to_string(),
        }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn sum(&mut self) -> Result<ShiftedExpr> {
        let mut items = vec![self.product()?];
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    items.push(self.product()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    items.push(ShiftedExpr::Neg(Box::new(self.product()?)));
                }
                _ => break,
            }
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { ShiftedExpr::Sum(items) })
    }

    fn product(&mut self) -> Result<ShiftedExpr> {
        let mut items = vec![self.power()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            items.push(self.power()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { ShiftedExpr::Product(items) })
    }

    fn power(&mut self) -> Result<ShiftedExpr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.ws();
            let e = self.integer()?;
            return Ok(ShiftedExpr::Pow(Box::new(base), e as u32));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<usize> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.text[start..self.pos].parse().map_err(|_| self.err("expected an integer"))
    }

    fn rational(&mut self) -> Result<Q> {
        self.ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'/') {
            self.pos += 1;
        }
        self.text[start..self.pos].parse().map_err(|_| self.err("expected a rational"))
    }

    fn partition(&mut self) -> Result<Partition> {
        self.ws();
        if self.peek() == Some(b'[') {
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos] != b']' {
                self.pos += 1;
            }
            if self.pos == self.s.len() {
                return Err(self.err("unterminated partition"));
            }
            self.pos += 1;
            return self.text[start..self.pos].parse();
        }
        Ok(Partition::row(self.integer()?))
    }

    fn atom(&mut self) -> Result<ShiftedExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(ShiftedExpr::Neg(Box::new(self.power()?)))
            }
            Some(c) if c.is_ascii_digit() => Ok(ShiftedExpr::Const(self.rational()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = self.text[start..self.pos].to_string();
                self.expect(b'(')?;
                let e = match name.as_str() {
                    "pstar" => {
                        let k = self.integer()?;
                        self.expect(b',')?;
                        let sigma = self.rational()?;
                        ShiftedExpr::Pstar { k, sigma }
                    }
                    "q" => ShiftedExpr::q(self.integer()?),
                    "frakp" => ShiftedExpr::frakp(self.integer()?),
                    "hstar" => ShiftedExpr::Hstar(self.integer()?),
                    "psharp" => ShiftedExpr::Psharp(self.partition()?),
                    "sstar" => ShiftedExpr::Sstar(self.partition()?),
                    "slot" => {
                        let psi = self.integer()?;
                        self.expect(b',')?;
                        ShiftedExpr::slot(psi, self.sum()?)
                    }
                    _ => return Err(self.err(&format!("unknown function `{name}`"))),
                };
                match &e {
                    ShiftedExpr::Pstar { k: 0, .. } | ShiftedExpr::Hstar(0) => {
                        return Err(self.err("index must be >= 1"));
                    }
                    ShiftedExpr::Psharp(p) | ShiftedExpr::Sstar(p) if p.is_empty() => {
                        return Err(self.err("partition must be nonempty"));
                    }
                    _ => {}
                }
                self.expect(b')')?;
                Ok(e)
            }
            _ => Err(self.err("expected an expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn pstar_examples() {
        for l in partitions_up_to(5) {
            for s in [Q::zero(), Q::one(), Q::new(-3, 2)] {
                assert_eq!(eval_pstar(1, &s, &l).unwrap(), Q::from(l.size()));
            }
        }
        assert_eq!(eval_q(2, &p(&[1])).unwrap(), Q::from(-1));
        assert_eq!(eval_frakp(1, &p(&[2, 2, 1])).unwrap(), Q::from(5));
        assert!(eval_pstar(0, &Q::zero(), &p(&[1])).is_err());
    }

    #[test]
    fn psharp_examples() {
        for l in partitions_up_to(5) {
            assert_eq!(eval_psharp(&p(&[1]), &l).unwrap(), Q::from(l.size()));
        }
        assert_eq!(eval_psharp(&p(&[2]), &p(&[2, 1])).unwrap(), Q::zero());
        assert_eq!(eval_psharp(&p(&[2]), &p(&[3])).unwrap(), Q::from(6));
        assert_eq!(eval_psharp(&p(&[3]), &p(&[2])).unwrap(), Q::zero());
    }

    #[test]
    fn sstar_examples() {
        for l in partitions_up_to(4) {
            assert_eq!(eval_sstar(&p(&[1]), &l).unwrap(), Q::from(l.size()));
        }
        assert_eq!(eval_sstar(&p(&[2]), &p(&[1])).unwrap(), Q::zero());
        assert_eq!(eval_sstar(&p(&[1, 1]), &p(&[1, 1])).unwrap(), Q::from(2));
        for mu in partitions_up_to(5).into_iter().skip(1) {
            let hooks: usize = mu
                .boxes()
                .iter()
                .map(|&(r, c)| mu.part(r) - c + mu.conjugate().part(c) - r - 1)
                .product();
            assert_eq!(eval_sstar(&mu, &mu).unwrap(), Q::from(hooks));
        }
    }

    #[test]
    fn sstar_extra_vanishing() {
        for mu in partitions_up_to(4).into_iter().skip(1) {
            for nu in partitions_up_to(6) {
                let v = eval_sstar(&mu, &nu).unwrap();
                if !mu.is_contained_in(&nu) {
                    assert!(v.is_zero(), "s*_{mu}({nu}) = {v}");
                }
            }
        }
    }

    #[test]
    fn hstar_examples() {
        for l in partitions_up_to(4) {
            assert_eq!(eval_hstar(1, &l).unwrap(), Q::from(2 * l.size()));
        }
        assert_eq!(eval_hstar(2, &p(&[1])).unwrap(), Q::zero());
        assert_eq!(eval_hstar(3, &Partition::empty()).unwrap(), Q::zero());
    }

    #[test]
    fn combination_examples() {
        for n in 1..12 {
            assert_eq!(binomial_shift_combination(1, &Partition::empty(), n).unwrap(), Q::zero());
        }
        assert!(binomial_shift_combination(1, &p(&[2, 1]), 4).is_err());
    }

    #[test]
    fn express_examples() {
        let q1 = express_in_psharp(&ShiftedFunction::new(ShiftedExpr::q(1)), None).unwrap();
        assert_eq!(q1.to_text(), "1*p#[1]");
        let h2 = ShiftedFunction::new(ShiftedExpr::Hstar(2));
        let poly = express_in_psharp(&h2, None).unwrap();
        for nu in partitions_up_to(6) {
            assert_eq!(poly.eval(&nu).unwrap(), eval_hstar(2, &nu).unwrap());
        }
        let fixed = express_in_psharp(&ShiftedFunction::new(ShiftedExpr::psharp_k(2)), None).unwrap();
        assert_eq!(fixed.to_text(), "1*p#[2]");
        let h1 = express_in_psharp(&ShiftedFunction::new(ShiftedExpr::Hstar(1)), None).unwrap();
        assert_eq!(h1.to_text(), "2*p#[1]");
    }

    #[test]
    fn wrong_bound_is_reported() {
        let f = ShiftedFunction::with_bound(ShiftedExpr::Hstar(3), 2);
        assert!(matches!(express_in_psharp(&f, None), Err(Error::DegreeBound { bound: 2, .. })));
    }

    #[test]
    fn wreath_express() {
        let z2 = FiniteGroup::builtin("Z2").unwrap();
        let f = ShiftedFunction::new(parse_expr("slot(1, hstar(2)) + slot(0, q(1))*slot(1, q(1))").unwrap());
        let poly = express_in_psharp(&f, Some(&z2)).unwrap();
        for ml in multipartitions_up_to(4, 2) {
            assert_eq!(poly.eval_multi(&ml).unwrap(), f.eval_multi(&ml).unwrap());
        }
        assert!(f.eval(&p(&[1])).is_err());
    }

    #[test]
    fn parser() {
        let e = parse_expr("pstar(3,1)").unwrap();
        assert_eq!(e, ShiftedExpr::frakp(3));
        let e = parse_expr("2*hstar(2) - q(1)^2 + 1/2*psharp([2,1])").unwrap();
        let l = p(&[3, 1]);
        let want = Q::from(2) * eval_hstar(2, &l).unwrap() - eval_q(1, &l).unwrap().pow(2)
            + Q::new(1, 2) * eval_psharp(&p(&[2, 1]), &l).unwrap();
        assert_eq!(e.eval(&l).unwrap(), want);
        assert_eq!(e.natural_degree(), 3);
        assert_eq!(parse_expr("pstar(2,-1/2)").unwrap(), ShiftedExpr::Pstar { k: 2, sigma: Q::new(-1, 2) });
        for bad in ["pstar(3)", "foo(1)", "q(0)", "psharp([])", "q(1))", "q(1) +"] {
            assert!(parse_expr(bad).is_err(), "{bad}");
        }
        let round = parse_expr(&e.to_string()).unwrap();
        assert_eq!(round.eval(&l).unwrap(), want);
    }

    #[test]
    fn characters_invert_sstar() {
        for k in 1..=4 {
            let (lams, table) = crate::characters::character_table(k);
            for (ci, rho) in partitions_of(k).iter().enumerate() {
                for nu in partitions_up_to(6) {
                    let mut s = Q::zero();
                    for (li, lam) in lams.iter().enumerate() {
                        s += Q::from(table[li][ci].clone()) * eval_sstar(lam, &nu).unwrap();
                    }
                    assert_eq!(s, eval_psharp(rho, &nu).unwrap(), "rho={rho} nu={nu}");
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_partition(max: usize) -> impl Strategy<Value = Partition> {
            proptest::collection::vec(0..=max, 0..=6).prop_map(Partition::from_unsorted)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(100))]

            #[test]
            fn frakp_splits_first_row(lam in arb_partition(9), k in 1usize..=6) {
                let tail = Partition::from_unsorted(lam.parts().iter().skip(1).copied().collect());
                let want = Q::from(lam.first()).pow(k as u32) + eval_q(k, &tail).unwrap();
                prop_assert_eq!(eval_frakp(k, &lam).unwrap(), want);
            }

            #[test]
            fn frakp_is_binomial_in_q(lam in arb_partition(9), k in 1usize..=6) {
                let mut s = Q::zero();
                for j in 1..=k {
                    s += Q::binomial(k as u64, j as u64) * eval_q(j, &lam).unwrap();
                }
                prop_assert_eq!(eval_frakp(k, &lam).unwrap(), s);
            }
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn evaluate_then_solve_round_trip(
                d in 1usize..=6,
                coeffs in proptest::collection::vec(-5i64..=5, 11),
            ) {
                let monos: Vec<Partition> = partitions_up_to(d);
                let mut expr = Vec::new();
                let mut want = BTreeMap::new();
                for (i, rho) in monos.iter().enumerate().take(coeffs.len()) {
                    let c = Q::from(coeffs[i]);
                    if c.is_zero() {
                        continue;
                    }
                    let factors: Vec<ShiftedExpr> = std::iter::once(ShiftedExpr::Const(c.clone()))
                        .chain(rho.parts().iter().map(|&k| ShiftedExpr::psharp_k(k)))
                        .collect();
                    expr.push(ShiftedExpr::Product(factors));
                    want.insert(monomial_of(rho, 0), c);
                }
                let f = ShiftedFunction::with_bound(ShiftedExpr::Sum(expr), d);
                let poly = express_in_psharp(&f, None).unwrap();
                prop_assert_eq!(poly.terms, want);
            }
        }
    }
}
