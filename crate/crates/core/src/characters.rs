//! Symmetric-group characters, dimensions, strip combinatorics and wreath
//! product character formulas.

use std::cell::RefCell;
use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::monomial::MonomialMatrix;
use crate::partition::{partitions_of, CycleType, Multipartition, Partition};
use crate::rational::{factorial, Q};

thread_local! {
    static CHAR_MEMO: RefCell<HashMap<(Partition, Partition), BigInt>> = RefCell::new(HashMap::new());
}

/// `χ^λ_ρ` by the Murnaghan–Nakayama rule on beta-sets.
pub fn char_value(lambda: &Partition, rho: &CycleType) -> Result<BigInt> {
    if lambda.size() != rho.size() {
        return Err(Error::SizeMismatch {
            left: lambda.size(),
            right: rho.size(),
        });
    }
    Ok(mn(lambda, rho.parts()))
}

fn mn(lambda: &Partition, rho: &[usize]) -> BigInt {
    if rho.iter().all(|&k| k == 1) {
        return BigInt::from(dim_partition(lambda));
    }
    let key = (lambda.clone(), Partition::from_unsorted(rho.to_vec()));
    if let Some(v) = CHAR_MEMO.with(|m| m.borrow().get(&key).cloned()) {
        return v;
    }
    // strip the largest part first
    let k = rho[0];
    let rest = &rho[1..];
    let l = lambda.len();
    let beta: Vec<usize> = (0..l).map(|i| lambda.part(i) + (l - 1 - i)).collect();
    let mut total = BigInt::zero();
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let height = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut nb = beta.clone();
        nb[idx] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> = nb.iter().enumerate().map(|(i, &x)| x - (l - 1 - i)).collect();
        let v = mn(&Partition::from_unsorted(parts), rest);
        if height % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    CHAR_MEMO.with(|m| m.borrow_mut().insert(key, total.clone()));
    total
}

/// Hook-length formula.
pub fn dim_partition(lambda: &Partition) -> BigUint {
    let conj = lambda.conjugate();
    let hooks = lambda
        .boxes()
        .into_iter()
        .fold(BigUint::one(), |acc, (r, c)| {
            acc * BigUint::from(lambda.part(r) - c + conj.part(c) - r - 1)
        });
    factorial(lambda.size() as u64) / hooks
}

/// Cycle type of the permutation underlying a unit monomial matrix.
pub fn cycle_type(x: &MonomialMatrix) -> CycleType {
    let sigma = x.canonical_permutation();
    let mut seen = vec![false; sigma.len()];
    let mut parts = Vec::new();
    for s in 0..sigma.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut y = s;
        while !seen[y] {
            seen[y] = true;
            y = sigma[y];
            len += 1;
        }
        parts.push(len);
    }
    Partition::from_unsorted(parts)
}

/// `X_n(λ)`: partitions `ν ⊢ n` with `ν₁ ≥ λ₁ ≥ ν₂ ≥ λ₂ ≥ …`.
pub fn x_set(lambda: &Partition, n: usize) -> Result<Vec<Partition>> {
    if n <= lambda.size() {
        return Err(Error::invalid(format!("X_n needs n > |λ| = {}", lambda.size())));
    }
    let l = lambda.len();
    let mut out = Vec::new();
    fn rec(lambda: &Partition, i: usize, l: usize, rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == l + 1 {
            if rem == 0 {
                out.push(Partition::from_unsorted(cur.clone()));
            }
            return;
        }
        let lo = lambda.part(i);
        let hi = if i == 0 { usize::MAX } else { lambda.part(i - 1) };
        let mut v = lo;
        while v <= hi && v <= rem {
            cur.push(v);
            rec(lambda, i + 1, l, rem - v, cur, out);
            cur.pop();
            v += 1;
        }
    }
    rec(lambda, 0, l, n, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Down,
    Up,
}

pub fn branch(lambda: &Partition, dir: Direction) -> Result<Vec<Partition>> {
    match dir {
        Direction::Down if lambda.is_empty() => Err(Error::invalid("cannot remove a box from the empty diagram")),
        Direction::Down => Ok(lambda.remove_corners()),
        Direction::Up => Ok(lambda.add_corners()),
    }
}

/// `n!/(n₁!⋯n_r!) · Π dim ν(i) · (dim φ(i))^{n_i}`
pub fn wreath_dim(ml: &Multipartition, group: &FiniteGroup) -> BigUint {
    let n = ml.norm();
    let mut d = factorial(n as u64);
    for (psi, nu) in ml.slots().iter().enumerate() {
        let k = nu.size();
        d = d / factorial(k as u64) * dim_partition(nu) * BigUint::from(group.dim(psi)).pow(k as u32);
    }
    d
}

/// Block decomposition of a parabolic subgroup `G(n₁) × ⋯ × G(n_r)` of `G(n)`,
/// blocks occupying consecutive index ranges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parabolic {
    blocks: Vec<usize>,
}

impl Parabolic {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.iter().sum::<usize>() == 0 {
            return Err(Error::invalid("parabolic subgroup needs positive total size"));
        }
        Ok(Parabolic { blocks })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Left coset representatives: for every ordered set partition
    /// `(S₁,…,S_r)` with `|S_b| = n_b`, the permutation mapping block `b` onto
    /// `S_b` in increasing order.
    pub fn coset_representatives(&self) -> Vec<MonomialMatrix> {
        let n = self.size();
        let mut out = Vec::new();
        fn rec(blocks: &[usize], free: Vec<usize>, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let Some((&first, rest)) = blocks.split_first() else {
                out.push(acc.clone());
                return;
            };
            for chosen in free.iter().copied().combinations(first) {
                let remaining: Vec<usize> = free.iter().copied().filter(|x| !chosen.contains(x)).collect();
                let len = acc.len();
                acc.extend(&chosen);
                rec(rest, remaining, acc, out);
                acc.truncate(len);
            }
        }
        let mut images = Vec::new();
        rec(&self.blocks, (1..=n).collect(), &mut Vec::new(), &mut images);
        for img in images {
            out.push(MonomialMatrix::permutation(&img).expect("valid permutation"));
        }
        out
    }

    /// Block components if `h` lies in the subgroup.
    pub fn components(&self, h: &MonomialMatrix) -> Option<Vec<MonomialMatrix>> {
        let mut out = Vec::new();
        let mut offset = 0;
        for &b in &self.blocks {
            if b == 0 {
                continue;
            }
            let mut cols = Vec::with_capacity(b);
            for j in offset + 1..=offset + b {
                let (i, g) = h.column(j)?;
                if i <= offset || i > offset + b {
                    return None;
                }
                cols.push(Some((i - offset, g)));
            }
            out.push(MonomialMatrix::from_columns(&cols).ok()?);
            offset += b;
        }
        Some(out)
    }
}

/// `Ind_H^{G(n)} χ (x) = Σ_y χ⁰(y⁻¹ x y)` over left coset representatives `y`.
/// The class function receives the nonempty block components of an element of `H`.
pub fn induced_char_value(
    sub: &Parabolic,
    class_fn: &dyn Fn(&[MonomialMatrix]) -> Q,
    x: &MonomialMatrix,
    group: &FiniteGroup,
) -> Result<Q> {
    if x.size() != sub.size() {
        return Err(Error::SizeMismatch {
            left: sub.size(),
            right: x.size(),
        });
    }
    if !x.is_unit() {
        return Err(Error::invalid("induced characters are defined on units"));
    }
    x.check_group(group)?;
    let mut total = Q::zero();
    for y in sub.coset_representatives() {
        let h = y.star(group).compose_unchecked(x, group).compose_unchecked(&y, group);
        if let Some(parts) = sub.components(&h) {
            total += class_fn(&parts);
        }
    }
    Ok(total)
}

/// Character of `π^ν ⊗ (τ^φ)^{⊗k}` on `G(k)`: `χ^ν(σ) · Π_cycles φ(cycle product)`.
pub fn wreath_block_character(group: &FiniteGroup, phi: usize, nu: &Partition, x: &MonomialMatrix) -> Result<Q> {
    if x.size() != nu.size() {
        return Err(Error::SizeMismatch {
            left: nu.size(),
            right: x.size(),
        });
    }
    let mut value = Q::from_bigint(char_value(nu, &cycle_type(x))?);
    let n = x.size();
    let mut seen = vec![false; n];
    for s in 1..=n {
        if seen[s - 1] {
            continue;
        }
        // product g_{σ^{c−1}(s)} ⋯ g_{σ(s)} g_s
        let (mut j, mut prod) = (s, 0usize);
        while !seen[j - 1] {
            seen[j - 1] = true;
            let (i, g) = x.column(j).ok_or_else(|| Error::invalid("wreath character on a non-unit"))?;
            prod = group.mul(g, prod);
            j = i;
        }
        value *= group.char_value(phi, prod);
    }
    Ok(value)
}

/// Character of the irreducible `π^bλ` of `G(n)` via induction from the
/// parabolic indexed by its support.
pub fn wreath_char_value(ml: &Multipartition, group: &FiniteGroup, x: &MonomialMatrix) -> Result<Q> {
    let support = ml.support();
    if support.is_empty() {
        return Ok(Q::one());
    }
    let blocks: Vec<usize> = support.iter().map(|&psi| ml.get(psi).size()).collect();
    let sub = Parabolic::new(blocks)?;
    let f = |parts: &[MonomialMatrix]| -> Q {
        parts
            .iter()
            .zip(&support)
            .map(|(h, &psi)| wreath_block_character(group, psi, ml.get(psi), h).expect("sizes agree"))
            .product()
    };
    induced_char_value(&sub, &f, x, group)
}

/// `dim λ[n] / (C(n,|λ|) dim λ)`, which tends to 1 as `n` grows.
pub fn dimension_ratio(lambda: &Partition, n: usize) -> Result<Q> {
    if n < lambda.size() + lambda.first() {
        return Err(Error::invalid(format!("{lambda}[{n}] needs n >= {}", lambda.size() + lambda.first())));
    }
    let big = lambda.with_row(n)?;
    let denom = Q::binomial(n as u64, lambda.size() as u64) * Q::from(dim_partition(lambda));
    Ok(Q::from(dim_partition(&big)) / denom)
}

/// Full character table of `S(n)`: rows `λ`, columns `ρ`, both in decreasing order.
pub fn character_table(n: usize) -> (Vec<Partition>, Vec<Vec<BigInt>>) {
    let parts = partitions_of(n);
    let table = parts
        .iter()
        .map(|l| parts.iter().map(|r| mn(l, r.parts())).collect())
        .collect();
    (parts, table)
}
