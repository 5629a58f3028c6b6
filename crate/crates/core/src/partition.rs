//! Partitions and multipartitions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::rational::factorial;

/// Weakly decreasing positive parts; the empty list is `∅`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

/// A partition read as the cycle type of a permutation.
pub type CycleType = Partition;

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Partition> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::invalid(format!("partition parts must be positive: {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!("partition parts must be weakly decreasing: {parts:?}")));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zero parts.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// `(n)`, or `∅` for `n = 0`.
    pub fn row(n: usize) -> Partition {
        Partition::from_unsorted(vec![n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_i` with 0-based `i`, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn first(&self) -> usize {
        self.part(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first();
        Partition((0..cols).map(|c| self.0.iter().filter(|&&p| p > c).count()).collect())
    }

    /// Diagram containment `self ⊆ other`.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `λ[n]`: insert a part `n − |λ|` (sorted insertion).
    pub fn with_row(&self, n: usize) -> Result<Partition> {
        let s = self.size();
        if n < s {
            return Err(Error::invalid(format!("{self}[{n}] needs n >= {s}")));
        }
        let mut parts = self.0.clone();
        parts.push(n - s);
        Ok(Partition::from_unsorted(parts))
    }

    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Centralizer order `z_ρ = Π k^{m_k} m_k!`.
    pub fn z(&self) -> BigUint {
        self.multiplicities()
            .into_iter()
            .fold(BigUint::one(), |acc, (k, m)| acc * BigUint::from(k).pow(m as u32) * factorial(m as u64))
    }

    /// `ρ ∪ 1^{n−|ρ|}`
    pub fn pad_ones(&self, n: usize) -> Partition {
        let mut parts = self.0.clone();
        parts.extend(std::iter::repeat_n(1, n.saturating_sub(self.size())));
        Partition(parts)
    }

    /// Boxes `(row, col)` (0-based) in reading order.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
            .collect()
    }

    /// Partitions obtained by removing one corner box.
    pub fn remove_corners(&self) -> Vec<Partition> {
        (0..self.len())
            .filter(|&i| self.part(i) > self.part(i + 1))
            .map(|i| {
                let mut p = self.0.clone();
                p[i] -= 1;
                Partition::from_unsorted(p)
            })
            .collect()
    }

    /// Partitions obtained by adding one box.
    pub fn add_corners(&self) -> Vec<Partition> {
        (0..=self.len())
            .filter(|&i| i == 0 || self.part(i - 1) > self.part(i))
            .map(|i| {
                let mut p = self.0.clone();
                if i == p.len() {
                    p.push(1);
                } else {
                    p[i] += 1;
                }
                Partition(p)
            })
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.0.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        )
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Literal `[3,1,1]`; `[]` is the empty partition.
    fn from_str(s: &str) -> Result<Partition> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                offset: 0,
                message: format!("partition literal must look like [3,1,1], got `{t}`"),
            })?;
        let parts: Vec<usize> = inner
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<usize>().map_err(|_| Error::Parse {
                    offset: 0,
                    message: format!("bad part `{p}`"),
                })
            })
            .collect::<Result<_>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Partition, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size at most `n`, by size.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// One partition per irreducible character of `G`, indexed in character-table order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multipartition(Vec<Partition>);

impl Multipartition {
    pub fn new(group: &FiniteGroup, slots: BTreeMap<usize, Partition>) -> Result<Multipartition> {
        let r = group.num_chars();
        let mut v = vec![Partition::empty(); r];
        for (psi, p) in slots {
            group.check_char(psi)?;
            v[psi] = p;
        }
        Ok(Multipartition(v))
    }

    pub fn from_slots(slots: Vec<Partition>) -> Multipartition {
        Multipartition(slots)
    }

    pub fn empty(num_chars: usize) -> Multipartition {
        Multipartition(vec![Partition::empty(); num_chars])
    }

    /// Only the trivial-character slot filled.
    pub fn trivial_slot(num_chars: usize, p: Partition) -> Multipartition {
        let mut m = Self::empty(num_chars);
        m.0[0] = p;
        m
    }

    pub fn num_slots(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, psi: usize) -> &Partition {
        &self.0[psi]
    }

    pub fn slots(&self) -> &[Partition] {
        &self.0
    }

    pub fn norm(&self) -> usize {
        self.0.iter().map(Partition::size).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| !self.0[i].is_empty()).collect()
    }

    /// `bλ[n]`: the growing row goes into the trivial-character slot.
    pub fn with_row(&self, n: usize) -> Result<Multipartition> {
        let rest = self.norm() - self.0[0].size();
        if n < self.norm() {
            return Err(Error::invalid(format!("{self}[{n}] needs n >= {}", self.norm())));
        }
        let mut v = self.0.clone();
        v[0] = self.0[0].with_row(n - rest)?;
        Ok(Multipartition(v))
    }

    /// Literal `{"0":[2,1],"1":[1]}` keyed by character index.
    pub fn parse(text: &str, group: &FiniteGroup) -> Result<Multipartition> {
        let map: BTreeMap<String, Vec<usize>> = serde_json::from_str(text).map_err(|e| Error::Parse {
            offset: e.column(),
            message: format!("multipartition literal: {e}"),
        })?;
        let mut slots = BTreeMap::new();
        for (k, v) in map {
            let psi: usize = k.parse().map_err(|_| Error::Parse {
                offset: 0,
                message: format!("character key `{k}` is not an index"),
            })?;
            slots.insert(psi, Partition::new(v)?);
        }
        Multipartition::new(group, slots)
    }

    pub fn to_literal(&self) -> String {
        let items: Vec<String> = self
            .support()
            .iter()
            .map(|&i| format!("\"{i}\":{}", self.0[i]))
            .collect();
        format!("{{{}}}", items.join(","))
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl fmt::Debug for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

/// All multipartitions of norm `n` over `r` slots.
pub fn multipartitions_of(n: usize, r: usize) -> Vec<Multipartition> {
    fn rec(rem: usize, slot: usize, r: usize, cur: &mut Vec<Partition>, out: &mut Vec<Multipartition>) {
        if slot + 1 == r {
            for p in partitions_of(rem) {
                cur.push(p);
                out.push(Multipartition(cur.clone()));
                cur.pop();
            }
            return;
        }
        for k in (0..=rem).rev() {
            for p in partitions_of(k) {
                cur.push(p);
                rec(rem - k, slot + 1, r, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if r == 0 {
        return out;
    }
    rec(n, 0, r, &mut Vec::new(), &mut out);
    out
}

pub fn multipartitions_up_to(n: usize, r: usize) -> Vec<Multipartition> {
    (0..=n).flat_map(|k| multipartitions_of(k, r)).collect()
}
