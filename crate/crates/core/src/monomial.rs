//! Elements of the monoids `Γ(n,G)`: partial injections on `{1..n}` whose
//! entries carry labels from a finite group.
//!
//! Storage is column keyed: `rows[j]` is the row hit by column `j` (or empty)
//! and `labels[j]` its group label. Public indices are 1-based, matching
//! matrix notation.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub const MAX_SIZE: usize = 16;
const EMPTY: u8 = u8::MAX;

pub const MAX_ENUM_SIZE: usize = 8;
pub const MAX_ENUM_COUNT: u128 = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialMatrix {
    size: u8,
    rows: [u8; MAX_SIZE],
    labels: [u8; MAX_SIZE],
}

/// A letter of the canonical factorization `γ = P_σ · h · ε_I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    /// Adjacent transposition `(i, i+1)`.
    Swap(usize),
    /// Diagonal unit with label `g` at position `i`.
    Label { g: usize, at: usize },
    /// The idempotent `ε_i`.
    Eps(usize),
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_SIZE {
        return Err(Error::bound("matrix size", n, format!("1..={MAX_SIZE}")));
    }
    Ok(())
}

impl MonomialMatrix {
    pub fn identity(n: usize) -> MonomialMatrix {
        assert!((1..=MAX_SIZE).contains(&n), "size {n} out of range");
        let mut m = MonomialMatrix {
            size: n as u8,
            rows: [EMPTY; MAX_SIZE],
            labels: [0; MAX_SIZE],
        };
        for j in 0..n {
            m.rows[j] = j as u8;
        }
        m
    }

    /// The matrix with no nonzero entries.
    pub fn zero_matrix(n: usize) -> MonomialMatrix {
        assert!((1..=MAX_SIZE).contains(&n), "size {n} out of range");
        MonomialMatrix {
            size: n as u8,
            rows: [EMPTY; MAX_SIZE],
            labels: [0; MAX_SIZE],
        }
    }

    /// Builds from column data: `cols[j-1] = Some((i, g))` puts label `g` at row `i`.
    pub fn from_columns(cols: &[Option<(usize, usize)>]) -> Result<MonomialMatrix> {
        let n = cols.len();
        check_size(n)?;
        let mut m = MonomialMatrix::zero_matrix(n);
        let mut used = [false; MAX_SIZE];
        for (j, c) in cols.iter().enumerate() {
            if let Some((i, g)) = *c {
                if i == 0 || i > n {
                    return Err(Error::invalid(format!("row {i} out of range 1..={n}")));
                }
                if used[i - 1] {
                    return Err(Error::invalid(format!("row {i} used twice")));
                }
                if g > u8::MAX as usize - 1 {
                    return Err(Error::invalid(format!("label {g} too large")));
                }
                used[i - 1] = true;
                m.rows[j] = (i - 1) as u8;
                m.labels[j] = g as u8;
            }
        }
        Ok(m)
    }

    /// The permutation matrix of `σ` given by its images `perm[j-1] = σ(j)` (1-based).
    pub fn permutation(perm: &[usize]) -> Result<MonomialMatrix> {
        let cols: Vec<_> = perm.iter().map(|&i| Some((i, 0))).collect();
        Self::from_columns(&cols)
    }

    /// Transposition `(i, j)` in `S(n)`.
    pub fn transposition(n: usize, i: usize, j: usize) -> MonomialMatrix {
        Self::cycle(n, &[i, j])
    }

    /// Cycle `i₁ → i₂ → … → i_k → i₁`.
    pub fn cycle(n: usize, points: &[usize]) -> MonomialMatrix {
        let mut m = MonomialMatrix::identity(n);
        for (a, b) in points.iter().zip(points.iter().cycle().skip(1)) {
            assert!(*a >= 1 && *a <= n && *b >= 1 && *b <= n, "cycle point out of range");
            m.rows[a - 1] = (b - 1) as u8;
        }
        m
    }

    /// `ε_I`: the identity with the diagonal zeroed on `I`.
    pub fn eps(n: usize, set: &[usize]) -> MonomialMatrix {
        let mut m = MonomialMatrix::identity(n);
        for &i in set {
            assert!(i >= 1 && i <= n, "eps index out of range");
            m.rows[i - 1] = EMPTY;
        }
        m
    }

    /// `g^(i)`: the diagonal unit with label `g` at position `i`.
    pub fn diag_label(n: usize, i: usize, g: usize) -> MonomialMatrix {
        let mut m = MonomialMatrix::identity(n);
        assert!(i >= 1 && i <= n, "label position out of range");
        m.labels[i - 1] = g as u8;
        m
    }

    pub fn size(&self) -> usize {
        self.size as usize
    }

    /// `(row, label)` of column `j` (1-based), if nonzero.
    pub fn column(&self, j: usize) -> Option<(usize, usize)> {
        let r = self.rows[j - 1];
        (r != EMPTY).then(|| (r as usize + 1, self.labels[j - 1] as usize))
    }

    pub fn rank(&self) -> usize {
        (0..self.size()).filter(|&j| self.rows[j] != EMPTY).count()
    }

    pub fn is_unit(&self) -> bool {
        self.rank() == self.size()
    }

    pub fn is_permutation(&self) -> bool {
        self.is_unit() && self.labels.iter().all(|&l| l == 0)
    }

    pub fn max_label(&self) -> usize {
        (0..self.size())
            .filter(|&j| self.rows[j] != EMPTY)
            .map(|j| self.labels[j] as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn check_group(&self, group: &FiniteGroup) -> Result<()> {
        let m = self.max_label();
        if m >= group.order() {
            return Err(Error::invalid(format!(
                "label {m} out of range for group {} of order {}",
                group.name(),
                group.order()
            )));
        }
        Ok(())
    }

    /// Matrix product `self · rhs` with labels multiplied along matched positions.
    pub fn compose(&self, rhs: &MonomialMatrix, group: &FiniteGroup) -> Result<MonomialMatrix> {
        if self.size != rhs.size {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: rhs.size(),
            });
        }
        self.check_group(group)?;
        rhs.check_group(group)?;
        Ok(self.compose_unchecked(rhs, group))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, rhs: &MonomialMatrix, group: &FiniteGroup) -> MonomialMatrix {
        let mut out = MonomialMatrix::zero_matrix(self.size());
        let trivial = group.is_trivial();
        for j in 0..self.size() {
            let k = rhs.rows[j];
            if k == EMPTY {
                continue;
            }
            let i = self.rows[k as usize];
            if i == EMPTY {
                continue;
            }
            out.rows[j] = i;
            if !trivial {
                out.labels[j] = group.mul_u8(self.labels[k as usize], rhs.labels[j]);
            }
        }
        out
    }

    /// `(γ*)_{ij} = (γ_{ji})⁻¹`
    pub fn star(&self, group: &FiniteGroup) -> MonomialMatrix {
        let mut out = MonomialMatrix::zero_matrix(self.size());
        for j in 0..self.size() {
            let i = self.rows[j];
            if i != EMPTY {
                out.rows[i as usize] = j as u8;
                out.labels[i as usize] = group.inv(self.labels[j] as usize) as u8;
            }
        }
        out
    }

    /// Number of diagonal entries different from the unit (zeros count).
    pub fn degree(&self) -> usize {
        (0..self.size())
            .filter(|&j| !(self.rows[j] == j as u8 && self.labels[j] == 0))
            .count()
    }

    /// Upper-left `r × r` corner.
    pub fn truncate(&self, r: usize) -> Result<MonomialMatrix> {
        if r == 0 || r > self.size() {
            return Err(Error::invalid(format!(
                "truncation size {r} must be in 1..={}",
                self.size()
            )));
        }
        let mut out = MonomialMatrix::zero_matrix(r);
        for j in 0..r {
            let i = self.rows[j];
            if i != EMPTY && (i as usize) < r {
                out.rows[j] = i;
                out.labels[j] = self.labels[j];
            }
        }
        Ok(out)
    }

    /// `diag(1, γ)`: prepend a fixed point and shift indices up by one.
    pub fn shift(&self) -> Result<MonomialMatrix> {
        check_size(self.size() + 1)?;
        let mut out = MonomialMatrix::identity(self.size() + 1);
        for j in 0..self.size() {
            let i = self.rows[j];
            out.rows[j + 1] = if i == EMPTY { EMPTY } else { i + 1 };
            out.labels[j + 1] = self.labels[j];
        }
        Ok(out)
    }

    /// `[γ 0; 0 1]` of size `n`.
    pub fn embed(&self, n: usize) -> Result<MonomialMatrix> {
        if n < self.size() {
            return Err(Error::invalid(format!("cannot embed size {} into {n}", self.size())));
        }
        check_size(n)?;
        let mut out = MonomialMatrix::identity(n);
        out.rows[..self.size()].copy_from_slice(&self.rows[..self.size()]);
        out.labels[..self.size()].copy_from_slice(&self.labels[..self.size()]);
        Ok(out)
    }

    /// The permutation `σ` of `P_σ · h · ε_I`: agrees with the matrix on its
    /// domain and maps the empty columns to the empty rows in increasing order.
    /// Returned as 0-based images.
    pub fn canonical_permutation(&self) -> Vec<usize> {
        let n = self.size();
        let mut hit = [false; MAX_SIZE];
        for j in 0..n {
            if self.rows[j] != EMPTY {
                hit[self.rows[j] as usize] = true;
            }
        }
        let mut free_rows = (0..n).filter(|&i| !hit[i]);
        (0..n)
            .map(|j| match self.rows[j] {
                EMPTY => free_rows.next().expect("balanced"),
                i => i as usize,
            })
            .collect()
    }

    /// Empty columns (1-based), i.e. the set `I` of `P_σ · h · ε_I`.
    pub fn empty_columns(&self) -> Vec<usize> {
        (0..self.size()).filter(|&j| self.rows[j] == EMPTY).map(|j| j + 1).collect()
    }

    /// Deterministic word with `γ = w₁ · w₂ ⋯`: adjacent transpositions for
    /// `P_σ`, then diagonal labels, then idempotents.
    pub fn factorize(&self) -> Vec<Letter> {
        let sigma = self.canonical_permutation();
        let mut word = Vec::new();
        // bubble sort σ into the identity by right multiplication with swaps:
        // σ · s_a₁ ⋯ s_a_L = id  ⇒  σ = s_a_L ⋯ s_a₁
        let mut cur = sigma.clone();
        let mut right = Vec::new();
        let n = cur.len();
        for pass in 0..n {
            for j in 0..n.saturating_sub(1 + pass) {
                if cur[j] > cur[j + 1] {
                    cur.swap(j, j + 1);
                    right.push(j + 1);
                }
            }
        }
        word.extend(right.iter().rev().map(|&a| Letter::Swap(a)));
        for j in 0..n {
            if self.rows[j] != EMPTY && self.labels[j] != 0 {
                word.push(Letter::Label {
                    g: self.labels[j] as usize,
                    at: j + 1,
                });
            }
        }
        word.extend(self.empty_columns().into_iter().map(Letter::Eps));
        word
    }

    pub fn letter_matrix(n: usize, letter: Letter) -> MonomialMatrix {
        match letter {
            Letter::Swap(a) => MonomialMatrix::transposition(n, a, a + 1),
            Letter::Label { g, at } => MonomialMatrix::diag_label(n, at, g),
            Letter::Eps(i) => MonomialMatrix::eps(n, &[i]),
        }
    }

    /// Text form `(1,3)[g2@1] eps{2}`; the identity prints as `e`.
    pub fn to_text(&self) -> String {
        let sigma = self.canonical_permutation();
        let n = self.size();
        let mut cycles = String::new();
        let mut seen = [false; MAX_SIZE];
        for s in 0..n {
            if seen[s] || sigma[s] == s {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x + 1);
                x = sigma[x];
            }
            cycles.push_str(&format!("({})", c.iter().join(",")));
        }
        let labels: Vec<String> = (0..n)
            .filter(|&j| self.rows[j] != EMPTY && self.labels[j] != 0)
            .map(|j| format!("g{}@{}", self.labels[j], j + 1))
            .collect();
        let mut out = cycles;
        if !labels.is_empty() {
            out.push_str(&format!("[{}]", labels.join(",")));
        }
        let empty = self.empty_columns();
        if !empty.is_empty() {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&format!("eps{{{}}}", empty.iter().join(",")));
        }
        if out.is_empty() {
            out.push('e');
        }
        out
    }

    /// Parses the text form for a given size; the group is used to multiply labels.
    pub fn parse(text: &str, n: usize, group: &FiniteGroup) -> Result<MonomialMatrix> {
        check_size(n)?;
        let err = |offset: usize, message: &str| Error::Parse {
            offset,
            message: message.to_string(),
        };
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut acc = MonomialMatrix::identity(n);
        let mut labels = MonomialMatrix::identity(n);
        let mut eps = Vec::new();
        let read_list = |pos: &mut usize, close: u8| -> Result<Vec<String>> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos] != close {
                *pos += 1;
            }
            if *pos == bytes.len() {
                return Err(err(start, "unterminated list"));
            }
            let inner = &text[start..*pos];
            *pos += 1;
            Ok(inner
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect())
        };
        let index = |s: &str, offset: usize| -> Result<usize> {
            let v: usize = s.parse().map_err(|_| err(offset, "expected an index"))?;
            if v == 0 || v > n {
                return Err(err(offset, "index out of range"));
            }
            Ok(v)
        };
        while pos < bytes.len() {
            match bytes[pos] {
                b' ' | b'\t' => pos += 1,
                b'e' if text[pos..].starts_with("eps{") => {
                    pos += 4;
                    let at = pos;
                    for s in read_list(&mut pos, b'}')? {
                        eps.push(index(&s, at)?);
                    }
                }
                b'e' => pos += 1,
                b'(' => {
                    pos += 1;
                    let at = pos;
                    let pts: Vec<usize> = read_list(&mut pos, b')')?
                        .iter()
                        .map(|s| index(s, at))
                        .collect::<Result<_>>()?;
                    if pts.iter().unique().count() != pts.len() {
                        return Err(err(at, "repeated point in cycle"));
                    }
                    if pts.len() > 1 {
                        acc = acc.compose_unchecked(&MonomialMatrix::cycle(n, &pts), group);
                    }
                }
                b'[' => {
                    pos += 1;
                    let at = pos;
                    for item in read_list(&mut pos, b']')? {
                        let (g, i) = item
                            .strip_prefix('g')
                            .and_then(|r| r.split_once('@'))
                            .ok_or_else(|| err(at, "expected g<label>@<index>"))?;
                        let g: usize = g.parse().map_err(|_| err(at, "bad label"))?;
                        if g >= group.order() {
                            return Err(err(at, "label out of range for group"));
                        }
                        let i = index(i, at)?;
                        labels = labels.compose_unchecked(&MonomialMatrix::diag_label(n, i, g), group);
                    }
                }
                _ => return Err(err(pos, "unexpected character")),
            }
        }
        Ok(acc
            .compose_unchecked(&labels, group)
            .compose_unchecked(&MonomialMatrix::eps(n, &eps), group))
    }
}

impl fmt::Display for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}<{}>", self.size, self.to_text())
    }
}

/// Which monoid to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumKind {
    /// `S(n)`
    Symmetric(usize),
    /// `G(n) = G ≀ S(n)`
    Wreath(usize),
    /// `Γ(n, G)`
    Rook(usize),
}

/// An `ℓ × n` matrix with exactly one nonzero entry per row and at most one per column.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaMatrix {
    pub n: usize,
    /// `(column, label)` for each row, 1-based columns.
    pub rows: Vec<(usize, usize)>,
}

pub fn closed_form_count(kind: EnumKind, group_order: usize) -> u128 {
    let g = group_order as u128;
    match kind {
        EnumKind::Symmetric(n) => (1..=n as u128).product(),
        EnumKind::Wreath(n) => (1..=n as u128).product::<u128>() * g.pow(n as u32),
        EnumKind::Rook(n) => (0..=n)
            .map(|l| {
                let c = binom(n, l);
                c * c * (1..=l as u128).product::<u128>() * g.pow(l as u32)
            })
            .sum(),
    }
}

pub fn omega_count(l: usize, n: usize, group_order: usize) -> u128 {
    if l > n {
        return 0;
    }
    ((n - l + 1)..=n).map(|x| x as u128).product::<u128>() * (group_order as u128).pow(l as u32)
}

pub(crate) fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn check_enum(kind: EnumKind, group: &FiniteGroup) -> Result<()> {
    let n = match kind {
        EnumKind::Symmetric(n) | EnumKind::Wreath(n) | EnumKind::Rook(n) => n,
    };
    check_size(n)?;
    let count = closed_form_count(kind, group.order());
    match kind {
        EnumKind::Symmetric(_) | EnumKind::Rook(_) if n > MAX_ENUM_SIZE => {
            Err(Error::bound("enumeration size", n, MAX_ENUM_SIZE))
        }
        _ if count > MAX_ENUM_COUNT => Err(Error::bound("enumeration count", count, MAX_ENUM_COUNT)),
        _ => Ok(()),
    }
}

/// Exhaustive duplicate-free enumeration.
pub fn enumerate(
    kind: EnumKind,
    group: &FiniteGroup,
) -> Result<Box<dyn Iterator<Item = MonomialMatrix> + '_>> {
    check_enum(kind, group)?;
    let g = group.order();
    Ok(match kind {
        EnumKind::Symmetric(n) => Box::new((0..n).permutations(n).map(move |p| {
            let cols: Vec<_> = p.iter().map(|&i| Some((i + 1, 0))).collect();
            MonomialMatrix::from_columns(&cols).unwrap()
        })),
        EnumKind::Wreath(n) => Box::new((0..n).permutations(n).flat_map(move |p| {
            std::iter::repeat_n(0..g, n).multi_cartesian_product().map(move |labels| {
                let cols: Vec<_> = p.iter().zip(&labels).map(|(&i, &l)| Some((i + 1, l))).collect();
                MonomialMatrix::from_columns(&cols).unwrap()
            })
        })),
        EnumKind::Rook(n) => Box::new((0..=n).flat_map(move |l| {
            (0..n).combinations(l).flat_map(move |dom| {
                (0..n).permutations(l).flat_map(move |img| {
                    let dom = dom.clone();
                    std::iter::repeat_n(0..g, l).multi_cartesian_product().map(move |labels| {
                        let mut cols = vec![None; n];
                        for ((&j, &i), &lab) in dom.iter().zip(&img).zip(&labels) {
                            cols[j] = Some((i + 1, lab));
                        }
                        MonomialMatrix::from_columns(&cols).unwrap()
                    })
                })
            })
        })),
    })
}

/// All `ℓ × n` matrices of `Ω(ℓ, n, G)`.
pub fn enumerate_omega(l: usize, n: usize, group: &FiniteGroup) -> Result<Vec<OmegaMatrix>> {
    let count = omega_count(l, n, group.order());
    if count > MAX_ENUM_COUNT {
        return Err(Error::bound("enumeration count", count, MAX_ENUM_COUNT));
    }
    let g = group.order();
    let mut out = Vec::with_capacity(count as usize);
    for cols in (1..=n).permutations(l) {
        for labels in std::iter::repeat_n(0..g, l).multi_cartesian_product() {
            out.push(OmegaMatrix {
                n,
                rows: cols.iter().copied().zip(labels).collect(),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn triv() -> FiniteGroup {
        FiniteGroup::trivial()
    }

    #[test]
    fn compose_examples() {
        let g = triv();
        let t = MonomialMatrix::transposition(2, 1, 2);
        assert_eq!(t.compose(&t, &g).unwrap(), MonomialMatrix::identity(2));
        let p = MonomialMatrix::eps(2, &[1]).compose(&t, &g).unwrap();
        assert_eq!(p.column(1), Some((2, 0)));
        assert_eq!(p.column(2), None);
        let z2 = FiniteGroup::builtin("Z2").unwrap();
        let h = MonomialMatrix::diag_label(1, 1, 1);
        assert_eq!(h.compose(&h, &z2).unwrap(), MonomialMatrix::identity(1));
        assert!(matches!(
            t.compose(&MonomialMatrix::identity(3), &g),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(h.compose(&h, &g).is_err());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(MonomialMatrix::identity(5).degree(), 0);
        assert_eq!(MonomialMatrix::transposition(5, 1, 2).degree(), 2);
        assert_eq!(MonomialMatrix::eps(3, &[1]).degree(), 1);
        assert_eq!(MonomialMatrix::diag_label(3, 2, 1).degree(), 1);
    }

    #[test]
    fn truncate_and_shift_examples() {
        assert_eq!(MonomialMatrix::identity(3).truncate(2).unwrap(), MonomialMatrix::identity(2));
        assert_eq!(
            MonomialMatrix::transposition(2, 1, 2).truncate(1).unwrap(),
            MonomialMatrix::eps(1, &[1])
        );
        assert_eq!(
            MonomialMatrix::transposition(3, 1, 3).truncate(2).unwrap(),
            MonomialMatrix::eps(2, &[1])
        );
        assert_eq!(
            MonomialMatrix::transposition(2, 1, 2).shift().unwrap(),
            MonomialMatrix::transposition(3, 2, 3)
        );
        assert_eq!(MonomialMatrix::eps(1, &[1]).shift().unwrap(), MonomialMatrix::eps(2, &[2]));
        assert_eq!(MonomialMatrix::identity(4).shift().unwrap(), MonomialMatrix::identity(5));
    }

    #[test]
    fn counts() {
        let g = triv();
        assert_eq!(enumerate(EnumKind::Rook(2), &g).unwrap().count(), 7);
        assert_eq!(enumerate(EnumKind::Rook(3), &g).unwrap().count(), 34);
        assert_eq!(enumerate_omega(2, 3, &g).unwrap().len(), 6);
        let z2 = FiniteGroup::builtin("Z2").unwrap();
        for n in 1..=4 {
            for kind in [EnumKind::Symmetric(n), EnumKind::Wreath(n), EnumKind::Rook(n)] {
                let all: Vec<_> = enumerate(kind, &z2).unwrap().collect();
                let set: HashSet<_> = all.iter().copied().collect();
                assert_eq!(all.len(), set.len());
                assert_eq!(all.len() as u128, closed_form_count(kind, 2));
            }
        }
        assert!(enumerate(EnumKind::Rook(9), &g).is_err());
        let s3 = FiniteGroup::builtin("S3").unwrap();
        assert!(enumerate(EnumKind::Wreath(7), &s3).is_err());
    }

    #[test]
    fn involution_and_degree_exhaustive_gamma3() {
        let g = FiniteGroup::builtin("Z2").unwrap();
        let all: Vec<_> = enumerate(EnumKind::Rook(3), &g).unwrap().collect();
        for a in &all {
            assert_eq!(a.star(&g).star(&g), *a);
            for r in 1..=3 {
                assert!(a.truncate(r).unwrap().degree() <= a.degree());
            }
            for b in &all {
                let ab = a.compose_unchecked(b, &g);
                assert!(ab.degree() <= a.degree() + b.degree());
                assert_eq!(ab.star(&g), b.star(&g).compose_unchecked(&a.star(&g), &g));
            }
        }
    }

    #[test]
    fn shift_truncation_square_exhaustive() {
        // θ_{n+1,n} ∘ ξ_{n,n+1} = ξ_{n-1,n} ∘ θ_{n,n-1}
        let g = triv();
        for n in 2..=4 {
            for a in enumerate(EnumKind::Rook(n), &g).unwrap() {
                let lhs = a.shift().unwrap().truncate(n).unwrap();
                let rhs = a.truncate(n - 1).unwrap().shift().unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn factorization_reproduces_matrix() {
        let g = FiniteGroup::builtin("Z2").unwrap();
        for n in 1..=4 {
            for a in enumerate(EnumKind::Rook(n), &g).unwrap() {
                let prod = a
                    .factorize()
                    .into_iter()
                    .fold(MonomialMatrix::identity(n), |acc, l| {
                        acc.compose_unchecked(&MonomialMatrix::letter_matrix(n, l), &g)
                    });
                assert_eq!(prod, a, "{a}");
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let g = FiniteGroup::builtin("S3").unwrap();
        for a in enumerate(EnumKind::Rook(3), &g).unwrap() {
            let t = a.to_text();
            assert_eq!(MonomialMatrix::parse(&t, 3, &g).unwrap(), a, "{t}");
        }
        let m = MonomialMatrix::parse("(1,3)[g2@1] eps{2}", 3, &g).unwrap();
        assert_eq!(m.to_text(), "(1,3)[g2@1] eps{2}");
        assert_eq!(MonomialMatrix::identity(2).to_text(), "e");
        assert!(MonomialMatrix::parse("(1,4)", 3, &g).is_err());
        assert!(MonomialMatrix::parse("[g9@1]", 3, &g).is_err());
    }

    #[test]
    fn rook_presentation_relations() {
        let g = triv();
        for n in 2..=6 {
            let s = |i| MonomialMatrix::transposition(n, i, i + 1);
            let e = |i| MonomialMatrix::eps(n, &[i]);
            let c = |a: MonomialMatrix, b: MonomialMatrix| a.compose_unchecked(&b, &g);
            let id = MonomialMatrix::identity(n);
            for i in 1..n {
                assert_eq!(c(s(i), s(i)), id);
                assert_eq!(c(s(i), e(i)), c(e(i + 1), s(i)));
                assert_eq!(c(s(i), c(e(i), e(i + 1))), c(e(i), e(i + 1)));
                for j in 1..n {
                    if i.abs_diff(j) > 1 {
                        assert_eq!(c(s(i), s(j)), c(s(j), s(i)));
                    }
                    if i.abs_diff(j) == 1 {
                        assert_eq!(c(s(i), c(s(j), s(i))), c(s(j), c(s(i), s(j))));
                    }
                }
                for j in 1..=n {
                    if j != i && j != i + 1 {
                        assert_eq!(c(s(i), e(j)), c(e(j), s(i)));
                    }
                }
            }
            for i in 1..=n {
                assert_eq!(c(e(i), e(i)), e(i));
                assert_eq!(e(i).star(&g), e(i));
                for j in 1..=n {
                    assert_eq!(c(e(i), e(j)), c(e(j), e(i)));
                }
            }
        }
    }
}
