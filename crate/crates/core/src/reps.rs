//! Matrix models: irreducibles of `S(n)` (Young seminormal, or orthogonal over
//! `f64`), irreducibles of `G(n)` (tensor product plus induction), and the rook
//! representations of `Γ(n,G)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use itertools::Itertools;

use crate::algebra::AlgebraElement;
use crate::characters::Parabolic;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{Mat, Scalar};
use crate::monomial::{binom, MonomialMatrix};
use crate::partition::{Multipartition, Partition};
use crate::rational::Q;

pub const MAX_SYM_SIZE: usize = 8;
pub const MAX_MODEL_DIM: usize = 6000;
const MEMO_BUDGET: usize = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymVariant {
    Seminormal,
    Orthogonal,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RepKind {
    Sym { lambda: Partition, variant: SymVariant },
    Wreath { ml: Multipartition },
    RookSym { lambda: Partition, n: usize, variant: SymVariant },
    RookWreath { ml: Multipartition, n: usize },
}

// ---- S(n) ----

struct SymBody<T> {
    n: usize,
    dim: usize,
    tableaux: Vec<Vec<(usize, usize)>>,
    /// `gens[a][t] = (diag, Some((partner, coefficient at (partner, t))))` for `s_{a+1}`.
    gens: Vec<Vec<(T, Option<(usize, T)>)>>,
}

fn standard_tableaux(lambda: &Partition) -> Vec<Vec<(usize, usize)>> {
    if lambda.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let parts = lambda.parts();
    for r in 0..parts.len() {
        let is_corner = r + 1 == parts.len() || parts[r + 1] < parts[r];
        if !is_corner {
            continue;
        }
        let mut smaller = parts.to_vec();
        smaller[r] -= 1;
        let smaller = Partition::from_unsorted(smaller);
        for mut t in standard_tableaux(&smaller) {
            t.push((r, parts[r] - 1));
            out.push(t);
        }
    }
    out
}

impl<T: Scalar> SymBody<T> {
    fn new(lambda: &Partition, variant: SymVariant) -> Result<Self> {
        let n = lambda.size();
        if n > MAX_SYM_SIZE {
            return Err(Error::bound("symmetric-group model size", n, MAX_SYM_SIZE));
        }
        let tableaux = standard_tableaux(lambda);
        let index: HashMap<Vec<(usize, usize)>, usize> =
            tableaux.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let mut gens = Vec::new();
        for a in 0..n.saturating_sub(1) {
            let mut col = Vec::with_capacity(tableaux.len());
            for t in &tableaux {
                let (p, q) = (t[a], t[a + 1]);
                let content = |(r, c): (usize, usize)| c as i64 - r as i64;
                let d = content(q) - content(p);
                let diag = T::from_q(&Q::new(1, d));
                if d.abs() == 1 {
                    col.push((diag, None));
                    continue;
                }
                let mut swapped = t.clone();
                swapped.swap(a, a + 1);
                let partner = index[&swapped];
                let rest = Q::one() - Q::new(1, d * d);
                let coef = match variant {
                    SymVariant::Seminormal => {
                        if d > 0 {
                            T::one()
                        } else {
                            T::from_q(&rest)
                        }
                    }
                    SymVariant::Orthogonal => T::sqrt_of(&rest)
                        .ok_or_else(|| Error::Unsupported("orthogonal form needs a scalar type with square roots".into()))?,
                };
                col.push((diag, Some((partner, coef))));
            }
            gens.push(col);
        }
        Ok(SymBody {
            n,
            dim: tableaux.len(),
            tableaux,
            gens,
        })
    }

    fn left_mul(&self, a: usize, m: &Mat<T>) -> Mat<T> {
        let g = &self.gens[a];
        let mut out = Mat::zeros(self.dim, m.cols());
        for i in 0..self.dim {
            let (diag, partner) = &g[i];
            for j in 0..m.cols() {
                let mut v = diag.clone() * m.get(i, j).clone();
                if let Some((p, _)) = partner {
                    // row i, column p of S holds the partner's off-diagonal coefficient
                    let coef = g[*p].1.as_ref().expect("partners are mutual").1.clone();
                    v = v + coef * m.get(*p, j).clone();
                }
                out.set(i, j, v);
            }
        }
        out
    }

    fn right_mul(&self, m: &Mat<T>, a: usize) -> Mat<T> {
        let g = &self.gens[a];
        let mut out = Mat::zeros(m.rows(), self.dim);
        for j in 0..self.dim {
            let (diag, partner) = &g[j];
            for r in 0..m.rows() {
                let mut v = m.get(r, j).clone() * diag.clone();
                if let Some((p, coef)) = partner {
                    v = v + m.get(r, *p).clone() * coef.clone();
                }
                out.set(r, j, v);
            }
        }
        out
    }

    /// Adjacent-transposition word `σ = s_{w₁} s_{w₂} ⋯` (0-based letters).
    fn word(perm: &[usize]) -> Vec<usize> {
        let mut p = perm.to_vec();
        let mut pos = vec![0; p.len()];
        let mut word = Vec::new();
        loop {
            for (j, &v) in p.iter().enumerate() {
                pos[v] = j;
            }
            let Some(a) = (0..p.len().saturating_sub(1)).find(|&a| pos[a] > pos[a + 1]) else {
                break;
            };
            word.push(a);
            for v in p.iter_mut() {
                if *v == a {
                    *v = a + 1;
                } else if *v == a + 1 {
                    *v = a;
                }
            }
        }
        word
    }

    fn perm_image(&self, perm: &[usize]) -> Mat<T> {
        let mut m = Mat::identity(self.dim);
        for &a in Self::word(perm).iter().rev() {
            m = self.left_mul(a, &m);
        }
        m
    }

    /// `Σ c_σ π(σ)` by a depth-first walk over `S(n)` along canonical reduced words.
    fn accumulate_all(&self, coeffs: &HashMap<Vec<usize>, T>, out: &mut Mat<T>) {
        fn walk<T: Scalar>(
            body: &SymBody<T>,
            perm: &mut Vec<usize>,
            m: &Mat<T>,
            coeffs: &HashMap<Vec<usize>, T>,
            out: &mut Mat<T>,
        ) {
            if let Some(c) = coeffs.get(perm.as_slice()) {
                out.add_scaled(c, m);
            }
            let n = perm.len();
            for i in 0..n.saturating_sub(1) {
                if perm[i] > perm[i + 1] {
                    continue;
                }
                perm.swap(i, i + 1);
                let last_descent = (0..n - 1).rev().find(|&j| perm[j] > perm[j + 1]);
                if last_descent == Some(i) {
                    let child = body.right_mul(m, i);
                    walk(body, perm, &child, coeffs, out);
                }
                perm.swap(i, i + 1);
            }
        }
        let mut id: Vec<usize> = (0..self.n).collect();
        walk(self, &mut id, &Mat::identity(self.dim), coeffs, out);
    }

    fn tableau_label(&self, t: usize) -> String {
        let tab = &self.tableaux[t];
        let rows = tab.iter().map(|p| p.0 + 1).max().unwrap_or(0);
        (0..rows)
            .map(|r| {
                let mut cells: Vec<(usize, usize)> =
                    tab.iter().enumerate().filter(|(_, p)| p.0 == r).map(|(e, p)| (p.1, e + 1)).collect();
                cells.sort();
                cells.iter().map(|c| c.1.to_string()).join(" ")
            })
            .join("/")
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

// ---- G(n) ----

struct WreathBlock<T> {
    sym: SymBody<T>,
    tau: Vec<Mat<T>>,
    d: usize,
    dim: usize,
}

impl<T: Scalar> WreathBlock<T> {
    /// `π^ν(σ) ⊗ (slot permutation ∘ ⊗_p τ(g_p))` for a unit `h` of `G(k)`.
    fn image(&self, h: &MonomialMatrix) -> Mat<T> {
        let k = h.size();
        let sigma = h.canonical_permutation();
        let p = self.sym.perm_image(&sigma);
        if self.d == 1 {
            let c = (1..=k).fold(T::one(), |acc, j| acc * self.tau[h.column(j).expect("unit").1].get(0, 0).clone());
            return p.scale(&c);
        }
        let d = self.d;
        let width = d.pow(k as u32);
        let mut w: Mat<T> = Mat::zeros(width, width);
        let digits = |mut x: usize| -> Vec<usize> {
            let mut v = vec![0; k];
            for slot in (0..k).rev() {
                v[slot] = x % d;
                x /= d;
            }
            v
        };
        for col in 0..width {
            let jv = digits(col);
            for src in 0..width {
                let jp = digits(src);
                let mut c = T::one();
                for slot in 0..k {
                    let g = h.column(slot + 1).expect("unit").1;
                    c = c * self.tau[g].get(jp[slot], jv[slot]).clone();
                    if c.is_zero() {
                        break;
                    }
                }
                if c.is_zero() {
                    continue;
                }
                let mut target = vec![0; k];
                for slot in 0..k {
                    target[sigma[slot]] = jp[slot];
                }
                let row = target.iter().fold(0, |acc, &x| acc * d + x);
                let cur = w.get(row, col).clone();
                w.set(row, col, cur + c);
            }
        }
        p.kron(&w)
    }
}

struct WreathBody<T> {
    blocks: Vec<WreathBlock<T>>,
    parabolic: Parabolic,
    cosets: Vec<MonomialMatrix>,
    coset_index: HashMap<Vec<u32>, usize>,
    inner_dim: usize,
    group: Arc<FiniteGroup>,
}

impl<T: Scalar> WreathBody<T> {
    fn new(ml: &Multipartition, group: Arc<FiniteGroup>) -> Result<Self> {
        let support = ml.support();
        let n = ml.norm();
        if n == 0 || n > MAX_SYM_SIZE {
            return Err(Error::bound("wreath model size", n, MAX_SYM_SIZE));
        }
        let mut blocks = Vec::new();
        for &psi in &support {
            let sym = SymBody::new(ml.get(psi), SymVariant::Seminormal)?;
            let tau: Vec<Mat<T>> = group.irrep_matrices(psi)?.iter().map(|m| m.map(T::from_q)).collect();
            let d = group.dim(psi);
            let dim = sym.dim * d.pow(ml.get(psi).size() as u32);
            blocks.push(WreathBlock { sym, tau, d, dim });
        }
        let parabolic = Parabolic::new(support.iter().map(|&p| ml.get(p).size()).collect())?;
        let cosets = parabolic.coset_representatives();
        let inner_dim: usize = blocks.iter().map(|b| b.dim).product();
        if inner_dim * cosets.len() > MAX_MODEL_DIM {
            return Err(Error::bound("wreath model dimension", inner_dim * cosets.len(), MAX_MODEL_DIM));
        }
        let mut body = WreathBody {
            blocks,
            parabolic,
            cosets,
            coset_index: HashMap::new(),
            inner_dim,
            group,
        };
        let keys: Vec<Vec<u32>> = body.cosets.iter().map(|y| body.block_masks(y)).collect();
        body.coset_index = keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
        Ok(body)
    }

    fn dim(&self) -> usize {
        self.inner_dim * self.cosets.len()
    }

    fn block_masks(&self, z: &MonomialMatrix) -> Vec<u32> {
        let mut out = Vec::new();
        let mut offset = 0;
        for &b in self.parabolic.blocks() {
            let mut mask = 0u32;
            for j in offset + 1..=offset + b {
                mask |= 1 << (z.column(j).expect("unit").0 - 1);
            }
            out.push(mask);
            offset += b;
        }
        out
    }

    fn accumulate(&self, out: &mut Mat<T>, c: &T, x: &MonomialMatrix) {
        let g = &self.group;
        for (ci, y) in self.cosets.iter().enumerate() {
            let z = x.compose_unchecked(y, g);
            let target = self.coset_index[&self.block_masks(&z)];
            let h = self.cosets[target].star(g).compose_unchecked(&z, g);
            let parts = self.parabolic.components(&h).expect("coset representative lands in the subgroup");
            let mut m = self.blocks[0].image(&parts[0]);
            for (b, part) in self.blocks.iter().zip(&parts).skip(1) {
                m = m.kron(&b.image(part));
            }
            out.add_block(target * self.inner_dim, ci * self.inner_dim, c, &m);
        }
    }

    fn label(&self, i: usize) -> String {
        let (c, v) = (i / self.inner_dim, i % self.inner_dim);
        format!("y{}:{}", self.cosets[c].to_text(), v)
    }
}

// ---- Γ(n,G) ----

struct RookBody<T> {
    n: usize,
    l: usize,
    subsets: Vec<u32>,
    index: HashMap<u32, usize>,
    inner: Option<Box<RepModel<T>>>,
    inner_dim: usize,
    memo: Mutex<HashMap<MonomialMatrix, Arc<Mat<T>>>>,
}

fn subsets_of(n: usize, l: usize) -> Vec<u32> {
    (0..n)
        .combinations(l)
        .map(|c| c.iter().fold(0u32, |m, &i| m | 1 << i))
        .collect()
}

impl<T: Scalar> RookBody<T> {
    fn new(n: usize, inner: Option<RepModel<T>>) -> Result<Self> {
        let l = inner.as_ref().map_or(0, |m| m.n);
        if l > n {
            return Err(Error::invalid(format!("rook model needs |λ| = {l} <= n = {n}")));
        }
        if n > crate::monomial::MAX_SIZE {
            return Err(Error::bound("rook model size", n, crate::monomial::MAX_SIZE));
        }
        let inner_dim = inner.as_ref().map_or(1, |m| m.dim);
        let count = binom(n, l) as usize;
        if count * inner_dim > MAX_MODEL_DIM {
            return Err(Error::bound("rook model dimension", count * inner_dim, MAX_MODEL_DIM));
        }
        let subsets = subsets_of(n, l);
        let index = subsets.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Ok(RookBody {
            n,
            l,
            subsets,
            index,
            inner: inner.map(Box::new),
            inner_dim,
            memo: Mutex::new(HashMap::new()),
        })
    }

    fn dim(&self) -> usize {
        self.subsets.len() * self.inner_dim
    }

    fn inner_image(&self, s: &MonomialMatrix) -> Result<Arc<Mat<T>>> {
        let inner = self.inner.as_ref().expect("nonempty inner representation");
        if let Some(m) = self.memo.lock().expect("memo lock").get(s) {
            return Ok(m.clone());
        }
        let m = Arc::new(inner.image(s)?);
        let mut memo = self.memo.lock().expect("memo lock");
        if (memo.len() + 1) * self.inner_dim * self.inner_dim <= MEMO_BUDGET {
            memo.insert(*s, m.clone());
        }
        Ok(m)
    }

    /// Adds `c · T(γ)` restricted to supports accepted by `rows`/`cols`.
    fn accumulate(
        &self,
        out: &mut Mat<T>,
        c: &T,
        gamma: &MonomialMatrix,
        rows: &[(u32, usize)],
        cols: &HashMap<u32, usize>,
    ) -> Result<()> {
        let n = self.n;
        // row r of γ: (column, label)
        let mut by_row = [None; crate::monomial::MAX_SIZE];
        for j in 1..=n {
            if let Some((i, g)) = gamma.column(j) {
                by_row[i - 1] = Some((j, g));
            }
        }
        if self.l == 0 {
            out.add_block(0, 0, c, &Mat::identity(1));
            return Ok(());
        }
        let mut hits = Vec::with_capacity(self.l);
        'outer: for &(mask, row_idx) in rows {
            hits.clear();
            let mut bmask = 0u32;
            for a in 0..n {
                if mask >> a & 1 == 1 {
                    match by_row[a] {
                        Some((j, g)) => {
                            hits.push((j, g));
                            bmask |= 1 << (j - 1);
                        }
                        None => continue 'outer,
                    }
                }
            }
            let Some(&col_idx) = cols.get(&bmask) else {
                continue;
            };
            // s: column p ↦ (row q, label g_q) where b_p = j_q
            let mut order: Vec<usize> = (0..self.l).collect();
            order.sort_by_key(|&q| hits[q].0);
            let mut scols = vec![None; self.l];
            for (p, &q) in order.iter().enumerate() {
                scols[p] = Some((q + 1, hits[q].1));
            }
            let s = MonomialMatrix::from_columns(&scols)?;
            let block = self.inner_image(&s)?;
            out.add_block(row_idx * self.inner_dim, col_idx * self.inner_dim, c, &block);
        }
        Ok(())
    }

    fn all_rows(&self) -> Vec<(u32, usize)> {
        self.subsets.iter().enumerate().map(|(i, &m)| (m, i)).collect()
    }

    fn label(&self, i: usize) -> String {
        let (a, v) = (i / self.inner_dim, i % self.inner_dim);
        let set = (0..self.n).filter(|&j| self.subsets[a] >> j & 1 == 1).map(|j| j + 1).join(",");
        match &self.inner {
            Some(inner) => format!("{{{set}}}|{}", inner.labels()[v]),
            None => "{}".into(),
        }
    }
}

// ---- public model ----

enum Body<T> {
    Sym(SymBody<T>),
    Wreath(WreathBody<T>),
    Rook(RookBody<T>),
}

/// A matrix model of an irreducible representation.
pub struct RepModel<T> {
    kind: RepKind,
    n: usize,
    group: Arc<FiniteGroup>,
    dim: usize,
    labels: Vec<String>,
    body: Body<T>,
}

impl<T: Scalar> RepModel<T> {
    /// `π^λ` of `S(|λ|)`.
    pub fn sym(lambda: &Partition, variant: SymVariant) -> Result<Self> {
        let body = SymBody::new(lambda, variant)?;
        let labels = (0..body.dim).map(|t| body.tableau_label(t)).collect();
        Ok(RepModel {
            kind: RepKind::Sym {
                lambda: lambda.clone(),
                variant,
            },
            n: lambda.size(),
            group: Arc::new(FiniteGroup::trivial()),
            dim: body.dim,
            labels,
            body: Body::Sym(body),
        })
    }

    /// `π^bλ` of `G(‖bλ‖)`.
    pub fn wreath(ml: &Multipartition, group: Arc<FiniteGroup>) -> Result<Self> {
        if ml.num_slots() != group.num_chars() {
            return Err(Error::invalid("multipartition does not match the group's characters"));
        }
        let body = WreathBody::new(ml, group.clone())?;
        let dim = body.dim();
        let labels = (0..dim).map(|i| body.label(i)).collect();
        Ok(RepModel {
            kind: RepKind::Wreath { ml: ml.clone() },
            n: ml.norm(),
            group,
            dim,
            labels,
            body: Body::Wreath(body),
        })
    }

    /// `T^λ_n` of `Γ(n)`.
    pub fn rook_sym(lambda: &Partition, n: usize, variant: SymVariant) -> Result<Self> {
        let inner = if lambda.is_empty() { None } else { Some(Self::sym(lambda, variant)?) };
        let body = RookBody::new(n, inner)?;
        Ok(Self::from_rook(
            RepKind::RookSym {
                lambda: lambda.clone(),
                n,
                variant,
            },
            Arc::new(FiniteGroup::trivial()),
            body,
        ))
    }

    /// `T^bλ_n` of `Γ(n,G)`.
    pub fn rook_wreath(ml: &Multipartition, n: usize, group: Arc<FiniteGroup>) -> Result<Self> {
        let inner = if ml.norm() == 0 {
            None
        } else {
            Some(Self::wreath(ml, group.clone())?)
        };
        let body = RookBody::new(n, inner)?;
        Ok(Self::from_rook(RepKind::RookWreath { ml: ml.clone(), n }, group, body))
    }

    fn from_rook(kind: RepKind, group: Arc<FiniteGroup>, body: RookBody<T>) -> Self {
        let dim = body.dim();
        let labels = (0..dim).map(|i| body.label(i)).collect();
        RepModel {
            kind,
            n: body.n,
            group,
            dim,
            labels,
            body: Body::Rook(body),
        }
    }

    pub fn kind(&self) -> &RepKind {
        &self.kind
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_rook(&self) -> bool {
        matches!(self.body, Body::Rook(_))
    }

    fn check(&self, m: &MonomialMatrix) -> Result<()> {
        if m.size() != self.n.max(1) || (self.n == 0 && !m.is_unit()) {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: m.size(),
            });
        }
        m.check_group(&self.group)?;
        match &self.body {
            Body::Sym(_) if !m.is_permutation() => Err(Error::invalid(format!("{m} is not a permutation"))),
            Body::Wreath(_) if !m.is_unit() => Err(Error::invalid(format!("{m} is not invertible"))),
            _ => Ok(()),
        }
    }

    fn accumulate(&self, out: &mut Mat<T>, c: &T, m: &MonomialMatrix) -> Result<()> {
        self.check(m)?;
        match &self.body {
            Body::Sym(b) => {
                if b.n == 0 {
                    out.add_scaled(c, &Mat::identity(1));
                } else {
                    out.add_scaled(c, &b.perm_image(&m.canonical_permutation()));
                }
            }
            Body::Wreath(b) => b.accumulate(out, c, m),
            Body::Rook(b) => {
                let rows = b.all_rows();
                b.accumulate(out, c, m, &rows, &b.index)?;
            }
        }
        Ok(())
    }

    /// Image of a single monoid element.
    pub fn image(&self, m: &MonomialMatrix) -> Result<Mat<T>> {
        let mut out = Mat::zeros(self.dim, self.dim);
        self.accumulate(&mut out, &T::one(), m)?;
        Ok(out)
    }

    /// Linear extension to the algebra.
    pub fn apply(&self, x: &AlgebraElement) -> Result<Mat<T>> {
        if x.size() != self.n.max(1) {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: x.size(),
            });
        }
        let mut out = Mat::zeros(self.dim, self.dim);
        let terms = x.sorted_terms();
        if let Body::Sym(b) = &self.body {
            let total_len: usize = terms
                .iter()
                .map(|(m, _)| SymBody::<T>::word(&m.canonical_permutation()).len())
                .sum();
            if b.n >= 2 && total_len as u128 > factorial(b.n) {
                let mut coeffs = HashMap::new();
                for (m, c) in &terms {
                    self.check(m)?;
                    coeffs.insert(m.canonical_permutation(), T::from_q(c));
                }
                b.accumulate_all(&coeffs, &mut out);
                return Ok(out);
            }
        }
        for (m, c) in &terms {
            self.accumulate(&mut out, &T::from_q(c), m)?;
        }
        Ok(out)
    }

    /// The scalar by which a central element acts; errors when the image is not scalar.
    pub fn central_eigenvalue(&self, x: &AlgebraElement) -> Result<T> {
        let m = self.apply(x)?;
        m.scalar_value()
            .ok_or_else(|| Error::NotScalar(format!("image of the element on the {}-dimensional model is not scalar", self.dim)))
    }

    fn rook(&self) -> Result<&RookBody<T>> {
        match &self.body {
            Body::Rook(b) => Ok(b),
            _ => Err(Error::invalid("compression is defined on rook models")),
        }
    }

    /// `P_r = T(ε_{r+1..N})`
    pub fn compression(&self, r: usize) -> Result<Mat<T>> {
        let b = self.rook()?;
        if r > b.n {
            return Err(Error::invalid(format!("compression level {r} exceeds {}", b.n)));
        }
        let killed: Vec<usize> = (r + 1..=b.n).collect();
        self.image(&MonomialMatrix::eps(b.n, &killed))
    }

    /// `P_r T(x) P_r` written in the basis of the level-`r` rook model
    /// (supports inside `{1..r}`, in the same order).
    pub fn apply_compressed(&self, x: &AlgebraElement, r: usize) -> Result<Mat<T>> {
        let b = self.rook()?;
        if r > b.n || x.size() != b.n {
            return Err(Error::invalid("compression level or element size out of range"));
        }
        let inside: Vec<(u32, usize)> = b
            .subsets
            .iter()
            .filter(|&&m| m >> r == 0)
            .enumerate()
            .map(|(i, &m)| (m, i))
            .collect();
        let cols: HashMap<u32, usize> = inside.iter().copied().collect();
        let d = inside.len() * b.inner_dim;
        let mut out = Mat::zeros(d, d);
        for (m, c) in x.sorted_terms() {
            self.check(&m)?;
            b.accumulate(&mut out, &T::from_q(&c), &m, &inside, &cols)?;
        }
        Ok(out)
    }

    /// Named images of a generating set of the source monoid.
    pub fn generator_images(&self) -> Result<Vec<(String, Mat<T>)>> {
        let n = self.n;
        let mut out = Vec::new();
        if n == 0 {
            return Ok(out);
        }
        for i in 1..n {
            out.push((format!("s{i}"), self.image(&MonomialMatrix::transposition(n, i, i + 1))?));
        }
        if !matches!(self.body, Body::Sym(_)) {
            for &g in self.group.generators() {
                out.push((format!("g{g}@1"), self.image(&MonomialMatrix::diag_label(n, 1, g))?));
            }
        }
        if self.is_rook() {
            out.push(("eps1".into(), self.image(&MonomialMatrix::eps(n, &[1]))?));
        }
        Ok(out)
    }

    /// `{"kind", "dim", "labels", "generators": {name: rows}}`
    pub fn to_json(&self) -> Result<serde_json::Value> {
        let gens: serde_json::Map<String, serde_json::Value> =
            self.generator_images()?.into_iter().map(|(k, m)| (k, m.to_json())).collect();
        Ok(serde_json::json!({
            "kind": format!("{:?}", self.kind),
            "dim": self.dim,
            "labels": self.labels,
            "generators": gens,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::central::{build_delta, build_z, build_z_psi};
    use crate::characters::{char_value, cycle_type, dim_partition, wreath_char_value, wreath_dim};
    use crate::linalg::QMatrix;
    use crate::monomial::{enumerate, EnumKind};
    use crate::partition::{multipartitions_of, partitions_of};
    use crate::shifted::eval_psharp;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn trivial() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::trivial())
    }

    fn qsym(l: &Partition) -> RepModel<Q> {
        RepModel::sym(l, SymVariant::Seminormal).unwrap()
    }

    #[test]
    fn sym_examples() {
        let m = qsym(&p(&[2, 1]));
        assert_eq!(m.dim(), 2);
        let classes = [
            MonomialMatrix::identity(3),
            MonomialMatrix::transposition(3, 1, 2),
            MonomialMatrix::cycle(3, &[1, 2, 3]),
        ];
        let tr: Vec<Q> = classes.iter().map(|x| m.image(x).unwrap().trace()).collect();
        assert_eq!(tr, vec![Q::from(2), Q::zero(), Q::from(-1)]);
        for n in 1..=5 {
            let triv = qsym(&Partition::row(n));
            for (_, g) in triv.generator_images().unwrap() {
                assert_eq!(g, QMatrix::identity(1));
            }
        }
        let sign = qsym(&p(&[1, 1]));
        assert_eq!(sign.image(&MonomialMatrix::transposition(2, 1, 2)).unwrap(), QMatrix::from_rows(vec![vec![Q::from(-1)]]).unwrap());
    }

    fn coxeter_ok<T: Scalar>(gens: &[Mat<T>], close: impl Fn(&Mat<T>, &Mat<T>) -> bool) -> bool {
        let id = Mat::identity(gens[0].rows());
        for (i, a) in gens.iter().enumerate() {
            if !close(&a.mul(a), &id) {
                return false;
            }
            for (j, b) in gens.iter().enumerate().skip(i + 1) {
                let ok = if j == i + 1 {
                    close(&a.mul(b).mul(a), &b.mul(a).mul(b))
                } else {
                    close(&a.mul(b), &b.mul(a))
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn seminormal_and_orthogonal_satisfy_coxeter_relations() {
        for n in 2..=6 {
            for l in partitions_of(n) {
                let q = qsym(&l);
                let gens: Vec<QMatrix> = q.generator_images().unwrap().into_iter().map(|x| x.1).collect();
                assert!(coxeter_ok(&gens, |a, b| a == b), "seminormal {l}");
                let f: RepModel<f64> = RepModel::sym(&l, SymVariant::Orthogonal).unwrap();
                let fg: Vec<Mat<f64>> = f.generator_images().unwrap().into_iter().map(|x| x.1).collect();
                assert!(coxeter_ok(&fg, |a, b| a.sub(b).max_abs_f64() < 1e-10), "orthogonal {l}");
                for g in &fg {
                    assert!(g.sub(&g.transpose()).max_abs_f64() < 1e-12);
                }
            }
        }
        assert!(RepModel::<Q>::sym(&p(&[2, 1]), SymVariant::Orthogonal).is_err());
    }

    #[test]
    fn traces_match_characters() {
        for n in 1..=5 {
            for l in partitions_of(n) {
                let m = qsym(&l);
                assert_eq!(m.dim() as u64, dim_partition(&l).try_into().unwrap_or(0u64));
                for x in enumerate(EnumKind::Symmetric(n), &FiniteGroup::trivial()).unwrap() {
                    let want = Q::from_bigint(char_value(&l, &cycle_type(&x)).unwrap());
                    assert_eq!(m.image(&x).unwrap().trace(), want);
                }
            }
        }
    }

    #[test]
    fn bulk_and_termwise_application_agree() {
        let l = p(&[3, 2]);
        let m = qsym(&l);
        let z = build_z(3, 5).unwrap();
        let bulk = m.apply(&z).unwrap();
        let mut direct = QMatrix::zeros(m.dim(), m.dim());
        for (x, c) in z.sorted_terms() {
            direct.add_scaled(&c, &m.image(&x).unwrap());
        }
        assert_eq!(bulk, direct);
    }

    #[test]
    fn sym_homomorphism() {
        let m = qsym(&p(&[3, 1, 1]));
        let all: Vec<MonomialMatrix> = enumerate(EnumKind::Symmetric(5), &FiniteGroup::trivial()).unwrap().collect();
        let g = FiniteGroup::trivial();
        for (i, a) in all.iter().enumerate().step_by(7) {
            let b = &all[(i * 31 + 5) % all.len()];
            let ab = a.compose(b, &g).unwrap();
            assert_eq!(m.image(&ab).unwrap(), m.image(a).unwrap().mul(&m.image(b).unwrap()));
        }
    }

    #[test]
    fn eigenvalue_examples() {
        let m = qsym(&p(&[2, 1]));
        assert!(m.apply(&build_z(2, 3).unwrap()).unwrap().is_zero());
        let m = qsym(&p(&[3]));
        assert_eq!(m.central_eigenvalue(&build_z(2, 3).unwrap()).unwrap(), Q::from(6));
        let one = AlgebraElement::one(3, trivial());
        assert_eq!(qsym(&p(&[2, 1])).apply(&one).unwrap(), QMatrix::identity(2));
        let x = AlgebraElement::basis(MonomialMatrix::transposition(3, 1, 2), trivial());
        assert!(matches!(qsym(&p(&[2, 1])).central_eigenvalue(&x), Err(Error::NotScalar(_))));
    }

    #[test]
    fn wreath_examples() {
        let g = Arc::new(FiniteGroup::builtin("Z2").unwrap());
        let sign = Multipartition::parse(r#"{"1":[1]}"#, &g).unwrap();
        let m = RepModel::<Q>::wreath(&sign, g.clone()).unwrap();
        assert_eq!(m.image(&MonomialMatrix::diag_label(1, 1, 1)).unwrap(), QMatrix::from_rows(vec![vec![Q::from(-1)]]).unwrap());
        let mixed = Multipartition::parse(r#"{"0":[1],"1":[1]}"#, &g).unwrap();
        let m = RepModel::<Q>::wreath(&mixed, g.clone()).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.image(&MonomialMatrix::transposition(2, 1, 2)).unwrap().trace(), Q::zero());
        let triv = Multipartition::parse(r#"{"0":[2]}"#, &g).unwrap();
        let m = RepModel::<Q>::wreath(&triv, g.clone()).unwrap();
        for x in enumerate(EnumKind::Wreath(2), &g).unwrap() {
            assert_eq!(m.image(&x).unwrap(), QMatrix::identity(1));
        }
    }

    #[test]
    fn wreath_traces_and_homomorphism() {
        for name in ["Z2", "S3"] {
            let g = Arc::new(FiniteGroup::builtin(name).unwrap());
            let max_n = if name == "Z2" { 3 } else { 2 };
            for n in 1..=max_n {
                let elems: Vec<MonomialMatrix> = enumerate(EnumKind::Wreath(n), &g).unwrap().collect();
                for ml in multipartitions_of(n, g.num_chars()) {
                    let m = RepModel::<Q>::wreath(&ml, g.clone()).unwrap();
                    assert_eq!(m.dim() as u64, wreath_dim(&ml, &g).try_into().unwrap_or(0u64));
                    for (i, x) in elems.iter().enumerate() {
                        let img = m.image(x).unwrap();
                        assert_eq!(img.trace(), wreath_char_value(&ml, &g, x).unwrap(), "{name} {ml} {x}");
                        let y = &elems[(i * 13 + 3) % elems.len()];
                        let xy = x.compose(y, &g).unwrap();
                        assert_eq!(m.image(&xy).unwrap(), img.mul(&m.image(y).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn rook_examples() {
        let m = RepModel::<Q>::rook_sym(&p(&[1]), 2, SymVariant::Seminormal).unwrap();
        assert_eq!(m.dim(), 2);
        let e1 = m.image(&MonomialMatrix::eps(2, &[1])).unwrap();
        assert_eq!(e1, QMatrix::from_rows(vec![vec![Q::zero(), Q::zero()], vec![Q::zero(), Q::one()]]).unwrap());
        let both = AlgebraElement::parse("eps{1} + eps{2}", 2, trivial()).unwrap();
        assert_eq!(m.apply(&both).unwrap(), QMatrix::identity(2));
        let zero = MonomialMatrix::zero_matrix(3);
        let m = RepModel::<Q>::rook_sym(&p(&[2]), 3, SymVariant::Seminormal).unwrap();
        assert!(m.image(&zero).unwrap().is_zero());
        let m = RepModel::<Q>::rook_sym(&Partition::empty(), 3, SymVariant::Seminormal).unwrap();
        assert_eq!(m.image(&zero).unwrap(), QMatrix::identity(1));
        for n in 1..=5 {
            for k in 0..=n {
                for l in partitions_of(k) {
                    let m = RepModel::<Q>::rook_sym(&l, n, SymVariant::Seminormal).unwrap();
                    let d: usize = dim_partition(&l).try_into().unwrap();
                    assert_eq!(m.dim(), binom(n, k) as usize * d);
                    assert_eq!(m.labels().len(), m.dim());
                }
            }
        }
    }

    #[test]
    fn rook_homomorphism_sym_and_wreath() {
        let t = FiniteGroup::trivial();
        let all: Vec<MonomialMatrix> = enumerate(EnumKind::Rook(4), &t).unwrap().collect();
        for l in [p(&[1]), p(&[2, 1]), p(&[1, 1]), p(&[2, 2])] {
            let m = RepModel::<Q>::rook_sym(&l, 4, SymVariant::Seminormal).unwrap();
            for (i, a) in all.iter().enumerate().step_by(3) {
                let b = &all[(i * 17 + 11) % all.len()];
                let ab = a.compose(b, &t).unwrap();
                assert_eq!(m.image(&ab).unwrap(), m.image(a).unwrap().mul(&m.image(b).unwrap()), "{l} {a} {b}");
            }
        }
        let g = Arc::new(FiniteGroup::builtin("Z2").unwrap());
        let all: Vec<MonomialMatrix> = enumerate(EnumKind::Rook(3), &g).unwrap().collect();
        for ml in ["{\"1\":[1]}", "{\"0\":[1],\"1\":[1]}"] {
            let ml = Multipartition::parse(ml, &g).unwrap();
            let m = RepModel::<Q>::rook_wreath(&ml, 3, g.clone()).unwrap();
            for (i, a) in all.iter().enumerate().step_by(5) {
                let b = &all[(i * 7 + 2) % all.len()];
                let ab = a.compose(b, &g).unwrap();
                assert_eq!(m.image(&ab).unwrap(), m.image(a).unwrap().mul(&m.image(b).unwrap()));
            }
        }
    }

    #[test]
    fn rook_delta_eigenvalues() {
        for n in 1..=5 {
            for k in 1..=n {
                let d = build_delta(k, n, &trivial(), None).unwrap();
                for size in 0..=n {
                    for l in partitions_of(size) {
                        let m = RepModel::<Q>::rook_sym(&l, n, SymVariant::Seminormal).unwrap();
                        let want = if l.is_empty() { Q::zero() } else { eval_psharp(&Partition::row(k), &l).unwrap() };
                        assert_eq!(m.central_eigenvalue(&d).unwrap(), want, "Δ^({k})_{n} on {l}");
                    }
                }
            }
        }
    }

    #[test]
    fn wreath_z_eigenvalues_small() {
        let g = Arc::new(FiniteGroup::builtin("Z2").unwrap());
        for n in 1..=3 {
            for ml in multipartitions_of(n, 2) {
                let m = RepModel::<Q>::wreath(&ml, g.clone()).unwrap();
                for k in 1..=n {
                    for psi in 0..2 {
                        let z = build_z_psi(k, psi, n, &g).unwrap();
                        let want = eval_psharp(&Partition::row(k), ml.get(psi)).unwrap();
                        let want = if ml.get(psi).is_empty() { Q::zero() } else { want };
                        assert_eq!(m.central_eigenvalue(&z).unwrap(), want);
                    }
                }
            }
        }
    }

    #[test]
    fn compression_examples() {
        let m = RepModel::<Q>::rook_sym(&p(&[1]), 3, SymVariant::Seminormal).unwrap();
        assert_eq!(m.compression(1).unwrap().rank(), 1);
        let m = RepModel::<Q>::rook_sym(&p(&[2, 1]), 4, SymVariant::Seminormal).unwrap();
        assert_eq!(m.compression(2).unwrap().rank(), 0);
        assert_eq!(m.compression(4).unwrap(), QMatrix::identity(m.dim()));
        assert_eq!(m.compression(3).unwrap().rank(), 2);
        let x = AlgebraElement::parse("2 * (1,4) + (1,2) eps{3} + -1 * (2,3,4)", 4, trivial()).unwrap();
        let small = m.apply_compressed(&x, 3).unwrap();
        let level3 = RepModel::<Q>::rook_sym(&p(&[2, 1]), 3, SymVariant::Seminormal).unwrap();
        let p3 = m.compression(3).unwrap();
        let full = p3.mul(&m.apply(&x).unwrap()).mul(&p3);
        assert_eq!(small.rows(), level3.dim());
        assert_eq!(full.trace(), small.trace());
        assert_eq!(full.mul(&full).trace(), small.mul(&small).trace());
    }
}
