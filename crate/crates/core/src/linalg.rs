//! Dense matrices over a generic scalar plus exact elimination over `Q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::Q;

/// Field-like scalar used by the representation models.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_q(q: &Q) -> Self;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;
    /// Zero up to the rounding allowed relative to `scale`; exact for `Q`.
    fn negligible(&self, scale: f64) -> bool;
    /// `sqrt(q)` when representable.
    fn sqrt_of(q: &Q) -> Option<Self>;
    fn to_json(&self) -> serde_json::Value;
}

impl Scalar for Q {
    fn zero() -> Self {
        Q::zero()
    }
    fn one() -> Self {
        Q::one()
    }
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn is_zero(&self) -> bool {
        Q::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        Q::to_f64(self)
    }
    fn negligible(&self, _scale: f64) -> bool {
        Q::is_zero(self)
    }
    fn sqrt_of(_q: &Q) -> Option<Self> {
        None
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_q(q: &Q) -> Self {
        q.to_f64()
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn negligible(&self, scale: f64) -> bool {
        self.abs() <= 1e-9 * scale.max(1.0)
    }
    fn sqrt_of(q: &Q) -> Option<Self> {
        let v = q.to_f64();
        (v >= 0.0).then(|| v.sqrt())
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(*self)
    }
}

#[derive(Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type QMatrix = Mat<Q>;
pub type FMatrix = Mat<f64>;

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("ragged matrix rows"));
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let cur = std::mem::replace(&mut out.data[i * rhs.cols + j], T::zero());
                    out.data[i * rhs.cols + j] = cur + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Mat<T> {
        self.map(|a| a.clone() * c.clone())
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &T, other: &Mat<T>) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if b.is_zero() {
                continue;
            }
            let cur = std::mem::replace(a, T::zero());
            *a = cur + c.clone() * b.clone();
        }
    }

    /// `self[r0.., c0..] += c * block`
    pub fn add_block(&mut self, r0: usize, c0: usize, c: &T, block: &Mat<T>) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                let b = &block.data[i * block.cols + j];
                if b.is_zero() {
                    continue;
                }
                let idx = (r0 + i) * self.cols + c0 + j;
                let cur = std::mem::replace(&mut self.data[idx], T::zero());
                self.data[idx] = cur + c.clone() * b.clone();
            }
        }
    }

    pub fn transpose(&self) -> Mat<T> {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// `Some(c)` when the matrix equals `c * I`.
    pub fn scalar_value(&self) -> Option<T> {
        if self.rows != self.cols {
            return None;
        }
        if self.rows == 0 {
            return Some(T::zero());
        }
        let c = self.get(0, 0).clone();
        let scale = self.max_abs_f64();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                let off = if i == j { v.clone() - c.clone() } else { v.clone() };
                if !off.negligible(scale) {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn kron(&self, rhs: &Mat<T>) -> Mat<T> {
        let mut out = Mat::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                out.add_block(i * rhs.rows, j * rhs.cols, a, rhs);
            }
        }
        out
    }

    /// Rows of exact `"p/q"` strings or doubles.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|i| serde_json::Value::Array(self.row(i).iter().map(Scalar::to_json).collect()))
                .collect(),
        )
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.data.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Mat")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &self.data)
            .finish()
    }
}

impl FMatrix {
    /// Spectral norm by power iteration on `AᵀA`.
    pub fn spectral_norm(&self, tol: f64) -> f64 {
        if self.rows == 0 || self.cols == 0 || self.is_zero() {
            return 0.0;
        }
        let ata = self.transpose().mul(self);
        let n = ata.rows;
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + (i as f64 * 0.618_033_988_7).fract()).collect();
        let mut lambda = 0.0f64;
        for _ in 0..10_000 {
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm == 0.0 {
                return 0.0;
            }
            v.iter_mut().for_each(|x| *x /= norm);
            let w: Vec<f64> = (0..n)
                .map(|i| ata.row(i).iter().zip(&v).map(|(a, b)| a * b).sum())
                .collect();
            let next: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
            v = w;
            if (next - lambda).abs() <= tol * next.abs().max(1e-300) {
                lambda = next;
                break;
            }
            lambda = next;
        }
        lambda.max(0.0).sqrt()
    }
}

impl QMatrix {
    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).recip();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let pv = self.get(r, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &(&f * pv);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Q::zero(); self.cols];
                x[f] = Q::one();
                for (r, &p) in pivots.iter().enumerate() {
                    x[p] = -m.get(r, f);
                }
                x
            })
            .collect()
    }

    /// Unique solution of a square nonsingular system.
    pub fn solve(&self, b: &[Q]) -> Result<Vec<Q>> {
        if self.rows != self.cols || b.len() != self.rows {
            return Err(Error::invalid("solve expects a square system"));
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
            return Err(Error::invalid("singular system"));
        }
        Ok((0..n).map(|i| aug.get(i, n).clone()).collect())
    }
}

/// Incremental row-echelon form for sparse exact rows (column index → value).
#[derive(Default, Clone, Debug)]
pub struct SparseEchelon {
    width: usize,
    pivots: BTreeMap<usize, BTreeMap<usize, Q>>,
}

impl SparseEchelon {
    pub fn new(width: usize) -> Self {
        SparseEchelon {
            width,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, mut row: BTreeMap<usize, Q>) -> BTreeMap<usize, Q> {
        let mut cursor = 0;
        loop {
            let next = row.range(cursor..).find(|(c, _)| self.pivots.contains_key(c));
            let Some((&c, v)) = next else { break };
            let f = v.clone();
            for (j, pv) in &self.pivots[&c] {
                let e = row.entry(*j).or_insert_with(Q::zero);
                *e -= &f * pv;
                if e.is_zero() {
                    row.remove(j);
                }
            }
            cursor = c + 1;
        }
        row
    }

    /// Inserts a row; returns `true` if it raised the rank.
    pub fn insert(&mut self, row: BTreeMap<usize, Q>) -> bool {
        let row = self.reduce(row);
        let Some((&lead, lv)) = row.iter().next() else {
            return false;
        };
        let inv = lv.recip();
        let row: BTreeMap<usize, Q> = row.into_iter().map(|(j, v)| (j, v * &inv)).collect();
        // keep fully reduced: eliminate the new pivot from existing rows
        for prow in self.pivots.values_mut() {
            if let Some(f) = prow.get(&lead).cloned() {
                for (j, v) in &row {
                    let e = prow.entry(*j).or_insert_with(Q::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        prow.remove(j);
                    }
                }
            }
        }
        self.pivots.insert(lead, row);
        true
    }

    /// Basis of the solution space of the inserted homogeneous equations.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        (0..self.width)
            .filter(|c| !self.pivots.contains_key(c))
            .map(|f| {
                let mut x = vec![Q::zero(); self.width];
                x[f] = Q::one();
                for (&p, row) in &self.pivots {
                    if let Some(v) = row.get(&f) {
                        x[p] = -v;
                    }
                }
                x
            })
            .collect()
    }
}
