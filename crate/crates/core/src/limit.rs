//! Large-`n` limits at finite scale: sequence families `n ↦ α_n`, exact limits
//! of truncations, windows `(b_m, …, b_R)`, the shift on windows, and the
//! compression and eigenvalue experiments.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{is_in_centralizer, AlgebraElement, CentralizerSpec, Membership};
use crate::central::{alpha_polynomials, Family};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::QMatrix;
use crate::monomial::{MonomialMatrix, MAX_SIZE};
use crate::partition::{Multipartition, Partition};
use crate::rational::Q;
use crate::reps::{RepModel, SymVariant};
use crate::shifted::{eval_frakp, eval_q, binomial_shift_combination};

/// Default geometric schedule for float experiments.
pub const DEFAULT_SCHEDULE: [usize; 5] = [8, 12, 18, 27, 40];
/// Sizes for float Cauchy checks of algebra elements; bounded by the matrix size limit.
pub const CAUCHY_SCHEDULE: [usize; 3] = [8, 12, 16];
/// A rate certificate requires each running-max increment to shrink by this factor.
pub const CONTRACTION: f64 = 0.75;
pub const MAX_PIPELINE_SIZE: usize = 400;
/// Relative stopping tolerance of the power iteration.
pub const NORM_TOL: f64 = 1e-13;

#[derive(Clone, Debug, PartialEq)]
pub enum FamilyKind {
    /// The constant sequence `α_n = x` (embedded).
    Stable(AlgebraElement),
    /// `α_n = (1/(|G|(n−m))) Σ_{j>m} Σ_g g^{(j)} (i,j) (g⁻¹)^{(j)}`, approximating `ε_i`.
    EpsApprox { i: usize, m: usize },
    /// A level-wise central family: `alpha(k)`, `lift(f)`, `delta(k)`, `u(i)`, `z(k)`.
    Central(Family),
    /// `α'_n = ξ^t(α_{n−t})`
    Shifted { times: usize, inner: Box<FamilyKind> },
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Stable(x) => write!(f, "stable({}, {})", x.size(), x.to_text()),
            FamilyKind::EpsApprox { i, m } => write!(f, "eps({i},{m})"),
            FamilyKind::Central(c) => write!(f, "{c}"),
            FamilyKind::Shifted { times, inner } => write!(f, "shifted({times}, {inner})"),
        }
    }
}

/// A symbolic sequence family over a fixed group.
#[derive(Clone, Debug)]
pub struct SequenceFamily {
    kind: FamilyKind,
    group: Arc<FiniteGroup>,
}

fn split_args(args: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in args.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => return Some((&args[..i], &args[i + 1..])),
            _ => {}
        }
    }
    None
}

impl SequenceFamily {
    pub fn new(kind: FamilyKind, group: Arc<FiniteGroup>) -> Result<Self> {
        fn check(kind: &FamilyKind, group: &Arc<FiniteGroup>) -> Result<()> {
            match kind {
                FamilyKind::Stable(x) if x.group().name() != group.name() => Err(Error::GroupMismatch {
                    left: x.group().name().to_string(),
                    right: group.name().to_string(),
                }),
                FamilyKind::EpsApprox { i, m } if *i == 0 || i > m => {
                    Err(Error::invalid(format!("eps({i},{m}) needs 1 <= i <= m")))
                }
                FamilyKind::Shifted { inner, .. } => check(inner, group),
                _ => Ok(()),
            }
        }
        check(&kind, &group)?;
        Ok(SequenceFamily { kind, group })
    }

    /// Parses `eps(i,m)`, `stable(size, <element>)`, `shifted(t, <family>)` or a
    /// central family name (`alpha(k)`, `lift(f)`, `delta(k)`, `u(i)`, `z(k)`).
    pub fn parse(text: &str, group: Arc<FiniteGroup>) -> Result<Self> {
        fn kind(t: &str, group: &Arc<FiniteGroup>) -> Result<FamilyKind> {
            let t = t.trim();
            let bad = || Error::Parse {
                offset: 0,
                message: format!("unrecognized sequence family `{t}`"),
            };
            let int = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
            let inner = |prefix: &str| t.strip_prefix(prefix).and_then(|r| r.strip_suffix(')'));
            if let Some(args) = inner("eps(") {
                let (i, m) = split_args(args).ok_or_else(bad)?;
                return Ok(FamilyKind::EpsApprox { i: int(i)?, m: int(m)? });
            }
            if let Some(args) = inner("stable(") {
                let (size, elem) = split_args(args).ok_or_else(bad)?;
                return Ok(FamilyKind::Stable(AlgebraElement::parse(elem.trim(), int(size)?, group.clone())?));
            }
            if let Some(args) = inner("shifted(") {
                let (times, rest) = split_args(args).ok_or_else(bad)?;
                return Ok(FamilyKind::Shifted {
                    times: int(times)?,
                    inner: Box::new(kind(rest, group)?),
                });
            }
            Ok(FamilyKind::Central(Family::parse(t)?))
        }
        Self::new(kind(text, &group)?, group)
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn evaluate(&self, n: usize) -> Result<AlgebraElement> {
        self.eval_kind(&self.kind, n)
    }

    fn eval_kind(&self, kind: &FamilyKind, n: usize) -> Result<AlgebraElement> {
        if n < min_index(kind) {
            return Err(Error::invalid(format!("{kind} starts at n = {}", min_index(kind))));
        }
        match kind {
            FamilyKind::Stable(x) => x.embed(n),
            FamilyKind::EpsApprox { i, m } => {
                let g = &self.group;
                let weight = Q::new(1, (g.order() * (n - m)) as i64);
                let mut out = AlgebraElement::zero(n, g.clone());
                for j in m + 1..=n {
                    for label in 0..g.order() {
                        let mut cols: Vec<Option<(usize, usize)>> = (1..=n).map(|c| Some((c, 0))).collect();
                        cols[i - 1] = Some((j, label));
                        cols[j - 1] = Some((*i, g.inv(label)));
                        out.add_term(MonomialMatrix::from_columns(&cols)?, weight.clone());
                    }
                }
                Ok(out)
            }
            FamilyKind::Central(f) => f.build(n, &self.group),
            FamilyKind::Shifted { times, inner } => {
                let mut x = self.eval_kind(inner, n - times)?;
                for _ in 0..*times {
                    x = x.shift()?;
                }
                Ok(x)
            }
        }
    }

    /// Centralizer level `m` with `α_n ∈ B_m(n)` (or `A_m(n)` for semigroup-valued families).
    pub fn level(&self) -> usize {
        fn level(kind: &FamilyKind) -> usize {
            match kind {
                FamilyKind::Stable(x) => x.size(),
                FamilyKind::EpsApprox { m, .. } => *m,
                FamilyKind::Central(Family::U(i)) => *i,
                FamilyKind::Central(_) => 0,
                FamilyKind::Shifted { times, inner } => level(inner) + times,
            }
        }
        level(&self.kind)
    }

    pub fn degree_bound(&self) -> usize {
        fn bound(kind: &FamilyKind) -> usize {
            match kind {
                FamilyKind::Stable(x) => x.degree().unwrap_or(0),
                FamilyKind::EpsApprox { .. } => 2,
                FamilyKind::Central(f) => match f {
                    Family::Z(k) | Family::ZPsi { k, .. } | Family::Delta { k, .. } => *k,
                    Family::U(_) => 2,
                    Family::Alpha(k) => 2 * k,
                    Family::Lift(f) => f.degree_bound,
                },
                FamilyKind::Shifted { inner, .. } => bound(inner),
            }
        }
        bound(&self.kind)
    }

    pub fn min_index(&self) -> usize {
        min_index(&self.kind)
    }

    /// Numerator/denominator degrees in `n` of every truncated coefficient.
    pub fn degree_hint(&self) -> (usize, usize) {
        fn hint(kind: &FamilyKind) -> (usize, usize) {
            match kind {
                FamilyKind::Stable(_) => (0, 0),
                FamilyKind::EpsApprox { .. } => (1, 1),
                FamilyKind::Central(f) => match f {
                    Family::Z(k) | Family::ZPsi { k, .. } => (*k, 0),
                    Family::Delta { .. } | Family::U(_) => (0, 0),
                    Family::Alpha(k) => (2 * k, *k),
                    Family::Lift(f) => (f.degree_bound, 0),
                },
                FamilyKind::Shifted { inner, .. } => hint(inner),
            }
        }
        hint(&self.kind)
    }

    pub fn is_stable(&self) -> bool {
        fn stable(kind: &FamilyKind) -> bool {
            match kind {
                FamilyKind::Stable(_) => true,
                FamilyKind::Shifted { inner, .. } => stable(inner),
                _ => false,
            }
        }
        stable(&self.kind)
    }

    /// Checks the degree bound and centralizer membership of `α_n`.
    pub fn spot_check(&self, n: usize) -> Result<()> {
        let x = self.evaluate(n)?;
        let deg = x.degree().unwrap_or(0);
        if deg > self.degree_bound() {
            return Err(Error::invalid(format!(
                "{}: degree {deg} at n = {n} exceeds the declared bound {}",
                self.kind,
                self.degree_bound()
            )));
        }
        let units = x.terms().keys().all(MonomialMatrix::is_unit);
        let spec = if units {
            CentralizerSpec::group(self.level())
        } else {
            CentralizerSpec::semigroup(self.level())
        };
        match is_in_centralizer(&x, spec)? {
            Membership::Member => Ok(()),
            Membership::NotMember { generator, .. } => Err(Error::invalid(format!(
                "{} at n = {n} does not commute with {generator}",
                self.kind
            ))),
        }
    }
}

impl fmt::Display for SequenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

fn min_index(kind: &FamilyKind) -> usize {
    match kind {
        FamilyKind::Stable(x) => x.size(),
        FamilyKind::EpsApprox { m, .. } => m + 1,
        FamilyKind::Central(f) => match f {
            Family::Z(k) | Family::ZPsi { k, .. } | Family::Delta { k, .. } => *k,
            Family::U(i) => *i,
            Family::Alpha(_) | Family::Lift(_) => 1,
        },
        FamilyKind::Shifted { times, inner } => min_index(inner) + times,
    }
}

// ---- rational functions of n ----

/// `num(n) / den(n)` with coefficient vectors in increasing degree.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    num: Vec<Q>,
    den: Vec<Q>,
}

fn horner(coeffs: &[Q], x: &Q) -> Q {
    coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

fn actual_degree(coeffs: &[Q]) -> Option<usize> {
    coeffs.iter().rposition(|c| !c.is_zero())
}

impl RationalFunction {
    /// Fits `P/Q` with `deg P ≤ num_deg`, `deg Q ≤ den_deg` through the points;
    /// `None` when no such function has a denominator nonvanishing on them.
    pub fn fit(points: &[(Q, Q)], num_deg: usize, den_deg: usize) -> Option<Self> {
        if points.iter().all(|(_, y)| y == &points[0].1) {
            return Some(RationalFunction {
                num: vec![points.first().map_or(Q::zero(), |p| p.1.clone())],
                den: vec![Q::one()],
            });
        }
        let width = num_deg + den_deg + 2;
        let mut m = QMatrix::zeros(points.len(), width);
        for (row, (x, y)) in points.iter().enumerate() {
            let mut pw = Q::one();
            for d in 0..=num_deg.max(den_deg) {
                if d <= num_deg {
                    m.set(row, d, pw.clone());
                }
                if d <= den_deg {
                    m.set(row, num_deg + 1 + d, -(y * &pw));
                }
                pw = pw * x;
            }
        }
        let basis = m.nullspace();
        let mut candidates = basis.clone();
        if basis.len() > 1 {
            let sum = (0..width).map(|c| basis.iter().map(|v| v[c].clone()).sum()).collect();
            candidates.push(sum);
        }
        candidates.into_iter().find_map(|v| {
            let f = RationalFunction {
                num: v[..=num_deg].to_vec(),
                den: v[num_deg + 1..].to_vec(),
            };
            points.iter().all(|(x, _)| !horner(&f.den, x).is_zero()).then_some(f)
        })
    }

    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = horner(&self.den, x);
        (!d.is_zero()).then(|| horner(&self.num, x) / d)
    }

    /// `lim_{n→∞}`; `None` when the numerator outgrows the denominator.
    pub fn limit(&self) -> Option<Q> {
        let Some(p) = actual_degree(&self.num) else {
            return Some(Q::zero());
        };
        let q = actual_degree(&self.den)?;
        match p.cmp(&q) {
            std::cmp::Ordering::Greater => None,
            std::cmp::Ordering::Equal => Some(&self.num[p] / &self.den[q]),
            std::cmp::Ordering::Less => Some(Q::zero()),
        }
    }

    pub fn degrees(&self) -> (Option<usize>, Option<usize>) {
        (actual_degree(&self.num), actual_degree(&self.den))
    }
}

// ---- truncation limits ----

#[derive(Clone, Debug, PartialEq)]
pub enum LimitMode {
    ExactFit,
    CauchyFloat { schedule: Vec<usize>, tol: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "camelCase")]
pub enum Certificate {
    #[serde(rename_all = "camelCase")]
    ExactFit {
        sample_points: Vec<usize>,
        validation_points: Vec<usize>,
        numerator_degree: usize,
        denominator_degree: usize,
        coefficients: usize,
    },
    #[serde(rename_all = "camelCase")]
    CauchyFloat {
        schedule: Vec<usize>,
        differences: Vec<f64>,
        tolerance: f64,
    },
}

#[derive(Clone, Debug)]
pub struct ThetaLimit {
    pub r: usize,
    pub element: AlgebraElement,
    pub certificate: Certificate,
}

/// `b_r = lim_n θ_r(α_n)`
pub fn theta_limit(seq: &SequenceFamily, r: usize, mode: &LimitMode) -> Result<ThetaLimit> {
    if r == 0 {
        return Err(Error::invalid("truncation level must be >= 1"));
    }
    match mode {
        LimitMode::ExactFit => exact_limit(seq, r),
        LimitMode::CauchyFloat { schedule, tol } => cauchy_limit(seq, r, schedule, *tol),
    }
}

fn exact_limit(seq: &SequenceFamily, r: usize) -> Result<ThetaLimit> {
    let (a, b) = seq.degree_hint();
    let total = a + b;
    let start = seq.min_index().max(r) + 1;
    let samples: Vec<usize> = (start..start + total + 2).collect();
    let validation: Vec<usize> = (start + total + 2..start + total + 4).collect();
    let mut keys: HashMap<MonomialMatrix, usize> = HashMap::new();
    let mut columns: Vec<Vec<(MonomialMatrix, Q)>> = Vec::new();
    for &n in samples.iter().chain(&validation) {
        let t = seq.evaluate(n)?.truncate(r)?;
        let terms = t.sorted_terms();
        for (m, _) in &terms {
            let next = keys.len();
            keys.entry(*m).or_insert(next);
        }
        columns.push(terms);
    }
    let mut table = vec![vec![Q::zero(); samples.len() + validation.len()]; keys.len()];
    for (col, terms) in columns.iter().enumerate() {
        for (m, c) in terms {
            table[keys[m]][col] = c.clone();
        }
    }
    let mut element = AlgebraElement::zero(r, seq.group().clone());
    let (mut num_deg, mut den_deg) = (0, 0);
    let mut ordered: Vec<(&MonomialMatrix, &usize)> = keys.iter().collect();
    ordered.sort();
    for (m, &idx) in ordered {
        let values = &table[idx];
        let points: Vec<(Q, Q)> = samples.iter().zip(values).map(|(&n, v)| (Q::from(n), v.clone())).collect();
        let f = RationalFunction::fit(&points, a, b).ok_or_else(|| Error::FitValidation {
            key: m.to_string(),
            detail: format!("no rational function of degrees ({a},{b}) through the samples"),
        })?;
        for (k, &n) in validation.iter().enumerate() {
            let want = &values[samples.len() + k];
            if f.eval(&Q::from(n)).as_ref() != Some(want) {
                return Err(Error::FitValidation {
                    key: m.to_string(),
                    detail: format!("prediction at n = {n} differs from the value {want}"),
                });
            }
        }
        let (p, q) = f.degrees();
        num_deg = num_deg.max(p.unwrap_or(0));
        den_deg = den_deg.max(q.unwrap_or(0));
        let lim = f.limit().ok_or_else(|| Error::Divergent { key: m.to_string() })?;
        element.add_term(*m, lim);
    }
    Ok(ThetaLimit {
        r,
        element,
        certificate: Certificate::ExactFit {
            sample_points: samples,
            validation_points: validation,
            numerator_degree: num_deg,
            denominator_degree: den_deg,
            coefficients: keys.len(),
        },
    })
}

fn cauchy_limit(seq: &SequenceFamily, r: usize, schedule: &[usize], tol: f64) -> Result<ThetaLimit> {
    let mut schedule: Vec<usize> = schedule.iter().copied().filter(|&n| n >= seq.min_index().max(r)).collect();
    schedule.sort_unstable();
    schedule.dedup();
    if let Some(&n) = schedule.iter().find(|&&n| n > MAX_SIZE) {
        return Err(Error::bound("Cauchy schedule size", n, format!("<= {MAX_SIZE}")));
    }
    if schedule.len() < 2 {
        return Err(Error::invalid("the Cauchy mode needs at least two admissible schedule points"));
    }
    let mut values = Vec::new();
    for &n in &schedule {
        values.push(seq.evaluate(n)?.truncate(r)?);
    }
    let differences: Vec<f64> = values
        .windows(2)
        .map(|w| -> Result<f64> {
            let d = w[1].checked_sub(&w[0])?;
            Ok(d.terms().values().map(|c| c.to_f64().abs()).fold(0.0, f64::max))
        })
        .collect::<Result<_>>()?;
    let last = *differences.last().expect("two points");
    if !(last <= tol) {
        return Err(Error::NotCauchy(format!(
            "last difference {last:e} exceeds the tolerance {tol:e}"
        )));
    }
    Ok(ThetaLimit {
        r,
        element: values.pop().expect("nonempty"),
        certificate: Certificate::CauchyFloat {
            schedule,
            differences,
            tolerance: tol,
        },
    })
}

// ---- windows ----

/// A θ-consistent window `(b_start, …, b_end)` of level `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowElement {
    m: usize,
    start: usize,
    window: Vec<AlgebraElement>,
    degree_bound: usize,
}

impl WindowElement {
    /// `window[j]` must have size `start + j`.
    pub fn new(m: usize, start: usize, window: Vec<AlgebraElement>, degree_bound: usize) -> Result<Self> {
        if start == 0 || window.is_empty() {
            return Err(Error::invalid("a window needs start >= 1 and at least one level"));
        }
        for (j, b) in window.iter().enumerate() {
            if b.size() != start + j {
                return Err(Error::Window {
                    r: start + j,
                    detail: format!("element has size {}", b.size()),
                });
            }
        }
        Ok(WindowElement {
            m,
            start,
            window,
            degree_bound,
        })
    }

    /// `(x_r)_{r = start..=end}` built level-wise.
    pub fn from_levels(
        m: usize,
        start: usize,
        end: usize,
        degree_bound: usize,
        mut level: impl FnMut(usize) -> Result<AlgebraElement>,
    ) -> Result<Self> {
        let window = (start..=end).map(&mut level).collect::<Result<Vec<_>>>()?;
        Self::new(m, start, window, degree_bound)
    }

    pub fn level(&self) -> usize {
        self.m
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.start + self.window.len() - 1
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn get(&self, r: usize) -> Option<&AlgebraElement> {
        r.checked_sub(self.start).and_then(|j| self.window.get(j))
    }

    pub fn elements(&self) -> &[AlgebraElement] {
        &self.window
    }

    /// θ-consistency, centralizer membership for `r > m`, and the degree bound.
    pub fn validate(&self) -> Result<()> {
        for (j, b) in self.window.iter().enumerate() {
            let r = self.start + j;
            if let Some(prev) = j.checked_sub(1).map(|p| &self.window[p]) {
                if &b.truncate(r - 1)? != prev {
                    return Err(Error::Window {
                        r,
                        detail: format!("truncation of b_{r} differs from b_{}", r - 1),
                    });
                }
            }
            if b.degree().unwrap_or(0) > self.degree_bound {
                return Err(Error::Window {
                    r,
                    detail: format!("degree {:?} exceeds the bound {}", b.degree(), self.degree_bound),
                });
            }
            if r > self.m {
                if let Membership::NotMember { generator, .. } = is_in_centralizer(b, CentralizerSpec::semigroup(self.m))? {
                    return Err(Error::Window {
                        r,
                        detail: format!("b_{r} does not commute with {generator}"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Level-wise shift `ξ(b_r)` placed at size `r + 1`; the level becomes `m + 1`.
    pub fn xi(&self) -> Result<WindowElement> {
        let window = self.window.iter().map(AlgebraElement::shift).collect::<Result<Vec<_>>>()?;
        Self::new(self.m + 1, self.start + 1, window, self.degree_bound)
    }

    fn combine(&self, other: &Self, op: impl Fn(&AlgebraElement, &AlgebraElement) -> Result<AlgebraElement>) -> Result<Self> {
        let lo = self.start.max(other.start);
        let hi = self.end().min(other.end());
        if lo > hi {
            return Err(Error::invalid("windows have no common levels"));
        }
        let window = (lo..=hi)
            .map(|r| op(self.get(r).expect("in range"), other.get(r).expect("in range")))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.m.max(other.m), lo, window, self.degree_bound.max(other.degree_bound))
    }

    /// Difference on the common levels.
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a.checked_sub(b))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a.checked_add(b))
    }

    pub fn scale(&self, c: &Q) -> Self {
        WindowElement {
            window: self.window.iter().map(|b| b.scale(c)).collect(),
            ..self.clone()
        }
    }

    /// Equality on the common levels.
    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        Ok(self.checked_sub(other)?.window.iter().all(AlgebraElement::is_zero))
    }
}

#[derive(Clone, Debug)]
pub struct AssembledWindow {
    pub window: WindowElement,
    pub certificates: Vec<(usize, Certificate)>,
}

/// Limits `b_r` for `r = max(m,1)..=R`, validated as a window.
pub fn assemble_window(seq: &SequenceFamily, end: usize, mode: &LimitMode) -> Result<AssembledWindow> {
    let m = seq.level();
    let start = m.max(1);
    if end < start {
        return Err(Error::invalid(format!("window end {end} is below its start {start}")));
    }
    let mut certificates = Vec::new();
    let mut levels = Vec::new();
    for r in start..=end {
        let lim = theta_limit(seq, r, mode).map_err(|e| Error::Window { r, detail: e.to_string() })?;
        certificates.push((r, lim.certificate));
        levels.push(lim.element);
    }
    let window = WindowElement::new(m, start, levels, seq.degree_bound())?;
    window.validate()?;
    Ok(AssembledWindow { window, certificates })
}

// ---- rate certificates ----

/// Running maxima of `v(n)` at checkpoints; increments must contract.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RateCertificate {
    pub checkpoints: Vec<usize>,
    pub running_max: Vec<f64>,
    pub increments: Vec<f64>,
    pub contraction: f64,
    pub fitted_c: f64,
    pub pass: bool,
}

fn running_max_certificate<T>(
    points: &[(usize, T)],
    checkpoints: &[usize],
    zero: T,
    ratio: T,
    slack: T,
) -> (Vec<T>, Vec<T>, bool)
where
    T: Clone + PartialOrd + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let mut maxima: Vec<T> = Vec::new();
    for &c in checkpoints {
        let m = points
            .iter()
            .filter(|(n, _)| *n <= c)
            .map(|(_, v)| v.clone())
            .fold(zero.clone(), |a, b| if b > a { b } else { a });
        maxima.push(m);
    }
    let increments: Vec<T> = maxima.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
    let pass = match increments.len() {
        0 => false,
        1 => increments[0] <= slack,
        _ => increments
            .windows(2)
            .all(|w| w[1] <= slack || w[1] <= ratio.clone() * w[0].clone() + slack.clone()),
    };
    (maxima, increments, pass)
}

impl RateCertificate {
    /// Increments below `tol · max(1, sup v)` count as zero.
    pub fn from_f64(points: &[(usize, f64)], checkpoints: &[usize], tol: f64) -> Self {
        let finite = points.iter().all(|p| p.1.is_finite());
        let top = points.iter().map(|p| p.1.abs()).fold(1.0, f64::max);
        let (running_max, increments, pass) = running_max_certificate(points, checkpoints, 0.0, CONTRACTION, tol * top);
        RateCertificate {
            checkpoints: checkpoints.to_vec(),
            fitted_c: running_max.last().copied().unwrap_or(0.0),
            running_max,
            increments,
            contraction: CONTRACTION,
            pass: pass && finite,
        }
    }

    /// Exact comparisons; the stored numbers are rounded for reporting.
    pub fn from_exact(points: &[(usize, Q)], checkpoints: &[usize]) -> Self {
        let (maxima, increments, pass) = running_max_certificate(points, checkpoints, Q::zero(), Q::new(3, 4), Q::zero());
        RateCertificate {
            checkpoints: checkpoints.to_vec(),
            fitted_c: maxima.last().map_or(0.0, Q::to_f64),
            running_max: maxima.iter().map(Q::to_f64).collect(),
            increments: increments.iter().map(Q::to_f64).collect(),
            contraction: CONTRACTION,
            pass,
        }
    }
}

// ---- compression experiment ----

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CompressionReport {
    pub family: String,
    pub lambda: String,
    pub r: usize,
    pub schedule: Vec<usize>,
    pub values: Vec<f64>,
    pub scaled: Vec<f64>,
    pub exact: bool,
    pub limit_element: String,
    pub certificate: RateCertificate,
    pub pass: bool,
}

/// `E(N) = ‖T_r(b_r) − P_r T_N(α_N) P_r‖` on the range of `P_r`, over the schedule.
pub fn compression_experiment(
    seq: &SequenceFamily,
    lambda: &Partition,
    r: usize,
    schedule: &[usize],
    checkpoints: &[usize],
    tol: f64,
) -> Result<CompressionReport> {
    if !seq.group().is_trivial() {
        return Err(Error::Unsupported("norm experiments use the orthogonal model, available for the trivial group".into()));
    }
    if lambda.size() > r {
        return Err(Error::invalid(format!("level {r} is below the conductor {}", lambda.size())));
    }
    let limit = theta_limit(seq, r, &LimitMode::ExactFit)?;
    let mut values = Vec::new();
    let exact = seq.is_stable();
    if exact {
        let target = RepModel::<Q>::rook_sym(lambda, r, SymVariant::Seminormal)?.apply(&limit.element)?;
        for &n in schedule {
            let model = RepModel::<Q>::rook_sym(lambda, n, SymVariant::Seminormal)?;
            let approx = model.apply_compressed(&seq.evaluate(n)?, r)?;
            values.push(if approx == target { 0.0 } else { target.sub(&approx).max_abs_f64() });
        }
    } else {
        let target = RepModel::<f64>::rook_sym(lambda, r, SymVariant::Orthogonal)?.apply(&limit.element)?;
        for &n in schedule {
            let model = RepModel::<f64>::rook_sym(lambda, n, SymVariant::Orthogonal)?;
            let approx = model.apply_compressed(&seq.evaluate(n)?, r)?;
            values.push(target.sub(&approx).spectral_norm(NORM_TOL));
        }
    }
    let scaled: Vec<f64> = schedule.iter().zip(&values).map(|(&n, v)| n as f64 * v).collect();
    let points: Vec<(usize, f64)> = schedule.iter().copied().zip(scaled.iter().copied()).collect();
    let certificate = RateCertificate::from_f64(&points, checkpoints, tol);
    let pass = if exact { values.iter().all(|&v| v == 0.0) } else { certificate.pass };
    Ok(CompressionReport {
        family: seq.to_string(),
        lambda: lambda.to_string(),
        r,
        schedule: schedule.to_vec(),
        values,
        scaled,
        exact,
        limit_element: limit.element.to_text(),
        certificate,
        pass,
    })
}

// ---- eigenvalue pipeline ----

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EigenReport {
    pub k: usize,
    pub lambda: String,
    pub group: String,
    pub schedule: Vec<usize>,
    pub values: Vec<Q>,
    pub target: Q,
    pub scaled: Vec<f64>,
    pub cross_checked: bool,
    pub certificate: RateCertificate,
    pub pass: bool,
}

/// Limit of the eigenvalue of `α_{k,n}` on `π^{bλ[n]}`:
/// `q_k(bλ(triv)) + ‖bλ‖^k`, which is `h*_k(λ)` for the trivial group.
pub fn pipeline_target(k: usize, ml: &Multipartition) -> Result<Q> {
    Ok(eval_q(k, ml.get(0))? + Q::from(ml.norm()).pow(k as u32))
}

/// Trajectory `t(n)` of the `α_{k,n}` eigenvalue on `π^{bλ[n]}` from the
/// closed forms of the central generators; certifies `n |t(n) − target|` bounded.
pub fn eigen_pipeline(
    k: usize,
    ml: &Multipartition,
    group: &Arc<FiniteGroup>,
    schedule: &[usize],
    checkpoints: &[usize],
) -> Result<EigenReport> {
    if k == 0 {
        return Err(Error::invalid("alpha(k) needs k >= 1"));
    }
    if ml.num_slots() != group.num_chars() {
        return Err(Error::invalid("multipartition does not match the group"));
    }
    if let Some(&n) = schedule.iter().find(|&&n| n > MAX_PIPELINE_SIZE) {
        return Err(Error::bound("pipeline schedule", n, MAX_PIPELINE_SIZE));
    }
    let polys = alpha_polynomials(k, group)?;
    let target = pipeline_target(k, ml)?;
    let mut values = Vec::new();
    let mut cross_checked = true;
    for &n in schedule {
        let grown = ml.with_row(n)?;
        let nq = Q::from(n);
        let mut t = Q::zero();
        let mut direct = Q::zero();
        for (i, poly) in polys.iter().enumerate() {
            let w = Q::binomial(k as u64, i as u64) / nq.pow(i as u32);
            let w = if i % 2 == 0 { w } else { -w };
            let v = if group.is_trivial() {
                poly.eval(grown.get(0))?
            } else {
                poly.eval_multi(&grown)?
            };
            t += &w * &v;
            direct += w * eval_frakp(k + i, grown.get(0))?;
        }
        cross_checked &= t == direct;
        if group.is_trivial() {
            cross_checked &= t == binomial_shift_combination(k, ml.get(0), n)?;
        }
        values.push(t);
    }
    let exact_points: Vec<(usize, Q)> = schedule
        .iter()
        .zip(&values)
        .map(|(&n, t)| (n, Q::from(n) * (t - &target).abs()))
        .collect();
    let certificate = RateCertificate::from_exact(&exact_points, checkpoints);
    Ok(EigenReport {
        k,
        lambda: if group.is_trivial() { ml.get(0).to_string() } else { ml.to_literal() },
        group: group.name().to_string(),
        schedule: schedule.to_vec(),
        scaled: exact_points.iter().map(|p| p.1.to_f64()).collect(),
        values,
        target,
        cross_checked,
        pass: certificate.pass && cross_checked,
        certificate,
    })
}

/// `n |Σ(−1)^i C(k,i) n^{−i} 𝔭_{k+i}(λ[n]) − q_k(λ) − q_1(λ)^k|` over the schedule.
pub fn binomial_shift_rate(k: usize, lambda: &Partition, schedule: &[usize], checkpoints: &[usize]) -> Result<(Vec<(usize, Q)>, RateCertificate)> {
    let target = eval_q(k, lambda)? + eval_q(1, lambda)?.pow(k as u32);
    let points = schedule
        .iter()
        .map(|&n| Ok((n, Q::from(n) * (binomial_shift_combination(k, lambda, n)? - &target).abs())))
        .collect::<Result<Vec<_>>>()?;
    let cert = RateCertificate::from_exact(&points, checkpoints);
    Ok((points, cert))
}
