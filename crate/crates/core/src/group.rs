//! Finite groups given by multiplication tables with rational character tables.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::Q;

pub const MAX_GROUP_ORDER: usize = 255;

pub const BUILTIN_GROUPS: [&str; 5] = ["trivial", "Z2", "V4", "S3", "D4"];

/// On-disk group definition.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GroupFile {
    pub name: String,
    pub order: usize,
    pub mult: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub char_table: Vec<Vec<String>>,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mult: Vec<u8>,
    inv: Vec<u8>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    chars: Vec<Vec<Q>>,
    dims: Vec<usize>,
    generators: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.mult == other.mult
            && self.classes == other.classes
            && self.chars == other.chars
    }
}

impl Eq for FiniteGroup {}

fn loc(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::GroupFile {
        location: location.into(),
        message: message.into(),
    }
}

impl FiniteGroup {
    pub fn trivial() -> FiniteGroup {
        Self::builtin("trivial").expect("builtin")
    }

    pub fn builtin(name: &str) -> Result<FiniteGroup> {
        match name {
            "trivial" | "1" => abelian_from_xor("trivial", 0),
            "Z2" | "z2" => abelian_from_xor("Z2", 1),
            "V4" | "v4" | "klein" => abelian_from_xor("V4", 2),
            "S3" | "s3" => s3(),
            "D4" | "d4" => d4(),
            _ => Err(Error::invalid(format!(
                "unknown built-in group `{name}` (known: {})",
                BUILTIN_GROUPS.join(", ")
            ))),
        }
    }

    /// Built-in name or path to a JSON group file.
    pub fn resolve(name_or_path: &str) -> Result<FiniteGroup> {
        match Self::builtin(name_or_path) {
            Ok(g) => Ok(g),
            Err(_) if Path::new(name_or_path).exists() => Self::load(name_or_path),
            Err(e) => Err(e),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<FiniteGroup> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<FiniteGroup> {
        let file: GroupFile = serde_json::from_str(text).map_err(|e| {
            loc(
                format!("line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile {
            name: self.name.clone(),
            order: self.order,
            mult: (0..self.order)
                .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
                .collect(),
            inv: (0..self.order).map(|a| self.inv(a)).collect(),
            classes: self.classes.clone(),
            char_table: self
                .chars
                .iter()
                .map(|row| row.iter().map(Q::to_string).collect())
                .collect(),
            dims: self.dims.clone(),
        }
    }

    /// Validates every table invariant, failing on the first violation.
    pub fn from_file(f: &GroupFile) -> Result<FiniteGroup> {
        let n = f.order;
        if n == 0 || n > MAX_GROUP_ORDER {
            return Err(loc("order", format!("must be in 1..={MAX_GROUP_ORDER}, got {n}")));
        }
        if f.mult.len() != n {
            return Err(loc("mult", format!("expected {n} rows, got {}", f.mult.len())));
        }
        for (i, row) in f.mult.iter().enumerate() {
            if row.len() != n {
                return Err(loc(format!("mult[{i}]"), format!("expected {n} entries, got {}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(loc(format!("mult[{i}][{j}]"), format!("index {v} out of range")));
                }
            }
        }
        let m = |a: usize, b: usize| f.mult[a][b];
        for j in 0..n {
            if m(0, j) != j || m(j, 0) != j {
                return Err(loc(format!("mult[0][{j}]"), "index 0 is not a two-sided identity"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(loc(
                            "mult",
                            format!("not associative at ({a},{b},{c})"),
                        ));
                    }
                }
            }
        }
        if f.inv.len() != n {
            return Err(loc("inv", format!("expected {n} entries, got {}", f.inv.len())));
        }
        for (i, &v) in f.inv.iter().enumerate() {
            if v >= n || m(i, v) != 0 || m(v, i) != 0 {
                return Err(loc(format!("inv[{i}]"), format!("{v} is not the inverse of {i}")));
            }
        }

        if f.classes.first().map(Vec::as_slice) != Some(&[0][..]) {
            return Err(loc("classes[0]", "class 0 must be exactly [0]"));
        }
        let mut class_of = vec![usize::MAX; n];
        for (c, class) in f.classes.iter().enumerate() {
            if class.is_empty() {
                return Err(loc(format!("classes[{c}]"), "empty class"));
            }
            for &g in class {
                if g >= n {
                    return Err(loc(format!("classes[{c}]"), format!("element {g} out of range")));
                }
                if class_of[g] != usize::MAX {
                    return Err(loc(format!("classes[{c}]"), format!("element {g} listed twice")));
                }
                class_of[g] = c;
            }
        }
        if let Some(g) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(loc("classes", format!("element {g} is in no class")));
        }
        for (c, class) in f.classes.iter().enumerate() {
            let g = class[0];
            let orbit: BTreeSet<usize> = (0..n).map(|x| m(m(x, g), f.inv[x])).collect();
            let listed: BTreeSet<usize> = class.iter().copied().collect();
            if orbit != listed {
                return Err(loc(format!("classes[{c}]"), "not a conjugacy class"));
            }
        }

        let k = f.classes.len();
        if f.char_table.len() != k {
            return Err(loc(
                "char_table",
                format!("expected {k} rows (one per class), got {}", f.char_table.len()),
            ));
        }
        let mut chars = Vec::with_capacity(k);
        for (i, row) in f.char_table.iter().enumerate() {
            if row.len() != k {
                return Err(loc(format!("char_table[{i}]"), format!("expected {k} entries, got {}", row.len())));
            }
            let mut parsed = Vec::with_capacity(k);
            for (j, s) in row.iter().enumerate() {
                let v: Q = s.parse().map_err(|_| {
                    loc(format!("char_table[{i}][{j}]"), format!("`{s}` is not an exact rational"))
                })?;
                parsed.push(v);
            }
            chars.push(parsed);
        }
        if chars[0].iter().any(|v| !v.is_one()) {
            return Err(loc("char_table[0]", "row 0 must be the trivial character"));
        }
        let order_q = Q::from(n);
        for a in 0..k {
            for b in a..k {
                let s: Q = (0..k)
                    .map(|c| Q::from(f.classes[c].len()) * &chars[a][c] * &chars[b][c])
                    .sum();
                let want = if a == b { order_q.clone() } else { Q::zero() };
                if s != want {
                    return Err(loc(
                        format!("char_table[{a}]"),
                        format!("orthogonality with row {b} fails: sum {s}, expected {want}"),
                    ));
                }
            }
        }
        if f.dims.len() != k {
            return Err(loc("dims", format!("expected {k} entries, got {}", f.dims.len())));
        }
        for (i, &d) in f.dims.iter().enumerate() {
            if Q::from(d) != chars[i][0] {
                return Err(loc(format!("dims[{i}]"), format!("{d} differs from the identity value {}", chars[i][0])));
            }
        }
        if f.dims.iter().map(|d| d * d).sum::<usize>() != n {
            return Err(loc("dims", "sum of squares differs from the order"));
        }

        let mut g = FiniteGroup {
            name: f.name.clone(),
            order: n,
            mult: f.mult.iter().flatten().map(|&v| v as u8).collect(),
            inv: f.inv.iter().map(|&v| v as u8).collect(),
            classes: f.classes.clone(),
            class_of,
            chars,
            dims: f.dims.clone(),
            generators: Vec::new(),
        };
        g.generators = g.compute_generators();
        Ok(g)
    }

    fn compute_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut sub: BTreeSet<usize> = [0].into();
        for x in 0..self.order {
            if sub.contains(&x) {
                continue;
            }
            gens.push(x);
            sub = self.closure(&gens);
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = [0].into();
        let mut frontier = vec![0];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if set.insert(b) {
                    frontier.push(b);
                }
            }
        }
        set
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub(crate) fn mul_u8(&self, a: u8, b: u8) -> u8 {
        self.mult[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn num_chars(&self) -> usize {
        self.chars.len()
    }

    pub fn char_table(&self) -> &[Vec<Q>] {
        &self.chars
    }

    /// `ψ(g)`
    pub fn char_value(&self, psi: usize, g: usize) -> &Q {
        &self.chars[psi][self.class_of[g]]
    }

    pub fn dim(&self, psi: usize) -> usize {
        self.dims[psi]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn check_char(&self, psi: usize) -> Result<()> {
        if psi >= self.num_chars() {
            return Err(Error::invalid(format!(
                "character index {psi} out of range for {} ({} characters)",
                self.name,
                self.num_chars()
            )));
        }
        Ok(())
    }

    /// Matrices of an irreducible representation with character `ψ`, indexed by element.
    ///
    /// Realized inside the left regular representation as `ℂ[G]·e_ψ·f_χ` where
    /// `f_χ` is the idempotent of a rational linear character of a cyclic
    /// subgroup occurring once in `ψ`.
    pub fn irrep_matrices(&self, psi: usize) -> Result<Vec<QMatrix>> {
        self.check_char(psi)?;
        let d = self.dims[psi];
        if d == 1 {
            return Ok((0..self.order)
                .map(|g| QMatrix::from_rows(vec![vec![self.char_value(psi, g).clone()]]).unwrap())
                .collect());
        }
        let n = self.order;
        let mut idem: Option<Vec<Q>> = None;
        'search: for h in 0..n {
            let mut cyc = vec![0usize];
            let mut x = h;
            while x != 0 {
                cyc.push(x);
                x = self.mul(x, h);
            }
            let len = cyc.len();
            let mut options: Vec<Vec<Q>> = vec![vec![Q::one(); len]];
            if len % 2 == 0 {
                options.push((0..len).map(|j| if j % 2 == 0 { Q::one() } else { -Q::one() }).collect());
            }
            for chi in options {
                let ip: Q = cyc
                    .iter()
                    .zip(&chi)
                    .map(|(&x, c)| self.char_value(psi, x) * c)
                    .sum::<Q>()
                    / Q::from(len);
                if ip.is_one() {
                    let mut f = vec![Q::zero(); n];
                    for (j, &x) in cyc.iter().enumerate() {
                        // χ(x⁻¹) = χ(x) for ±1 values
                        f[x] += &chi[j] / &Q::from(len);
                    }
                    let mut e = vec![Q::zero(); n];
                    let scale = Q::from(d) / Q::from(n);
                    for (g, slot) in e.iter_mut().enumerate() {
                        *slot = &scale * self.char_value(psi, self.inv(g));
                    }
                    idem = Some(self.convolve(&e, &f));
                    break 'search;
                }
            }
        }
        let v0 = idem.ok_or_else(|| {
            Error::Unsupported(format!(
                "no rational model found for character {psi} of {}",
                self.name
            ))
        })?;

        let mut basis: Vec<Vec<Q>> = Vec::new();
        for g in 0..n {
            let cand = self.left_translate(g, &v0);
            let mut trial = basis.clone();
            trial.push(cand.clone());
            if QMatrix::from_rows(trial).unwrap().rank() == basis.len() + 1 {
                basis.push(cand);
            }
            if basis.len() == d {
                break;
            }
        }
        if basis.len() != d {
            return Err(Error::Unsupported(format!(
                "irreducible model for character {psi} of {} has wrong dimension",
                self.name
            )));
        }
        // coordinates via the Gram system BᵀB x = Bᵀv
        let gram = QMatrix::from_rows(
            (0..d)
                .map(|i| (0..d).map(|j| dot(&basis[i], &basis[j])).collect())
                .collect(),
        )?;
        let mut out = Vec::with_capacity(n);
        for g in 0..n {
            let mut m = QMatrix::zeros(d, d);
            for j in 0..d {
                let img = self.left_translate(g, &basis[j]);
                let rhs: Vec<Q> = (0..d).map(|i| dot(&basis[i], &img)).collect();
                let x = gram.solve(&rhs)?;
                for (i, v) in x.into_iter().enumerate() {
                    m.set(i, j, v);
                }
            }
            out.push(m);
        }
        Ok(out)
    }

    fn convolve(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.order];
        for (x, ax) in a.iter().enumerate() {
            if ax.is_zero() {
                continue;
            }
            for (y, by) in b.iter().enumerate() {
                if by.is_zero() {
                    continue;
                }
                out[self.mul(x, y)] += ax * by;
            }
        }
        out
    }

    fn left_translate(&self, g: usize, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.order];
        for (x, vx) in v.iter().enumerate() {
            out[self.mul(g, x)] = vx.clone();
        }
        out
    }
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn abelian_from_xor(name: &str, bits: u32) -> Result<FiniteGroup> {
    let n = 1usize << bits;
    let mult: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| a ^ b).collect()).collect();
    let chars = (0..n)
        .map(|u| {
            (0..n)
                .map(|x| if (u & x).count_ones() % 2 == 0 { "1".into() } else { "-1".into() })
                .collect()
        })
        .collect();
    FiniteGroup::from_file(&GroupFile {
        name: name.into(),
        order: n,
        mult,
        inv: (0..n).collect(),
        classes: (0..n).map(|x| vec![x]).collect(),
        char_table: chars,
        dims: vec![1; n],
    })
}

// Builds a table from a closed list of permutations (identity first) and a
// character evaluator on elements.
fn from_permutations(
    name: &str,
    elems: Vec<Vec<usize>>,
    nchars: usize,
    chi: impl Fn(usize, &[usize]) -> i64,
) -> Result<FiniteGroup> {
    let n = elems.len();
    let index = |p: &[usize]| elems.iter().position(|e| e == p).expect("closed");
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&x| a[x]).collect() };
    let mult: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| index(&compose(&elems[a], &elems[b]))).collect())
        .collect();
    let inv: Vec<usize> = (0..n).map(|a| (0..n).find(|&b| mult[a][b] == 0).unwrap()).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; n];
    for g in 0..n {
        if seen[g] {
            continue;
        }
        let orbit: BTreeSet<usize> = (0..n).map(|x| mult[mult[x][g]][inv[x]]).collect();
        for &h in &orbit {
            seen[h] = true;
        }
        classes.push(orbit.into_iter().collect());
    }
    let char_table = (0..nchars)
        .map(|psi| classes.iter().map(|c| chi(psi, &elems[c[0]]).to_string()).collect())
        .collect();
    let dims = (0..nchars).map(|psi| chi(psi, &elems[0]) as usize).collect();
    FiniteGroup::from_file(&GroupFile {
        name: name.into(),
        order: n,
        mult,
        inv,
        classes,
        char_table,
        dims,
    })
}

fn perm_sign(p: &[usize]) -> i64 {
    let mut sign = 1;
    let mut seen = vec![false; p.len()];
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn s3() -> Result<FiniteGroup> {
    use itertools::Itertools;
    let elems: Vec<Vec<usize>> = (0..3).permutations(3).collect();
    from_permutations("S3", elems, 3, |psi, p| match psi {
        0 => 1,
        1 => perm_sign(p),
        _ => (0..3).filter(|&i| p[i] == i).count() as i64 - 1,
    })
}

fn d4() -> Result<FiniteGroup> {
    let r = vec![1, 2, 3, 0];
    let s = vec![0, 3, 2, 1];
    let mut elems = vec![vec![0, 1, 2, 3]];
    let mut i = 0;
    while i < elems.len() {
        for g in [&r, &s] {
            let next: Vec<usize> = g.iter().map(|&x| elems[i][x]).collect();
            if !elems.contains(&next) {
                elems.push(next);
            }
        }
        i += 1;
    }
    from_permutations("D4", elems, 5, |psi, p| {
        let a = p[0] as i64;
        let rotation = p[1] == (p[0] + 1) % 4;
        let alt = if a % 2 == 0 { 1 } else { -1 };
        match (psi, rotation) {
            (0, _) => 1,
            (1, true) => 1,
            (1, false) => -1,
            (2, _) => alt,
            (3, true) => alt,
            (3, false) => -alt,
            (_, true) => [2, 0, -2, 0][a as usize],
            (_, false) => 0,
        }
    })
}

/// A rational class function on a group, stored per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    values: Vec<Q>,
}

impl ClassFunction {
    pub fn new(group: &FiniteGroup, values: Vec<Q>) -> Result<Self> {
        if values.len() != group.classes().len() {
            return Err(Error::invalid(format!(
                "class function needs {} values, got {}",
                group.classes().len(),
                values.len()
            )));
        }
        Ok(ClassFunction { values })
    }

    /// `ψ̄(g) = ψ(g⁻¹)`, which equals `ψ` for rational characters.
    pub fn character_conj(group: &FiniteGroup, psi: usize) -> Result<Self> {
        group.check_char(psi)?;
        let values = group
            .classes()
            .iter()
            .map(|c| group.char_value(psi, group.inv(c[0])).clone())
            .collect();
        Ok(ClassFunction { values })
    }

    /// Value 1 at the identity and 0 elsewhere.
    pub fn identity_indicator(group: &FiniteGroup) -> Self {
        let mut values = vec![Q::zero(); group.classes().len()];
        values[0] = Q::one();
        ClassFunction { values }
    }

    pub fn scaled(&self, c: &Q) -> Self {
        ClassFunction {
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn value(&self, group: &FiniteGroup, g: usize) -> &Q {
        &self.values[group.class_of(g)]
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }
}
