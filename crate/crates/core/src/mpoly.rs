//! Sparse multivariate polynomials over a [`FieldCtx`], up to four variables.
//!
//! Exponents are packed 16 bits per variable into a `u64`, variable 0 in the
//! top bits, so comparing packed words is lexicographic order. Terms are kept
//! sorted in descending graded-lex order, which makes equality structural and
//! serialization stable.

use std::fmt;

use rustc_hash::FxHashMap;

use crate::gf::{Embedding, Fe, FieldCtx, UniPoly};

pub const MAX_VARS: usize = 4;

#[derive(Debug, thiserror::Error)]
pub enum MPolyError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("both polynomials have degree 0 in the elimination variable")]
    Degenerate,
    #[error("duplicate interpolation node")]
    DuplicateNode,
    #[error("{have} nodes given, {need} needed")]
    InsufficientNodes { have: usize, need: usize },
    #[error(transparent)]
    Field(#[from] crate::gf::GfError),
}

#[inline]
fn shift(var: usize) -> u32 {
    16 * (3 - var as u32)
}

#[inline]
pub(crate) fn exp_of(m: u64, var: usize) -> u32 {
    ((m >> shift(var)) & 0xffff) as u32
}

pub(crate) fn pack(exps: &[u32]) -> u64 {
    exps.iter()
        .enumerate()
        .fold(0u64, |acc, (i, &e)| acc | ((e as u64) << shift(i)))
}

fn total_degree_of(m: u64) -> u32 {
    (0..MAX_VARS).map(|i| exp_of(m, i)).sum()
}

#[inline]
fn order_key(m: u64) -> u128 {
    ((total_degree_of(m) as u128) << 64) | m as u128
}

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    ctx: FieldCtx,
    nvars: usize,
    /// Descending graded-lex, no zero coefficients.
    terms: Vec<(u64, Fe)>,
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("X{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "MPoly[{}]", self.to_text(&refs))
    }
}

impl MPoly {
    pub fn zero(ctx: &FieldCtx, nvars: usize) -> MPoly {
        assert!(nvars <= MAX_VARS);
        MPoly { ctx: ctx.clone(), nvars, terms: Vec::new() }
    }

    pub fn constant(ctx: &FieldCtx, nvars: usize, c: Fe) -> MPoly {
        Self::from_terms(ctx, nvars, vec![(vec![0; nvars], c)])
    }

    pub fn one(ctx: &FieldCtx, nvars: usize) -> MPoly {
        Self::constant(ctx, nvars, ctx.one())
    }

    pub fn var(ctx: &FieldCtx, nvars: usize, i: usize) -> MPoly {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(ctx, nvars, vec![(e, ctx.one())])
    }

    /// Linear form `sum c_i X_i`.
    pub fn linear(ctx: &FieldCtx, coeffs: &[Fe]) -> MPoly {
        let n = coeffs.len();
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e, *c)
            })
            .collect();
        Self::from_terms(ctx, n, terms)
    }

    /// Builds from (exponent vector, coefficient) pairs; repeated monomials add.
    pub fn from_terms(ctx: &FieldCtx, nvars: usize, terms: Vec<(Vec<u32>, Fe)>) -> MPoly {
        assert!(nvars <= MAX_VARS);
        let mut map: FxHashMap<u64, Fe> = FxHashMap::default();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            let slot = map.entry(pack(&e)).or_insert(Fe::ZERO);
            *slot = ctx.add(slot, &c);
        }
        Self::from_map(ctx, nvars, map)
    }

    fn from_map(ctx: &FieldCtx, nvars: usize, map: FxHashMap<u64, Fe>) -> MPoly {
        let mut terms: Vec<(u64, Fe)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|&(m, _)| std::cmp::Reverse(order_key(m)));
        MPoly { ctx: ctx.clone(), nvars, terms }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    /// Terms as (exponent vector, coefficient), descending graded-lex.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, Fe)> + '_ {
        self.terms
            .iter()
            .map(move |&(m, c)| ((0..self.nvars).map(|i| exp_of(m, i)).collect(), c))
    }

    pub(crate) fn packed_terms(&self) -> &[(u64, Fe)] {
        &self.terms
    }

    pub fn coeff(&self, expo: &[u32]) -> Fe {
        assert_eq!(expo.len(), self.nvars, "exponent vector length");
        if expo.iter().any(|&e| e > 0xffff) {
            return Fe::ZERO;
        }
        self.coeff_packed(pack(expo))
    }

    pub(crate) fn coeff_packed(&self, m: u64) -> Fe {
        let key = order_key(m);
        match self
            .terms
            .binary_search_by(|&(t, _)| key.cmp(&order_key(t)))
        {
            Ok(i) => self.terms[i].1,
            Err(_) => Fe::ZERO,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|&(m, _)| total_degree_of(m))
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|&(m, _)| exp_of(m, var)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.total_degree();
        self.terms.iter().all(|&(m, _)| Some(total_degree_of(m)) == d)
    }

    fn check(&self, other: &MPoly) {
        assert!(self.ctx == other.ctx, "polynomials over different fields");
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        self.check(other);
        let f = &self.ctx;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ki = self.terms.get(i).map(|t| order_key(t.0));
            let kj = other.terms.get(j).map(|t| order_key(t.0));
            match (ki, kj) {
                (Some(a), Some(b)) if a == b => {
                    let c = f.add(&self.terms[i].1, &other.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a > b => {
                    out.push(self.terms[i]);
                    i += 1;
                }
                (Some(_), None) => {
                    out.push(self.terms[i]);
                    i += 1;
                }
                _ => {
                    out.push(other.terms[j]);
                    j += 1;
                }
            }
        }
        MPoly { ctx: f.clone(), nvars: self.nvars, terms: out }
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|&(m, c)| (m, self.ctx.neg(&c))).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Fe) -> MPoly {
        if c.is_zero() {
            return Self::zero(&self.ctx, self.nvars);
        }
        MPoly {
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|&(m, a)| (m, self.ctx.mul(&a, c))).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> MPoly {
        self.scale(&self.ctx.from_int(n))
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx, self.nvars);
        }
        let f = &self.ctx;
        let mut map: FxHashMap<u64, Fe> =
            FxHashMap::with_capacity_and_hasher(self.terms.len() * other.terms.len().min(64), Default::default());
        if f.is_prime_field() {
            let p = f.p();
            let mut acc: FxHashMap<u64, u32> = FxHashMap::default();
            for &(ma, ca) in &self.terms {
                let a = ca.coord(0) as u32;
                for &(mb, cb) in &other.terms {
                    let v = acc.entry(ma + mb).or_insert(0);
                    *v = (*v + a * cb.coord(0) as u32) % p;
                }
            }
            for (m, v) in acc {
                if v != 0 {
                    map.insert(m, f.from_int(v as i64));
                }
            }
        } else {
            for &(ma, ca) in &self.terms {
                for &(mb, cb) in &other.terms {
                    let slot = map.entry(ma + mb).or_insert(Fe::ZERO);
                    *slot = f.add(slot, &f.mul(&ca, &cb));
                }
            }
        }
        Self::from_map(f, self.nvars, map)
    }

    /// `self^2`, visiting each unordered pair of terms once.
    pub fn square(&self) -> MPoly {
        let f = &self.ctx;
        let n = self.terms.len();
        let mut map: FxHashMap<u64, Fe> = FxHashMap::default();
        if f.is_prime_field() {
            let p = f.p();
            let mut acc: FxHashMap<u64, u32> = FxHashMap::default();
            for i in 0..n {
                let (mi, ci) = self.terms[i];
                let a = ci.coord(0) as u32;
                let v = acc.entry(mi + mi).or_insert(0);
                *v = (*v + a * a) % p;
                let a2 = (2 * a) % p;
                for &(mj, cj) in &self.terms[i + 1..] {
                    let v = acc.entry(mi + mj).or_insert(0);
                    *v = (*v + a2 * cj.coord(0) as u32) % p;
                }
            }
            for (m, v) in acc {
                if v != 0 {
                    map.insert(m, f.from_int(v as i64));
                }
            }
        } else {
            for i in 0..n {
                let (mi, ci) = self.terms[i];
                let slot = map.entry(mi + mi).or_insert(Fe::ZERO);
                *slot = f.add(slot, &f.mul(&ci, &ci));
                let c2 = f.scale_int(&ci, 2);
                for &(mj, cj) in &self.terms[i + 1..] {
                    let slot = map.entry(mi + mj).or_insert(Fe::ZERO);
                    *slot = f.add(slot, &f.mul(&c2, &cj));
                }
            }
        }
        Self::from_map(f, self.nvars, map)
    }

    /// Binary powering; `f^0 = 1`.
    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut acc: Option<MPoly> = None;
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc.unwrap_or_else(|| Self::one(&self.ctx, self.nvars))
    }

    pub fn partial(&self, var: usize) -> MPoly {
        assert!(var < self.nvars);
        let f = &self.ctx;
        let unit = 1u64 << shift(var);
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(m, c) in &self.terms {
            let e = exp_of(m, var);
            if e == 0 {
                continue;
            }
            let nc = f.scale_int(&c, e as i64);
            if !nc.is_zero() {
                terms.push((m - unit, nc));
            }
        }
        let mut map = FxHashMap::default();
        map.extend(terms);
        Self::from_map(f, self.nvars, map)
    }

    pub fn eval(&self, point: &[Fe]) -> Fe {
        assert_eq!(point.len(), self.nvars);
        let f = &self.ctx;
        // power tables per variable
        let mut pows: Vec<Vec<Fe>> = Vec::with_capacity(self.nvars);
        for (i, x) in point.iter().enumerate() {
            let d = self.degree_in(i).unwrap_or(0) as usize;
            let mut v = Vec::with_capacity(d + 1);
            let mut acc = f.one();
            for _ in 0..=d {
                v.push(acc);
                acc = f.mul(&acc, x);
            }
            pows.push(v);
        }
        let mut sum = Fe::ZERO;
        for &(m, c) in &self.terms {
            let mut t = c;
            for (i, pw) in pows.iter().enumerate() {
                let e = exp_of(m, i) as usize;
                if e > 0 {
                    t = f.mul(&t, &pw[e]);
                }
            }
            sum = f.add(&sum, &t);
        }
        sum
    }

    /// Sets variable `var` to `value`, keeping the variable count.
    pub fn specialize(&self, var: usize, value: &Fe) -> MPoly {
        let f = &self.ctx;
        let mask = !(0xffffu64 << shift(var));
        let mut map: FxHashMap<u64, Fe> = FxHashMap::default();
        for &(m, c) in &self.terms {
            let t = f.mul(&c, &f.pow(value, exp_of(m, var) as u128));
            let slot = map.entry(m & mask).or_insert(Fe::ZERO);
            *slot = f.add(slot, &t);
        }
        Self::from_map(f, self.nvars, map)
    }

    /// Replaces variable `var` by the polynomial `g` (same ring).
    pub fn substitute(&self, var: usize, g: &MPoly) -> MPoly {
        self.check(g);
        let mask = !(0xffffu64 << shift(var));
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut gp = vec![Self::one(&self.ctx, self.nvars)];
        for i in 1..=d {
            gp.push(gp[i - 1].mul(g));
        }
        let mut buckets: Vec<FxHashMap<u64, Fe>> = vec![FxHashMap::default(); d + 1];
        for &(m, c) in &self.terms {
            buckets[exp_of(m, var) as usize].insert(m & mask, c);
        }
        let mut acc = Self::zero(&self.ctx, self.nvars);
        for (e, b) in buckets.into_iter().enumerate() {
            if b.is_empty() {
                continue;
            }
            let part = Self::from_map(&self.ctx, self.nvars, b);
            acc = acc.add(&part.mul(&gp[e]));
        }
        acc
    }

    /// Coefficients as a polynomial in `var`: entry `i` multiplies `var^i`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MPoly> {
        let mask = !(0xffffu64 << shift(var));
        let d = self.degree_in(var).map(|d| d as usize + 1).unwrap_or(0);
        let mut buckets: Vec<FxHashMap<u64, Fe>> = vec![FxHashMap::default(); d];
        for &(m, c) in &self.terms {
            buckets[exp_of(m, var) as usize].insert(m & mask, c);
        }
        buckets
            .into_iter()
            .map(|b| Self::from_map(&self.ctx, self.nvars, b))
            .collect()
    }

    /// Univariate view, valid when only `var` occurs.
    pub fn to_univariate(&self, var: usize) -> Option<UniPoly> {
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut coeffs = vec![Fe::ZERO; d + 1];
        for &(m, c) in &self.terms {
            if total_degree_of(m) != exp_of(m, var) {
                return None;
            }
            coeffs[exp_of(m, var) as usize] = c;
        }
        Some(UniPoly::new(&self.ctx, coeffs))
    }

    pub fn from_univariate(u: &UniPoly, nvars: usize, var: usize) -> MPoly {
        let terms = u
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut e = vec![0; nvars];
                e[var] = i as u32;
                (e, *c)
            })
            .collect();
        Self::from_terms(u.ctx(), nvars, terms)
    }

    /// Change of variables `X_i -> sum_j m[i][j] X_j` (square, `nvars` wide).
    pub fn linear_change(&self, m: &[Vec<Fe>]) -> MPoly {
        let n = self.nvars;
        let images: Vec<MPoly> = (0..n).map(|i| Self::linear(&self.ctx, &m[i][..n])).collect();
        let mut acc = Self::zero(&self.ctx, n);
        let mut cache: Vec<Vec<MPoly>> = images.iter().map(|g| vec![Self::one(&self.ctx, n), g.clone()]).collect();
        for &(mono, c) in &self.terms {
            let mut t = Self::constant(&self.ctx, n, c);
            for (i, cache_i) in cache.iter_mut().enumerate() {
                let e = exp_of(mono, i) as usize;
                while cache_i.len() <= e {
                    let next = cache_i.last().unwrap().mul(&images[i]);
                    cache_i.push(next);
                }
                if e > 0 {
                    t = t.mul(&cache_i[e]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Moves the coefficients along a field embedding.
    pub fn map_coeffs(&self, emb: &Embedding) -> MPoly {
        assert!(&self.ctx == emb.src(), "polynomial not over the embedding source");
        MPoly {
            ctx: emb.dst().clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|&(m, c)| (m, emb.map(&c))).collect(),
        }
    }

    /// Same polynomial with the variable count widened or narrowed. Narrowing
    /// requires the dropped variables to be absent.
    pub fn with_nvars(&self, nvars: usize) -> MPoly {
        for &(m, _) in &self.terms {
            for i in nvars..self.nvars {
                assert_eq!(exp_of(m, i), 0, "dropping a variable that occurs");
            }
        }
        MPoly { ctx: self.ctx.clone(), nvars, terms: self.terms.clone() }
    }

    /// Leading term in graded-lex order.
    fn lead(&self) -> Option<(u64, Fe)> {
        self.terms.first().copied()
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        self.check(d);
        let (ld, lc) = d.lead().expect("division by zero polynomial");
        let lci = self.ctx.inv(&lc).unwrap();
        let mut rem = self.clone();
        let mut q: FxHashMap<u64, Fe> = FxHashMap::default();
        while let Some((lm, c)) = rem.lead() {
            if (0..self.nvars).any(|i| exp_of(lm, i) < exp_of(ld, i)) {
                return None;
            }
            let qm = lm - ld;
            let qc = self.ctx.mul(&c, &lci);
            q.insert(qm, qc);
            let shifted = MPoly {
                ctx: self.ctx.clone(),
                nvars: self.nvars,
                terms: d.terms.iter().map(|&(m, a)| (m + qm, self.ctx.mul(&a, &qc))).collect(),
            };
            rem = rem.sub(&shifted);
        }
        Some(Self::from_map(&self.ctx, self.nvars, q))
    }

    /// Sylvester resultant with respect to `var`, by fraction-free Bareiss
    /// elimination. The result does not involve `var`.
    pub fn resultant_wrt(&self, g: &MPoly, var: usize) -> Result<MPoly, MPolyError> {
        self.check(g);
        let fc = self.coefficients_in(var);
        let gc = g.coefficients_in(var);
        let m = fc.len().saturating_sub(1);
        let n = gc.len().saturating_sub(1);
        if self.is_zero() || g.is_zero() || (m == 0 && n == 0) {
            return Err(MPolyError::Degenerate);
        }
        let zero = Self::zero(&self.ctx, self.nvars);
        if m == 0 {
            return Ok(fc[0].pow(n as u32));
        }
        if n == 0 {
            return Ok(gc[0].pow(m as u32));
        }
        let size = m + n;
        let mut a: Vec<Vec<MPoly>> = vec![vec![zero.clone(); size]; size];
        for r in 0..n {
            for (i, c) in fc.iter().rev().enumerate() {
                a[r][r + i] = c.clone();
            }
        }
        for r in 0..m {
            for (i, c) in gc.iter().rev().enumerate() {
                a[n + r][r + i] = c.clone();
            }
        }
        Ok(bareiss_det(a, &zero))
    }

    /// Text form with the given variable names, terms in descending graded-lex
    /// order, e.g. `2*u^3*v + u + 1`. Extension coefficients print as `[c0,c1]`.
    pub fn to_text(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let f = &self.ctx;
        let mut parts = Vec::with_capacity(self.terms.len());
        for &(m, c) in &self.terms {
            let mut factors = Vec::new();
            let is_one = c == f.one();
            if !is_one || total_degree_of(m) == 0 {
                if f.is_prime_field() {
                    factors.push(c.coord(0).to_string());
                } else {
                    factors.push(format!("[{}]", f.format(&c)));
                }
            }
            for (i, name) in names.iter().enumerate().take(self.nvars) {
                match exp_of(m, i) {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }

    /// Parses a polynomial in the declared variables. Accepts `+`, `-`, `*`,
    /// `^`, juxtaposition (`2u^3v`), integer coefficients and bracketed
    /// extension elements `[c0,c1]`.
    pub fn parse(ctx: &FieldCtx, names: &[&str], s: &str) -> Result<MPoly, MPolyError> {
        Parser { ctx, names, src: s.as_bytes(), pos: 0 }.parse_sum()
    }
}

fn bareiss_det(mut a: Vec<Vec<MPoly>>, zero: &MPoly) -> MPoly {
    let n = a.len();
    let ctx = zero.ctx().clone();
    let mut sign = false;
    let mut prev = MPoly::one(&ctx, zero.nvars());
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return zero.clone(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = zero.clone();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Lagrange interpolation through `(x_i, y_i)`; the result has degree at most
/// `bound`. Only the first `bound + 1` nodes are used.
pub fn interpolate(ctx: &FieldCtx, nodes: &[(Fe, Fe)], bound: usize) -> Result<UniPoly, MPolyError> {
    if nodes.len() < bound + 1 {
        return Err(MPolyError::InsufficientNodes { have: nodes.len(), need: bound + 1 });
    }
    let mut xs: Vec<Fe> = nodes.iter().map(|n| n.0).collect();
    xs.sort();
    if xs.windows(2).any(|w| w[0] == w[1]) {
        return Err(MPolyError::DuplicateNode);
    }
    let used = &nodes[..bound + 1];
    // Newton divided differences
    let f = ctx;
    let n = used.len();
    let mut coef: Vec<Fe> = used.iter().map(|n| n.1).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(&coef[i], &coef[i - 1]);
            let den = f.sub(&used[i].0, &used[i - j].0);
            coef[i] = f.div(&num, &den).unwrap();
        }
    }
    let mut poly = UniPoly::constant(ctx, coef[n - 1]);
    for i in (0..n - 1).rev() {
        poly = poly.mul(&UniPoly::linear(ctx, used[i].0)).add(&UniPoly::constant(ctx, coef[i]));
    }
    Ok(poly)
}

struct Parser<'a> {
    ctx: &'a FieldCtx,
    names: &'a [&'a str],
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, MPolyError> {
        Err(MPolyError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse_sum(&mut self) -> Result<MPoly, MPolyError> {
        let acc = self.parse_group()?;
        if self.peek().is_some() {
            return self.err("unbalanced ')'");
        }
        Ok(acc)
    }

    /// A signed sum, ending at the end of input or before a `)`.
    fn parse_group(&mut self) -> Result<MPoly, MPolyError> {
        let nvars = self.names.len();
        let mut acc = MPoly::zero(self.ctx, nvars);
        let mut first = true;
        loop {
            let mut negate = false;
            match self.peek() {
                None | Some(b')') if !first => break,
                None | Some(b')') => return self.err("empty polynomial"),
                Some(b'+') => {
                    self.pos += 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                Some(_) if first => {}
                Some(c) => return self.err(format!("expected '+' or '-', found '{}'", c as char)),
            }
            first = false;
            // "+ -x" as printed in some displays
            while self.peek() == Some(b'-') {
                self.pos += 1;
                negate = !negate;
            }
            let t = self.parse_term()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<MPoly, MPolyError> {
        let nvars = self.names.len();
        let mut coef = self.ctx.one();
        let mut expo = vec![0u32; nvars];
        let mut factors = 0;
        let mut groups = Vec::new();
        loop {
            match self.peek() {
                Some(b'*') if factors > 0 => {
                    self.pos += 1;
                    continue;
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = self.parse_int()?;
                    let mut v = self.ctx.from_int((n % self.ctx.p() as u64) as i64);
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let e = self.parse_int()?;
                        v = self.ctx.pow(&v, e as u128);
                    }
                    coef = self.ctx.mul(&coef, &v);
                }
                Some(b'[') => {
                    self.pos += 1;
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos] != b']' {
                        self.pos += 1;
                    }
                    if self.pos >= self.src.len() {
                        return self.err("unterminated '['");
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let v = self.ctx.parse(text)?;
                    self.pos += 1;
                    coef = self.ctx.mul(&coef, &v);
                }
                Some(b'(') => {
                    self.pos += 1;
                    let mut g = self.parse_group()?;
                    if self.peek() != Some(b')') {
                        return self.err("expected ')'");
                    }
                    self.pos += 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        g = g.pow(self.parse_int()? as u32);
                    }
                    groups.push(g);
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let rest = &self.src[self.pos..];
                    let best = self
                        .names
                        .iter()
                        .enumerate()
                        .filter(|(_, n)| rest.starts_with(n.as_bytes()))
                        .max_by_key(|(_, n)| n.len());
                    let Some((idx, name)) = best else {
                        return self.err("unknown variable");
                    };
                    self.pos += name.len();
                    let mut e = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        e = self.parse_int()? as u32;
                    }
                    expo[idx] += e;
                }
                _ => break,
            }
            factors += 1;
        }
        if factors == 0 {
            return self.err("expected a term");
        }
        let mono = MPoly::from_terms(self.ctx, nvars, vec![(expo, coef)]);
        Ok(groups.iter().fold(mono, |acc, g| acc.mul(g)))
    }

    fn parse_int(&mut self) -> Result<u64, MPolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.err("integer too large"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_ext;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_poly(ctx: &FieldCtx, nvars: usize, deg: u32, nterms: usize, rng: &mut ChaCha8Rng) -> MPoly {
        use rand::Rng;
        let terms = (0..nterms)
            .map(|_| ((0..nvars).map(|_| rng.gen_range(0..=deg)).collect(), ctx.random(rng)))
            .collect();
        MPoly::from_terms(ctx, nvars, terms)
    }

    #[test]
    fn binomial_fourth_power_mod_5() {
        let f = make_ext(5, 1).unwrap();
        let p = MPoly::parse(&f, &["u", "v"], "u+v").unwrap().pow(4);
        let got: Vec<u32> = (0..=4).map(|i| f.to_prime(&p.coeff(&[4 - i, i])).unwrap()).collect();
        assert_eq!(got, vec![1, 4, 1, 4, 1]);
        assert_eq!(p.pow(0), MPoly::one(&f, 2));
    }

    #[test]
    fn binomial_cube_mod_7_and_absent_monomial() {
        let f = make_ext(7, 1).unwrap();
        let p = MPoly::parse(&f, &["x", "y"], "x+y").unwrap().pow(3);
        let got: Vec<u32> = (0..=3).map(|i| f.to_prime(&p.coeff(&[3 - i, i])).unwrap()).collect();
        assert_eq!(got, vec![1, 3, 3, 1]);
        assert!(p.coeff(&[1, 1]).is_zero());
    }

    #[test]
    fn pow_matches_iterated_multiplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for ctx in [make_ext(3, 1).unwrap(), make_ext(5, 2).unwrap()] {
            let f = random_poly(&ctx, 3, 2, 5, &mut rng);
            let mut acc = MPoly::one(&ctx, 3);
            for e in 0..=8 {
                assert_eq!(f.pow(e), acc, "e = {e}");
                acc = acc.mul(&f);
            }
        }
    }

    #[test]
    fn partial_derivatives() {
        let f = make_ext(5, 1).unwrap();
        let x5 = MPoly::parse(&f, &["x"], "x^5").unwrap();
        assert!(x5.partial(0).is_zero());
        let g = MPoly::parse(&f, &["u", "v"], "u^2v").unwrap();
        assert_eq!(g.partial(0), MPoly::parse(&f, &["u", "v"], "2uv").unwrap());
    }

    #[test]
    fn euler_relation_for_quartics() {
        let f = make_ext(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let mut terms = Vec::new();
            for a in 0..=4u32 {
                for b in 0..=4 - a {
                    terms.push((vec![a, b, 4 - a - b], f.random(&mut rng)));
                }
            }
            let q = MPoly::from_terms(&f, 3, terms);
            let mut euler = MPoly::zero(&f, 3);
            for i in 0..3 {
                euler = euler.add(&MPoly::var(&f, 3, i).mul(&q.partial(i)));
            }
            assert_eq!(euler, q.scale_int(4));
        }
    }

    #[test]
    fn resultant_small_cases() {
        let f = make_ext(7, 1).unwrap();
        let names = ["x", "y"];
        let a = MPoly::parse(&f, &names, "x - y").unwrap();
        let b = MPoly::parse(&f, &names, "x + y").unwrap();
        // lc(f)^deg(g) * g(root of f) = -(x + x); swapping the arguments flips the sign
        assert_eq!(a.resultant_wrt(&b, 1).unwrap(), MPoly::parse(&f, &names, "-2x").unwrap());
        assert_eq!(b.resultant_wrt(&a, 1).unwrap(), MPoly::parse(&f, &names, "2x").unwrap());
        assert!(a.resultant_wrt(&a, 1).unwrap().is_zero());
        let c = MPoly::parse(&f, &names, "3").unwrap();
        assert!(matches!(c.resultant_wrt(&c, 1), Err(MPolyError::Degenerate)));
    }

    #[test]
    fn resultant_of_fermat_partials_is_nonzero() {
        let f = make_ext(5, 1).unwrap();
        let names = ["u", "v", "w"];
        let fq = MPoly::parse(&f, &names, "u^4+v^4+w^4").unwrap();
        let r = fq.partial(0).resultant_wrt(&fq.partial(2), 2).unwrap();
        assert!(!r.is_zero());
        assert_eq!(r.degree_in(2), Some(0));
        assert!(r.is_homogeneous());
    }

    #[test]
    fn resultant_vanishes_at_common_zero() {
        let f = make_ext(11, 1).unwrap();
        let names = ["x", "y"];
        let a = MPoly::parse(&f, &names, "y^2 + 3y + x^2 + 5").unwrap();
        let b = MPoly::parse(&f, &names, "y^3 + 2xy + 7").unwrap();
        let r = a.resultant_wrt(&b, 1).unwrap();
        for x in f.elements() {
            for y in f.elements() {
                if a.eval(&[x, y]).is_zero() && b.eval(&[x, y]).is_zero() {
                    assert!(r.eval(&[x, Fe::ZERO]).is_zero());
                }
            }
        }
    }

    #[test]
    fn div_exact_recovers_factor() {
        let f = make_ext(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_poly(&f, 3, 3, 6, &mut rng);
        let b = random_poly(&f, 3, 2, 4, &mut rng);
        assert_eq!(a.mul(&b).div_exact(&b), Some(a.clone()));
        let x = MPoly::var(&f, 3, 0);
        assert_eq!(x.add(&MPoly::one(&f, 3)).div_exact(&x), None);
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let f = make_ext(7, 1).unwrap();
        let c = UniPoly::from_ints(&f, &[3, 0, 5, 1]);
        let nodes: Vec<(Fe, Fe)> = f.elements().map(|x| (x, c.eval(&x))).collect();
        assert_eq!(interpolate(&f, &nodes, 3).unwrap(), c);
        let konst: Vec<(Fe, Fe)> = f.elements().take(3).map(|x| (x, f.from_int(4))).collect();
        assert_eq!(interpolate(&f, &konst, 2).unwrap(), UniPoly::from_ints(&f, &[4]));
        assert!(matches!(interpolate(&f, &nodes[..2], 3), Err(MPolyError::InsufficientNodes { .. })));
        let dup = vec![nodes[0], nodes[0]];
        assert!(matches!(interpolate(&f, &dup, 1), Err(MPolyError::DuplicateNode)));
    }

    #[test]
    fn parser_forms() {
        let f = make_ext(5, 1).unwrap();
        let names = ["X1", "X2", "X3", "X4"];
        let a = MPoly::parse(&f, &names, "X2^2X4^2 - 4X1X3X4^2 + 4*X1^3*X4").unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(f.to_prime(&a.coeff(&[1, 0, 1, 2])), Some(1));
        let text = a.to_text(&names);
        assert_eq!(MPoly::parse(&f, &names, &text).unwrap(), a);
        assert!(MPoly::parse(&f, &names, "X5").is_err());
        assert!(MPoly::parse(&f, &names, "").is_err());
    }

    #[test]
    fn parser_groups() {
        let f = make_ext(7, 1).unwrap();
        let n = ["a", "b", "t"];
        let g = MPoly::parse(&f, &n, "(t + 1)(a^3 - b) + -t(ab + b)^2 - 2").unwrap();
        let h = MPoly::parse(&f, &n, "t a^3 + a^3 - t b - b - t a^2 b^2 - 2t a b^2 - t b^2 - 2").unwrap();
        assert_eq!(g, h);
        assert!(MPoly::parse(&f, &n, "(a + b").is_err());
        assert!(MPoly::parse(&f, &n, "a + b)").is_err());
        assert!(MPoly::parse(&f, &n, "()").is_err());
    }

    #[test]
    fn substitution_and_linear_change() {
        let f = make_ext(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let a = random_poly(&f, 3, 3, 8, &mut rng);
        let g = random_poly(&f, 3, 1, 3, &mut rng);
        let s = a.substitute(2, &g);
        for _ in 0..20 {
            let pt: Vec<Fe> = (0..3).map(|_| f.random(&mut rng)).collect();
            let gv = g.eval(&pt);
            assert_eq!(s.eval(&pt), a.eval(&[pt[0], pt[1], gv]));
        }
        let m: Vec<Vec<Fe>> = (0..3).map(|_| (0..3).map(|_| f.random(&mut rng)).collect()).collect();
        let l = a.linear_change(&m);
        for _ in 0..20 {
            let pt: Vec<Fe> = (0..3).map(|_| f.random(&mut rng)).collect();
            let img: Vec<Fe> = (0..3)
                .map(|i| (0..3).fold(Fe::ZERO, |acc, j| f.add(&acc, &f.mul(&m[i][j], &pt[j]))))
                .collect();
            assert_eq!(l.eval(&pt), a.eval(&img));
        }
    }
}
