use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::GfError;

/// Largest extension degree an element can carry.
///
/// Smoothness checks over `F_{p^4}` may need splitting fields of degree 9 over
/// the base, so 36 absolute coordinates are reserved.
pub const MAX_DEGREE: usize = 36;

/// An element of some `F_{p^k}`, stored as power-basis coordinates.
///
/// Elements do not know their field; every operation goes through a
/// [`FieldCtx`]. Unused coordinates are always zero, so equality and hashing
/// work across the whole array.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fe(pub(crate) [u8; MAX_DEGREE]);

impl Fe {
    pub const ZERO: Fe = Fe([0; MAX_DEGREE]);

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Raw coordinate `i` (coefficient of `x^i` in the power basis).
    pub fn coord(&self, i: usize) -> u8 {
        self.0[i]
    }
}

impl Ord for Fe {
    // Same order as the integer index sum c_i p^i.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for Fe {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&c| c != 0).unwrap_or(0);
        write!(f, "Fe{:?}", &self.0[..=last])
    }
}

struct Inner {
    p: u32,
    k: usize,
    /// Monic modulus, low degree first, length k+1. Empty for prime fields.
    modulus: Vec<u32>,
    /// (p - m_j) mod p for j < k, used when folding x^k back.
    neg_modulus: Vec<u32>,
    inv_table: Vec<u32>,
}

/// Arithmetic context for `F_p` or `F_{p^k} = F_p[x]/(m(x))`.
///
/// Cheap to clone; contexts compare equal when they have the same prime and
/// modulus.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}[mod {:?}]", self.0.p, self.0.k, self.0.modulus)
        }
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldCtx {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<FieldCtx, GfError> {
        if p == 2 || !is_prime(p) {
            return Err(GfError::BadPrime(p));
        }
        if p > 251 {
            return Err(GfError::PrimeTooLarge(p));
        }
        let mut inv_table = vec![0u32; p as usize];
        for a in 1..p {
            inv_table[a as usize] = pow_mod_u32(a, p - 2, p);
        }
        Ok(FieldCtx(Arc::new(Inner {
            p,
            k: 1,
            modulus: Vec::new(),
            neg_modulus: Vec::new(),
            inv_table,
        })))
    }

    /// `F_p[x]/(modulus)`; the modulus is given low degree first and must be
    /// monic and irreducible.
    pub fn with_modulus(p: u32, modulus: &[i64]) -> Result<FieldCtx, GfError> {
        let base = FieldCtx::prime(p)?;
        let m: Vec<u32> = modulus
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u32)
            .collect();
        let k = m.len().saturating_sub(1);
        if k == 0 || *m.last().unwrap() != 1 {
            return Err(GfError::BadModulus("modulus must be monic of degree >= 1".into()));
        }
        if k == 1 {
            return Ok(base);
        }
        if k > MAX_DEGREE {
            return Err(GfError::DegreeTooLarge(k));
        }
        let poly = super::UniPoly::from_ints(&base, modulus);
        if !super::factor::is_irreducible(&poly) {
            return Err(GfError::BadModulus(format!("{modulus:?} is reducible over F_{p}")));
        }
        Ok(Self::from_parts(base, m))
    }

    pub(crate) fn from_parts(base: FieldCtx, modulus: Vec<u32>) -> FieldCtx {
        let p = base.0.p;
        let k = modulus.len() - 1;
        let neg_modulus = modulus[..k].iter().map(|&c| (p - c) % p).collect();
        FieldCtx(Arc::new(Inner {
            p,
            k,
            modulus,
            neg_modulus,
            inv_table: base.0.inv_table.clone(),
        }))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    /// Extension degree over the prime field.
    pub fn degree(&self) -> usize {
        self.0.k
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    /// Monic modulus (low degree first); empty for a prime field.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Field size, if it fits in a `u128`.
    pub fn order(&self) -> Option<u128> {
        (self.0.p as u128).checked_pow(self.0.k as u32)
    }

    /// The prime field underneath this context.
    pub fn prime_field(&self) -> FieldCtx {
        if self.is_prime_field() {
            self.clone()
        } else {
            FieldCtx::prime(self.0.p).expect("context prime already validated")
        }
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Fe {
        let mut e = Fe::ZERO;
        e.0[0] = n.rem_euclid(self.0.p as i64) as u8;
        e
    }

    /// Element from power-basis coordinates; missing trailing coordinates are zero.
    pub fn from_coords(&self, coords: &[i64]) -> Result<Fe, GfError> {
        if coords.len() > self.0.k {
            return Err(GfError::Parse(format!(
                "{} coordinates given for a degree-{} field",
                coords.len(),
                self.0.k
            )));
        }
        let mut e = Fe::ZERO;
        for (i, &c) in coords.iter().enumerate() {
            e.0[i] = c.rem_euclid(self.0.p as i64) as u8;
        }
        Ok(e)
    }

    pub fn coords<'a>(&self, e: &'a Fe) -> &'a [u8] {
        &e.0[..self.0.k]
    }

    /// The class of `x`, a generator of the extension over `F_p`.
    pub fn generator(&self) -> Fe {
        if self.0.k == 1 {
            // F_p[x]/(x - c) with no modulus stored: x is the residue 0 here
            // only by convention; callers ask for this only in extensions.
            return Fe::ZERO;
        }
        let mut e = Fe::ZERO;
        e.0[1] = 1;
        e
    }

    /// `Some(r)` when `e` lies in the prime field.
    pub fn to_prime(&self, e: &Fe) -> Option<u32> {
        if e.0[1..].iter().all(|&c| c == 0) {
            Some(e.0[0] as u32)
        } else {
            None
        }
    }

    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.0.p as u16;
        let mut r = Fe::ZERO;
        for i in 0..self.0.k {
            let s = a.0[i] as u16 + b.0[i] as u16;
            r.0[i] = if s >= p { (s - p) as u8 } else { s as u8 };
        }
        r
    }

    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.0.p as u16;
        let mut r = Fe::ZERO;
        for i in 0..self.0.k {
            let s = a.0[i] as u16 + p - b.0[i] as u16;
            r.0[i] = if s >= p { (s - p) as u8 } else { s as u8 };
        }
        r
    }

    pub fn neg(&self, a: &Fe) -> Fe {
        let p = self.0.p as u16;
        let mut r = Fe::ZERO;
        for i in 0..self.0.k {
            r.0[i] = ((p - a.0[i] as u16) % p) as u8;
        }
        r
    }

    /// Multiply by an integer scalar.
    pub fn scale_int(&self, a: &Fe, n: i64) -> Fe {
        let s = n.rem_euclid(self.0.p as i64) as u32;
        let p = self.0.p;
        let mut r = Fe::ZERO;
        for i in 0..self.0.k {
            r.0[i] = ((a.0[i] as u32 * s) % p) as u8;
        }
        r
    }

    #[inline]
    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.0.p;
        let k = self.0.k;
        if k == 1 {
            let mut r = Fe::ZERO;
            r.0[0] = ((a.0[0] as u32 * b.0[0] as u32) % p) as u8;
            return r;
        }
        let mut t = [0u32; 2 * MAX_DEGREE];
        for i in 0..k {
            let ai = a.0[i] as u32;
            if ai == 0 {
                continue;
            }
            for j in 0..k {
                t[i + j] += ai * b.0[j] as u32;
            }
        }
        let negm = &self.0.neg_modulus;
        for i in (k..2 * k - 1).rev() {
            let c = t[i] % p;
            if c == 0 {
                continue;
            }
            for j in 0..k {
                t[i - k + j] += c * negm[j];
            }
        }
        let mut r = Fe::ZERO;
        for i in 0..k {
            r.0[i] = (t[i] % p) as u8;
        }
        r
    }

    pub fn square(&self, a: &Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Fe, mut e: u128) -> Fe {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `x^(p^i)` by repeated p-th powers.
    pub fn frobenius(&self, x: &Fe, i: usize) -> Fe {
        let mut r = *x;
        for _ in 0..(i % self.0.k) {
            r = self.pow(&r, self.0.p as u128);
        }
        r
    }

    pub fn inv(&self, a: &Fe) -> Option<Fe> {
        if a.is_zero() {
            return None;
        }
        let p = self.0.p;
        if self.0.k == 1 {
            let mut r = Fe::ZERO;
            r.0[0] = self.0.inv_table[a.0[0] as usize] as u8;
            return Some(r);
        }
        // Extended Euclid in F_p[x] between a(x) and the modulus.
        let inv = |c: u32| self.0.inv_table[c as usize];
        let mut r0: Vec<u32> = self.0.modulus.clone();
        let mut r1: Vec<u32> = a.0[..self.0.k].iter().map(|&c| c as u32).collect();
        trim(&mut r1);
        let mut s0: Vec<u32> = vec![];
        let mut s1: Vec<u32> = vec![1];
        while r1.len() > 1 {
            // (q, rem) = r0 / r1
            let mut rem = r0.clone();
            let dl = r1.len() - 1;
            let lc_inv = inv(*r1.last().unwrap());
            let mut q = vec![0u32; rem.len().saturating_sub(dl)];
            while rem.len() > dl {
                let c = (*rem.last().unwrap() * lc_inv) % p;
                let shift = rem.len() - 1 - dl;
                q[shift] = c;
                for (j, &rj) in r1.iter().enumerate() {
                    let idx = shift + j;
                    rem[idx] = (rem[idx] + p * p - c * rj % p) % p;
                }
                rem.pop();
                trim(&mut rem);
            }
            // s2 = s0 - q*s1
            let mut qs = vec![0u32; q.len() + s1.len()];
            for (i, &qi) in q.iter().enumerate() {
                for (j, &sj) in s1.iter().enumerate() {
                    qs[i + j] = (qs[i + j] + qi * sj) % p;
                }
            }
            let n = qs.len().max(s0.len());
            let mut s2 = vec![0u32; n];
            for (i, v) in s2.iter_mut().enumerate() {
                let a0 = s0.get(i).copied().unwrap_or(0);
                let b0 = qs.get(i).copied().unwrap_or(0);
                *v = (a0 + p - b0) % p;
            }
            trim(&mut s2);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant (modulus irreducible).
        let c = inv(r1[0]);
        let mut r = Fe::ZERO;
        for (i, &s) in s1.iter().enumerate() {
            r.0[i] = ((s * c) % p) as u8;
        }
        Some(r)
    }

    pub fn div(&self, a: &Fe, b: &Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Euler's criterion. Zero counts as a square.
    pub fn is_square(&self, a: &Fe) -> bool {
        if a.is_zero() {
            return true;
        }
        let q = self.order().expect("field too large for Euler criterion");
        self.pow(a, (q - 1) / 2) == self.one()
    }

    /// A square root via Tonelli-Shanks, or `None` for non-squares.
    pub fn sqrt(&self, a: &Fe) -> Option<Fe> {
        if a.is_zero() {
            return Some(Fe::ZERO);
        }
        if !self.is_square(a) {
            return None;
        }
        let q = self.order()?;
        let mut s = 0u32;
        let mut t = q - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let z = self.first_nonsquare();
        let mut m = s;
        let mut c = self.pow(&z, t);
        let mut tt = self.pow(a, t);
        let mut r = self.pow(a, t.div_ceil(2));
        let one = self.one();
        while tt != one {
            let mut i = 0;
            let mut t2 = tt;
            while t2 != one {
                t2 = self.square(&t2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.square(&b);
            }
            m = i;
            c = self.square(&b);
            tt = self.mul(&tt, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }

    /// Smallest non-square in index order.
    pub fn first_nonsquare(&self) -> Fe {
        let mut idx: u128 = 1;
        loop {
            let e = self.from_index(idx);
            if !self.is_square(&e) {
                return e;
            }
            idx += 1;
        }
    }

    /// Integer index `sum c_i p^i`.
    pub fn index(&self, e: &Fe) -> u128 {
        let p = self.0.p as u128;
        e.0[..self.0.k]
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * p + c as u128)
    }

    pub fn from_index(&self, mut idx: u128) -> Fe {
        let p = self.0.p as u128;
        let mut e = Fe::ZERO;
        for i in 0..self.0.k {
            e.0[i] = (idx % p) as u8;
            idx /= p;
        }
        e
    }

    /// All elements in index order. Panics if the field has more than 2^32 elements.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        let q = self.order().filter(|&q| q <= u32::MAX as u128).expect("field too large to enumerate");
        (0..q).map(move |i| self.from_index(i))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        let mut e = Fe::ZERO;
        for i in 0..self.0.k {
            e.0[i] = rng.gen_range(0..self.0.p) as u8;
        }
        e
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        loop {
            let e = self.random(rng);
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// Comma-separated residues `c0,c1,...,c_{k-1}`.
    pub fn format(&self, e: &Fe) -> String {
        self.coords(e)
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses `c0,c1,...`; negative residues are accepted.
    pub fn parse(&self, s: &str) -> Result<Fe, GfError> {
        let coords = parse_int_list(s)?;
        self.from_coords(&coords)
    }
}

pub(crate) fn parse_int_list(s: &str) -> Result<Vec<i64>, GfError> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| GfError::Parse(format!("bad integer '{}'", t.trim())))
        })
        .collect()
}

fn trim(v: &mut Vec<u32>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v.len() == 1 && v[0] == 0 {
        v.clear();
    }
}

fn pow_mod_u32(mut a: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = (a % p) as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    a = acc as u32;
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_bad_primes() {
        assert!(matches!(FieldCtx::prime(2), Err(GfError::BadPrime(2))));
        assert!(matches!(FieldCtx::prime(9), Err(GfError::BadPrime(9))));
        assert!(FieldCtx::prime(19).is_ok());
    }

    #[test]
    fn inverse_roundtrip_in_extension() {
        let f = FieldCtx::with_modulus(5, &[2, 0, 1, 1]).unwrap(); // x^3 + x^2 + 2
        for e in f.elements().skip(1) {
            let i = f.inv(&e).unwrap();
            assert_eq!(f.mul(&e, &i), f.one());
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 - 1 over F_3
        assert!(FieldCtx::with_modulus(3, &[-1, 0, 1]).is_err());
    }

    #[test]
    fn sqrt_and_nonsquare() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, m) in [(3u32, vec![1i64, 0, 1]), (7, vec![3, 1, 1]), (13, vec![1])] {
            let f = if m.len() == 1 { FieldCtx::prime(p).unwrap() } else { FieldCtx::with_modulus(p, &m).unwrap() };
            for _ in 0..50 {
                let a = f.random(&mut rng);
                let sq = f.square(&a);
                let r = f.sqrt(&sq).unwrap();
                assert_eq!(f.square(&r), sq);
            }
            assert!(!f.is_square(&f.first_nonsquare()));
        }
        let f5 = FieldCtx::prime(5).unwrap();
        assert_eq!(f5.first_nonsquare(), f5.from_int(2));
    }

    #[test]
    fn parse_and_format() {
        let f = FieldCtx::with_modulus(3, &[1, 0, 1]).unwrap();
        let e = f.parse("-1,2").unwrap();
        assert_eq!(f.format(&e), "2,2");
        assert!(f.parse("1,2,3").is_err());
    }

    #[test]
    fn index_order_matches_ord() {
        let f = FieldCtx::with_modulus(3, &[1, 0, 1]).unwrap();
        let all: Vec<Fe> = f.elements().collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }
}
