use std::fmt;

use super::{Fe, FieldCtx, GfError};

/// Dense univariate polynomial, low degree first. The zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    ctx: FieldCtx,
    coeffs: Vec<Fe>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly[{}]", self.to_text())
    }
}

impl UniPoly {
    pub fn new(ctx: &FieldCtx, mut coeffs: Vec<Fe>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { ctx: ctx.clone(), coeffs }
    }

    pub fn from_ints(ctx: &FieldCtx, coeffs: &[i64]) -> UniPoly {
        Self::new(ctx, coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    pub fn zero(ctx: &FieldCtx) -> UniPoly {
        Self::new(ctx, Vec::new())
    }

    pub fn constant(ctx: &FieldCtx, c: Fe) -> UniPoly {
        Self::new(ctx, vec![c])
    }

    pub fn x(ctx: &FieldCtx) -> UniPoly {
        Self::new(ctx, vec![Fe::ZERO, ctx.one()])
    }

    /// `x - c`
    pub fn linear(ctx: &FieldCtx, c: Fe) -> UniPoly {
        Self::new(ctx, vec![ctx.neg(&c), ctx.one()])
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn check(&self, other: &UniPoly) {
        assert!(self.ctx == other.ctx, "polynomials over different fields");
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        self.check(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let f = &self.ctx;
        Self::new(f, (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.check(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let f = &self.ctx;
        Self::new(f, (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn scale(&self, c: &Fe) -> UniPoly {
        Self::new(&self.ctx, self.coeffs.iter().map(|a| self.ctx.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx);
        }
        let f = &self.ctx;
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    pub fn monic(&self) -> UniPoly {
        match self.ctx.inv(&self.lead()) {
            Some(li) => self.scale(&li),
            None => self.clone(),
        }
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        self.check(d);
        let f = &self.ctx;
        let dd = d.degree().expect("division by zero polynomial");
        let li = f.inv(&d.lead()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut q = vec![Fe::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(&r[i], &li);
            if c.is_zero() {
                continue;
            }
            q[i - dd] = c;
            for (j, dj) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = f.sub(&r[idx], &f.mul(&c, dj));
            }
        }
        r.truncate(dd);
        (Self::new(f, q), Self::new(f, r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        let f = &self.ctx;
        Self::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.scale_int(c, i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Fe) -> Fe {
        let f = &self.ctx;
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn mul_mod(&self, other: &UniPoly, m: &UniPoly) -> UniPoly {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u128, m: &UniPoly) -> UniPoly {
        let mut base = self.rem(m);
        let mut acc = Self::constant(&self.ctx, self.ctx.one()).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = Self::constant(&self.ctx, self.ctx.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self^(q^n) mod m` where `q` is the field size, via `n*k` p-th powers.
    pub fn frobenius_mod(&self, n: usize, m: &UniPoly) -> UniPoly {
        let p = self.ctx.p() as u128;
        let mut r = self.rem(m);
        for _ in 0..n * self.ctx.degree() {
            r = r.pow_mod(p, m);
        }
        r
    }

    /// Coefficients as element strings, e.g. `1,0,2` for a prime field.
    pub fn to_text(&self) -> String {
        if self.ctx.is_prime_field() {
            self.coeffs
                .iter()
                .map(|c| self.ctx.format(c))
                .collect::<Vec<_>>()
                .join(",")
        } else {
            self.coeffs
                .iter()
                .map(|c| self.ctx.format(c))
                .collect::<Vec<_>>()
                .join(";")
        }
    }

    /// Parses `d0,d1,...` over a prime field or `e0;e1;...` with `e_i = c0,c1,..`
    /// over an extension. A comma list is accepted over an extension too and
    /// read as prime-field coefficients.
    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<UniPoly, GfError> {
        if s.contains(';') {
            let coeffs = s
                .split(';')
                .map(|t| ctx.parse(t))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Self::new(ctx, coeffs))
        } else {
            Ok(Self::from_ints(ctx, &super::parse_int_list(s)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_ext;

    #[test]
    fn divrem_reconstructs() {
        let f = make_ext(5, 1).unwrap();
        let a = UniPoly::from_ints(&f, &[1, 2, 3, 4, 1, 2]);
        let b = UniPoly::from_ints(&f, &[3, 0, 2]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_of_products() {
        let f = make_ext(7, 1).unwrap();
        let g = UniPoly::from_ints(&f, &[1, 1]);
        let a = g.mul(&UniPoly::from_ints(&f, &[2, 0, 1]));
        let b = g.mul(&UniPoly::from_ints(&f, &[5, 1]));
        assert_eq!(a.gcd(&b), g);
    }

    #[test]
    fn frobenius_mod_matches_pow() {
        let f = make_ext(3, 2).unwrap();
        let m = UniPoly::parse(&f, "1,0;2,1;0,0;1,0").unwrap();
        let x = UniPoly::x(&f);
        assert_eq!(x.frobenius_mod(2, &m), x.pow_mod(81, &m));
    }

    #[test]
    fn parse_text_forms() {
        let f = make_ext(3, 1).unwrap();
        let a = UniPoly::parse(&f, "-1,0,1").unwrap();
        assert_eq!(a.to_text(), "2,0,1");
        assert!(UniPoly::parse(&f, "1,x").is_err());
    }
}
