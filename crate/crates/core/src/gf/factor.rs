use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Embedding, Fe, FieldCtx, UniPoly};

/// `lead * prod f_i^{e_i}` with monic irreducible `f_i`, sorted by degree and
/// then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub ctx: FieldCtx,
    pub lead: Fe,
    pub factors: Vec<(UniPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> UniPoly {
        let mut acc = UniPoly::constant(&self.ctx, self.lead);
        for (f, e) in &self.factors {
            acc = acc.mul(&f.pow(*e as u32));
        }
        acc
    }

    /// Degrees with multiplicity, e.g. `[(1,3),(3,1)]`.
    pub fn degree_pattern(&self) -> Vec<(usize, usize)> {
        self.factors
            .iter()
            .map(|(f, e)| (f.degree().unwrap(), *e))
            .collect()
    }
}

pub fn is_squarefree(f: &UniPoly) -> bool {
    assert!(!f.is_zero(), "zero polynomial");
    f.gcd(&f.derivative()).is_constant()
}

/// Irreducibility via the distinct-degree criterion: no factor of degree
/// `d <= n/2`, i.e. `gcd(x^{q^d} - x, f) = 1` for all such `d`.
pub fn is_irreducible(f: &UniPoly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let ctx = f.ctx();
    let x = UniPoly::x(ctx);
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = h.frobenius_mod(1, f);
        if !h.sub(&x).gcd(f).is_constant() {
            return false;
        }
    }
    true
}

/// Factorization with the default seed 0.
pub fn factor_univar(f: &UniPoly) -> Factorization {
    factor_univar_seeded(f, 0)
}

pub fn factor_univar_seeded(f: &UniPoly, seed: u64) -> Factorization {
    assert!(!f.is_zero(), "cannot factor zero");
    let lead = f.lead();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (sq, mult) in squarefree_decomposition(&f.monic()) {
        for (g, d) in distinct_degree(&sq) {
            for h in equal_degree(&g, d, &mut rng) {
                factors.push((h, mult));
            }
        }
    }
    let ctx = f.ctx().clone();
    factors.sort_by(|(a, ea), (b, eb)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| {
                let ka: Vec<u128> = a.coeffs().iter().rev().map(|c| ctx.index(c)).collect();
                let kb: Vec<u128> = b.coeffs().iter().rev().map(|c| ctx.index(c)).collect();
                ka.cmp(&kb)
            })
            .then(ea.cmp(eb))
    });
    // merge equal factors coming from different squarefree layers
    let mut merged: Vec<(UniPoly, usize)> = Vec::new();
    for (h, e) in factors {
        match merged.last_mut() {
            Some((last, le)) if *last == h => *le += e,
            _ => merged.push((h, e)),
        }
    }
    Factorization { ctx, lead, factors: merged }
}

/// Monic squarefree parts with multiplicities, characteristic p aware.
fn squarefree_decomposition(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    sqf_rec(f, 1, &mut out);
    out
}

fn sqf_rec(f: &UniPoly, scale: usize, out: &mut Vec<(UniPoly, usize)>) {
    if f.is_constant() {
        return;
    }
    let ctx = f.ctx();
    let p = ctx.p() as usize;
    let df = f.derivative();
    let mut c = f.gcd(&df);
    let mut w = f.divrem(&c).0;
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let z = w.divrem(&y).0;
        if !z.is_constant() {
            out.push((z.monic(), i * scale));
        }
        i += 1;
        w = y;
        c = c.divrem(&w).0;
    }
    if !c.is_constant() {
        // c is a p-th power: take coefficient-wise p-th roots
        let k = ctx.degree();
        let root_coeffs: Vec<Fe> = c
            .coeffs()
            .iter()
            .step_by(p)
            .map(|a| ctx.frobenius(a, k - 1))
            .collect();
        let root = UniPoly::new(ctx, root_coeffs);
        sqf_rec(&root, scale * p, out);
    }
}

/// Splits a monic squarefree polynomial into products of equal-degree factors.
fn distinct_degree(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let ctx = f.ctx();
    let x = UniPoly::x(ctx);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.frobenius_mod(1, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_constant() {
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if !rest.is_constant() {
        let deg = rest.degree().unwrap();
        out.push((rest.monic(), deg));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of degree-`d` irreducibles.
fn equal_degree(f: &UniPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<UniPoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.monic()];
    }
    let ctx = f.ctx();
    let p = ctx.p() as u128;
    let one = UniPoly::constant(ctx, ctx.one());
    loop {
        let a = UniPoly::new(ctx, (0..n).map(|_| ctx.random(rng)).collect());
        if a.is_constant() {
            continue;
        }
        let g0 = a.gcd(f);
        let split = if !g0.is_constant() {
            g0
        } else {
            // a^{(q^d-1)/2} = (prod_{i < kd} a^{p^i})^{(p-1)/2}
            let mut c = a.rem(f);
            let mut acc = c.clone();
            for _ in 1..d * ctx.degree() {
                c = c.pow_mod(p, f);
                acc = acc.mul_mod(&c, f);
            }
            let b = acc.pow_mod((p - 1) / 2, f);
            b.sub(&one).gcd(f)
        };
        let sd = split.degree().unwrap_or(0);
        if sd > 0 && sd < n {
            let other = f.divrem(&split).0;
            let mut out = equal_degree(&split, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

/// Distinct roots of `f` in `target`, sorted in index order. When `f` lives
/// over a proper extension its coefficients are moved across with
/// [`Embedding::new`].
pub fn roots_in_ext(f: &UniPoly, target: &FieldCtx) -> Vec<Fe> {
    let g = if f.ctx() == target {
        f.clone()
    } else {
        let emb = Embedding::new(f.ctx(), target).expect("target must contain the coefficient field");
        emb.map_poly(f)
    };
    if g.is_zero() {
        panic!("roots of the zero polynomial");
    }
    if g.is_constant() {
        return Vec::new();
    }
    let x = UniPoly::x(target);
    let g = g.monic();
    let lin = x.frobenius_mod(1, &g).sub(&x).gcd(&g);
    if lin.is_constant() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut roots: Vec<Fe> = equal_degree(&lin, 1, &mut rng)
        .iter()
        .map(|l| target.neg(&l.coeff(0)))
        .collect();
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_ext;

    #[test]
    fn difference_of_squares() {
        let f3 = make_ext(3, 1).unwrap();
        let fac = factor_univar(&UniPoly::from_ints(&f3, &[-1, 0, 1]));
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.factors[0], (UniPoly::from_ints(&f3, &[1, 1]), 1));
        assert_eq!(fac.factors[1], (UniPoly::from_ints(&f3, &[-1, 1]), 1));
    }

    #[test]
    fn cubic_without_roots_is_irreducible() {
        let f3 = make_ext(3, 1).unwrap();
        let c = UniPoly::from_ints(&f3, &[-1, 1, 1, 1]);
        // trial roots
        assert!(f3.elements().all(|a| !c.eval(&a).is_zero()));
        let fac = factor_univar(&c);
        assert_eq!(fac.degree_pattern(), vec![(3, 1)]);
        assert!(is_irreducible(&c));
    }

    #[test]
    fn repeated_and_pth_power_factors() {
        let f3 = make_ext(3, 1).unwrap();
        // (x-1)^2 (x+1)^3 (x^2+1)^4
        let a = UniPoly::from_ints(&f3, &[-1, 1]).pow(2);
        let b = UniPoly::from_ints(&f3, &[1, 1]).pow(3);
        let c = UniPoly::from_ints(&f3, &[1, 0, 1]).pow(4);
        let f = a.mul(&b).mul(&c).scale(&f3.from_int(2));
        let fac = factor_univar(&f);
        assert_eq!(fac.degree_pattern(), vec![(1, 3), (1, 2), (2, 4)]);
        assert_eq!(fac.expand(), f);
        assert!(!is_squarefree(&UniPoly::from_ints(&f3, &[1, -2, 1])));
    }

    #[test]
    fn sextic_minus_one_is_squarefree() {
        let f5 = make_ext(5, 1).unwrap();
        assert!(is_squarefree(&UniPoly::from_ints(&f5, &[-1, 0, 0, 0, 0, 0, 1])));
    }

    #[test]
    fn golden_ratio_roots_live_in_f9() {
        let f3 = make_ext(3, 1).unwrap();
        let f9 = make_ext(3, 2).unwrap();
        let t = UniPoly::from_ints(&f3, &[-1, -1, 1]);
        assert!(roots_in_ext(&t, &f3).is_empty());
        let r = roots_in_ext(&t, &f9);
        assert_eq!(r.len(), 2);
        let t9 = UniPoly::from_ints(&f9, &[-1, -1, 1]);
        assert!(r.iter().all(|x| t9.eval(x).is_zero()));
    }

    #[test]
    fn linear_root() {
        let f7 = make_ext(7, 1).unwrap();
        let c = f7.from_int(4);
        assert_eq!(roots_in_ext(&UniPoly::linear(&f7, c), &f7), vec![c]);
    }

    #[test]
    fn cubic_roots_in_degree_six_extension_match_scan() {
        let f5 = make_ext(5, 1).unwrap();
        let f56 = make_ext(5, 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..3 {
            let c = UniPoly::new(&f5, (0..3).map(|_| f5.random(&mut rng)).chain([f5.one()]).collect());
            let big = UniPoly::new(&f56, c.coeffs().to_vec());
            let scan: Vec<Fe> = f56.elements().filter(|x| big.eval(x).is_zero()).collect();
            assert_eq!(roots_in_ext(&c, &f56), scan);
        }
    }

    #[test]
    fn extension_coefficients() {
        let f9 = make_ext(3, 2).unwrap();
        let f81 = make_ext(3, 4).unwrap();
        let g = f9.generator();
        // x^2 - g has roots in F_81 only (g is a nonsquare in F_9 iff ...), check by scan
        let p = UniPoly::new(&f9, vec![f9.neg(&g), Fe::ZERO, f9.one()]);
        let emb = Embedding::new(&f9, &f81).unwrap();
        let pb = emb.map_poly(&p);
        let scan: Vec<Fe> = f81.elements().filter(|x| pb.eval(x).is_zero()).collect();
        assert_eq!(roots_in_ext(&p, &f81), scan);
    }
}
