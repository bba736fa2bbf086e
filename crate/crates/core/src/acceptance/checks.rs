// Invariant checks shared by the proptest suites and the acceptance runner.
// Each takes a seed and returns a description of the first violation.

use crate::gf::{make_ext, Fe, FieldCtx};
use crate::hasse_witt::{
    cartier_manin_hyperelliptic, hasse_witt_hyperelliptic, hasse_witt_quartic, hasse_witt_section, p_rank,
    Genus2Curve, HwMatrix,
};
use crate::mpoly::MPoly;
use crate::prym::{kummer_phi, kummer_surface};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = fn(u64) -> Result<(), String>;

pub const SUITES: [(&str, Check); 5] = [
    ("pivot independence", pivot_independence),
    ("quartic model vs section", quartic_vs_section),
    ("duality transpose", duality_transpose),
    ("homogeneity 2(p-1) / 6(p-1)", scaling_exponents),
    ("kappa vanishes on phi", kappa_on_phi),
];

const PRIMES: [u32; 3] = [3, 5, 7];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_curve(f: &FieldCtx, rng: &mut ChaCha8Rng) -> Genus2Curve {
    loop {
        let mut d: Vec<Fe> = (0..7).map(|_| f.random(rng)).collect();
        d[6] = f.random_nonzero(rng);
        if let Ok(z) = Genus2Curve::new(f, &d) {
            if z.is_smooth() {
                return z;
            }
        }
    }
}

fn prime(rng: &mut ChaCha8Rng) -> FieldCtx {
    FieldCtx::prime(PRIMES[rng.gen_range(0..PRIMES.len())]).unwrap()
}

fn random_poly(f: &FieldCtx, nvars: usize, degree: u32, rng: &mut ChaCha8Rng) -> MPoly {
    let mut terms = Vec::new();
    let mut e = vec![0u32; nvars];
    // all monomials of the given degree, by odometer over the first nvars-1
    loop {
        let s: u32 = e[..nvars - 1].iter().sum();
        if s <= degree {
            let mut m = e.clone();
            m[nvars - 1] = degree - s;
            terms.push((m, f.random(rng)));
        }
        let mut k = 0;
        loop {
            if k == nvars - 1 {
                return MPoly::from_terms(f, nvars, terms);
            }
            e[k] += 1;
            if e[k] <= degree {
                break;
            }
            e[k] = 0;
            k += 1;
        }
    }
}

pub fn pivot_independence(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let f = prime(&mut r);
    let k = kummer_surface(&random_curve(&f, &mut r));
    let coeffs: Vec<Fe> = (0..4).map(|_| f.random_nonzero(&mut r)).collect();
    let v = MPoly::linear(&f, &coeffs);
    let ranks: Vec<usize> = (1..=4)
        .map(|t| hasse_witt_section(&v, &k.kappa, t).map(|s| p_rank(&s.hw)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    if ranks.windows(2).all(|w| w[0] == w[1]) {
        Ok(())
    } else {
        Err(format!("p = {}: ranks by pivot {ranks:?}", f.p()))
    }
}

/// `h = Q(X1, X2, X3) + X4 G` cut by `X4 = 0` is the plane quartic `Q`. With the
/// quartic basis `(1, u, v)` read as `(X3, X1, X2)` the two matrices agree.
pub fn quartic_vs_section(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let f = prime(&mut r);
    let q = random_poly(&f, 3, 4, &mut r).with_nvars(4);
    let g = random_poly(&f, 4, 3, &mut r);
    let h = q.add(&MPoly::var(&f, 4, 3).mul(&g));
    if h.is_zero() || q.is_zero() {
        return Ok(());
    }
    let v = MPoly::var(&f, 4, 3);
    let sec = hasse_witt_section(&v, &h, 4).map_err(|e| e.to_string())?.hw;
    let affine = q.with_nvars(3).specialize(2, &f.one()).with_nvars(2);
    let quart = hasse_witt_quartic(&affine).map_err(|e| e.to_string())?;
    let order = [2, 0, 1];
    for i in 0..3 {
        for j in 0..3 {
            if quart.get(i, j) != sec.get(order[i], order[j]) {
                return Err(format!("p = {}: entry ({i},{j}) differs", f.p()));
            }
        }
    }
    Ok(())
}

pub fn duality_transpose(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let f = prime(&mut r);
    let z = random_curve(&f, &mut r);
    let hw = hasse_witt_hyperelliptic(&z, false).map_err(|e| e.to_string())?;
    let cm = cartier_manin_hyperelliptic(&z, false).map_err(|e| e.to_string())?;
    match cm.transpose().try_eq(&hw) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("p = {}: transpose differs", f.p())),
        Err(e) => Err(e.to_string()),
    }
}

fn scaled(h: &HwMatrix, s: &Fe) -> Vec<Fe> {
    h.entries().iter().map(|x| h.ctx().mul(x, s)).collect()
}

/// Scaling `(a, b, c, d_0..d_6)` by `lambda` with `d = 1` multiplies each entry
/// by `lambda^{2(p-1)}` and the determinant by `lambda^{6(p-1)}`.
pub fn scaling_exponents(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let f = FieldCtx::prime([3, 5][r.gen_range(0..2)]).unwrap();
    let z = random_curve(&f, &mut r);
    let lambda = f.random_nonzero(&mut r);
    let abc: Vec<Fe> = (0..3).map(|_| f.random(&mut r)).collect();
    let one = f.one();
    let v1 = MPoly::linear(&f, &[abc[0], abc[1], abc[2], one]);
    let v2 = MPoly::linear(&f, &[f.mul(&abc[0], &lambda), f.mul(&abc[1], &lambda), f.mul(&abc[2], &lambda), one]);
    let z2 = Genus2Curve::new(&f, &z.coeffs().map(|d| f.mul(&d, &lambda))).map_err(|e| e.to_string())?;
    let h1 = hasse_witt_section(&v1, &kummer_surface(&z).kappa, 4).map_err(|e| e.to_string())?.hw;
    let h2 = hasse_witt_section(&v2, &kummer_surface(&z2).kappa, 4).map_err(|e| e.to_string())?.hw;
    let p = f.p() as u128;
    if h2.entries() != scaled(&h1, &f.pow(&lambda, 2 * (p - 1))).as_slice() {
        return Err(format!("p = {p}: entries do not scale by lambda^(2(p-1))"));
    }
    if h2.det() != f.mul(&h1.det(), &f.pow(&lambda, 6 * (p - 1))) {
        return Err(format!("p = {p}: det does not scale by lambda^(6(p-1))"));
    }
    Ok(())
}

fn random_point(z: &Genus2Curve, rng: &mut ChaCha8Rng) -> (Fe, Fe) {
    let f = z.ctx();
    let d = z.poly();
    loop {
        let x = f.random(rng);
        if let Some(y) = f.sqrt(&d.eval(&x)) {
            return (x, y);
        }
    }
}

pub fn kappa_on_phi(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let p = PRIMES[r.gen_range(0..PRIMES.len())];
    let f = make_ext(p, 2).unwrap();
    let z = random_curve(&f, &mut r);
    let k = kummer_surface(&z);
    let (p1, p2) = loop {
        let a = random_point(&z, &mut r);
        let b = random_point(&z, &mut r);
        if a.0 != b.0 {
            break (a, b);
        }
    };
    let img = kummer_phi(&z, p1, p2).map_err(|e| e.to_string())?;
    if k.kappa.eval(&img).is_zero() {
        Ok(())
    } else {
        Err(format!("p = {p}: kappa(phi(P1, P2)) != 0"))
    }
}
