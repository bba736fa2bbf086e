//! Point counts over F_q: genus-2 curves, their Jacobians via the first two
//! zeta coefficients, quadratic twists, Kummer surfaces and plane sections.

use rayon::prelude::*;
use serde::Serialize;

use crate::gf::{make_ext, Embedding, Fe, FieldCtx, GfError};
use crate::hasse_witt::Genus2Curve;
use crate::mpoly::MPoly;
use crate::prym::KummerSurface;

pub const CURVE_SCAN_LIMIT: u128 = 1_000_000;
pub const KUMMER_SCAN_LIMIT: u128 = 1_000;

#[derive(Debug, thiserror::Error)]
pub enum CountError {
    #[error("field of size {q} exceeds the scan limit {limit}")]
    TooLarge { q: u128, limit: u128 },
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaData {
    pub q: i128,
    pub n1: i128,
    pub n2: i128,
    pub a1: i128,
    pub a2: i128,
}

impl ZetaData {
    pub fn from_counts(q: i128, n1: i128, n2: i128) -> ZetaData {
        let a1 = n1 - (q + 1);
        // n1^2 + n2 is even since |Jac(F_q)| = (n1^2 + n2)/2 - q
        let a2 = (n1 * n1 + n2) / 2 - (q + 1) * n1 + q;
        ZetaData { q, n1, n2, a1, a2 }
    }

    /// `L(1) = 1 + a1 + a2 + q a1 + q^2`.
    pub fn jac_order(&self) -> i128 {
        1 + self.a1 + self.a2 + self.q * self.a1 + self.q * self.q
    }

    /// `1 + a2 + q^2`.
    pub fn kummer_order(&self) -> i128 {
        1 + self.a2 + self.q * self.q
    }

    pub fn weil_ok(&self) -> bool {
        (self.a1 * self.a1) as f64 <= 16.0 * self.q as f64
    }
}

fn lift(z: &Genus2Curve, field: &FieldCtx) -> Result<Genus2Curve, CountError> {
    if z.ctx() == field {
        return Ok(z.clone());
    }
    Ok(z.map(&Embedding::new(z.ctx(), field)?))
}

/// Square classes indexed by [`FieldCtx::index`]: 0 zero, 1 square, 2 nonsquare.
fn square_table(field: &FieldCtx) -> Vec<u8> {
    let q = field.order().unwrap() as usize;
    let mut t = vec![2u8; q];
    t[0] = 0;
    for x in field.elements().skip(1) {
        t[field.index(&field.square(&x)) as usize] = 1;
    }
    t
}

/// Points on the smooth model of `z^2 = D(x)` over `field`, which must
/// contain the coefficient field of `z`.
pub fn count_curve(z: &Genus2Curve, field: &FieldCtx) -> Result<u64, CountError> {
    let q = field.order().unwrap_or(u128::MAX);
    if q > CURVE_SCAN_LIMIT {
        return Err(CountError::TooLarge { q, limit: CURVE_SCAN_LIMIT });
    }
    let z = lift(z, field)?;
    let d = z.poly();
    let sq = square_table(field);
    let affine: u64 = (0..q)
        .into_par_iter()
        .map(|i| {
            let x = field.from_index(i);
            match sq[field.index(&d.eval(&x)) as usize] {
                0 => 1,
                1 => 2,
                _ => 0,
            }
        })
        .sum();
    let infinity = if z.degree() == 5 {
        1
    } else if sq[field.index(&z.coeffs()[6]) as usize] == 1 {
        2
    } else {
        0
    };
    Ok(affine + infinity)
}

/// `n1`, `n2` over `field` and its quadratic extension.
pub fn zeta_coeffs(z: &Genus2Curve, field: &FieldCtx) -> Result<ZetaData, CountError> {
    let q = field.order().unwrap() as i128;
    let n1 = count_curve(z, field)? as i128;
    let big = make_ext(field.p(), 2 * field.degree())?;
    let zf = lift(z, field)?;
    let n2 = count_curve(&zf, &big)? as i128;
    Ok(ZetaData::from_counts(q, n1, n2))
}

/// `(n1^2 + n2)/2 - q`.
pub fn jac_count(z: &Genus2Curve, field: &FieldCtx) -> Result<i128, CountError> {
    let zd = zeta_coeffs(z, field)?;
    Ok((zd.n1 * zd.n1 + zd.n2) / 2 - zd.q)
}

/// `z^2 = D(x) / lambda` for the first nonsquare `lambda` of `field`.
pub fn quadratic_twist(z: &Genus2Curve, field: &FieldCtx) -> Result<Genus2Curve, CountError> {
    let lambda = field.first_nonsquare();
    Ok(twist_by(z, field, &lambda)?)
}

pub fn twist_by(z: &Genus2Curve, field: &FieldCtx, lambda: &Fe) -> Result<Genus2Curve, CountError> {
    let z = lift(z, field)?;
    let li = field.inv(lambda).expect("twist by zero");
    let d: Vec<Fe> = z.coeffs().iter().map(|c| field.mul(c, &li)).collect();
    Ok(Genus2Curve::new(field, &d).expect("scaling keeps the degree"))
}

/// Representatives of `P^{n-1}(F_q)`: first nonzero coordinate equal to 1.
fn projective_points(field: &FieldCtx, n: usize) -> impl ParallelIterator<Item = Vec<Fe>> + '_ {
    let q = field.order().unwrap();
    (0..n).into_par_iter().flat_map(move |lead| {
        let free = n - 1 - lead;
        let total = q.pow(free as u32);
        (0..total).into_par_iter().map(move |mut idx| {
            let mut pt = vec![Fe::ZERO; n];
            pt[lead] = field.one();
            for slot in pt.iter_mut().skip(lead + 1) {
                *slot = field.from_index(idx % q);
                idx /= q;
            }
            pt
        })
    })
}

/// Zeros of `kappa` in `P^3(F_q)`.
pub fn kummer_count_naive(k: &KummerSurface, field: &FieldCtx) -> Result<u64, CountError> {
    let q = field.order().unwrap_or(u128::MAX);
    if q > KUMMER_SCAN_LIMIT {
        return Err(CountError::TooLarge { q, limit: KUMMER_SCAN_LIMIT });
    }
    let kappa = if k.kappa.ctx() == field {
        k.kappa.clone()
    } else {
        k.kappa.map_coeffs(&Embedding::new(k.kappa.ctx(), field)?)
    };
    Ok(projective_points(field, 4).filter(|pt| kappa.eval(pt).is_zero()).count() as u64)
}

/// Zeros of a ternary form in `P^2(F_q)`.
pub fn count_plane_curve(f: &MPoly, field: &FieldCtx) -> Result<u64, CountError> {
    let q = field.order().unwrap_or(u128::MAX);
    if q > CURVE_SCAN_LIMIT {
        return Err(CountError::TooLarge { q, limit: CURVE_SCAN_LIMIT });
    }
    assert_eq!(f.nvars(), 3);
    let g = if f.ctx() == field { f.clone() } else { f.map_coeffs(&Embedding::new(f.ctx(), field)?) };
    Ok(projective_points(field, 3).filter(|pt| g.eval(pt).is_zero()).count() as u64)
}

/// Twist-average `(|Jac Z| + |Jac W|) / 2`.
pub fn kummer_count_twist(z: &Genus2Curve, field: &FieldCtx) -> Result<i128, CountError> {
    let w = quadratic_twist(z, field)?;
    Ok((jac_count(z, field)? + jac_count(&w, field)?) / 2)
}

/// One plane checked against the question whether `p | #X(F_q)` for
/// `X = V cap K`.
#[derive(Clone, Debug, Serialize)]
pub struct QssHit {
    pub plane: [String; 4],
    pub points: u64,
    pub smooth: bool,
    pub p_rank: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QssReport {
    pub q: u128,
    pub kummer_points: u64,
    pub planes_scanned: usize,
    pub divisible: Vec<QssHit>,
}

/// Runs over planes `aX1 + bX2 + cX3 + X4` with `(a,b,c)` in `F_q^3`, in index
/// order, up to `budget` planes; records those with `p | #X(F_q)`.
pub fn qss_scan(z: &Genus2Curve, field: &FieldCtx, budget: usize) -> Result<QssReport, CountError> {
    use crate::hasse_witt::{p_rank, SectionExpander};
    use crate::prym::{is_smooth_plane_quartic, kummer_surface, plane_section, Plane};

    let q = field.order().unwrap();
    if q > KUMMER_SCAN_LIMIT {
        return Err(CountError::TooLarge { q, limit: KUMMER_SCAN_LIMIT });
    }
    let z = lift(z, field)?;
    let k = kummer_surface(&z);
    let kummer_points = zeta_coeffs(&z, field)?.kummer_order() as u64;
    let expander = SectionExpander::new(&k.kappa).expect("kappa is a quartic");
    let total = (q * q * q).min(budget as u128) as usize;
    let p = field.p() as u64;
    let hits: Vec<Option<QssHit>> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let idx = idx as u128;
            let abc = [idx % q, (idx / q) % q, idx / (q * q)].map(|i| field.from_index(i));
            let plane = Plane::new(field, [abc[0], abc[1], abc[2], field.one()]).unwrap();
            let sec = plane_section(&k, &plane).unwrap();
            let points = count_plane_curve(&sec.ternary, field).unwrap();
            if points % p != 0 {
                return None;
            }
            let smooth = is_smooth_plane_quartic(&sec.ternary).unwrap_or(false);
            let p_rank = if smooth { expander.section(&sec.v, 4).ok().map(|s| p_rank(&s.hw)) } else { None };
            Some(QssHit { plane: plane.coeffs.map(|c| field.format(&c)), points, smooth, p_rank })
        })
        .collect();
    Ok(QssReport { q, kummer_points, planes_scanned: total, divisible: hits.into_iter().flatten().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::UniPoly;
    use crate::hasse_witt::{cartier_manin_hyperelliptic, p_rank};
    use crate::prym::kummer_surface;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_curve(f: &FieldCtx, rng: &mut ChaCha8Rng) -> Genus2Curve {
        loop {
            let d: Vec<Fe> = (0..7).map(|_| f.random(rng)).collect();
            if let Ok(z) = Genus2Curve::new(f, &d) {
                if z.is_smooth() {
                    return z;
                }
            }
        }
    }

    #[test]
    fn sextic_minus_one_over_f5() {
        let f5 = make_ext(5, 1).unwrap();
        let z = Genus2Curve::from_ints(&f5, &[-1, 0, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(count_curve(&z, &f5).unwrap(), 6);
        let zd = zeta_coeffs(&z, &f5).unwrap();
        assert_eq!(zd.a1, 0);
        assert_eq!(jac_count(&z, &f5).unwrap(), zd.jac_order());
        let k = kummer_surface(&z);
        let kn = kummer_count_naive(&k, &f5).unwrap();
        assert_eq!(kn as i128, zd.kummer_order());
        assert_eq!(kn % 5, 1);
        let w = quadratic_twist(&z, &f5).unwrap();
        assert_eq!(w.poly(), UniPoly::from_ints(&f5, &[-3, 0, 0, 0, 0, 0, 3]));
    }

    #[test]
    fn hand_count_in_reverse_order() {
        let f7 = make_ext(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let z = random_curve(&f7, &mut rng);
            let d = z.poly();
            let mut n = 0;
            for i in (0..7).rev() {
                let v = d.eval(&f7.from_int(i));
                n += if v.is_zero() { 1 } else if f7.is_square(&v) { 2 } else { 0 };
            }
            n += if z.degree() == 5 { 1 } else if f7.is_square(&z.coeffs()[6]) { 2 } else { 0 };
            assert_eq!(count_curve(&z, &f7).unwrap(), n);
        }
    }

    #[test]
    fn twist_pairs_and_l_polynomial_sign() {
        for (p, k) in [(3u32, 1usize), (5, 1), (3, 2)] {
            let f = make_ext(p, k).unwrap();
            let q = f.order().unwrap() as u64;
            let mut rng = ChaCha8Rng::seed_from_u64(p as u64 * 10 + k as u64);
            for _ in 0..15 {
                let z = random_curve(&f, &mut rng);
                let w = quadratic_twist(&z, &f).unwrap();
                assert_eq!(count_curve(&z, &f).unwrap() + count_curve(&w, &f).unwrap(), 2 * (q + 1));
                let ww = quadratic_twist(&w, &f).unwrap();
                assert_eq!(count_curve(&ww, &f).unwrap(), count_curve(&z, &f).unwrap());
                let (zz, zw) = (zeta_coeffs(&z, &f).unwrap(), zeta_coeffs(&w, &f).unwrap());
                assert_eq!(zw.a1, -zz.a1);
                assert_eq!(zw.a2, zz.a2);
                assert!(zz.weil_ok());
                // a different nonsquare gives the same counts
                let l2 = f.elements().filter(|x| !x.is_zero() && !f.is_square(x)).last().unwrap();
                let w2 = twist_by(&z, &f, &l2).unwrap();
                assert_eq!(zeta_coeffs(&w2, &f).unwrap(), ZetaData { ..zw });
            }
        }
    }

    #[test]
    fn jacobian_order_divides_order_over_quadratic_extension() {
        let f3 = make_ext(3, 1).unwrap();
        let f9 = make_ext(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let z = random_curve(&f3, &mut rng);
            let j1 = jac_count(&z, &f3).unwrap();
            let j2 = jac_count(&z, &f9).unwrap();
            assert_eq!(j2 % j1, 0);
            assert_eq!(j1, zeta_coeffs(&z, &f3).unwrap().jac_order());
        }
    }

    #[test]
    fn ordinary_negative_control_exists() {
        let f3 = make_ext(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let found = (0..200).any(|_| {
            let z = random_curve(&f3, &mut rng);
            let ordinary = p_rank(&cartier_manin_hyperelliptic(&z, false).unwrap()) == 2;
            ordinary && zeta_coeffs(&z, &f3).unwrap().a2 % 3 != 0
        });
        assert!(found);
    }

    #[test]
    fn plane_curve_count_of_a_line_pair() {
        let f5 = make_ext(5, 1).unwrap();
        let xy = MPoly::parse(&f5, &["u", "v", "w"], "u v w^2").unwrap();
        // u=0, v=0, w=0: three lines through three points, 3*6 - 3
        assert_eq!(count_plane_curve(&xy, &f5).unwrap(), 15);
    }

    #[test]
    fn oversize_fields_are_refused() {
        let big = make_ext(31, 3).unwrap();
        let z = Genus2Curve::from_ints(&big, &[1, 0, 0, 0, 0, 0, 1]).unwrap();
        assert!(matches!(kummer_count_naive(&kummer_surface(&z), &big), Err(CountError::TooLarge { .. })));
        let huge = make_ext(101, 3).unwrap();
        let z = Genus2Curve::from_ints(&huge, &[1, 0, 0, 0, 0, 0, 1]).unwrap();
        assert!(matches!(count_curve(&z, &huge), Err(CountError::TooLarge { .. })));
    }
}
