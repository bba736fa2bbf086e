use crate::gf::{Fe, FieldCtx};
use crate::hasse_witt::Genus2Curve;
use crate::mpoly::MPoly;

use super::PrymError;

/// Quartic model `kappa = K2 X4^2 + K1 X4 + K0` of `Jac(Z)/<-1>` in `P^3`.
#[derive(Clone, Debug)]
pub struct KummerSurface {
    pub source: Genus2Curve,
    pub kappa: MPoly,
}

pub fn kummer_surface(z: &Genus2Curve) -> KummerSurface {
    let f = z.ctx();
    let d = z.coeffs();
    let mut terms: Vec<(Vec<u32>, Fe)> = Vec::new();
    let mut push = |e: [u32; 4], c: Fe| terms.push((e.to_vec(), c));
    let k = |n: i64| f.from_int(n);
    let m = |a: &Fe, b: &Fe| f.mul(a, b);
    let s = |n: i64, x: Fe| f.scale_int(&x, n);

    // K2 X4^2
    push([0, 2, 0, 2], k(1));
    push([1, 0, 1, 2], k(-4));

    // K1 X4 = -2(2d0 X1^3 + d1 X1^2X2 + 2d2 X1^2X3 + d3 X1X2X3 + 2d4 X1X3^2 + d5 X2X3^2 + 2d6 X3^3) X4
    for (e, c) in [
        ([3, 0, 0], s(2, d[0])),
        ([2, 1, 0], d[1]),
        ([2, 0, 1], s(2, d[2])),
        ([1, 1, 1], d[3]),
        ([1, 0, 2], s(2, d[4])),
        ([0, 1, 2], d[5]),
        ([0, 0, 3], s(2, d[6])),
    ] {
        push([e[0], e[1], e[2], 1], s(-2, c));
    }

    // K0
    let k0: [([u32; 3], Fe); 15] = [
        ([4, 0, 0], f.sub(&m(&d[1], &d[1]), &s(4, m(&d[0], &d[2])))),
        ([3, 1, 0], s(-4, m(&d[0], &d[3]))),
        ([3, 0, 1], s(-2, m(&d[1], &d[3]))),
        ([2, 2, 0], s(-4, m(&d[0], &d[4]))),
        ([2, 1, 1], s(4, f.sub(&m(&d[0], &d[5]), &m(&d[1], &d[4])))),
        (
            [2, 0, 2],
            f.sub(
                &f.add(&m(&d[3], &d[3]), &s(2, m(&d[1], &d[5]))),
                &s(4, f.add(&m(&d[2], &d[4]), &m(&d[0], &d[6]))),
            ),
        ),
        ([1, 3, 0], s(-4, m(&d[0], &d[5]))),
        ([1, 2, 1], s(4, f.sub(&s(2, m(&d[0], &d[6])), &m(&d[1], &d[5])))),
        ([1, 1, 2], s(4, f.sub(&m(&d[1], &d[6]), &m(&d[2], &d[5])))),
        ([1, 0, 3], s(-2, m(&d[3], &d[5]))),
        ([0, 4, 0], s(-4, m(&d[0], &d[6]))),
        ([0, 3, 1], s(-4, m(&d[1], &d[6]))),
        ([0, 2, 2], s(-4, m(&d[2], &d[6]))),
        ([0, 1, 3], s(-4, m(&d[3], &d[6]))),
        ([0, 0, 4], f.sub(&m(&d[5], &d[5]), &s(4, m(&d[4], &d[6])))),
    ];
    for (e, c) in k0 {
        push([e[0], e[1], e[2], 0], c);
    }
    KummerSurface { source: z.clone(), kappa: MPoly::from_terms(f, 4, terms) }
}

/// Image `[1 : x1+x2 : x1 x2 : beta0]` of the class of `P1 + P2 - Z_inf`.
pub fn kummer_phi(z: &Genus2Curve, p1: (Fe, Fe), p2: (Fe, Fe)) -> Result<[Fe; 4], PrymError> {
    let f = z.ctx();
    let dpoly = z.poly();
    for (x, y) in [p1, p2] {
        if f.square(&y) != dpoly.eval(&x) {
            return Err(PrymError::NotOnCurve(f.format(&x), f.format(&y)));
        }
    }
    let (x1, z1) = p1;
    let (x2, z2) = p2;
    if x1 == x2 {
        return Err(PrymError::EqualX);
    }
    let d = z.coeffs();
    let s = f.add(&x1, &x2);
    let pr = f.mul(&x1, &x2);
    let pr2 = f.square(&pr);
    let pr3 = f.mul(&pr2, &pr);
    let two = |x: Fe| f.scale_int(&x, 2);
    let terms = [
        two(d[0]),
        f.mul(&d[1], &s),
        two(f.mul(&d[2], &pr)),
        f.mul(&d[3], &f.mul(&s, &pr)),
        two(f.mul(&d[4], &pr2)),
        f.mul(&d[5], &f.mul(&s, &pr2)),
        two(f.mul(&d[6], &pr3)),
    ];
    let f0 = terms.iter().fold(Fe::ZERO, |acc, t| f.add(&acc, t));
    let num = f.sub(&f0, &two(f.mul(&z1, &z2)));
    let den = f.square(&f.sub(&x1, &x2));
    let beta0 = f.div(&num, &den).unwrap();
    Ok([f.one(), s, pr, beta0])
}

/// `a X1 + b X2 + c X3 + d X4 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plane {
    ctx: FieldCtx,
    pub coeffs: [Fe; 4],
}

impl Plane {
    pub fn new(ctx: &FieldCtx, coeffs: [Fe; 4]) -> Result<Plane, PrymError> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(PrymError::ZeroPlane);
        }
        Ok(Plane { ctx: ctx.clone(), coeffs })
    }

    pub fn from_ints(ctx: &FieldCtx, c: [i64; 4]) -> Result<Plane, PrymError> {
        Self::new(ctx, c.map(|x| ctx.from_int(x)))
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// Scaled so that `d = 1`; unchanged when `d = 0`.
    pub fn normalized(&self) -> Plane {
        let f = &self.ctx;
        match f.inv(&self.coeffs[3]) {
            Some(di) => Plane { ctx: f.clone(), coeffs: self.coeffs.map(|c| f.mul(&c, &di)) },
            None => self.clone(),
        }
    }

    /// The plane contains the node `(0:0:0:1)` exactly when `d = 0`.
    pub fn contains_node(&self) -> bool {
        self.coeffs[3].is_zero()
    }

    pub fn linear_form(&self) -> MPoly {
        MPoly::linear(&self.ctx, &self.coeffs)
    }
}

#[derive(Clone, Debug)]
pub struct PlaneSection {
    /// Plane form, normalized to `d = 1`.
    pub v: MPoly,
    /// The Kummer quartic.
    pub h: MPoly,
    /// `kappa` with `X4 = -(a X1 + b X2 + c X3)`, in `X1, X2, X3`.
    pub ternary: MPoly,
}

pub fn plane_section(k: &KummerSurface, plane: &Plane) -> Result<PlaneSection, PrymError> {
    if plane.contains_node() {
        return Err(PrymError::ThroughNode);
    }
    let f = plane.ctx();
    let kappa = if k.kappa.ctx() == f {
        k.kappa.clone()
    } else {
        let emb = crate::gf::Embedding::new(k.kappa.ctx(), f)?;
        k.kappa.map_coeffs(&emb)
    };
    let pl = plane.normalized();
    let [a, b, c, _] = pl.coeffs;
    let x4 = MPoly::linear(f, &[f.neg(&a), f.neg(&b), f.neg(&c), Fe::ZERO]);
    let ternary = kappa.substitute(3, &x4).with_nvars(3);
    Ok(PlaneSection { v: pl.linear_form(), h: kappa, ternary })
}

impl From<crate::gf::GfError> for PrymError {
    fn from(e: crate::gf::GfError) -> Self {
        PrymError::Excluded(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_ext;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const X: [&str; 4] = ["X1", "X2", "X3", "X4"];

    #[test]
    fn kummer_of_sextic_minus_one() {
        for p in [5u32, 7, 11] {
            let f = make_ext(p, 1).unwrap();
            let z = Genus2Curve::from_ints(&f, &[-1, 0, 0, 0, 0, 0, 1]).unwrap();
            let want = MPoly::parse(
                &f,
                &X,
                "X2^2X4^2 - 4X1X3X4^2 + 4X1^3X4 - 4X3^3X4 + 4X1^2X3^2 - 8X1X2^2X3 + 4X2^4",
            )
            .unwrap();
            assert_eq!(kummer_surface(&z).kappa, want);
        }
    }

    #[test]
    fn leading_x4_coefficient_is_independent_of_curve() {
        let f = make_ext(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let d: Vec<Fe> = (0..6).map(|_| f.random(&mut rng)).chain([f.one()]).collect();
            let z = Genus2Curve::new(&f, &d).unwrap();
            let k = kummer_surface(&z);
            let lead = &k.kappa.coefficients_in(3)[2];
            assert_eq!(lead, &MPoly::parse(&f, &X, "X2^2 - 4X1X3").unwrap());
            assert!(k.kappa.is_homogeneous());
            assert_eq!(k.kappa.total_degree(), Some(4));
        }
    }

    #[test]
    fn phi_lands_on_kummer_and_is_symmetric() {
        let f = make_ext(5, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut checked = 0;
        while checked < 200 {
            let d: Vec<Fe> = (0..7).map(|_| f.random(&mut rng)).collect();
            let Ok(z) = Genus2Curve::new(&f, &d) else { continue };
            let k = kummer_surface(&z);
            let dp = z.poly();
            let pts: Vec<(Fe, Fe)> = f
                .elements()
                .filter_map(|x| f.sqrt(&dp.eval(&x)).map(|y| (x, y)))
                .take(6)
                .collect();
            for i in 0..pts.len() {
                for j in 0..pts.len() {
                    if pts[i].0 == pts[j].0 {
                        continue;
                    }
                    let img = kummer_phi(&z, pts[i], pts[j]).unwrap();
                    assert!(k.kappa.eval(&img).is_zero());
                    assert_eq!(img, kummer_phi(&z, pts[j], pts[i]).unwrap());
                    let neg = |(x, y): (Fe, Fe)| (x, f.neg(&y));
                    assert_eq!(img, kummer_phi(&z, neg(pts[i]), neg(pts[j])).unwrap());
                    checked += 1;
                }
            }
        }
    }

    #[test]
    fn phi_errors() {
        let f = make_ext(5, 1).unwrap();
        let z = Genus2Curve::from_ints(&f, &[-1, 0, 0, 0, 0, 0, 1]).unwrap();
        let p = (f.from_int(1), Fe::ZERO);
        assert!(matches!(kummer_phi(&z, p, p), Err(PrymError::EqualX)));
        let bad = (f.from_int(0), f.from_int(0));
        assert!(matches!(kummer_phi(&z, p, bad), Err(PrymError::NotOnCurve(..))));
    }

    #[test]
    fn section_substitution_identity() {
        let f = make_ext(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let z = Genus2Curve::from_ints(&f, &[1, 2, 0, 3, 1, 5, 1]).unwrap();
        let k = kummer_surface(&z);
        let plane = Plane::from_ints(&f, [2, 3, 4, 5]).unwrap();
        let sec = plane_section(&k, &plane).unwrap();
        let n = plane.normalized();
        assert_eq!(n.coeffs[3], f.one());
        for _ in 0..30 {
            let pt: Vec<Fe> = (0..3).map(|_| f.random(&mut rng)).collect();
            let lin = (0..3).fold(Fe::ZERO, |acc, i| f.add(&acc, &f.mul(&n.coeffs[i], &pt[i])));
            let x4 = f.neg(&lin);
            assert_eq!(sec.ternary.eval(&pt), k.kappa.eval(&[pt[0], pt[1], pt[2], x4]));
        }
        let through = Plane::from_ints(&f, [1, 1, 0, 0]).unwrap();
        assert!(through.contains_node());
        assert!(matches!(plane_section(&k, &through), Err(PrymError::ThroughNode)));
        assert!(k.kappa.eval(&[Fe::ZERO, Fe::ZERO, Fe::ZERO, f.one()]).is_zero());
    }
}
