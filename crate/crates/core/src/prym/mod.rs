//! Genus-3 curves with an unramified double cover whose Prym is a genus-2
//! Jacobian: Bruin's quadratic-form model and plane sections of the Kummer
//! surface.

mod families;
mod kummer;
mod smooth;

pub use families::{family_simple_z, family_z_alpha, family_z_tu};
pub use kummer::{kummer_phi, kummer_surface, plane_section, KummerSurface, Plane, PlaneSection};
pub use smooth::{is_smooth_plane_quartic, is_smooth_plane_quartic_seeded};

use crate::gf::{Fe, FieldCtx, UniPoly};
use crate::hasse_witt::{Genus2Curve, HwError};
use crate::mpoly::MPoly;

#[derive(Debug, thiserror::Error)]
pub enum PrymError {
    #[error("expected {0} coefficients, got {1}")]
    Arity(usize, usize),
    #[error("D(x) = -det(M1 + 2x M2 + x^2 M3) is identically zero")]
    ZeroSextic,
    #[error(transparent)]
    Hw(#[from] HwError),
    #[error("plane passes through the node (0:0:0:1) of the Kummer surface (d = 0)")]
    ThroughNode,
    #[error("plane coefficients are all zero")]
    ZeroPlane,
    #[error("points share an x-coordinate; the formula has a pole")]
    EqualX,
    #[error("point ({0}, {1}) is not on the curve")]
    NotOnCurve(String, String),
    #[error("not a homogeneous ternary quartic")]
    NotTernaryQuartic,
    #[error("parameter excluded: {0}")]
    Excluded(String),
    #[error("field too large for the smoothness test (absolute degree {0})")]
    FieldTooLarge(usize),
}

/// `(Q1, Q2, Q3)` as symmetric Gram matrices `M_i`, with
/// `(u,v,w) M_i (u,v,w)^T = Q_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadTriple {
    ctx: FieldCtx,
    m: [[[Fe; 3]; 3]; 3],
}

/// `(row, col)` of each non-diagonal-form coefficient, in the 15-entry order
/// `q111 q112 q122 q113 q123 q133 | q211 q222 q233 | q311 q312 q322 q313 q323 q333`.
const FULL_FORM: [(usize, usize); 6] = [(0, 0), (0, 1), (1, 1), (0, 2), (1, 2), (2, 2)];

impl QuadTriple {
    pub fn new(ctx: &FieldCtx, m: [[[Fe; 3]; 3]; 3]) -> QuadTriple {
        for mi in &m {
            for r in 0..3 {
                for c in 0..3 {
                    assert_eq!(mi[r][c], mi[c][r], "Gram matrices must be symmetric");
                }
            }
        }
        QuadTriple { ctx: ctx.clone(), m }
    }

    /// From the 15-coefficient vector with `Q2` diagonal. Off-diagonal
    /// coefficients of `Q1`, `Q3` are halved into both symmetric slots.
    pub fn from_q15(ctx: &FieldCtx, q: &[Fe]) -> Result<QuadTriple, PrymError> {
        if q.len() != 15 {
            return Err(PrymError::Arity(15, q.len()));
        }
        let half = ctx.inv(&ctx.from_int(2)).unwrap();
        let mut m = [[[Fe::ZERO; 3]; 3]; 3];
        for (form, offset) in [(0usize, 0usize), (2, 9)] {
            for (k, &(r, c)) in FULL_FORM.iter().enumerate() {
                let v = q[offset + k];
                if r == c {
                    m[form][r][c] = v;
                } else {
                    let h = ctx.mul(&v, &half);
                    m[form][r][c] = h;
                    m[form][c][r] = h;
                }
            }
        }
        for i in 0..3 {
            m[1][i][i] = q[6 + i];
        }
        Ok(QuadTriple { ctx: ctx.clone(), m })
    }

    pub fn from_ints(ctx: &FieldCtx, q: &[i64]) -> Result<QuadTriple, PrymError> {
        let v: Vec<Fe> = q.iter().map(|&c| ctx.from_int(c)).collect();
        Self::from_q15(ctx, &v)
    }

    /// Inverse of [`QuadTriple::from_q15`]; `None` if `Q2` is not diagonal.
    pub fn to_q15(&self) -> Option<Vec<Fe>> {
        let f = &self.ctx;
        let m2 = &self.m[1];
        if !(m2[0][1].is_zero() && m2[0][2].is_zero() && m2[1][2].is_zero()) {
            return None;
        }
        let mut out = Vec::with_capacity(15);
        let form_coeffs = |mi: &[[Fe; 3]; 3], out: &mut Vec<Fe>| {
            for &(r, c) in &FULL_FORM {
                out.push(if r == c { mi[r][c] } else { f.add(&mi[r][c], &mi[c][r]) });
            }
        };
        form_coeffs(&self.m[0], &mut out);
        out.extend((0..3).map(|i| m2[i][i]));
        form_coeffs(&self.m[2], &mut out);
        Some(out)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn gram(&self, i: usize) -> &[[Fe; 3]; 3] {
        &self.m[i]
    }

    /// `Q_i(u, v, w)` as a ternary form.
    pub fn form(&self, i: usize) -> MPoly {
        let mut terms = Vec::new();
        for r in 0..3 {
            for c in 0..3 {
                let mut e = vec![0u32; 3];
                e[r] += 1;
                e[c] += 1;
                terms.push((e, self.m[i][r][c]));
            }
        }
        MPoly::from_terms(&self.ctx, 3, terms)
    }
}

/// `F = Q2^2 - Q1 Q3`, whose zero locus is the genus-3 curve.
pub fn bruin_quartic(q: &QuadTriple) -> MPoly {
    let q2 = q.form(1);
    q2.square().sub(&q.form(0).mul(&q.form(2)))
}

/// Dehomogenization `F(u, v, 1)`.
pub fn affine_quartic(f: &MPoly) -> MPoly {
    f.specialize(2, &f.ctx().one()).with_nvars(2)
}

/// `D(x) = -det(M1 + 2x M2 + x^2 M3)`, the sextic of the Prym curve.
pub fn bruin_sextic_poly(q: &QuadTriple) -> UniPoly {
    let f = &q.ctx;
    let two = f.from_int(2);
    let entry = |r: usize, c: usize| {
        UniPoly::new(f, vec![q.m[0][r][c], f.mul(&two, &q.m[1][r][c]), q.m[2][r][c]])
    };
    let a: Vec<Vec<UniPoly>> = (0..3).map(|r| (0..3).map(|c| entry(r, c)).collect()).collect();
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| a[r1][c1].mul(&a[r2][c2]).sub(&a[r1][c2].mul(&a[r2][c1]));
    let det = a[0][0]
        .mul(&minor(1, 2, 1, 2))
        .sub(&a[0][1].mul(&minor(1, 2, 0, 2)))
        .add(&a[0][2].mul(&minor(1, 2, 0, 1)));
    UniPoly::zero(f).sub(&det)
}

pub fn bruin_prym_sextic(q: &QuadTriple) -> Result<Genus2Curve, PrymError> {
    let d = bruin_sextic_poly(q);
    if d.is_zero() {
        return Err(PrymError::ZeroSextic);
    }
    Ok(Genus2Curve::from_poly(&d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_ext;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn table_row_p3() -> (FieldCtx, QuadTriple) {
        let f3 = make_ext(3, 1).unwrap();
        let q = QuadTriple::from_ints(&f3, &[2, 0, 2, 0, 0, 1, 1, 1, 1, 0, 1, 2, 2, 2, 2]).unwrap();
        (f3, q)
    }

    #[test]
    fn quartic_of_p3_ordinary_row_up_to_scalar() {
        let (f3, q) = table_row_p3();
        let got = affine_quartic(&bruin_quartic(&q));
        let printed = MPoly::parse(
            &f3,
            &["u", "v"],
            "2u^4 + 2u^3v + u^3 + 2u^2v^2 + u^2v + 2u^2 + 2uv^3 + uv^2 + uv + 2u + v^3 + v^2 + 2v + 1",
        )
        .unwrap();
        let ok = f3.elements().skip(1).any(|s| printed.scale(&s) == got);
        assert!(ok, "{got:?}");
    }

    #[test]
    fn sextic_of_p3_ordinary_row() {
        let (f3, q) = table_row_p3();
        let z = bruin_prym_sextic(&q).unwrap();
        // printed as 2x^5 + x^4 + 2x^2 + x + z^2 + 1, i.e. z^2 = -(...)
        let want = UniPoly::from_ints(&f3, &[1, 1, 2, 0, 1, 2]).scale(&f3.from_int(-1));
        assert_eq!(z.poly(), want);
    }

    #[test]
    fn zero_middle_form_gives_product_of_conics() {
        let f5 = make_ext(5, 1).unwrap();
        let q = QuadTriple::from_ints(&f5, &[1, 0, 1, 0, 0, 1, 0, 0, 0, 1, 1, 2, 0, 3, 1]).unwrap();
        let f = bruin_quartic(&q);
        assert_eq!(f, q.form(0).mul(&q.form(2)).neg());
        assert!(!is_smooth_plane_quartic(&f).unwrap());
    }

    #[test]
    fn quartic_vanishes_exactly_where_q1q3_equals_q2_squared() {
        let f5 = make_ext(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let qv: Vec<Fe> = (0..15).map(|_| f5.random(&mut rng)).collect();
        let q = QuadTriple::from_q15(&f5, &qv).unwrap();
        assert_eq!(q.to_q15().unwrap(), qv);
        let f = bruin_quartic(&q);
        for _ in 0..100 {
            let pt: Vec<Fe> = (0..3).map(|_| f5.random(&mut rng)).collect();
            let lhs = f5.mul(&q.form(0).eval(&pt), &q.form(2).eval(&pt));
            let rhs = f5.square(&q.form(1).eval(&pt));
            assert_eq!(f.eval(&pt).is_zero(), lhs == rhs);
        }
    }

    #[test]
    fn diagonal_forms_give_product_sextic() {
        let f7 = make_ext(7, 1).unwrap();
        let q = QuadTriple::from_ints(&f7, &[1, 0, 2, 0, 0, 3, 1, 5, 2, 4, 0, 1, 0, 0, 6]).unwrap();
        let d = bruin_sextic_poly(&q);
        let m1 = [1, 2, 3];
        let m2 = [1, 5, 2];
        let m3 = [4, 1, 6];
        let mut prod = UniPoly::from_ints(&f7, &[-1]);
        for j in 0..3 {
            prod = prod.mul(&UniPoly::from_ints(&f7, &[m1[j], 2 * m2[j], m3[j]]));
        }
        assert_eq!(d, prod);
    }

    #[test]
    fn constant_sextic_rejected() {
        let f5 = make_ext(5, 1).unwrap();
        let q = QuadTriple::from_ints(&f5, &[1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        assert!(matches!(bruin_prym_sextic(&q), Err(PrymError::Hw(HwError::WrongCurveDegree(0, _)))));
        let z = QuadTriple::from_ints(&f5, &[0; 15]).unwrap();
        assert!(matches!(bruin_prym_sextic(&z), Err(PrymError::ZeroSextic)));
    }
}
