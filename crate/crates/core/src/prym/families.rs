use crate::gf::{Fe, FieldCtx, UniPoly};
use crate::hasse_witt::Genus2Curve;

use super::PrymError;

fn need_p3(ctx: &FieldCtx) -> Result<(), PrymError> {
    if ctx.p() != 3 {
        return Err(PrymError::Excluded(format!("family defined for p = 3, got p = {}", ctx.p())));
    }
    Ok(())
}

/// `z^2 = A(x) B(x)` with `A = x^3 - a x^2 + a x + (a+1)` and
/// `B = (x - a)(x - a - 1)(a x + a + 1)`, for `a` outside `{0, 1, -1}`.
pub fn family_z_alpha(ctx: &FieldCtx, alpha: &Fe) -> Result<Genus2Curve, PrymError> {
    need_p3(ctx)?;
    let f = ctx;
    if alpha.is_zero() || *alpha == f.one() || *alpha == f.from_int(-1) {
        return Err(PrymError::Excluded(format!("alpha = {} is in {{0, 1, -1}}", f.format(alpha))));
    }
    let a = *alpha;
    let a1 = f.add(&a, &f.one());
    let big_a = UniPoly::new(f, vec![a1, a, f.neg(&a), f.one()]);
    let big_b = UniPoly::linear(f, a)
        .mul(&UniPoly::linear(f, a1))
        .mul(&UniPoly::new(f, vec![a1, a]));
    Ok(Genus2Curve::from_poly(&big_a.mul(&big_b))?)
}

/// `z^2 = x^6 + t x^5 + u x^4 + x^3 + t x^2 + u x + 1`.
pub fn family_z_tu(ctx: &FieldCtx, t: &Fe, u: &Fe) -> Result<Genus2Curve, PrymError> {
    need_p3(ctx)?;
    if t == u {
        return Err(PrymError::Excluded("t = u gives a singular curve".into()));
    }
    let one = ctx.one();
    Ok(Genus2Curve::new(ctx, &[one, *u, *t, one, *u, *t, one])?)
}

/// `z^2 = (x^3 - x)(A0 x^3 + A x^2 + B x + C)`.
pub fn family_simple_z(ctx: &FieldCtx, a0: &Fe, a: &Fe, b: &Fe, c: &Fe) -> Result<Genus2Curve, PrymError> {
    if a0.is_zero() {
        return Err(PrymError::Excluded("A0 = 0".into()));
    }
    if c.is_zero() {
        return Err(PrymError::Excluded("C = 0".into()));
    }
    let f = ctx;
    let d = [Fe::ZERO, f.neg(c), f.neg(b), f.sub(c, a), f.sub(b, a0), *a, *a0];
    Ok(Genus2Curve::new(ctx, &d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{make_ext, roots_in_ext};
    use crate::hasse_witt::{cartier_manin_hyperelliptic, p_rank, HwMatrix};

    #[test]
    fn z_alpha_cartier_manin_closed_form() {
        let f9 = make_ext(3, 2).unwrap();
        let mut tested = 0;
        for a in f9.elements() {
            let Ok(z) = family_z_alpha(&f9, &a) else {
                assert!(a.is_zero() || a == f9.one() || a == f9.from_int(-1));
                continue;
            };
            assert!(z.is_smooth());
            let a1 = f9.add(&a, &f9.one());
            let want = HwMatrix::new(
                &f9,
                2,
                vec![f9.pow(&a1, 3), f9.neg(&f9.pow(&a1, 4)), f9.one(), f9.neg(&a1)],
                crate::hasse_witt::Basis::CartierManin,
            );
            let got = cartier_manin_hyperelliptic(&z, false).unwrap();
            assert!(got.try_eq(&want).unwrap());
            assert_eq!(p_rank(&got), 0);
            tested += 1;
        }
        assert_eq!(tested, 6);
        let f3 = make_ext(3, 1).unwrap();
        assert!(matches!(family_z_alpha(&f3, &f3.from_int(2)), Err(PrymError::Excluded(_))));
        let f5 = make_ext(5, 1).unwrap();
        assert!(family_z_alpha(&f5, &f5.from_int(2)).is_err());
    }

    #[test]
    fn z_alpha_conjugates() {
        let f9 = make_ext(3, 2).unwrap();
        let a = f9.generator();
        let z = family_z_alpha(&f9, &a).unwrap();
        let zc = family_z_alpha(&f9, &f9.frobenius(&a, 1)).unwrap();
        let conj: Vec<Fe> = z.coeffs().iter().map(|c| f9.frobenius(c, 1)).collect();
        assert_eq!(zc.coeffs().to_vec(), conj);
        // root of t^2 + 2t + 2
        let f3 = make_ext(3, 1).unwrap();
        for r in roots_in_ext(&UniPoly::from_ints(&f3, &[2, 2, 1]), &f9) {
            assert!(crate::gf::is_squarefree(&family_z_alpha(&f9, &r).unwrap().poly()));
        }
    }

    #[test]
    fn z_tu_has_rank_one_off_the_diagonals() {
        let f9 = make_ext(3, 2).unwrap();
        for t in f9.elements() {
            for u in f9.elements() {
                if t == u {
                    assert!(family_z_tu(&f9, &t, &u).is_err());
                    continue;
                }
                let z = family_z_tu(&f9, &t, &u).unwrap();
                if t == f9.neg(&u) || !z.is_smooth() {
                    continue;
                }
                let h = cartier_manin_hyperelliptic(&z, false).unwrap();
                assert_eq!(p_rank(&h), 1, "t={} u={}", f9.format(&t), f9.format(&u));
            }
        }
    }

    #[test]
    fn simple_z_expansion_and_rank_zero_criterion() {
        let f9 = make_ext(3, 2).unwrap();
        let x3x = UniPoly::from_ints(&f9, &[0, -1, 0, 1]);
        let all: Vec<Fe> = f9.elements().collect();
        let mut params = Vec::new();
        for a0 in [f9.one(), f9.from_int(2)] {
            for &a in &all {
                for &b in &all {
                    for &c in &all {
                        params.push((a0, a, b, c));
                    }
                }
            }
        }
        for (a0, a, b, c) in params {
            let Ok(z) = family_simple_z(&f9, &a0, &a, &b, &c) else {
                assert!(c.is_zero());
                continue;
            };
            let cubic = UniPoly::new(&f9, vec![c, b, a, a0]);
            assert_eq!(z.poly(), x3x.mul(&cubic));
            if !z.is_smooth() {
                continue;
            }
            let h = cartier_manin_hyperelliptic(&z, false).unwrap();
            let e1 = f9.sub(&f9.pow(&b, 4), &f9.mul(&a, &f9.pow(&c, 3)));
            let e2 = f9.sub(&f9.pow(&b, 3), &f9.mul(&f9.square(&c), &f9.sub(&b, &a0)));
            assert_eq!(p_rank(&h) == 0, e1.is_zero() && e2.is_zero());
        }
    }
}
