use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gf::{factor_univar, make_ext, roots_in_ext, Embedding, Fe, FieldCtx, UniPoly, MAX_DEGREE};
use crate::mpoly::MPoly;

use super::PrymError;

/// Whether the plane quartic `F(u, v, w) = 0` is nonsingular over the
/// algebraic closure. Works with the partials only (p is odd, so Euler's
/// relation puts their common zeros on the curve).
pub fn is_smooth_plane_quartic(f: &MPoly) -> Result<bool, PrymError> {
    check_quartic(f)?;
    Ok(!singular(f)?)
}

/// Same test after a random invertible change of coordinates drawn from
/// `seed`. The answer must not depend on the seed.
pub fn is_smooth_plane_quartic_seeded(f: &MPoly, seed: u64) -> Result<bool, PrymError> {
    check_quartic(f)?;
    let ctx = f.ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = loop {
        let m: Vec<Vec<Fe>> = (0..3).map(|_| (0..3).map(|_| ctx.random(&mut rng)).collect()).collect();
        if !det3(ctx, &m).is_zero() {
            break m;
        }
    };
    Ok(!singular(&f.linear_change(&m))?)
}

fn check_quartic(f: &MPoly) -> Result<(), PrymError> {
    if f.nvars() != 3 || f.is_zero() || !f.is_homogeneous() || f.total_degree() != Some(4) {
        return Err(PrymError::NotTernaryQuartic);
    }
    Ok(())
}

fn det3(f: &FieldCtx, m: &[Vec<Fe>]) -> Fe {
    let t = |a: usize, b: usize, c: usize| f.mul(&m[0][a], &f.mul(&m[1][b], &m[2][c]));
    let pos = f.add(&f.add(&t(0, 1, 2), &t(1, 2, 0)), &t(2, 0, 1));
    let neg = f.add(&f.add(&t(0, 2, 1), &t(1, 0, 2)), &t(2, 1, 0));
    f.sub(&pos, &neg)
}

/// gcd of a list of univariates; `None` when all vanish identically.
fn common_gcd(polys: &[UniPoly]) -> Option<UniPoly> {
    let mut acc: Option<UniPoly> = None;
    for p in polys.iter().filter(|p| !p.is_zero()) {
        acc = Some(match acc {
            None => p.monic(),
            Some(a) => a.gcd(p),
        });
    }
    acc
}

fn has_common_root(polys: &[UniPoly]) -> bool {
    match common_gcd(polys) {
        None => true,
        Some(g) => !g.is_constant(),
    }
}

fn singular(f: &MPoly) -> Result<bool, PrymError> {
    let ctx = f.ctx();
    let partials: Vec<MPoly> = (0..3).map(|i| f.partial(i)).collect();
    // two cubic curves always meet in P^2, so a vanishing partial is fatal
    if partials.iter().any(|p| p.is_zero()) {
        return Ok(true);
    }

    // line w = 0: points (u : 1 : 0) and (1 : 0 : 0)
    let zero = Fe::ZERO;
    let at_inf: Vec<UniPoly> = partials
        .iter()
        .map(|p| p.specialize(2, &zero).specialize(1, &ctx.one()).to_univariate(0).unwrap())
        .collect();
    if has_common_root(&at_inf) {
        return Ok(true);
    }
    let corner = [ctx.one(), zero, zero];
    if partials.iter().all(|p| p.eval(&corner).is_zero()) {
        return Ok(true);
    }

    // affine chart w = 1, variables (u, v)
    let aff: Vec<MPoly> = partials.iter().map(|p| p.specialize(2, &ctx.one()).with_nvars(2)).collect();
    if aff.iter().all(|a| a.degree_in(1).unwrap_or(0) == 0) {
        // no v at all: the partials vanish on whole lines u = const
        let us: Vec<UniPoly> = aff.iter().map(|a| a.to_univariate(0).unwrap()).collect();
        return Ok(has_common_root(&us));
    }
    let (i, j) = if aff[0].degree_in(1).unwrap_or(0) > 0 || aff[1].degree_in(1).unwrap_or(0) > 0 {
        (0, 1)
    } else {
        (0, 2)
    };
    let r = match aff[i].resultant_wrt(&aff[j], 1) {
        Ok(r) => r,
        Err(_) => unreachable!("one of the pair has positive v-degree"),
    };
    if r.is_zero() {
        // common component of positive v-degree; it meets the third cubic
        return Ok(true);
    }
    let r = r.to_univariate(0).unwrap();
    if r.is_constant() {
        return Ok(false);
    }
    let k = ctx.degree();
    for (fac, _) in factor_univar(&r).factors {
        let e = fac.degree().unwrap();
        let target = if e == 1 {
            ctx.clone()
        } else {
            if k * e > MAX_DEGREE {
                return Err(PrymError::FieldTooLarge(k * e));
            }
            make_ext(ctx.p(), k * e)?
        };
        let u0 = roots_in_ext(&fac, &target)[0];
        let lifted: Vec<MPoly> = if e == 1 {
            aff.clone()
        } else {
            let emb = Embedding::new(ctx, &target)?;
            aff.iter().map(|a| a.map_coeffs(&emb)).collect()
        };
        let slices: Vec<UniPoly> =
            lifted.iter().map(|a| a.specialize(0, &u0).to_univariate(1).unwrap()).collect();
        if has_common_root(&slices) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_ext;

    const UVW: [&str; 3] = ["u", "v", "w"];

    fn q(ctx: &FieldCtx, s: &str) -> MPoly {
        MPoly::parse(ctx, &UVW, s).unwrap()
    }

    /// Singular points with u-coordinate in F_{q^e} (or at infinity), found by
    /// running over u instead of eliminating.
    fn brute_singular(f: &MPoly, e: usize) -> bool {
        let ctx = f.ctx();
        let big = make_ext(ctx.p(), ctx.degree() * e).unwrap();
        let g = if e == 1 { f.clone() } else { f.map_coeffs(&Embedding::new(ctx, &big).unwrap()) };
        let parts: Vec<MPoly> = (0..3).map(|i| g.partial(i)).collect();
        let one = big.one();
        let z = Fe::ZERO;
        let slice = |u: &Fe, w: &Fe| -> Vec<UniPoly> {
            parts.iter().map(|p| p.specialize(0, u).specialize(2, w).to_univariate(1).unwrap()).collect()
        };
        big.elements().any(|a| has_common_root(&slice(&a, &one)))
            || has_common_root(&slice(&one, &z))
            || parts.iter().all(|p| p.eval(&[z, one, z]).is_zero())
    }

    #[test]
    fn fermat_quartic_smooth_away_from_two() {
        for p in [3u32, 5, 7, 11] {
            let f = make_ext(p, 1).unwrap();
            assert!(is_smooth_plane_quartic(&q(&f, "u^4 + v^4 + w^4")).unwrap(), "p={p}");
        }
    }

    #[test]
    fn nodal_and_reducible_quartics() {
        let f = make_ext(7, 1).unwrap();
        // node at (0:0:1)
        assert!(!is_smooth_plane_quartic(&q(&f, "u^4 + v^4 + u^2w^2 - v^2w^2")).unwrap());
        // two conics
        let c1 = q(&f, "u^2 + v^2 - w^2");
        let c2 = q(&f, "u^2 + 2v^2 + 3w^2");
        assert!(!is_smooth_plane_quartic(&c1.mul(&c2)).unwrap());
        // double conic
        assert!(!is_smooth_plane_quartic(&c1.square()).unwrap());
        // singular point at infinity (1:0:0)
        assert!(!is_smooth_plane_quartic(&q(&f, "v^4 + w^4 + u^2v^2 + u^2w^2")).unwrap());
    }

    #[test]
    fn singular_point_only_over_an_extension() {
        // node at (i : 0 : 1) and its conjugate, i^2 = -1, over F_3
        let f3 = make_ext(3, 1).unwrap();
        let c = q(&f3, "u^2 + w^2");
        let quartic = c.square().add(&q(&f3, "v^4 + v^2w^2 + u v^3"));
        assert!(!brute_singular(&quartic, 1));
        assert!(brute_singular(&quartic, 2));
        assert!(!is_smooth_plane_quartic(&quartic).unwrap());
    }

    #[test]
    fn rejects_non_quartics() {
        let f = make_ext(5, 1).unwrap();
        assert!(matches!(is_smooth_plane_quartic(&q(&f, "u^3 + w^3")), Err(PrymError::NotTernaryQuartic)));
        assert!(matches!(is_smooth_plane_quartic(&q(&f, "u^4 + w")), Err(PrymError::NotTernaryQuartic)));
    }

    #[test]
    fn agrees_with_exhaustive_search_and_coordinate_changes() {
        let f = make_ext(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let monos: Vec<Vec<u32>> = (0..=4u32)
            .flat_map(|a| (0..=4 - a).map(move |b| vec![a, b, 4 - a - b]))
            .collect();
        let mut seen = [0usize; 2];
        for _ in 0..40 {
            let terms: Vec<(Vec<u32>, Fe)> = monos.iter().map(|m| (m.clone(), f.random(&mut rng))).collect();
            let quartic = MPoly::from_terms(&f, 3, terms);
            if check_quartic(&quartic).is_err() {
                continue;
            }
            let got = is_smooth_plane_quartic(&quartic).unwrap();
            // singular points of a quartic with rational coefficients are
            // defined over an extension of degree at most 6
            let brute = (1..=6).any(|e| brute_singular(&quartic, e));
            assert_eq!(got, !brute);
            for seed in 0..3 {
                assert_eq!(is_smooth_plane_quartic_seeded(&quartic, seed).unwrap(), got);
            }
            seen[got as usize] += 1;
        }
        assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
    }

    #[test]
    fn invariant_under_fifty_coordinate_changes() {
        let f5 = make_ext(5, 1).unwrap();
        let f9 = make_ext(3, 2).unwrap();
        let curves = [
            (q(&f5, "u^4 + v^4 + w^4"), true),
            (q(&f5, "u^2 + v w").square(), false),
            (q(&f5, "u^4 + v^4 + u^2w^2 - v^2w^2"), false),
            (q(&f9, "u^4 + u v^3 + v w^3 + w u^3"), is_smooth_plane_quartic(&q(&f9, "u^4 + u v^3 + v w^3 + w u^3")).unwrap()),
        ];
        for (c, want) in &curves {
            assert_eq!(is_smooth_plane_quartic(c).unwrap(), *want);
            for seed in 0..50 {
                assert_eq!(is_smooth_plane_quartic_seeded(c, seed).unwrap(), *want, "seed {seed}");
            }
        }
    }

    #[test]
    fn bruin_quartic_of_p3_table_row_is_smooth() {
        let f3 = make_ext(3, 1).unwrap();
        let qt = super::super::QuadTriple::from_ints(&f3, &[2, 0, 2, 0, 0, 1, 1, 1, 1, 0, 1, 2, 2, 2, 2]).unwrap();
        assert!(is_smooth_plane_quartic(&super::super::bruin_quartic(&qt)).unwrap());
    }
}
