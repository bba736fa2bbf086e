use serde::Serialize;

use crate::gf::{make_ext, roots_in_ext, Embedding, Fe, FieldCtx, UniPoly};
use crate::hasse_witt::{p_rank, SectionExpander};
use crate::mpoly::MPoly;
use crate::prym::{family_z_alpha, is_smooth_plane_quartic, kummer_surface, plane_section, Plane};

use super::det_alpha::{parse_t, reference_det_alpha};
use super::reference::{FIXALPHA_ENTRIES, FIXALPHA_MINPOLY, FIXALPHA_RANK_TWO_PLANE};
use super::SearchError;

const NAMES: [&str; 3] = ["a", "b", "c"];
// entries have degree at most p + p - 1 = 5 in each plane coefficient
const PER_VAR: usize = 5;

/// One root of the minimal polynomial: computed entries, comparison with the
/// published ones, and the section at the named plane.
#[derive(Clone, Debug, Serialize)]
pub struct FixAlphaRoot {
    pub alpha: String,
    pub entries: Vec<String>,
    pub consistent: bool,
    pub matches: [bool; 9],
    pub transposed_matches: [bool; 9],
    /// Terms of total degree at least 3 agree.
    pub high_degree_matches: [bool; 9],
    /// Computed entries at the plane `(0, -1, 0, 1)` equal the published
    /// `det H` entries evaluated at alpha.
    pub agrees_with_det_alpha: bool,
    pub det_nonzero: bool,
    pub plane: [i64; 3],
    pub plane_smooth: bool,
    pub plane_p_rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixAlphaReport {
    pub minpoly: String,
    pub roots: Vec<FixAlphaRoot>,
    /// Root (if any) at which every published entry is reproduced.
    pub matched_root: Option<String>,
    pub pass: bool,
}

fn lagrange_basis(ctx: &FieldCtx, xs: &[Fe]) -> Vec<UniPoly> {
    let f = ctx;
    xs.iter()
        .enumerate()
        .map(|(i, xi)| {
            let mut num = UniPoly::constant(f, f.one());
            let mut den = f.one();
            for (j, xj) in xs.iter().enumerate() {
                if i != j {
                    num = num.mul(&UniPoly::new(f, vec![f.neg(xj), f.one()]));
                    den = f.mul(&den, &f.sub(xi, xj));
                }
            }
            num.scale(&f.inv(&den).unwrap())
        })
        .collect()
}

/// The nine entries of the section matrix for the plane `(a, b, c, 1)` as
/// polynomials in `a, b, c`, by tensor interpolation over the field of alpha.
/// The flag reports that every point of the field cube is reproduced.
pub fn fixalpha_entries(ctx: &FieldCtx, alpha: &Fe) -> Result<(Vec<MPoly>, bool), SearchError> {
    let z = family_z_alpha(ctx, alpha)?;
    let expander = SectionExpander::new(&kummer_surface(&z).kappa)?;
    let xs: Vec<Fe> = ctx.elements().take(PER_VAR + 1).collect();
    if xs.len() < PER_VAR + 1 {
        return Err(SearchError::BadTarget("field too small for the grid".into()));
    }
    let hw_at = |a: &Fe, b: &Fe, c: &Fe| {
        let v = MPoly::linear(ctx, &[*a, *b, *c, ctx.one()]);
        expander.section(&v, 4).map(|s| s.hw)
    };
    let basis = lagrange_basis(ctx, &xs);
    let lifts: Vec<[MPoly; 3]> = basis
        .iter()
        .map(|l| [0, 1, 2].map(|var| MPoly::from_univariate(l, 3, var)))
        .collect();
    let mut entries = vec![MPoly::zero(ctx, 3); 9];
    for (i, a) in xs.iter().enumerate() {
        for (j, b) in xs.iter().enumerate() {
            for (k, c) in xs.iter().enumerate() {
                let hw = hw_at(a, b, c)?;
                let w = lifts[i][0].mul(&lifts[j][1]).mul(&lifts[k][2]);
                for (e, y) in entries.iter_mut().zip(hw.entries()) {
                    if !y.is_zero() {
                        *e = e.add(&w.scale(y));
                    }
                }
            }
        }
    }
    let mut consistent = true;
    'outer: for a in ctx.elements() {
        for b in ctx.elements() {
            for c in ctx.elements() {
                let hw = hw_at(&a, &b, &c)?;
                if entries.iter().zip(hw.entries()).any(|(e, y)| e.eval(&[a, b, c]) != *y) {
                    consistent = false;
                    break 'outer;
                }
            }
        }
    }
    Ok((entries, consistent))
}

/// Published entries with `t` set to `alpha`.
pub fn paper_fixalpha_entries(ctx: &FieldCtx, alpha: &Fe) -> Result<Vec<MPoly>, SearchError> {
    FIXALPHA_ENTRIES
        .iter()
        .map(|s| {
            let e = MPoly::parse(ctx, &["a", "b", "c", "t"], s)?;
            Ok(e.specialize(3, alpha).with_nvars(3))
        })
        .collect()
}

fn det3(m: &[MPoly]) -> MPoly {
    let e = |r: usize, c: usize| &m[3 * r + c];
    e(0, 0)
        .mul(&e(1, 1).mul(e(2, 2)).sub(&e(1, 2).mul(e(2, 1))))
        .sub(&e(0, 1).mul(&e(1, 0).mul(e(2, 2)).sub(&e(1, 2).mul(e(2, 0)))))
        .add(&e(0, 2).mul(&e(1, 0).mul(e(2, 1)).sub(&e(1, 1).mul(e(2, 0)))))
}

pub fn fixalpha_report() -> Result<FixAlphaReport, SearchError> {
    let f3 = FieldCtx::prime(3)?;
    let f9 = make_ext(3, 2)?;
    let m = parse_t(&f3, FIXALPHA_MINPOLY)?;
    let emb = Embedding::new(&f3, &f9)?;
    let (_, det_entries) = reference_det_alpha()?;
    let mut roots = Vec::new();
    for alpha in roots_in_ext(&m, &f9) {
        let (entries, consistent) = fixalpha_entries(&f9, &alpha)?;
        let paper = paper_fixalpha_entries(&f9, &alpha)?;
        let matches: [bool; 9] = std::array::from_fn(|i| entries[i] == paper[i]);
        let transposed_matches: [bool; 9] = std::array::from_fn(|i| entries[3 * (i % 3) + i / 3] == paper[i]);
        let high_degree_matches: [bool; 9] =
            std::array::from_fn(|i| entries[i].sub(&paper[i]).total_degree().map_or(true, |d| d < 3));
        let det_nonzero = !det3(&entries).is_zero();
        let pt = [f9.zero(), f9.from_int(-1), f9.zero()];
        let agrees_with_det_alpha = det_entries
            .iter()
            .zip(&entries)
            .all(|(d, e)| emb.map_poly(d).eval(&alpha) == e.eval(&pt));

        let [a, b, c] = FIXALPHA_RANK_TWO_PLANE;
        let k = kummer_surface(&family_z_alpha(&f9, &alpha)?);
        let sec = plane_section(&k, &Plane::from_ints(&f9, [a, b, c, 1])?)?;
        let plane_smooth = is_smooth_plane_quartic(&sec.ternary)?;
        let hw = crate::hasse_witt::hasse_witt_section(&sec.v, &sec.h, 4)?.hw;
        roots.push(FixAlphaRoot {
            alpha: f9.format(&alpha),
            entries: entries.iter().map(|e| e.to_text(&NAMES)).collect(),
            consistent,
            matches,
            transposed_matches,
            high_degree_matches,
            agrees_with_det_alpha,
            det_nonzero,
            plane: FIXALPHA_RANK_TWO_PLANE,
            plane_smooth,
            plane_p_rank: p_rank(&hw),
        });
    }
    let matched_root = roots.iter().find(|r| r.matches.iter().all(|&m| m)).map(|r| r.alpha.clone());
    let pass = roots.len() == 2
        && roots.iter().all(|r| r.consistent && r.det_nonzero)
        && roots.iter().any(|r| r.matches.iter().all(|&m| m) && r.plane_smooth && r.plane_p_rank == 2);
    Ok(FixAlphaReport { minpoly: FIXALPHA_MINPOLY.into(), roots, matched_root, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolant_reproduces_the_cube() {
        let f9 = make_ext(3, 2).unwrap();
        let alpha = f9.from_coords(&[1, 1]).unwrap();
        let (entries, ok) = fixalpha_entries(&f9, &alpha).unwrap();
        assert!(ok);
        assert!(entries.iter().all(|e| (0..3).all(|v| e.degree_in(v).map_or(true, |d| d <= PER_VAR as u32))));
    }

    #[test]
    fn both_roots_agree_with_the_det_slice() {
        let rep = fixalpha_report().unwrap();
        assert_eq!(rep.roots.len(), 2);
        for r in &rep.roots {
            assert!(r.consistent && r.det_nonzero && r.agrees_with_det_alpha);
            assert!(r.high_degree_matches.iter().all(|&m| m));
            assert!(r.plane_smooth);
            assert_eq!(r.plane_p_rank, 2);
        }
    }

    #[test]
    fn published_entries_parse() {
        let f9 = make_ext(3, 2).unwrap();
        let e = paper_fixalpha_entries(&f9, &f9.from_coords(&[1, 1]).unwrap()).unwrap();
        assert_eq!(e.len(), 9);
        assert!(e.iter().all(|x| x.nvars() == 3));
    }
}
