use serde::Serialize;

use crate::gf::{factor_univar, Embedding, Fe, FieldCtx, UniPoly};
use crate::hasse_witt::{hasse_witt_section, p_rank, HwMatrix};
use crate::mpoly::{interpolate, MPoly};
use crate::prym::{family_z_alpha, is_smooth_plane_quartic, kummer_surface, plane_section, Plane, PrymError};

use super::degree_b::node_field;
use super::reference::{DET_H_ENTRIES, DET_H_FACTORS};
use super::SearchError;

/// `det H` of the section by a fixed plane, as a polynomial in alpha.
#[derive(Clone, Debug, Serialize)]
pub struct DetAlphaReport {
    pub plane: [u32; 4],
    pub nodes: usize,
    pub det: String,
    pub degree: Option<usize>,
    /// Every interpolated coefficient lies in F_3.
    pub over_prime_field: bool,
    /// Extra nodes beyond the bound reproduce the interpolant.
    pub consistent: bool,
    pub lead: u32,
    pub factors: Vec<(String, usize)>,
    #[serde(skip)]
    pub det_poly: Option<UniPoly>,
}

/// Entrywise comparison of a computed factorization against a list.
#[derive(Clone, Debug, Serialize)]
pub struct FactorCheck {
    pub computed: Vec<(String, usize)>,
    pub expected: Vec<(String, usize)>,
    pub identical: bool,
}

impl FactorCheck {
    pub fn new(computed: &[(UniPoly, usize)], expected: &[(UniPoly, usize)]) -> FactorCheck {
        let norm = |v: &[(UniPoly, usize)]| {
            let mut out: Vec<(String, usize)> = v.iter().map(|(f, e)| (poly_text(&f.monic()), *e)).collect();
            out.sort();
            out
        };
        let computed = norm(computed);
        let expected = norm(expected);
        let identical = computed == expected;
        FactorCheck { computed, expected, identical }
    }
}

/// Polynomial in `t`, highest degree first.
pub fn poly_text(u: &UniPoly) -> String {
    if u.is_zero() {
        return "0".into();
    }
    MPoly::from_univariate(u, 1, 0).to_text(&["t"])
}

pub fn parse_t(ctx: &FieldCtx, s: &str) -> Result<UniPoly, SearchError> {
    Ok(MPoly::parse(ctx, &["t"], s)?.to_univariate(0).expect("single variable"))
}

/// Published factor list and entries over F_3.
pub fn reference_det_alpha() -> Result<(Vec<(UniPoly, usize)>, Vec<UniPoly>), SearchError> {
    let f3 = FieldCtx::prime(3)?;
    let factors = DET_H_FACTORS
        .iter()
        .map(|(s, e)| Ok((parse_t(&f3, s)?, *e)))
        .collect::<Result<Vec<_>, SearchError>>()?;
    let entries = DET_H_ENTRIES.iter().map(|s| parse_t(&f3, s)).collect::<Result<Vec<_>, _>>()?;
    Ok((factors, entries))
}

pub(crate) const DET_BOUND: usize = 48;
pub(crate) const ENTRY_BOUND: usize = 16;

fn check_plane(f3: &FieldCtx, plane: [i64; 4]) -> Result<Plane, SearchError> {
    let pl = Plane::from_ints(f3, plane)?;
    if pl.contains_node() {
        return Err(PrymError::ThroughNode.into());
    }
    Ok(pl)
}

/// Section Hasse-Witt matrix at each usable alpha in the node field.
fn sample(plane: [i64; 4], need: usize) -> Result<(FieldCtx, Plane, Vec<(Fe, HwMatrix)>), SearchError> {
    let f3 = FieldCtx::prime(3)?;
    let pl = check_plane(&f3, plane)?;
    let big = node_field(3, need + 3 + 3)?;
    let emb = Embedding::new(&f3, &big)?;
    let coeffs = pl.normalized().coeffs.map(|c| emb.map(&c));
    let v = MPoly::linear(&big, &coeffs);
    let mut out = Vec::new();
    for alpha in big.elements() {
        // excluded parameters are skipped
        let Ok(z) = family_z_alpha(&big, &alpha) else { continue };
        let k = kummer_surface(&z);
        let hw = hasse_witt_section(&v, &k.kappa, 4)?.hw;
        out.push((alpha, hw));
    }
    Ok((big, pl, out))
}

fn to_prime_poly(f3: &FieldCtx, big: &FieldCtx, u: &UniPoly) -> Option<UniPoly> {
    let coeffs: Option<Vec<Fe>> = u
        .coeffs()
        .iter()
        .map(|c| {
            // an element of F_3 has all higher coordinates zero
            let co = big.coords(c);
            co[1..].iter().all(|&x| x == 0).then(|| f3.from_int(co[0] as i64))
        })
        .collect();
    coeffs.map(|c| UniPoly::new(f3, c))
}

fn fit(big: &FieldCtx, nodes: &[(Fe, Fe)], bound: usize) -> Result<(UniPoly, bool), SearchError> {
    let poly = interpolate(big, nodes, bound)?;
    let consistent = nodes[bound + 1..].iter().all(|(x, y)| poly.eval(x) == *y);
    Ok((poly, consistent))
}

pub fn det_h_alpha(plane: [i64; 4]) -> Result<DetAlphaReport, SearchError> {
    let (big, pl, samples) = sample(plane, DET_BOUND + 1)?;
    let f3 = FieldCtx::prime(3)?;
    let nodes: Vec<(Fe, Fe)> = samples.iter().map(|(a, h)| (*a, h.det())).collect();
    let (poly, consistent) = fit(&big, &nodes, DET_BOUND)?;
    let small = to_prime_poly(&f3, &big, &poly);
    let (factors, lead, det_text) = match &small {
        Some(s) if !s.is_zero() => {
            let fac = factor_univar(s);
            (
                fac.factors.iter().map(|(f, e)| (poly_text(f), *e)).collect(),
                f3.to_prime(&fac.lead).unwrap(),
                poly_text(s),
            )
        }
        Some(s) => (vec![], 0, poly_text(s)),
        None => (vec![], 0, poly_text(&poly)),
    };
    Ok(DetAlphaReport {
        plane: pl.coeffs.map(|c| f3.to_prime(&c).unwrap()),
        nodes: nodes.len(),
        det: det_text,
        degree: poly.degree(),
        over_prime_field: small.is_some(),
        consistent,
        lead,
        factors,
        det_poly: small,
    })
}

/// The nine section entries as polynomials in alpha over F_3 (row-major);
/// `None` where a coefficient leaves F_3.
pub fn section_entries_alpha(plane: [i64; 4]) -> Result<(Vec<Option<UniPoly>>, bool), SearchError> {
    let (big, _, samples) = sample(plane, ENTRY_BOUND + 1)?;
    let f3 = FieldCtx::prime(3)?;
    let mut all_consistent = true;
    let mut out = Vec::with_capacity(9);
    for idx in 0..9 {
        let nodes: Vec<(Fe, Fe)> = samples.iter().map(|(a, h)| (*a, h.entries()[idx])).collect();
        let (poly, consistent) = fit(&big, &nodes, ENTRY_BOUND)?;
        all_consistent &= consistent;
        out.push(to_prime_poly(&f3, &big, &poly));
    }
    Ok((out, all_consistent))
}

/// Smoothness and p-rank of the section at one alpha (any field of
/// characteristic 3).
#[derive(Clone, Debug, Serialize)]
pub struct AlphaSection {
    pub alpha: String,
    pub smooth: bool,
    pub p_rank: usize,
}

pub fn alpha_section(ctx: &FieldCtx, alpha: &Fe, plane: [i64; 4]) -> Result<AlphaSection, SearchError> {
    let z = family_z_alpha(ctx, alpha)?;
    let k = kummer_surface(&z);
    let pl = check_plane(ctx, plane)?;
    let sec = plane_section(&k, &pl)?;
    let smooth = is_smooth_plane_quartic(&sec.ternary)?;
    let hw = hasse_witt_section(&sec.v, &sec.h, 4)?.hw;
    Ok(AlphaSection { alpha: ctx.format(alpha), smooth, p_rank: p_rank(&hw) })
}
