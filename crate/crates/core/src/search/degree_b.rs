use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::gf::{make_ext, Embedding, Fe, FieldCtx, UniPoly};
use crate::hasse_witt::{Genus2Curve, SectionExpander};
use crate::mpoly::{interpolate, MPoly};
use crate::prym::kummer_surface;

use super::SearchError;

/// Degrees in `b` of `det H_X` and of selected coefficients of `(v kappa)^{p-1}`
/// for sections `a X1 + b X2 + c X3 + X4` of the Kummer surface of
/// `z^2 = x^6 - 1`, with `a, c` fixed.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeBReport {
    pub p: u32,
    pub a: u32,
    pub c: u32,
    pub nodes: usize,
    pub node_field_degree: usize,
    pub det_degree: Option<usize>,
    pub det_degree_expected: usize,
    /// Coefficient of `b^{p-1}` in `c_{p-2,p-1,2p-1,p-1}` and `c_{2p-1,p-1,p-2,p-1}`.
    pub claim3: [Option<u32>; 2],
    pub claim3_degrees: [Option<usize>; 2],
    pub claim3_expected: u32,
    /// Coefficient of `b^{p-2}` in `c_{p-1,p-2,p-1,2p-1}`.
    pub claim4: Option<u32>,
    pub claim4_degree: Option<usize>,
    pub claim4_expected: u32,
    /// `c_{p-2,p-1,p-1,2p-1}` and `c_{p-1,p-1,p-2,2p-1}`: at most `p-2`.
    pub claim1_c_degrees: [Option<usize>; 2],
    /// Top and bottom of the middle column of `H_X`: at most `2p-2`.
    pub claim1_entry_degrees: [Option<usize>; 2],
    /// `c_{p-1,p-1,2p-2,p-1}` and `c_{2p-2,p-1,p-1,p-1}`: at most `p-2`.
    pub claim2_degrees: [Option<usize>; 2],
    pub diagonal_degree: Option<usize>,
    pub antidiagonal_degree: Option<usize>,
    /// Extra nodes reproduced by the interpolants.
    pub consistent: bool,
    pub pass: bool,
}

fn mod_p(x: i128, p: u32) -> u32 {
    x.rem_euclid(p as i128) as u32
}

fn pow_mod(b: i128, e: u32, p: u32) -> u32 {
    let mut acc = 1i128;
    for _ in 0..e {
        acc = (acc * b).rem_euclid(p as i128);
    }
    acc as u32
}

/// Smallest `k` with `p^k >= need`.
pub(crate) fn node_field(p: u32, need: usize) -> Result<FieldCtx, SearchError> {
    let mut k = 1;
    while (p as u128).pow(k as u32) < need as u128 {
        k += 1;
    }
    Ok(make_ext(p, k)?)
}

pub fn degree_in_b(p: u32, seed: u64) -> Result<DegreeBReport, SearchError> {
    if p % 6 != 5 {
        return Err(SearchError::BadTarget(format!("p = {p} is not 5 mod 6")));
    }
    let fp = FieldCtx::prime(p)?;
    let z = Genus2Curve::from_ints(&fp, &[-1, 0, 0, 0, 0, 0, 1])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, c) = (fp.random(&mut rng), fp.random(&mut rng));

    // entries have b-degree at most 2p-1, so det has at most 6p-3
    let bound = 6 * p as usize - 3;
    let extra = 2;
    let big = node_field(p, bound + 1 + extra + 3)?;
    let emb = Embedding::new(&fp, &big)?;
    let expander = SectionExpander::new(&kummer_surface(&z).kappa)?.map(&emb);
    let (a_b, c_b) = (emb.map(&a), emb.map(&c));

    let pu = p;
    let c_claim3 = [[pu - 2, pu - 1, 2 * pu - 1, pu - 1], [2 * pu - 1, pu - 1, pu - 2, pu - 1]];
    let c_claim4 = [pu - 1, pu - 2, pu - 1, 2 * pu - 1];
    let c_claim1 = [[pu - 2, pu - 1, pu - 1, 2 * pu - 1], [pu - 1, pu - 1, pu - 2, 2 * pu - 1]];
    let c_claim2 = [[pu - 1, pu - 1, 2 * pu - 2, pu - 1], [2 * pu - 2, pu - 1, pu - 1, pu - 1]];
    let tracked: Vec<[u32; 4]> = c_claim3.iter().chain([&c_claim4]).chain(&c_claim1).chain(&c_claim2).copied().collect();

    // per node: det, 9 entries, tracked coefficients
    let n = bound + 1 + extra;
    let samples: Vec<(Fe, Vec<Fe>)> = big
        .elements()
        .take(n)
        .map(|b| {
            let v = MPoly::linear(&big, &[a_b, b, c_b, big.one()]);
            let hw = expander.section(&v, 4).expect("pivot X4 has coefficient 1").hw;
            let mut vals = vec![hw.det()];
            vals.extend_from_slice(hw.entries());
            vals.extend(tracked.iter().map(|e| expander.product_coeff(&v, *e)));
            (b, vals)
        })
        .collect();
    let width = samples[0].1.len();
    let mut consistent = true;
    let polys: Vec<UniPoly> = (0..width)
        .map(|i| {
            let nodes: Vec<(Fe, Fe)> = samples.iter().map(|(b, v)| (*b, v[i])).collect();
            let poly = interpolate(&big, &nodes, bound).expect("enough distinct nodes");
            consistent &= nodes[bound + 1..].iter().all(|(x, y)| poly.eval(x) == *y);
            poly
        })
        .collect();
    let det = &polys[0];
    let entry = |r: usize, col: usize| &polys[1 + 3 * r + col];
    let coeffs = &polys[10..];
    let coeff_at = |poly: &UniPoly, k: usize| big.to_prime(&poly.coeff(k));

    let claim3 = [coeff_at(&coeffs[0], pu as usize - 1), coeff_at(&coeffs[1], pu as usize - 1)];
    let claim3_degrees = [coeffs[0].degree(), coeffs[1].degree()];
    let claim4 = coeff_at(&coeffs[2], pu as usize - 2);
    let claim4_degree = coeffs[2].degree();
    let claim1_c_degrees = [coeffs[3].degree(), coeffs[4].degree()];
    let claim2_degrees = [coeffs[5].degree(), coeffs[6].degree()];
    let claim1_entry_degrees = [entry(0, 1).degree(), entry(2, 1).degree()];
    let diag = entry(0, 0).mul(entry(1, 1)).mul(entry(2, 2));
    let anti = entry(0, 2).mul(entry(1, 1)).mul(entry(2, 0));

    let pi = p as i128;
    let claim3_expected = mod_p(-(pow_mod(4, 2 * p - 2, p) as i128), p);
    let claim4_expected = mod_p((pi - 1) * pow_mod(-4, p - 1, p) as i128, p);
    let det_degree_expected = 4 * (p as usize - 1);
    let le = |d: Option<usize>, bound: usize| d.map_or(true, |d| d <= bound);
    let pp = p as usize;
    let pass = consistent
        && det.degree() == Some(det_degree_expected)
        && claim3 == [Some(claim3_expected); 2]
        && claim3_degrees == [Some(pp - 1); 2]
        && claim4 == Some(claim4_expected)
        && claim4_degree == Some(pp - 2)
        && claim1_c_degrees.iter().all(|d| le(*d, pp - 2))
        && claim1_entry_degrees.iter().all(|d| le(*d, 2 * pp - 2))
        && claim2_degrees.iter().all(|d| le(*d, pp - 2))
        && le(diag.degree(), 4 * pp - 6)
        && anti.degree() == Some(4 * pp - 4);

    Ok(DegreeBReport {
        p,
        a: fp.to_prime(&a).unwrap(),
        c: fp.to_prime(&c).unwrap(),
        nodes: n,
        node_field_degree: big.degree(),
        det_degree: det.degree(),
        det_degree_expected,
        claim3,
        claim3_degrees,
        claim3_expected,
        claim4,
        claim4_degree,
        claim4_expected,
        claim1_c_degrees,
        claim1_entry_degrees,
        claim2_degrees,
        diagonal_degree: diag.degree(),
        antidiagonal_degree: anti.degree(),
        consistent,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p5_degree_sixteen() {
        let r = degree_in_b(5, 0).unwrap();
        assert_eq!(r.det_degree, Some(16));
        assert_eq!(r.claim3_expected, 4);
        assert_eq!(r.claim3, [Some(4), Some(4)]);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn rejects_other_residues() {
        assert!(degree_in_b(7, 0).is_err());
        assert!(degree_in_b(13, 0).is_err());
    }

    #[test]
    fn node_field_sizes() {
        assert_eq!(node_field(5, 30).unwrap().degree(), 3);
        assert_eq!(node_field(17, 105).unwrap().degree(), 2);
    }
}
