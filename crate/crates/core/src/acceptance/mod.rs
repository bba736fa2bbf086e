// The acceptance criteria as library code, so the test runner and the CLI
// umbrella run the same thing. All comparisons are exact field equalities; the
// only tolerances are the wall-clock limits below.

pub mod checks;

use std::time::{Duration, Instant};

use crate::count::{kummer_count_naive, kummer_count_twist, zeta_coeffs};
use crate::gf::{factor_univar, make_ext, roots_in_ext, Fe, FieldCtx, UniPoly};
use crate::hasse_witt::{
    cartier_manin_hyperelliptic, hasse_witt_hyperelliptic, p_rank, Basis, Genus2Curve, HwMatrix,
};
use crate::prym::{family_simple_z, kummer_surface};
use crate::search::{
    alpha_section, degree_in_b, det_h_alpha, find_example, fixalpha_report, reference::RANK_TWO_ALPHA,
    reference_det_alpha, verify_table, EqMatch, FactorCheck, SearchTarget, parse_t,
};
use rand::SeedableRng;
use serde::Serialize;
use rand_chacha::ChaCha8Rng;

pub const TABLE_TIME: Duration = Duration::from_secs(60);
pub const DEGREE_B_TIME: Duration = Duration::from_secs(120);
pub const COUNT_TIME: Duration = Duration::from_secs(30);
pub const SYMBOLIC_SAMPLES: usize = 500;
pub const COUNT_CURVES: usize = 20;
pub const PROPERTY_CASES: u64 = 128;
pub const FIND_BUDGET: u64 = 10_000;
pub const SEED: u64 = 2024;

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub criterion: usize,
    pub name: &'static str,
    pub pass: bool,
    /// Deterministic summary; wall-clock time is kept apart.
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

struct Check {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Check {
    Check { pass, detail: detail.into() }
}

fn table_replay() -> Check {
    let start = Instant::now();
    let (mut rows, mut smooth, mut f_ok, mut fp_ok, mut eq_scalar, mut eq_reported) = (0, 0, 0, 0, 0, 0);
    let mut bad = Vec::new();
    for p in crate::search::tables::TABLE_PRIMES {
        let rep = match verify_table(p) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("p = {p}: {e}")),
        };
        for r in &rep.rows {
            rows += 1;
            smooth += (r.x_smooth && r.z_smooth) as usize;
            f_ok += (r.f == Some(r.label.0)) as usize;
            fp_ok += (r.f_prime == Some(r.label.1)) as usize;
            for m in [&r.x_match, &r.z_match] {
                match m {
                    EqMatch::Scalar { .. } => eq_scalar += 1,
                    _ => eq_reported += 1,
                }
            }
            if !r.pass() {
                bad.push(format!("p={} {:?} got ({:?},{:?})", p, r.label, r.f.unwrap_or(9), r.f_prime.unwrap_or(9)));
            }
        }
    }
    let t = start.elapsed();
    let pass = bad.is_empty() && t < TABLE_TIME;
    let mut d = format!(
        "{rows} rows: smooth {smooth}, f {f_ok}, f' {fp_ok}; equations {eq_scalar} scalar, {eq_reported} reported as diffs"
    );
    if t >= TABLE_TIME {
        d += "; over the time limit";
    }
    if !bad.is_empty() {
        d += &format!("; label mismatches: {}", bad.join(", "));
    }
    outcome(pass, d)
}

fn symbolic_hz() -> Check {
    let mut checked = 0;
    for (k, field) in [1usize, 2, 3].into_iter().enumerate() {
        let f = make_ext(3, field).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + k as u64);
        let mut n = 0;
        while n < SYMBOLIC_SAMPLES {
            let a0 = f.random_nonzero(&mut rng);
            let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
            // c = 0 makes x a double root; the matrix identity holds regardless
            let Ok(z) = family_simple_z(&f, &a0, &a, &b, &c)
                .or_else(|_| -> Result<Genus2Curve, ()> {
                    let d = UniPoly::from_ints(&f, &[0, -1, 0, 1]).mul(&UniPoly::new(&f, vec![c, b, a, a0]));
                    Genus2Curve::from_poly(&d).map_err(|_| ())
                })
            else {
                continue;
            };
            n += 1;
            let h = match hasse_witt_hyperelliptic(&z, true) {
                Ok(h) => h,
                Err(e) => return outcome(false, format!("F_{}: {e}", f.order().unwrap())),
            };
            let bma = f.sub(&b, &a0);
            let want = HwMatrix::new(&f, 2, vec![f.neg(&b), a, f.neg(&c), bma], Basis::HyperellipticDual);
            if !matches!(h.try_eq(&want), Ok(true)) {
                return outcome(false, format!("F_{}: H_Z differs at sample {n}", f.order().unwrap()));
            }
            let hh = h.mul(&h.frobenius_twist(1));
            let pw = |x: &Fe, e: u128| f.pow(x, e);
            // listed column by column: (1,1), (2,1), (1,2), (2,2)
            let listed = [
                f.sub(&pw(&b, 4), &f.mul(&a, &pw(&c, 3))),
                f.mul(&c, &f.sub(&pw(&b, 3), &f.mul(&pw(&c, 2), &bma))),
                f.mul(&a, &f.sub(&pw(&bma, 3), &f.mul(&b, &pw(&a, 2)))),
                f.sub(&pw(&bma, 4), &f.mul(&c, &pw(&a, 3))),
            ];
            let got = [hh.get(0, 0), hh.get(1, 0), hh.get(0, 1), hh.get(1, 1)];
            if got != listed {
                return outcome(false, format!("F_{}: H_Z H_Z^(3) differs at sample {n}", f.order().unwrap()));
            }
            checked += 1;
        }
    }
    outcome(true, format!("{checked} samples over F_3, F_9, F_27"))
}

fn degree_b() -> Check {
    let mut parts = Vec::new();
    let mut pass = true;
    for p in [5, 11, 17] {
        let start = Instant::now();
        match degree_in_b(p, SEED) {
            Ok(r) => {
                let t = start.elapsed();
                pass &= r.pass && t < DEGREE_B_TIME;
                if t >= DEGREE_B_TIME {
                    parts.push(format!("p={p}: over the time limit"));
                }
                parts.push(format!(
                    "p={p}: deg {:?}/{} claim3 {:?}={} claim4 {:?}={} {}",
                    r.det_degree,
                    r.det_degree_expected,
                    r.claim3,
                    r.claim3_expected,
                    r.claim4,
                    r.claim4_expected,
                    if r.pass { "ok" } else { "FAILED" }
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("p={p}: {e}"));
            }
        }
    }
    outcome(pass, parts.join("; "))
}

fn p3_family() -> Check {
    let mut parts = Vec::new();
    let det = match det_h_alpha([0, -1, 0, 1]) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let (want, _) = reference_det_alpha().unwrap();
    let factors_ok = match &det.det_poly {
        Some(d) => FactorCheck::new(&factor_univar(d).factors, &want).identical,
        None => false,
    };
    let det_ok = factors_ok && det.degree == Some(38) && det.consistent;
    parts.push(format!("Det_H degree {:?}, factors {}", det.degree, if factors_ok { "identical" } else { "differ" }));

    let f3 = FieldCtx::prime(3).unwrap();
    let f27 = make_ext(3, 3).unwrap();
    let roots = roots_in_ext(&parse_t(&f3, RANK_TWO_ALPHA).unwrap(), &f27);
    let cubic_ok = roots.len() == 3
        && roots.iter().all(|r| matches!(alpha_section(&f27, r, [0, -1, 0, 1]), Ok(s) if s.smooth && s.p_rank == 2));
    parts.push(format!("cubic alpha rank 2 {}", if cubic_ok { "ok" } else { "FAILED" }));

    let fx = match fixalpha_report() {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let plane_ok = fx.roots.iter().all(|r| r.plane_smooth && r.plane_p_rank == 2 && r.det_nonzero);
    let high = fx.roots.iter().all(|r| r.high_degree_matches.iter().all(|&m| m));
    let slice = fx.roots.iter().all(|r| r.agrees_with_det_alpha);
    parts.push(format!(
        "fixed alpha: printed entries matched at {}; degree >= 3 terms agree {}; consistent with Det_H entries {}; (2,0,2) smooth rank 2 {}",
        fx.matched_root.as_deref().unwrap_or("no root"),
        high,
        slice,
        plane_ok
    ));
    outcome(det_ok && cubic_ok && fx.matched_root.is_some() && plane_ok, parts.join("; "))
}

fn superspecial() -> Check {
    let mut parts = Vec::new();
    let mut pass = true;
    for p in [5u32, 11, 17] {
        let f = FieldCtx::prime(p).unwrap();
        let z = Genus2Curve::from_ints(&f, &[-1, 0, 0, 0, 0, 0, 1]).unwrap();
        let cm = cartier_manin_hyperelliptic(&z, false).unwrap();
        let zero = cm.is_zero() && p_rank(&cm) == 0;
        let t = SearchTarget { p, f: 3, f_prime: 0, budget: FIND_BUDGET, seed: SEED, prym: Some(z) };
        let found = find_example(&t);
        let ok = zero && matches!(&found, Ok(r) if r.x_smooth);
        pass &= ok;
        parts.push(match found {
            Ok(r) => format!("p={p}: CM zero {zero}, found at sample {}", r.sample_index),
            Err(e) => format!("p={p}: CM zero {zero}, {e}"),
        });
    }
    outcome(pass, parts.join("; "))
}

fn counting() -> Check {
    let start = Instant::now();
    let mut supersingular = 0;
    for (k, (p, deg)) in [(3u32, 1usize), (5, 1), (3, 2)].into_iter().enumerate() {
        let f = make_ext(p, deg).unwrap();
        let q = f.order().unwrap() as i128;
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 100 + k as u64);
        for i in 0..COUNT_CURVES {
            let z = checks::random_curve(&f, &mut rng);
            let zeta = zeta_coeffs(&z, &f).unwrap();
            let naive = kummer_count_naive(&kummer_surface(&z), &f).unwrap() as i128;
            let twist = kummer_count_twist(&z, &f).unwrap();
            let formula = zeta.kummer_order();
            if naive != twist || twist != formula {
                return outcome(false, format!("F_{q} curve {i}: naive {naive}, twist {twist}, 1+a2+q^2 {formula}"));
            }
            if p_rank(&hasse_witt_hyperelliptic(&z, false).unwrap()) == 0 {
                supersingular += 1;
                if zeta.a2 % p as i128 != 0 || naive % q != 1 {
                    return outcome(false, format!("F_{q} curve {i}: p-rank 0 but a2 = {}, |K| = {naive}", zeta.a2));
                }
            }
        }
    }
    let t = start.elapsed();
    let limit = if t < COUNT_TIME { "" } else { "; over the time limit" };
    outcome(t < COUNT_TIME, format!("{} curves three-way equal, {supersingular} with p-rank 0{limit}", 3 * COUNT_CURVES))
}

fn properties() -> Check {
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, check) in checks::SUITES {
        let failures: Vec<String> = (0..PROPERTY_CASES).filter_map(|s| check(SEED ^ (s << 16)).err()).collect();
        pass &= failures.is_empty();
        parts.push(match failures.first() {
            None => format!("{name} {PROPERTY_CASES}/{PROPERTY_CASES}"),
            Some(e) => format!("{name} {} failures, first: {e}", failures.len()),
        });
    }
    outcome(pass, parts.join("; "))
}

pub const CRITERIA: [&str; 7] = [
    "table replay",
    "symbolic H_Z at p = 3",
    "degree in b",
    "p = 3 family",
    "superspecial sextic",
    "Kummer point counts",
    "property suites",
];

/// Runs criterion `n` (1-based).
pub fn run(n: usize) -> Outcome {
    let check: fn() -> Check = match n {
        1 => table_replay,
        2 => symbolic_hz,
        3 => degree_b,
        4 => p3_family,
        5 => superspecial,
        6 => counting,
        7 => properties,
        _ => panic!("no criterion {n}"),
    };
    let start = Instant::now();
    let c = check();
    Outcome { criterion: n, name: CRITERIA[n - 1], pass: c.pass, detail: c.detail, elapsed: start.elapsed() }
}

pub fn run_all() -> Vec<Outcome> {
    (1..=CRITERIA.len()).map(run).collect()
}
