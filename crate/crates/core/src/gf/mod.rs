//! Finite fields `F_p`, `F_{p^k}` and univariate polynomials over them.

mod factor;
mod field;
mod poly;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

pub use factor::{factor_univar, factor_univar_seeded, is_irreducible, is_squarefree, roots_in_ext, Factorization};
pub use field::{Fe, FieldCtx, MAX_DEGREE};
pub use poly::UniPoly;

pub(crate) use field::parse_int_list;

#[derive(Debug, thiserror::Error)]
pub enum GfError {
    #[error("{0} is not an odd prime")]
    BadPrime(u32),
    #[error("prime {0} is too large (limit 251)")]
    PrimeTooLarge(u32),
    #[error("extension degree {0} exceeds the supported maximum")]
    DegreeTooLarge(usize),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not a subfield of {1}")]
    NotSubfield(String, String),
}

type ExtCache = Mutex<HashMap<(u32, usize), FieldCtx>>;

fn ext_cache() -> &'static ExtCache {
    static CACHE: OnceLock<ExtCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `F_{p^k}` with the first monic irreducible modulus of degree `k`.
///
/// Candidates `x^k + c_{k-1}x^{k-1} + ... + c_0` are tried in increasing
/// order of the integer `sum c_i p^i`, so the choice is a pure function of
/// `(p, k)`.
pub fn make_ext(p: u32, k: usize) -> Result<FieldCtx, GfError> {
    let base = FieldCtx::prime(p)?;
    if k == 0 {
        return Err(GfError::DegreeTooLarge(0));
    }
    if k == 1 {
        return Ok(base);
    }
    if k > MAX_DEGREE {
        return Err(GfError::DegreeTooLarge(k));
    }
    if let Some(f) = ext_cache().lock().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    let mut n: u128 = 0;
    let modulus = loop {
        let mut coeffs = vec![0i64; k + 1];
        let mut m = n;
        for c in coeffs.iter_mut().take(k) {
            *c = (m % p as u128) as i64;
            m /= p as u128;
        }
        coeffs[k] = 1;
        // constant term zero means x divides it
        if coeffs[0] != 0 {
            let poly = UniPoly::from_ints(&base, &coeffs);
            if is_irreducible(&poly) {
                break coeffs.iter().map(|&c| c as u32).collect::<Vec<_>>();
            }
        }
        n += 1;
    };
    let ctx = FieldCtx::from_parts(base, modulus);
    ext_cache().lock().unwrap().insert((p, k), ctx.clone());
    Ok(ctx)
}

/// Field homomorphism `F_{p^m} -> F_{p^n}` for `m | n`, fixed by the image of
/// the generator of the source.
#[derive(Clone, Debug)]
pub struct Embedding {
    src: FieldCtx,
    dst: FieldCtx,
    powers: Vec<Fe>,
}

impl Embedding {
    /// The embedding sending the source generator to the smallest (in index
    /// order) root of the source modulus inside `dst`.
    pub fn new(src: &FieldCtx, dst: &FieldCtx) -> Result<Embedding, GfError> {
        let image = if src.is_prime_field() {
            None
        } else {
            if src.p() != dst.p() || dst.degree() % src.degree() != 0 {
                return Err(GfError::NotSubfield(format!("{src:?}"), format!("{dst:?}")));
            }
            let m: Vec<i64> = src.modulus().iter().map(|&c| c as i64).collect();
            let mpoly = UniPoly::from_ints(&dst.prime_field(), &m);
            let roots = roots_in_ext(&mpoly, dst);
            Some(*roots.first().expect("modulus splits in a field containing it"))
        };
        Self::with_image(src, dst, image)
    }

    /// Embedding with an explicitly chosen image of the generator.
    pub fn with_image(src: &FieldCtx, dst: &FieldCtx, image: Option<Fe>) -> Result<Embedding, GfError> {
        if src.p() != dst.p() || dst.degree() % src.degree() != 0 {
            return Err(GfError::NotSubfield(format!("{src:?}"), format!("{dst:?}")));
        }
        let mut powers = Vec::with_capacity(src.degree());
        match image {
            None => powers.push(dst.one()),
            Some(g) => {
                let mut acc = dst.one();
                for _ in 0..src.degree() {
                    powers.push(acc);
                    acc = dst.mul(&acc, &g);
                }
            }
        }
        Ok(Embedding { src: src.clone(), dst: dst.clone(), powers })
    }

    pub fn src(&self) -> &FieldCtx {
        &self.src
    }

    pub fn dst(&self) -> &FieldCtx {
        &self.dst
    }

    pub fn map(&self, e: &Fe) -> Fe {
        let mut acc = Fe::ZERO;
        for (i, pw) in self.powers.iter().enumerate() {
            let c = e.0[i];
            if c != 0 {
                acc = self.dst.add(&acc, &self.dst.scale_int(pw, c as i64));
            }
        }
        acc
    }

    pub fn map_poly(&self, f: &UniPoly) -> UniPoly {
        assert_eq!(f.ctx(), &self.src, "polynomial not over the embedding source");
        UniPoly::new(&self.dst, f.coeffs().iter().map(|c| self.map(c)).collect())
    }
}
