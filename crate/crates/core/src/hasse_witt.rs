//! Hasse-Witt and Cartier-Manin matrices, Frobenius twists and p-ranks.

use std::fmt;

use crate::gf::{is_squarefree, Fe, FieldCtx, UniPoly};
use crate::mpoly::{exp_of, pack, MPoly};

#[derive(Debug, thiserror::Error)]
pub enum HwError {
    #[error("curve polynomial is not squarefree")]
    NotSquarefree,
    #[error("hyperelliptic polynomial has degree {0}, expected {1}")]
    WrongCurveDegree(usize, String),
    #[error("quartic expected, got total degree {0:?}")]
    NotQuartic(Option<u32>),
    #[error("plane form is not linear homogeneous in four variables")]
    NotLinear,
    #[error("pivot coefficient a_{0} is zero")]
    ZeroPivot(usize),
    #[error("matrices in different bases ({0} vs {1}) cannot be compared")]
    BasisMismatch(String, String),
    #[error("polynomials over different fields")]
    FieldMismatch,
}

/// The basis a matrix is written in. Matrices of the same curve in different
/// bases agree only up to twisted conjugation, so only same-basis matrices are
/// compared entrywise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Dual of `dx/z, x dx/z, ...` on a hyperelliptic curve.
    HyperellipticDual,
    /// Cartier operator on regular differentials.
    CartierManin,
    /// Dual of `du/q_v, u du/q_v, v du/q_v` on a plane quartic.
    QuarticDual,
    /// Kernel of multiplication by the plane form, basis `beta^(t)_j`.
    SectionKernel { pivot: usize },
    /// Ambient 4x4 stage on `H^3(P^3, O(-5))`.
    Ambient,
    Generic,
}

impl Basis {
    pub fn label(&self) -> String {
        match self {
            Basis::HyperellipticDual => "hyperelliptic_dual".into(),
            Basis::CartierManin => "cartier_manin".into(),
            Basis::QuarticDual => "quartic_dual".into(),
            Basis::SectionKernel { pivot } => format!("section_kernel_t{pivot}"),
            Basis::Ambient => "ambient_h0".into(),
            Basis::Generic => "generic".into(),
        }
    }
}

#[derive(Clone)]
pub struct HwMatrix {
    ctx: FieldCtx,
    n: usize,
    entries: Vec<Fe>,
    basis: Basis,
}

impl fmt::Debug for HwMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HwMatrix[{}]{:?}", self.basis.label(), self.to_rows_text())
    }
}

impl HwMatrix {
    pub fn new(ctx: &FieldCtx, n: usize, entries: Vec<Fe>, basis: Basis) -> HwMatrix {
        assert_eq!(entries.len(), n * n, "matrix must be square");
        HwMatrix { ctx: ctx.clone(), n, entries, basis }
    }

    pub fn from_ints(ctx: &FieldCtx, rows: &[&[i64]]) -> HwMatrix {
        let n = rows.len();
        let entries = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), n);
                r.iter().map(|&c| ctx.from_int(c))
            })
            .collect();
        Self::new(ctx, n, entries, Basis::Generic)
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> HwMatrix {
        let mut e = vec![Fe::ZERO; n * n];
        for i in 0..n {
            e[i * n + i] = ctx.one();
        }
        Self::new(ctx, n, e, Basis::Generic)
    }

    pub fn zero(ctx: &FieldCtx, n: usize) -> HwMatrix {
        Self::new(ctx, n, vec![Fe::ZERO; n * n], Basis::Generic)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn with_basis(mut self, basis: Basis) -> HwMatrix {
        self.basis = basis;
        self
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[Fe] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Entrywise comparison, refused across bases.
    pub fn try_eq(&self, other: &HwMatrix) -> Result<bool, HwError> {
        if self.basis != other.basis {
            return Err(HwError::BasisMismatch(self.basis.label(), other.basis.label()));
        }
        if self.ctx != other.ctx {
            return Err(HwError::FieldMismatch);
        }
        Ok(self.n == other.n && self.entries == other.entries)
    }

    pub fn transpose(&self) -> HwMatrix {
        let n = self.n;
        let mut e = vec![Fe::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                e[j * n + i] = self.get(i, j);
            }
        }
        let basis = match self.basis {
            Basis::CartierManin => Basis::HyperellipticDual,
            Basis::HyperellipticDual => Basis::CartierManin,
            b => b,
        };
        Self::new(&self.ctx, n, e, basis)
    }

    /// Matrix product; the result keeps the left factor's basis tag.
    pub fn mul(&self, other: &HwMatrix) -> HwMatrix {
        assert!(self.ctx == other.ctx && self.n == other.n);
        let n = self.n;
        let f = &self.ctx;
        let mut e = vec![Fe::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    e[i * n + j] = f.add(&e[i * n + j], &f.mul(&a, &other.get(k, j)));
                }
            }
        }
        Self::new(f, n, e, self.basis)
    }

    /// `H^{(p^i)}`: every entry raised to the `p^i`-th power.
    pub fn frobenius_twist(&self, i: usize) -> HwMatrix {
        let e = self.entries.iter().map(|x| self.ctx.frobenius(x, i)).collect();
        Self::new(&self.ctx, self.n, e, self.basis)
    }

    pub fn rank(&self) -> usize {
        let n = self.n;
        let f = &self.ctx;
        let mut a = self.entries.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| !a[r * n + col].is_zero()) else {
                continue;
            };
            for j in 0..n {
                a.swap(piv * n + j, rank * n + j);
            }
            let inv = f.inv(&a[rank * n + col]).unwrap();
            for r in 0..n {
                if r == rank || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = f.mul(&a[r * n + col], &inv);
                for j in col..n {
                    let t = f.mul(&factor, &a[rank * n + j]);
                    a[r * n + j] = f.sub(&a[r * n + j], &t);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn det(&self) -> Fe {
        let n = self.n;
        let f = &self.ctx;
        let mut a = self.entries.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Fe::ZERO;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(&det);
            }
            let pv = a[col * n + col];
            det = f.mul(&det, &pv);
            let inv = f.inv(&pv).unwrap();
            for r in col + 1..n {
                let factor = f.mul(&a[r * n + col], &inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let t = f.mul(&factor, &a[col * n + j]);
                    a[r * n + j] = f.sub(&a[r * n + j], &t);
                }
            }
        }
        det
    }

    /// `H * H^{(p)} * ... * H^{(p^{m-1})}`.
    pub fn twisted_product(&self, m: usize) -> HwMatrix {
        let mut acc = self.clone();
        for i in 1..m {
            acc = acc.mul(&self.frobenius_twist(i));
        }
        acc
    }

    pub fn to_rows_text(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.ctx.format(&self.get(i, j))).collect())
            .collect()
    }
}

/// Stable rank `rank(H H^{(p)} ... H^{(p^{g-1})})` with `g` the matrix size.
pub fn p_rank(h: &HwMatrix) -> usize {
    h.twisted_product(h.size()).rank()
}

pub fn frobenius_twist(h: &HwMatrix, i: usize) -> HwMatrix {
    h.frobenius_twist(i)
}

/// `z^2 = D(x)` with `deg D` 5 or 6.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Genus2Curve {
    ctx: FieldCtx,
    d: [Fe; 7],
    squarefree: bool,
}

impl Genus2Curve {
    pub fn new(ctx: &FieldCtx, d: &[Fe]) -> Result<Genus2Curve, HwError> {
        let u = UniPoly::new(ctx, d.to_vec());
        Self::from_poly(&u)
    }

    pub fn from_ints(ctx: &FieldCtx, d: &[i64]) -> Result<Genus2Curve, HwError> {
        Self::from_poly(&UniPoly::from_ints(ctx, d))
    }

    pub fn from_poly(u: &UniPoly) -> Result<Genus2Curve, HwError> {
        let deg = u.degree().unwrap_or(0);
        if !(5..=6).contains(&deg) {
            return Err(HwError::WrongCurveDegree(deg, "5 or 6".into()));
        }
        let mut d = [Fe::ZERO; 7];
        for (i, c) in u.coeffs().iter().enumerate() {
            d[i] = *c;
        }
        Ok(Genus2Curve { ctx: u.ctx().clone(), d, squarefree: is_squarefree(u) })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Fe; 7] {
        &self.d
    }

    pub fn poly(&self) -> UniPoly {
        UniPoly::new(&self.ctx, self.d.to_vec())
    }

    pub fn degree(&self) -> usize {
        if self.d[6].is_zero() {
            5
        } else {
            6
        }
    }

    /// Smooth affine model and degree 5 or 6, i.e. `D` squarefree.
    pub fn is_smooth(&self) -> bool {
        self.squarefree
    }

    /// Same curve over a larger field.
    pub fn map(&self, emb: &crate::gf::Embedding) -> Genus2Curve {
        let d: Vec<Fe> = self.d.iter().map(|c| emb.map(c)).collect();
        Genus2Curve { ctx: emb.dst().clone(), d: d.try_into().unwrap(), squarefree: self.squarefree }
    }
}

/// Cartier-Manin matrix `(c_{ip-j})_{1<=i,j<=g}` of `y^2 = f(x)`, with `c_s`
/// the coefficients of `f^{(p-1)/2}`.
pub fn cartier_manin(f: &UniPoly, g: usize, force: bool) -> Result<HwMatrix, HwError> {
    let deg = f.degree().unwrap_or(0);
    if deg != 2 * g + 1 && deg != 2 * g + 2 {
        return Err(HwError::WrongCurveDegree(deg, format!("{} or {}", 2 * g + 1, 2 * g + 2)));
    }
    if !force && !is_squarefree(f) {
        return Err(HwError::NotSquarefree);
    }
    let ctx = f.ctx();
    let p = ctx.p() as usize;
    let fp = f.pow((ctx.p() - 1) / 2);
    let mut e = Vec::with_capacity(g * g);
    for i in 1..=g {
        for j in 1..=g {
            e.push(fp.coeff(i * p - j));
        }
    }
    Ok(HwMatrix::new(ctx, g, e, Basis::CartierManin))
}

pub fn cartier_manin_hyperelliptic(z: &Genus2Curve, force: bool) -> Result<HwMatrix, HwError> {
    cartier_manin(&z.poly(), 2, force || z.is_smooth())
}

/// `H_Z = (b_{p-1} b_{2p-1}; b_{p-2} b_{2p-2})` from `D^{(p-1)/2} = sum b_i x^i`.
pub fn hasse_witt_hyperelliptic(z: &Genus2Curve, force: bool) -> Result<HwMatrix, HwError> {
    if !force && !z.is_smooth() {
        return Err(HwError::NotSquarefree);
    }
    let ctx = z.ctx();
    let p = ctx.p() as usize;
    let b = z.poly().pow((ctx.p() - 1) / 2);
    let e = vec![b.coeff(p - 1), b.coeff(2 * p - 1), b.coeff(p - 2), b.coeff(2 * p - 2)];
    Ok(HwMatrix::new(ctx, 2, e, Basis::HyperellipticDual))
}

/// Exponent pairs `(i, j)` of `a_{i,j}` in the quartic Hasse-Witt matrix,
/// row-major.
pub fn quartic_indices(p: u32) -> [(u32, u32); 9] {
    [
        (p - 1, p - 1),
        (2 * p - 1, p - 1),
        (p - 1, 2 * p - 1),
        (p - 2, p - 1),
        (2 * p - 2, p - 1),
        (p - 2, 2 * p - 1),
        (p - 1, p - 2),
        (2 * p - 1, p - 2),
        (p - 1, 2 * p - 2),
    ]
}

/// Hasse-Witt matrix of the plane quartic with affine equation `q(u, v) = 0`.
pub fn hasse_witt_quartic(q: &MPoly) -> Result<HwMatrix, HwError> {
    let td = q.total_degree();
    if q.nvars() != 2 || td.is_none() || td > Some(4) || td == Some(0) {
        return Err(HwError::NotQuartic(td));
    }
    let ctx = q.ctx();
    let qp = q.pow(ctx.p() - 1);
    let e = quartic_indices(ctx.p())
        .iter()
        .map(|&(i, j)| qp.coeff(&[i, j]))
        .collect();
    Ok(HwMatrix::new(ctx, 3, e, Basis::QuarticDual))
}

/// Exponent of `gamma_{i,j}` (0-based `i`, `j`):
/// `e_k = p(1 + [k = j]) - (1 + [k = i])`.
pub fn gamma_exponent(p: u32, i: usize, j: usize) -> [u32; 4] {
    let mut e = [0u32; 4];
    for (k, ek) in e.iter_mut().enumerate() {
        *ek = p * (1 + (k == j) as u32) - (1 + (k == i) as u32);
    }
    e
}

/// Both stages of the space-section computation.
#[derive(Clone, Debug)]
pub struct SectionHw {
    /// `(gamma_{i,j})`, the ambient 4x4 matrix.
    pub h0: HwMatrix,
    /// 3x3 matrix on the kernel, rows and columns indexed by `i, j != t`.
    pub hw: HwMatrix,
}

/// Precomputed `h^{p-1}` for a fixed quartic, reusable across planes.
#[derive(Clone, Debug)]
pub struct SectionExpander {
    hp: MPoly,
}

impl SectionExpander {
    pub fn new(h: &MPoly) -> Result<SectionExpander, HwError> {
        if h.nvars() != 4 || !h.is_homogeneous() || h.total_degree() != Some(4) {
            return Err(HwError::NotQuartic(h.total_degree()));
        }
        Ok(SectionExpander { hp: h.pow(h.ctx().p() - 1) })
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.hp.ctx()
    }

    /// Same expansion over a larger field (cheaper than expanding there).
    pub fn map(&self, emb: &crate::gf::Embedding) -> SectionExpander {
        SectionExpander { hp: self.hp.map_coeffs(emb) }
    }

    /// Coefficient of `(v h)^{p-1}` at `expo`, from `v^{p-1}` and `h^{p-1}`.
    fn coeff_of_product(&self, vp: &MPoly, expo: &[u32; 4]) -> Fe {
        let f = self.hp.ctx();
        let target = pack(expo);
        let mut acc = Fe::ZERO;
        for &(m, c) in vp.packed_terms() {
            if (0..4).any(|k| exp_of(m, k) > expo[k]) {
                continue;
            }
            let hc = self.hp.coeff_packed(target - m);
            if !hc.is_zero() {
                acc = f.add(&acc, &f.mul(&c, &hc));
            }
        }
        acc
    }

    /// Arbitrary coefficient `c_{i1,i2,i3,i4}` of `(v h)^{p-1}`.
    pub fn product_coeff(&self, v: &MPoly, expo: [u32; 4]) -> Fe {
        let vp = v.pow(self.hp.ctx().p() - 1);
        self.coeff_of_product(&vp, &expo)
    }

    /// `pivot` is 1-based, as in `a_t`.
    pub fn section(&self, v: &MPoly, pivot: usize) -> Result<SectionHw, HwError> {
        let f = self.hp.ctx();
        if v.ctx() != f {
            return Err(HwError::FieldMismatch);
        }
        if v.nvars() != 4 || !v.is_homogeneous() || v.total_degree() != Some(1) {
            return Err(HwError::NotLinear);
        }
        assert!((1..=4).contains(&pivot), "pivot is 1-based in 1..=4");
        let a: Vec<Fe> = (0..4)
            .map(|k| {
                let mut e = [0u32; 4];
                e[k] = 1;
                v.coeff(&e)
            })
            .collect();
        let t = pivot - 1;
        if a[t].is_zero() {
            return Err(HwError::ZeroPivot(pivot));
        }
        let p = f.p();
        let vp = v.pow(p - 1);
        let mut gamma = vec![Fe::ZERO; 16];
        for i in 0..4 {
            for j in 0..4 {
                gamma[i * 4 + j] = self.coeff_of_product(&vp, &gamma_exponent(p, i, j));
            }
        }
        let h0 = HwMatrix::new(f, 4, gamma.clone(), Basis::Ambient);
        let at_pm1 = f.pow(&a[t], (p - 1) as u128);
        let at_inv = f.inv(&a[t]).unwrap();
        let idx: Vec<usize> = (0..4).filter(|&k| k != t).collect();
        let mut e = Vec::with_capacity(9);
        for &i in &idx {
            for &j in &idx {
                let aj_p = f.pow(&a[j], p as u128);
                let lhs = f.mul(&at_pm1, &gamma[i * 4 + j]);
                let rhs = f.mul(&f.mul(&aj_p, &at_inv), &gamma[i * 4 + t]);
                e.push(f.sub(&lhs, &rhs));
            }
        }
        let hw = HwMatrix::new(f, 3, e, Basis::SectionKernel { pivot });
        Ok(SectionHw { h0, hw })
    }
}

/// Hasse-Witt matrix of the curve `v = h = 0` in `P^3`, with 1-based pivot `t`.
pub fn hasse_witt_section(v: &MPoly, h: &MPoly, pivot: usize) -> Result<SectionHw, HwError> {
    if v.ctx() != h.ctx() {
        return Err(HwError::FieldMismatch);
    }
    SectionExpander::new(h)?.section(v, pivot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_ext;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const X: [&str; 4] = ["X1", "X2", "X3", "X4"];

    #[test]
    fn sextic_minus_one_mod_5_has_zero_cartier_manin() {
        let f5 = make_ext(5, 1).unwrap();
        let z = Genus2Curve::from_ints(&f5, &[-1, 0, 0, 0, 0, 0, 1]).unwrap();
        // (x^6 - 1)^2 = x^12 - 2x^6 + 1: nothing at 3, 4, 8, 9
        let sq = z.poly().pow(2);
        for s in [3, 4, 8, 9] {
            assert!(sq.coeff(s).is_zero());
        }
        let m = cartier_manin_hyperelliptic(&z, false).unwrap();
        assert!(m.is_zero());
        assert_eq!(p_rank(&m), 0);
    }

    #[test]
    fn simple_z_hasse_witt_at_p3() {
        // (x^3 - x)(x^3 + x + 1) = x^6 + 0x^5 + 0x^4 + 0x^3 - x^2 - x
        let f3 = make_ext(3, 1).unwrap();
        let z = Genus2Curve::from_ints(&f3, &[0, -1, -1, 1, 0, 0, 1]).unwrap();
        // x^3 + x + 1 vanishes at 1, so this member is singular; the matrix is still defined
        assert!(!z.is_smooth());
        let h = hasse_witt_hyperelliptic(&z, true).unwrap();
        // (-B, A; -C, B - A0) with (A0, A, B, C) = (1, 0, 1, 1)
        let expected = HwMatrix::from_ints(&f3, &[&[-1, 0], &[-1, 0]]).with_basis(Basis::HyperellipticDual);
        assert!(h.try_eq(&expected).unwrap());
        let cm = cartier_manin_hyperelliptic(&z, true).unwrap();
        assert!(cm.transpose().try_eq(&h).unwrap());
        assert!(cm.try_eq(&h).is_err());
    }

    #[test]
    fn even_sextic_reads_b_coefficients_directly() {
        // p = 3: D^{1} itself, so b_i = d_i
        let f3 = make_ext(3, 1).unwrap();
        let z = Genus2Curve::from_ints(&f3, &[1, 0, 1, 0, 1, 0, 1]).unwrap();
        let h = hasse_witt_hyperelliptic(&z, true).unwrap();
        let d = z.coeffs();
        assert_eq!(h.entries(), &[d[2], d[5], d[1], d[4]]);
    }

    #[test]
    fn non_squarefree_rejected_unless_forced() {
        let f3 = make_ext(3, 1).unwrap();
        let z2 = Genus2Curve::from_poly(&UniPoly::from_ints(&f3, &[1, 1]).pow(2).mul(&UniPoly::from_ints(&f3, &[1, 0, 0, 1, 1]))).unwrap();
        assert!(!z2.is_smooth());
        assert!(matches!(hasse_witt_hyperelliptic(&z2, false), Err(HwError::NotSquarefree)));
        assert!(hasse_witt_hyperelliptic(&z2, true).is_ok());
    }

    #[test]
    fn quartic_upper_left_entry_at_p3() {
        let f3 = make_ext(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..30 {
            let mut b = [[Fe::ZERO; 5]; 5];
            let mut terms = Vec::new();
            for i in 0..=4u32 {
                for j in 0..=4 - i {
                    let c = f3.random(&mut rng);
                    b[i as usize][j as usize] = c;
                    terms.push((vec![i, j], c));
                }
            }
            let q = MPoly::from_terms(&f3, 2, terms);
            if q.total_degree() != Some(4) {
                continue;
            }
            let h = hasse_witt_quartic(&q).unwrap();
            let m = |x: Fe, y: Fe| f3.mul(&x, &y);
            let two = f3.from_int(2);
            let mut expect = m(b[1][1], b[1][1]);
            for (x, y) in [(b[0][0], b[2][2]), (b[0][1], b[2][1]), (b[0][2], b[2][0]), (b[1][0], b[1][2])] {
                expect = f3.add(&expect, &m(two, m(x, y)));
            }
            assert_eq!(h.get(0, 0), expect);
        }
    }

    #[test]
    fn fermat_type_quartic_mod_3_is_zero() {
        let f3 = make_ext(3, 1).unwrap();
        let q = MPoly::parse(&f3, &["u", "v"], "u^4 + v^4 + 1").unwrap();
        assert!(hasse_witt_quartic(&q).unwrap().is_zero());
        let cubic = MPoly::parse(&f3, &["u", "v"], "u^5 + 1").unwrap();
        assert!(hasse_witt_quartic(&cubic).is_err());
    }

    #[test]
    fn p_rank_trivial_cases_and_twists() {
        let f9 = make_ext(3, 2).unwrap();
        assert_eq!(p_rank(&HwMatrix::identity(&f9, 3)), 3);
        assert_eq!(p_rank(&HwMatrix::zero(&f9, 3)), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let h = HwMatrix::new(&f9, 3, (0..9).map(|_| f9.random(&mut rng)).collect(), Basis::Generic);
        let twice = h.frobenius_twist(1).frobenius_twist(1);
        assert!(twice.try_eq(&h.frobenius_twist(2)).unwrap());
        let f5 = make_ext(5, 1).unwrap();
        let g = HwMatrix::from_ints(&f5, &[&[1, 2], &[3, 4]]);
        assert!(g.frobenius_twist(3).try_eq(&g).unwrap());
    }

    #[test]
    fn section_gamma_by_convolution_matches_full_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for p in [3u32, 5] {
            let f = make_ext(p, 1).unwrap();
            let mut terms = Vec::new();
            for a in 0..=4u32 {
                for b in 0..=4 - a {
                    for c in 0..=4 - a - b {
                        terms.push((vec![a, b, c, 4 - a - b - c], f.random(&mut rng)));
                    }
                }
            }
            let h = MPoly::from_terms(&f, 4, terms);
            let coeffs: Vec<Fe> = (0..3).map(|_| f.random(&mut rng)).chain([f.one()]).collect();
            let v = MPoly::linear(&f, &coeffs);
            let full = v.mul(&h).pow(p - 1);
            let sec = hasse_witt_section(&v, &h, 4).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(sec.h0.get(i, j), full.coeff(&gamma_exponent(p, i, j)));
                }
            }
        }
    }

    #[test]
    fn section_indices_at_p3_follow_the_displayed_pattern() {
        // c_{4,2,2,2}, c_{1,5,2,2}, c_{1,2,5,2}, c_{1,2,2,5} ...
        assert_eq!(gamma_exponent(3, 0, 0), [4, 2, 2, 2]);
        assert_eq!(gamma_exponent(3, 0, 1), [1, 5, 2, 2]);
        assert_eq!(gamma_exponent(3, 0, 2), [1, 2, 5, 2]);
        assert_eq!(gamma_exponent(3, 0, 3), [1, 2, 2, 5]);
        assert_eq!(gamma_exponent(3, 1, 0), [5, 1, 2, 2]);
        assert_eq!(gamma_exponent(3, 1, 1), [2, 4, 2, 2]);
        assert_eq!(gamma_exponent(3, 2, 2), [2, 2, 4, 2]);
        assert_eq!(gamma_exponent(3, 2, 3), [2, 2, 1, 5]);
        assert_eq!(quartic_indices(3)[0], (2, 2));
        assert_eq!(quartic_indices(3)[8], (2, 4));
    }

    #[test]
    fn section_pivot_four_matches_display() {
        // t = 4, a_4 = 1: entry (i, j) = gamma_{ij} - a_j^p gamma_{i4}
        let f = make_ext(5, 1).unwrap();
        let h = MPoly::parse(&f, &X, "X1^4 + 2X2^3X4 + X3^2X4^2 + 3X1X2X3X4 + X4^4 + X2^4").unwrap();
        let v = MPoly::parse(&f, &X, "2X1 + 3X2 + X3 + X4").unwrap();
        let sec = hasse_witt_section(&v, &h, 4).unwrap();
        let a = [2, 3, 1];
        for i in 0..3 {
            for j in 0..3 {
                let ajp = f.pow(&f.from_int(a[j]), 5);
                let want = f.sub(&sec.h0.get(i, j), &f.mul(&ajp, &sec.h0.get(i, 3)));
                assert_eq!(sec.hw.get(i, j), want);
            }
        }
        let no_x1 = MPoly::parse(&f, &X, "X2 + X4").unwrap();
        assert!(matches!(hasse_witt_section(&no_x1, &h, 1), Err(HwError::ZeroPivot(1))));
        assert!(matches!(hasse_witt_section(&h, &h, 1), Err(HwError::NotLinear)));
    }
}
