//! Cyclic codes from a generator polynomial, their structured generator and
//! parity-check matrices, syndromes, duality checks and the classical burst
//! limit.
//!
//! Vector position `i` holds the coefficient of `x^i`. Generator rows are
//! shifts of `(g_0, .., g_r)`; parity-check rows are shifts of the reversed
//! parity polynomial `(h_k, .., h_0)`, so `H v = 0` exactly on the code and the
//! trailing `r x r` block of `H` is lower triangular with `h_0` on the diagonal.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};
use crate::matgf::Matrix;
use crate::polyring::Polynomial;

#[derive(Debug, Clone)]
pub struct CyclicCode {
    n: usize,
    k: usize,
    r: usize,
    g: Polynomial,
    h: Polynomial,
    /// Monic generator of the Euclidean dual (normalized reciprocal of `h`).
    dual_g: Polynomial,
    gmat: Matrix,
    hmat: Matrix,
}

impl CyclicCode {
    /// The length-`n` cyclic code generated by `g` (normalized to monic).
    pub fn from_generator(n: usize, g: &Polynomial) -> Result<Self> {
        if n == 0 || g.is_zero() || g.degree() as usize > n {
            return Err(Error::NotADivisor { n });
        }
        let field = g.field().clone();
        let g = g.make_monic();
        let (h, rem) = Polynomial::xn_minus_1(&field, n).divmod(&g)?;
        if !rem.is_zero() {
            return Err(Error::NotADivisor { n });
        }
        let r = g.degree() as usize;
        let k = n - r;
        let mut gmat = Matrix::zeros(&field, k, n);
        for s in 0..k {
            for (j, &c) in g.coeffs().iter().enumerate() {
                gmat.set(s, s + j, c);
            }
        }
        let mut hmat = Matrix::zeros(&field, r, n);
        for i in 0..r {
            for j in 0..=k {
                hmat.set(i, i + j, h.coeff(k - j));
            }
        }
        let dual_g = h.reciprocal().make_monic();
        Ok(CyclicCode {
            n,
            k,
            r,
            g,
            h,
            dual_g,
            gmat,
            hmat,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Redundancy `deg g = n - k`.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn field(&self) -> &Arc<Field> {
        self.g.field()
    }

    pub fn generator(&self) -> &Polynomial {
        &self.g
    }

    pub fn parity_polynomial(&self) -> &Polynomial {
        &self.h
    }

    pub fn generator_matrix(&self) -> &Matrix {
        &self.gmat
    }

    pub fn parity_check_matrix(&self) -> &Matrix {
        &self.hmat
    }

    /// `M^(t)`: `H` with its last `t` rows and last `t` columns deleted.
    pub fn shortened(&self, t: usize) -> Matrix {
        self.hmat.submatrix(0, self.r - t, 0, self.n - t)
    }

    fn check_len(&self, v: &[Elem]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {}, code length {}",
                v.len(),
                self.n
            )));
        }
        for &x in v {
            self.field().check(x)?;
        }
        Ok(())
    }

    fn poly(&self, v: &[Elem]) -> Polynomial {
        Polynomial::from_trusted(self.field(), v.to_vec())
    }

    /// Coefficients of `e(x) mod g(x)` (length `r`). Equivalently `H_sys e` where
    /// column `j` of `H_sys` holds `x^j mod g(x)`.
    pub fn syndrome(&self, e: &[Elem]) -> Result<Vec<Elem>> {
        self.check_len(e)?;
        Ok(self.poly(e).rem(&self.g)?.to_vec(self.r))
    }

    /// The systematic parity-check matrix `H_sys` of [`Self::syndrome`].
    pub fn systematic_parity_check(&self) -> Matrix {
        let f = self.field();
        let mut m = Matrix::zeros(f, self.r, self.n);
        for j in 0..self.n {
            let col = Polynomial::monomial(f, 1, j)
                .rem(&self.g)
                .expect("same field")
                .to_vec(self.r);
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// `H e` with the structured parity-check matrix.
    pub fn check_syndrome(&self, e: &[Elem]) -> Result<Vec<Elem>> {
        self.check_len(e)?;
        self.hmat.mul_vec(e)
    }

    pub fn contains(&self, v: &[Elem]) -> Result<bool> {
        self.check_len(v)?;
        Ok(self.poly(v).rem(&self.g)?.is_zero())
    }

    /// Membership in the Euclidean dual `C^⊥`.
    pub fn in_dual(&self, v: &[Elem]) -> Result<bool> {
        self.check_len(v)?;
        Ok(self.poly(v).rem(&self.dual_g)?.is_zero())
    }

    /// Membership in the Hermitian dual `C^{⊥_H}` (`conj(v)` in `C^⊥`).
    pub fn in_hermitian_dual(&self, v: &[Elem]) -> Result<bool> {
        self.check_len(v)?;
        let f = self.field();
        let c: Vec<Elem> = v.iter().map(|&x| f.conj(x)).collect();
        Ok(self.poly(&c).rem(&self.dual_g)?.is_zero())
    }

    /// `G conj(v)`: zero exactly when `v` is in `C^{⊥_H}`.
    pub fn hermitian_signature(&self, v: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        let c: Vec<Elem> = v.iter().map(|&x| f.conj(x)).collect();
        self.gmat.mul_vec(&c).expect("length checked by caller")
    }

    /// `C^{⊥_H} ⊆ C`, decided by `H H† = 0`. Requires GF(4).
    pub fn hermitian_dual_containing(&self) -> Result<bool> {
        if self.field().m() != 2 {
            return Err(Error::InvalidField("Hermitian construction needs GF(4)".into()));
        }
        if self.r == 0 {
            return Ok(true);
        }
        Ok(self.hmat.mul(&self.hmat.conj_transpose())?.is_zero())
    }

    /// Finds `f` supported on the last `ell` positions with `H f = s`, using the
    /// lower-triangular tail of `H`. Needs `s` to vanish on the first `r - ell`
    /// rows (rows that do not meet the last `ell` columns).
    pub fn solve_tail(&self, s: &[Elem], ell: usize) -> Option<Vec<Elem>> {
        let (n, r) = (self.n, self.r);
        if ell > r || s.len() != r || s[..r - ell].iter().any(|&x| x != 0) {
            return None;
        }
        let f = self.field();
        let h0_inv = f.inv(self.h.coeff(0)).ok()?;
        let mut out = vec![0; n];
        for j in 0..ell {
            let row = r - ell + j;
            let mut acc = s[row];
            for jj in 0..j {
                acc ^= f.mul(self.hmat.get(row, n - ell + jj), out[n - ell + jj]);
            }
            out[n - ell + j] = f.mul(acc, h0_inv);
        }
        Some(out)
    }
}

/// CSS admissibility `C_2^⊥ ⊆ C_1` via `H_1 H_2^T = 0`; binary codes of equal
/// length.
pub fn css_dual_containing(c1: &CyclicCode, c2: &CyclicCode) -> Result<bool> {
    if c1.n != c2.n {
        return Err(Error::DimensionMismatch("codes of different lengths".into()));
    }
    if c1.field().m() != 1 || c2.field().m() != 1 {
        return Err(Error::InvalidField("CSS construction needs GF(2)".into()));
    }
    if c1.r == 0 || c2.r == 0 {
        return Ok(true);
    }
    Ok(c1.hmat.mul(&c2.hmat.transpose())?.is_zero())
}

/// Largest `b` such that every window of `b` consecutive columns of `M^(b)`
/// (starts `0..=n-2b`) has full rank `b`; 0 if `b = 1` already fails.
pub fn classical_burst_limit(code: &CyclicCode) -> usize {
    let (n, r) = (code.n, code.r);
    let mut best = 0;
    for b in 1..=r / 2 {
        let m = code.shortened(b);
        let ok = (0..=n - 2 * b).all(|st| m.submatrix(0, r - b, st, st + b).rank() == b);
        if !ok {
            break;
        }
        best = b;
    }
    best
}

/// An error confined to consecutive positions, in canonical form: the first and
/// last coefficients are nonzero, or the pattern is empty (no error).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BurstPattern {
    start: usize,
    coeffs: Vec<Elem>,
}

impl BurstPattern {
    pub fn zero() -> Self {
        BurstPattern {
            start: 0,
            coeffs: Vec::new(),
        }
    }

    /// A burst at `start` (must not run past position `n - 1`).
    pub fn new(n: usize, start: usize, coeffs: Vec<Elem>) -> Result<Self> {
        if coeffs.is_empty() {
            return Ok(Self::zero());
        }
        if coeffs[0] == 0 || *coeffs.last().unwrap() == 0 {
            return Err(Error::InvalidParameters("burst endpoints must be nonzero".into()));
        }
        if start + coeffs.len() > n {
            return Err(Error::OutOfRange(format!(
                "burst [{start}, {}) exceeds length {n}",
                start + coeffs.len()
            )));
        }
        Ok(BurstPattern { start, coeffs })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Burst length `bl`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_vector(&self, n: usize) -> Vec<Elem> {
        let mut v = vec![0; n];
        v[self.start..self.start + self.coeffs.len()].copy_from_slice(&self.coeffs);
        v
    }
}

/// Non-wrapping burst length of a vector: span of its nonzero positions.
pub fn burst_length(v: &[Elem]) -> usize {
    match (v.iter().position(|&x| x != 0), v.iter().rposition(|&x| x != 0)) {
        (Some(a), Some(b)) => b - a + 1,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgf::product_is_zero;

    fn poly(f: &Arc<Field>, c: &[Elem]) -> Polynomial {
        Polynomial::new(f, c.to_vec()).unwrap()
    }

    fn hamming() -> CyclicCode {
        CyclicCode::from_generator(7, &poly(&Field::gf2(), &[1, 1, 0, 1])).unwrap()
    }

    #[test]
    fn hamming_code() {
        let c = hamming();
        assert_eq!((c.n(), c.k(), c.r()), (7, 4, 3));
        assert_eq!(c.parity_polynomial().coeffs(), &[1, 1, 1, 0, 1]);
        let gh = c.generator().mul(c.parity_polynomial()).unwrap();
        assert_eq!(gh, Polynomial::xn_minus_1(c.field(), 7));
        assert!(product_is_zero(c.parity_check_matrix(), &c.generator_matrix().transpose()).unwrap());
    }

    #[test]
    fn non_divisor_rejected() {
        let f = Field::gf2();
        assert!(matches!(
            CyclicCode::from_generator(7, &poly(&f, &[1, 0, 1])),
            Err(Error::NotADivisor { n: 7 })
        ));
    }

    #[test]
    fn hamming_syndromes() {
        let c = hamming();
        assert_eq!(c.syndrome(&[0; 7]).unwrap(), vec![0, 0, 0]);
        let mut e = [0; 7];
        e[6] = 1;
        // x^6 = (x^3 + x + 1)(x^3 + x + 1) + x^2 + 1
        assert_eq!(c.syndrome(&e).unwrap(), vec![1, 0, 1]);
        for r in 0..c.k() {
            let row = c.generator_matrix().row(r).to_vec();
            assert_eq!(c.syndrome(&row).unwrap(), vec![0, 0, 0]);
            assert!(c.contains(&row).unwrap());
        }
        assert!(!c.contains(&e).unwrap());
        assert!(c.syndrome(&[0; 6]).is_err());
        let hs = c.systematic_parity_check();
        assert_eq!(hs.mul_vec(&e).unwrap(), c.syndrome(&e).unwrap());
    }

    #[test]
    fn parity_check_structure() {
        let f = Field::gf4();
        let c = CyclicCode::from_generator(15, &poly(&f, &[1, 0, 0, 2, 0, 0, 1])).unwrap();
        let h = c.parity_check_matrix();
        let (n, r) = (c.n(), c.r());
        for i in 0..r {
            for j in 0..r {
                let v = h.get(i, n - r + j);
                if j > i {
                    assert_eq!(v, 0);
                }
                if j == i {
                    assert_eq!(v, c.parity_polynomial().coeff(0));
                    assert_ne!(v, 0);
                }
            }
        }
    }

    #[test]
    fn hermitian_containment_examples() {
        let f = Field::gf4();
        let c = CyclicCode::from_generator(5, &poly(&f, &[1, 2, 1])).unwrap();
        assert_eq!((c.k(), c.r()), (3, 2));
        assert!(c.hermitian_dual_containing().unwrap());
        let trivial = CyclicCode::from_generator(5, &Polynomial::one(&f)).unwrap();
        assert!(trivial.hermitian_dual_containing().unwrap());
        // The other quadratic factor x^2 + w^2 x + 1: decided by H H†.
        let other = CyclicCode::from_generator(5, &poly(&f, &[1, 3, 1])).unwrap();
        let direct = other
            .parity_check_matrix()
            .mul(&other.parity_check_matrix().conj_transpose())
            .unwrap()
            .is_zero();
        assert_eq!(other.hermitian_dual_containing().unwrap(), direct);
        assert!(hamming().hermitian_dual_containing().is_err());
    }

    #[test]
    fn css_containment_examples() {
        let h = hamming();
        assert!(css_dual_containing(&h, &h).unwrap());
        let f = Field::gf2();
        let whole = CyclicCode::from_generator(7, &Polynomial::one(&f)).unwrap();
        assert!(css_dual_containing(&whole, &h).unwrap());
        let parity = CyclicCode::from_generator(3, &poly(&f, &[1, 1])).unwrap();
        assert!(!css_dual_containing(&parity, &parity).unwrap());
    }

    #[test]
    fn dual_membership_matches_matrices() {
        let f = Field::gf4();
        let c = CyclicCode::from_generator(5, &poly(&f, &[1, 2, 1])).unwrap();
        for r in 0..c.r() {
            let row = c.parity_check_matrix().row(r).to_vec();
            assert!(c.in_dual(&row).unwrap());
            let conj: Vec<Elem> = row.iter().map(|&x| f.conj(x)).collect();
            assert!(c.in_hermitian_dual(&conj).unwrap());
            assert!(c.hermitian_signature(&conj).iter().all(|&x| x == 0));
        }
    }

    /// Exhaustive oracle: largest b such that no two distinct bursts of length
    /// <= b (non-wrapping) share a syndrome, capped at r/2.
    fn oracle_classical(c: &CyclicCode) -> usize {
        let n = c.n();
        let q = c.field().q() as u32;
        let mut best = 0;
        for b in 1..=c.r() / 2 {
            let mut seen = std::collections::HashSet::new();
            let mut ok = seen.insert(vec![0; c.r()]);
            'outer: for len in 1..=b {
                for st in 0..=n - len {
                    let total = q.pow(len as u32);
                    for idx in 0..total {
                        let mut pat = Vec::with_capacity(len);
                        let mut x = idx;
                        for _ in 0..len {
                            pat.push((x % q) as Elem);
                            x /= q;
                        }
                        if pat[0] == 0 || pat[len - 1] == 0 {
                            continue;
                        }
                        let e = BurstPattern::new(n, st, pat).unwrap().to_vector(n);
                        if !seen.insert(c.syndrome(&e).unwrap()) {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            if !ok {
                break;
            }
            best = b;
        }
        best
    }

    #[test]
    fn classical_limit_examples() {
        assert_eq!(classical_burst_limit(&hamming()), 1);
        assert_eq!(oracle_classical(&hamming()), 1);
        let f = Field::gf2();
        for n in [3usize, 5, 7, 9] {
            let rep = CyclicCode::from_generator(n, &Polynomial::from_trusted(&f, vec![1; n])).unwrap();
            assert_eq!(rep.k(), 1);
            assert_eq!(classical_burst_limit(&rep), (n - 1) / 2);
            assert_eq!(oracle_classical(&rep), (n - 1) / 2);
        }
        let g4 = Field::gf4();
        let c = CyclicCode::from_generator(15, &poly(&g4, &[1, 0, 0, 2, 0, 0, 1])).unwrap();
        assert!(classical_burst_limit(&c) >= 3);
    }

    #[test]
    fn burst_patterns() {
        assert!(BurstPattern::new(5, 0, vec![0, 1]).is_err());
        assert!(BurstPattern::new(5, 4, vec![1, 1]).is_err());
        let b = BurstPattern::new(5, 3, vec![2, 0]).err();
        assert!(b.is_some());
        let b = BurstPattern::new(5, 2, vec![2, 0, 3]).unwrap();
        assert_eq!(b.to_vector(5), vec![0, 0, 2, 0, 3]);
        assert_eq!(burst_length(&b.to_vector(5)), 3);
        assert_eq!(BurstPattern::zero().len(), 0);
        assert_eq!(burst_length(&[0, 0]), 0);
    }
}
