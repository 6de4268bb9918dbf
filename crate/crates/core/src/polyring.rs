//! Polynomials over `GF(2^m)`, factorization of `x^n - 1` through cyclotomic
//! cosets, and enumeration of monic divisors of `x^n - 1`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};

/// A polynomial in trimmed form: `coeffs[i]` is the coefficient of `x^i` and the
/// last entry is nonzero (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Elem>,
    field: Arc<Field>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

fn same_field(a: &Arc<Field>, b: &Arc<Field>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, validating and trimming.
    pub fn new(field: &Arc<Field>, coeffs: Vec<Elem>) -> Result<Self> {
        for &c in &coeffs {
            field.check(c)?;
        }
        Ok(Self::from_trusted(field, coeffs))
    }

    pub(crate) fn from_trusted(field: &Arc<Field>, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial {
            coeffs,
            field: field.clone(),
        }
    }

    pub fn zero(field: &Arc<Field>) -> Self {
        Polynomial {
            coeffs: Vec::new(),
            field: field.clone(),
        }
    }

    pub fn one(field: &Arc<Field>) -> Self {
        Self::monomial(field, 1, 0)
    }

    /// `c * x^deg`.
    pub fn monomial(field: &Arc<Field>, c: Elem, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        Self::from_trusted(field, coeffs)
    }

    /// `x^n - 1` (equal to `x^n + 1` in characteristic 2).
    pub fn xn_minus_1(field: &Arc<Field>, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = 1;
        coeffs[n] ^= 1;
        Self::from_trusted(field, coeffs)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Degree, with `deg(0) = -1`.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Coefficients padded or truncated to length `len`.
    pub fn to_vec(&self, len: usize) -> Vec<Elem> {
        let mut v = self.coeffs.clone();
        v.resize(len, 0);
        v
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        same_field(&self.field, &other.field)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let v = (0..len).map(|i| self.coeff(i) ^ other.coeff(i)).collect();
        Ok(Self::from_trusted(&self.field, v))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        same_field(&self.field, &other.field)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let f = &self.field;
        let mut v = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] ^= f.mul(a, b);
            }
        }
        Ok(Self::from_trusted(f, v))
    }

    pub fn scale(&self, c: Elem) -> Polynomial {
        let v = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        Self::from_trusted(&self.field, v)
    }

    /// `self * x^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        Self::from_trusted(&self.field, v)
    }

    /// `(u, s)` with `self = u * divisor + s` and `deg(s) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        same_field(&self.field, &divisor.field)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let db = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((Self::zero(f), self.clone()));
        }
        let inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let c = f.mul(c, inv);
            quot[i - db] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - db + j] ^= f.mul(c, d);
            }
        }
        rem.truncate(db);
        Ok((Self::from_trusted(f, quot), Self::from_trusted(f, rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Divides by the leading coefficient.
    pub fn make_monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading");
        self.scale(inv)
    }

    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        same_field(&self.field, &other.field)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic())
    }

    pub fn eval(&self, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(0, |acc, &c| self.field.mul(acc, x) ^ c)
    }

    /// Elementwise conjugation of the coefficients.
    pub fn conj(&self) -> Polynomial {
        let v = self.coeffs.iter().map(|&a| self.field.conj(a)).collect();
        Self::from_trusted(&self.field, v)
    }

    /// `x^deg * p(1/x)`.
    pub fn reciprocal(&self) -> Polynomial {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::from_trusted(&self.field, v)
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u128, modulus: &Polynomial) -> Result<Polynomial> {
        let mut base = self.rem(modulus)?;
        let mut acc = Self::one(&self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?.rem(modulus)?;
            }
            base = base.mul(&base)?.rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

/// Multiplicative order of `q` modulo `n` (1 for `n = 1`).
pub fn multiplicative_order(q: usize, n: usize) -> usize {
    if n == 1 {
        return 1;
    }
    let mut x = q % n;
    let mut t = 1;
    while x != 1 {
        x = x * q % n;
        t += 1;
    }
    t
}

/// The `q`-cyclotomic cosets modulo `n`, each listed as `i, iq, iq^2, ...` and
/// ordered by smallest representative.
pub fn cyclotomic_cosets(n: usize, q: usize) -> Result<Vec<Vec<usize>>> {
    if n == 0 || gcd_usize(n, q) != 1 {
        return Err(Error::NotCoprime { n, q });
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let mut coset = Vec::new();
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            coset.push(j);
            j = j * q % n;
        }
        out.push(coset);
    }
    Ok(out)
}

/// `GF(q)[y] / f(y)` for a monic irreducible `f` of degree `t`: the splitting
/// field of `x^n - 1` when `t = ord_n(q)`. Elements are coefficient vectors of
/// length `t`.
struct Extension {
    base: Arc<Field>,
    modulus: Polynomial,
    t: usize,
}

impl Extension {
    fn reduce(&self, p: Polynomial) -> Vec<Elem> {
        p.rem(&self.modulus).expect("same field").to_vec(self.t)
    }

    fn mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let pa = Polynomial::from_trusted(&self.base, a.to_vec());
        let pb = Polynomial::from_trusted(&self.base, b.to_vec());
        self.reduce(pa.mul(&pb).expect("same field"))
    }

    fn pow(&self, a: &[Elem], e: u128) -> Vec<Elem> {
        let pa = Polynomial::from_trusted(&self.base, a.to_vec());
        pa.pow_mod(e, &self.modulus).expect("same field").to_vec(self.t)
    }

    fn one(&self) -> Vec<Elem> {
        let mut v = vec![0; self.t];
        v[0] = 1;
        v
    }
}

/// Ben-Or test: `f` of degree `t` is irreducible iff `gcd(f, y^(q^i) - y) = 1`
/// for `1 <= i <= t/2`.
fn is_irreducible(f: &Polynomial) -> Result<bool> {
    let field = f.field();
    let q = field.q() as u128;
    let t = f.degree();
    if t <= 0 {
        return Ok(false);
    }
    let y = Polynomial::monomial(field, 1, 1);
    let mut power = y.rem(f)?;
    for _ in 1..=t / 2 {
        power = power.pow_mod(q, f)?;
        let g = f.gcd(&power.add(&y)?)?;
        if g.degree() > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First monic irreducible polynomial of degree `t` in lexicographic order of
/// the lower coefficients read as base-`q` digits.
fn first_irreducible(field: &Arc<Field>, t: usize) -> Result<Polynomial> {
    let q = field.q() as u128;
    let total = q
        .checked_pow(t as u32)
        .ok_or(Error::SplittingFieldTooLarge(field.m() * t as u32))?;
    for idx in 0..total {
        let mut coeffs = Vec::with_capacity(t + 1);
        let mut x = idx;
        for _ in 0..t {
            coeffs.push((x % q) as Elem);
            x /= q;
        }
        coeffs.push(1);
        if coeffs[0] == 0 && t > 1 {
            continue;
        }
        let p = Polynomial::from_trusted(field, coeffs);
        if is_irreducible(&p)? {
            return Ok(p);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The irreducible factors of `x^n - 1` over `field` paired with their
/// cyclotomic cosets, ordered by smallest coset representative.
///
/// Each factor is the minimal polynomial `prod_{j in coset} (x - beta^j)` of a
/// fixed primitive `n`-th root `beta` in the splitting field.
pub fn factor_with_cosets(n: usize, field: &Arc<Field>) -> Result<Vec<(Vec<usize>, Polynomial)>> {
    let q = field.q();
    let cosets = cyclotomic_cosets(n, q)?;
    if n == 1 {
        return Ok(vec![(vec![0], Polynomial::xn_minus_1(field, 1))]);
    }
    let t = multiplicative_order(q, n);
    let bits = field.m() * t as u32;
    if bits > 127 {
        return Err(Error::SplittingFieldTooLarge(bits));
    }
    let ext = Extension {
        base: field.clone(),
        modulus: first_irreducible(field, t)?,
        t,
    };
    let order: u128 = (1u128 << bits) - 1;
    let cofactor = order / n as u128;
    let primes = prime_divisors(n);
    let one = ext.one();
    // First candidate (by base-q index, starting at y) whose power has order n.
    let mut beta = None;
    let mut idx: u128 = 1;
    while beta.is_none() {
        let mut z = Vec::with_capacity(t);
        let mut x = idx;
        for _ in 0..t {
            z.push((x % q as u128) as Elem);
            x /= q as u128;
        }
        idx += 1;
        let b = ext.pow(&z, cofactor);
        if b == one || b.iter().all(|&c| c == 0) {
            continue;
        }
        if primes.iter().all(|&p| ext.pow(&b, (n / p) as u128) != one) {
            beta = Some(b);
        }
    }
    let beta = beta.expect("primitive root found");
    let mut out = Vec::with_capacity(cosets.len());
    for coset in cosets {
        // Product over the extension, coefficients kept as extension elements.
        let mut prod: Vec<Vec<Elem>> = vec![one.clone()];
        for &j in &coset {
            let root = ext.pow(&beta, j as u128);
            let mut next = vec![vec![0; t]; prod.len() + 1];
            for (i, c) in prod.iter().enumerate() {
                for (d, s) in next[i + 1].iter_mut().zip(c) {
                    *d ^= *s;
                }
                let rc = ext.mul(c, &root);
                for (d, s) in next[i].iter_mut().zip(&rc) {
                    *d ^= *s;
                }
            }
            prod = next;
        }
        let coeffs = prod
            .iter()
            .map(|c| {
                debug_assert!(c[1..].iter().all(|&x| x == 0), "coefficient outside base field");
                c[0]
            })
            .collect();
        out.push((coset, Polynomial::from_trusted(field, coeffs)));
    }
    Ok(out)
}

/// The irreducible factors of `x^n - 1` over `field`.
pub fn factor_xn_minus_1(n: usize, field: &Arc<Field>) -> Result<Vec<Polynomial>> {
    Ok(factor_with_cosets(n, field)?.into_iter().map(|(_, p)| p).collect())
}

/// Iterator over monic divisors of `x^n - 1` whose degree lies in a range.
///
/// Divisors are products of factor subsets visited in increasing bitmask order
/// (bit `i` selects factor `i`), so each divisor appears exactly once.
pub struct DivisorGenerators {
    factors: Vec<Polynomial>,
    degrees: Vec<usize>,
    lo: usize,
    hi: usize,
    mask: u64,
    end: u64,
}

impl Iterator for DivisorGenerators {
    type Item = Polynomial;

    fn next(&mut self) -> Option<Polynomial> {
        while self.mask < self.end {
            let mask = self.mask;
            self.mask += 1;
            let deg: usize = (0..self.factors.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| self.degrees[i])
                .sum();
            if deg < self.lo || deg > self.hi {
                continue;
            }
            let field = self.factors[0].field().clone();
            let mut p = Polynomial::one(&field);
            for (i, f) in self.factors.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    p = p.mul(f).expect("same field");
                }
            }
            return Some(p);
        }
        None
    }
}

/// Monic divisors of `x^n - 1` with `lo <= degree <= hi`.
pub fn divisor_generators(n: usize, field: &Arc<Field>, lo: usize, hi: usize) -> Result<DivisorGenerators> {
    let factors = factor_xn_minus_1(n, field)?;
    if factors.len() > 63 {
        return Err(Error::TooLarge {
            size: 1u128 << factors.len().min(127),
            limit: 1u128 << 63,
        });
    }
    let degrees = factors.iter().map(|f| f.degree() as usize).collect();
    let end = 1u64 << factors.len();
    Ok(DivisorGenerators {
        factors,
        degrees,
        lo,
        hi,
        mask: 0,
        end,
    })
}
