//! Arithmetic in characteristic-2 fields GF(2^m), 1 <= m <= 16.
//!
//! Elements are packed polynomial-basis integers in `[0, q)`. A [`Field`] owns
//! exp/log tables built from its modulus and is shared behind an [`Arc`];
//! polynomials and matrices carry that handle so mixed-field operations can be
//! rejected.
//!
//! GF(4) under `x^2 + x + 1` uses the encoding `0, 1, 2 = w, 3 = w^2`, which is
//! the coefficient notation of the published code tables.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A field element: polynomial-basis bits packed into an integer.
pub type Elem = u16;

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 16;

/// Default moduli (Conway polynomials), indexed by `m - 1`. Bit `i` is the
/// coefficient of `x^i`.
const DEFAULT_MODULI: [u32; 16] = [
    0x3, 0x7, 0xB, 0x13, 0x25, 0x5B, 0x83, 0x11D, 0x211, 0x46F, 0x805, 0x10EB, 0x201B, 0x40A9, 0x8035, 0x1002D,
];

/// The default modulus for `GF(2^m)`.
pub fn default_modulus(m: u32) -> Option<u32> {
    (1..=MAX_DEGREE).contains(&m).then(|| DEFAULT_MODULI[(m - 1) as usize])
}

/// `GF(2^m)` with a verified-irreducible modulus.
pub struct Field {
    m: u32,
    modulus: u32,
    generator: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}; {:#x})", self.m, self.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

fn degree_u32(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

/// Remainder of `a` modulo `b` for polynomials over GF(2) packed in integers.
fn gf2_rem(mut a: u32, b: u32) -> u32 {
    let db = degree_u32(b);
    while a != 0 && degree_u32(a) >= db {
        a ^= b << (degree_u32(a) - db);
    }
    a
}

/// Smallest nontrivial factor of `p` over GF(2), found by trial division by
/// every polynomial of degree `1..=deg(p)/2`.
fn find_binary_factor(p: u32) -> Option<u32> {
    let d = degree_u32(p);
    for deg in 1..=d / 2 {
        for low in 0..(1u32 << deg) {
            let cand = (1u32 << deg) | low;
            if gf2_rem(p, cand) == 0 {
                return Some(cand);
            }
        }
    }
    None
}

impl Field {
    /// Builds `GF(2^m)` from `modulus` (bit `i` = coefficient of `x^i`).
    ///
    /// For `m = 1` the modulus must be `x + 1`, giving the prime field GF(2).
    pub fn new(m: u32, modulus: u32) -> Result<Arc<Field>> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::InvalidField(format!(
                "extension degree {m} outside 1..={MAX_DEGREE}"
            )));
        }
        if degree_u32(modulus) != m as i32 {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:#x} does not have degree {m}"
            )));
        }
        if m == 1 && modulus != 0b11 {
            return Err(Error::InvalidField("GF(2) requires modulus x+1".into()));
        }
        if m > 1 {
            if modulus & 1 == 0 {
                return Err(Error::ReducibleModulus { modulus, factor: 0b10 });
            }
            if let Some(factor) = find_binary_factor(modulus) {
                return Err(Error::ReducibleModulus { modulus, factor });
            }
        }
        let q = 1usize << m;
        let mulraw = |mut a: u32, mut b: u32| -> u32 {
            let mut r = 0u32;
            while b != 0 {
                if b & 1 == 1 {
                    r ^= a;
                }
                b >>= 1;
                a <<= 1;
                if a >> m & 1 == 1 {
                    a ^= modulus;
                }
            }
            r
        };
        // Lowest-valued element of full multiplicative order.
        let mut generator = 1u32;
        if q > 2 {
            'search: for g in 2..q as u32 {
                let mut x = g;
                for _ in 1..q - 2 {
                    if x == 1 {
                        continue 'search;
                    }
                    x = mulraw(x, g);
                }
                if x != 1 {
                    generator = g;
                    break;
                }
            }
        }
        let order = q - 1;
        let mut exp = vec![0 as Elem; 2 * order];
        let mut log = vec![0u32; q];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x as Elem;
            if i < order {
                log[x as usize] = i as u32;
            }
            x = mulraw(x, generator);
        }
        Ok(Arc::new(Field {
            m,
            modulus,
            generator: generator as Elem,
            exp,
            log,
        }))
    }

    /// `GF(2^m)` under the shipped default modulus.
    pub fn with_default_modulus(m: u32) -> Result<Arc<Field>> {
        let modulus =
            default_modulus(m).ok_or_else(|| Error::InvalidField(format!("no default modulus for m = {m}")))?;
        Field::new(m, modulus)
    }

    pub fn gf2() -> Arc<Field> {
        Field::new(1, 0b11).expect("GF(2)")
    }

    pub fn gf4() -> Arc<Field> {
        Field::new(2, 0b111).expect("GF(4)")
    }

    /// Extension degree over GF(2).
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Field size `2^m`.
    pub fn q(&self) -> usize {
        1 << self.m
    }

    /// The generator of the multiplicative group used by the log tables.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// True when the class `x` of the modulus generates the multiplicative group.
    pub fn modulus_is_primitive(&self) -> bool {
        self.m == 1 || self.generator == 2
    }

    pub fn contains(&self, a: Elem) -> bool {
        (a as usize) < self.q()
    }

    pub fn check(&self, a: Elem) -> Result<Elem> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::InvalidElement {
                value: a as u32,
                q: self.q(),
            })
        }
    }

    /// All elements in increasing integer order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q() as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.q() as u32 - 1;
        Ok(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = self.q() as u64 - 1;
        let l = (self.log[a as usize] as u64 * (e % order)) % order;
        self.exp[l as usize]
    }

    /// `generator^i`.
    pub fn alpha_pow(&self, i: u64) -> Elem {
        let order = self.q() as u64 - 1;
        self.exp[(i % order) as usize]
    }

    /// Discrete log to the table generator; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    /// Conjugation `x -> x^(2^(m/2))` of `GF(q^2)` over `GF(q)`; on GF(4) this
    /// is `x -> x^2`. Identity on GF(2). Odd `m > 1` has no such involution and
    /// is treated as identity.
    #[inline]
    pub fn conj(&self, a: Elem) -> Elem {
        if self.m % 2 == 1 {
            return a;
        }
        let mut x = a;
        for _ in 0..self.m / 2 {
            x = self.square(x);
        }
        x
    }

    /// Relative trace from `GF(2^m)` to its subfield `GF(2^base_m)`.
    pub fn trace_to(&self, a: Elem, base_m: u32) -> Result<Elem> {
        if base_m == 0 || self.m % base_m != 0 {
            return Err(Error::InvalidField(format!(
                "subfield degree {base_m} does not divide {}",
                self.m
            )));
        }
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.m / base_m {
            acc ^= x;
            for _ in 0..base_m {
                x = self.square(x);
            }
        }
        Ok(acc)
    }

    /// Absolute trace to GF(2), returned as 0 or 1.
    #[inline]
    pub fn trace(&self, a: Elem) -> Elem {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.m {
            acc ^= x;
            x = self.square(x);
        }
        acc
    }
}

/// A basis `{a_1, .., a_m}` of `GF(2^m)` over GF(2) with `Tr(a_i a_j) = delta_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfDualBasis {
    field: Arc<Field>,
    elements: Vec<Elem>,
}

impl SelfDualBasis {
    /// Verifies `elements` as a self-dual basis of `field`.
    pub fn from_elements(field: &Arc<Field>, elements: Vec<Elem>) -> Result<Self> {
        let m = field.m() as usize;
        if elements.len() != m {
            return Err(Error::InvalidBasis(format!(
                "expected {m} elements, got {}",
                elements.len()
            )));
        }
        for &a in &elements {
            field.check(a)?;
        }
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                let t = field.trace(field.mul(a, b));
                if t != u16::from(i == j) {
                    return Err(Error::InvalidBasis(format!(
                        "Tr(a_{i} a_{j}) = {t}, expected {}",
                        u16::from(i == j)
                    )));
                }
            }
        }
        // An orthonormal Gram matrix already forces independence; checked anyway
        // through the coordinate map.
        let basis = SelfDualBasis {
            field: field.clone(),
            elements,
        };
        let mut seen = vec![false; field.q()];
        for bits in 0..field.q() as u32 {
            let x = basis.combine(bits) as usize;
            if seen[x] {
                return Err(Error::InvalidBasis("elements are dependent".into()));
            }
            seen[x] = true;
        }
        Ok(basis)
    }

    /// Builds a self-dual basis by seeded randomized backtracking over the
    /// elements with `Tr(a^2) = 1`; identical seeds give identical bases.
    pub fn construct(field: &Arc<Field>, seed: u64) -> SelfDualBasis {
        let mut candidates: Vec<Elem> = field
            .elements()
            .filter(|&a| a != 0 && field.trace(field.square(a)) == 1)
            .collect();
        if seed != 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            candidates.shuffle(&mut rng);
        }
        let m = field.m() as usize;
        let mut chosen = Vec::with_capacity(m);
        let found = extend_orthonormal(field, &candidates, &mut chosen, m);
        debug_assert!(found, "characteristic-2 fields always admit a self-dual basis");
        SelfDualBasis::from_elements(field, chosen).expect("constructed basis verifies")
    }

    /// Every ordered self-dual basis, in lexicographic order of the element lists.
    /// Exponential in `m`; intended for `m <= 6`.
    pub fn enumerate_all(field: &Arc<Field>) -> Vec<SelfDualBasis> {
        let candidates: Vec<Elem> = field
            .elements()
            .filter(|&a| a != 0 && field.trace(field.square(a)) == 1)
            .collect();
        let m = field.m() as usize;
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(m);
        collect_orthonormal(field, &candidates, &mut chosen, m, &mut out);
        out.into_iter()
            .map(|els| SelfDualBasis {
                field: field.clone(),
                elements: els,
            })
            .collect()
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn m(&self) -> usize {
        self.elements.len()
    }

    /// Coordinates of `a` over the basis: bit `j` is `Tr(a * a_j)`.
    #[inline]
    pub fn coordinates(&self, a: Elem) -> u32 {
        let mut bits = 0u32;
        for (j, &b) in self.elements.iter().enumerate() {
            bits |= u32::from(self.field.trace(self.field.mul(a, b))) << j;
        }
        bits
    }

    /// `sum_j bit_j * a_j`.
    pub fn combine(&self, bits: u32) -> Elem {
        self.elements
            .iter()
            .enumerate()
            .filter(|(j, _)| bits >> j & 1 == 1)
            .fold(0, |acc, (_, &b)| acc ^ b)
    }

    /// The Gram matrix `[Tr(a_i a_j)]` as rows of bits.
    pub fn gram(&self) -> Vec<Vec<Elem>> {
        self.elements
            .iter()
            .map(|&a| {
                self.elements
                    .iter()
                    .map(|&b| self.field.trace(self.field.mul(a, b)))
                    .collect()
            })
            .collect()
    }
}

fn orthogonal_to_all(field: &Field, a: Elem, chosen: &[Elem]) -> bool {
    !chosen.contains(&a) && chosen.iter().all(|&b| field.trace(field.mul(a, b)) == 0)
}

fn extend_orthonormal(field: &Field, candidates: &[Elem], chosen: &mut Vec<Elem>, m: usize) -> bool {
    if chosen.len() == m {
        return true;
    }
    for &a in candidates {
        if orthogonal_to_all(field, a, chosen) {
            chosen.push(a);
            if extend_orthonormal(field, candidates, chosen, m) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn collect_orthonormal(field: &Field, candidates: &[Elem], chosen: &mut Vec<Elem>, m: usize, out: &mut Vec<Vec<Elem>>) {
    if chosen.len() == m {
        out.push(chosen.clone());
        return;
    }
    for &a in candidates {
        if orthogonal_to_all(field, a, chosen) {
            chosen.push(a);
            collect_orthonormal(field, candidates, chosen, m, out);
            chosen.pop();
        }
    }
}
