//! Quantum error-trapping decoding of burst errors and the exhaustive harness
//! that counts exactly and degenerately decoded bursts.
//!
//! The decoder rotates the syndrome register: `S_i = x^i S mod g`. Among the
//! shifts whose top stage (coefficient of `x^{r-1}`) is occupied, it keeps the
//! one with the shortest span (ties to the smallest shift `v`) and returns
//! `x^{n-v} S_v mod (x^n - 1)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cycliccode::CyclicCode;
use crate::error::{Error, Result};
use crate::galois::{Elem, Field};
use crate::polyring::Polynomial;
use crate::qccburst::{QuantumCyclicCode, StabilizerTest};

/// Register state after scanning all shifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QetdState {
    /// Trapped register contents `S_v`.
    pub s: Vec<Elem>,
    /// Shortest trapped burst length `z = r - (leading zeros)`.
    pub z: usize,
    /// Shift index achieving the trap.
    pub v: usize,
}

/// Runs the syndrome register through all `n` shifts. `None` for a zero
/// syndrome.
pub fn trap(code: &CyclicCode, syndrome: &[Elem]) -> Result<Option<QetdState>> {
    let r = code.r();
    if syndrome.len() != r {
        return Err(Error::DimensionMismatch(format!(
            "syndrome of length {}, expected {r}",
            syndrome.len()
        )));
    }
    if syndrome.iter().all(|&x| x == 0) {
        return Ok(None);
    }
    let f = code.field();
    let g = code.generator().coeffs();
    let mut reg = syndrome.to_vec();
    let mut best: Option<QetdState> = None;
    for i in 0..code.n() {
        if i > 0 {
            // reg <- x * reg mod g (g monic)
            let top = reg[r - 1];
            for j in (1..r).rev() {
                reg[j] = reg[j - 1] ^ f.mul(top, g[j]);
            }
            reg[0] = f.mul(top, g[0]);
        }
        if reg[r - 1] == 0 {
            continue;
        }
        let low = reg.iter().position(|&x| x != 0).expect("top stage set");
        let z = r - low;
        if best.as_ref().map_or(true, |b| z < b.z) {
            best = Some(QetdState {
                s: reg.clone(),
                z,
                v: i,
            });
        }
    }
    Ok(best)
}

/// Decodes a syndrome (`e mod g`, length `r`) to an error estimate of length
/// `n` whose syndrome equals the input.
pub fn decode(code: &CyclicCode, syndrome: &[Elem]) -> Result<Vec<Elem>> {
    let n = code.n();
    let mut e = vec![0; n];
    if let Some(st) = trap(code, syndrome)? {
        for (j, &c) in st.s.iter().enumerate() {
            e[(j + n - st.v) % n] ^= c;
        }
    }
    Ok(e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Exact,
    Degenerate,
    Failure,
}

/// Compares a decoded estimate with the true error.
pub fn classify(code: &CyclicCode, stabilizer: StabilizerTest<'_>, e: &[Elem], ehat: &[Elem]) -> Result<Outcome> {
    if code.syndrome(e)? != code.syndrome(ehat)? {
        return Err(Error::SyndromeMismatch);
    }
    if e == ehat {
        return Ok(Outcome::Exact);
    }
    let d: Vec<Elem> = e.iter().zip(ehat).map(|(a, b)| a ^ b).collect();
    Ok(if stabilizer.contains(&d) {
        Outcome::Degenerate
    } else {
        Outcome::Failure
    })
}

/// Splits a Pauli pattern (`x + 2z` per position) into its X and Z parts.
pub fn split_pauli(e: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
    (e.iter().map(|&c| c & 1).collect(), e.iter().map(|&c| c >> 1).collect())
}

pub fn join_pauli(x: &[Elem], z: &[Elem]) -> Vec<Elem> {
    x.iter().zip(z).map(|(&a, &b)| a | (b << 1)).collect()
}

/// CSS decoding: the X part is trapped against `C_1`, the Z part against
/// `C_2`; the result is the combined Pauli pattern.
pub fn css_decode(sx: &[Elem], sz: &[Elem], c1: &CyclicCode, c2: &CyclicCode) -> Result<Vec<Elem>> {
    let x = decode(c1, sx)?;
    let z = decode(c2, sz)?;
    Ok(join_pauli(&x, &z))
}

/// How the harness decodes a quantum code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecodeMode {
    /// One GF(4) register over the (possibly binary) generator, Hermitian
    /// stabilizer.
    Joint,
    /// Separate X and Z registers of a CSS pair.
    Split,
}

/// Exact counts over every burst of length `1..=lmax`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QetdStats {
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub lmax: usize,
    pub mode: DecodeMode,
    /// Total bursts `N`.
    pub total: u64,
    /// Exactly decoded `N_0`.
    pub exact: u64,
    /// Exactly or degenerately decoded `N_D`.
    pub decoded: u64,
}

impl QetdStats {
    pub fn ratio_decoded(&self) -> f64 {
        self.decoded as f64 / self.total as f64
    }

    pub fn ratio_exact(&self) -> f64 {
        self.exact as f64 / self.total as f64
    }

    pub fn ratio_gain(&self) -> f64 {
        self.decoded as f64 / self.exact as f64
    }
}

/// Number of quaternary bursts of length `1..=lmax` on `n` positions:
/// `3n + sum_{l=2}^{lmax} (n - l + 1) 9 4^{l-2}`.
pub fn burst_count(n: usize, lmax: usize) -> u128 {
    let mut total = 0u128;
    for l in 1..=lmax.min(n) {
        let per = if l == 1 { 3 } else { 9 * 4u128.pow(l as u32 - 2) };
        total += (n - l + 1) as u128 * per;
    }
    total
}

/// Largest enumeration the harness accepts.
pub const STATS_LIMIT: u128 = 1_000_000_000;

/// The mode used when none is requested: joint for Hermitian codes and for
/// CSS codes built from a single binary generator, split otherwise.
pub fn default_mode(code: &QuantumCyclicCode) -> DecodeMode {
    match code {
        QuantumCyclicCode::Hermitian(_) => DecodeMode::Joint,
        QuantumCyclicCode::Css(a, b) if a.generator() == b.generator() => DecodeMode::Joint,
        QuantumCyclicCode::Css(..) => DecodeMode::Split,
    }
}

/// The binary code with its generator read over GF(4).
pub fn lift_to_gf4(code: &CyclicCode) -> Result<CyclicCode> {
    let f4 = Field::gf4();
    let g = Polynomial::new(&f4, code.generator().coeffs().to_vec())?;
    CyclicCode::from_generator(code.n(), &g)
}

/// Decodes every quaternary burst of length `1..=lmax` (default `(n - K)/2`)
/// and counts the outcomes. Shards by (length, start) across threads.
pub fn qetd_stats(code: &QuantumCyclicCode, lmax: Option<usize>, mode: Option<DecodeMode>) -> Result<QetdStats> {
    let n = code.n();
    let k = code.quantum_k();
    let lmax = lmax.unwrap_or((n - k) / 2).min(n);
    let size = burst_count(n, lmax);
    if size > STATS_LIMIT {
        return Err(Error::TooLarge {
            size,
            limit: STATS_LIMIT,
        });
    }
    let mode = mode.unwrap_or_else(|| default_mode(code));
    let shards: Vec<(usize, usize)> = (1..=lmax).flat_map(|l| (0..=n - l).map(move |s| (l, s))).collect();
    let counts: Vec<(u64, u64, u64)> = match (mode, code) {
        (DecodeMode::Joint, _) => {
            let c = match code {
                QuantumCyclicCode::Hermitian(c) => c.clone(),
                QuantumCyclicCode::Css(a, b) => {
                    if a.generator() != b.generator() {
                        return Err(Error::InvalidParameters(
                            "joint decoding needs a single generator".into(),
                        ));
                    }
                    lift_to_gf4(a)?
                }
            };
            let stab = StabilizerTest::Hermitian(&c);
            shards
                .par_iter()
                .map(|&(l, s)| {
                    count_shard(n, l, s, |e| {
                        let ehat = decode(&c, &c.syndrome(e)?)?;
                        classify(&c, stab, e, &ehat)
                    })
                })
                .collect::<Result<_>>()?
        }
        (DecodeMode::Split, QuantumCyclicCode::Css(c1, c2)) => shards
            .par_iter()
            .map(|&(l, s)| {
                count_shard(n, l, s, |e| {
                    let (x, z) = split_pauli(e);
                    let ehat = css_decode(&c1.syndrome(&x)?, &c2.syndrome(&z)?, c1, c2)?;
                    if ehat == e {
                        return Ok(Outcome::Exact);
                    }
                    let (xh, zh) = split_pauli(&ehat);
                    let dx: Vec<Elem> = x.iter().zip(&xh).map(|(a, b)| a ^ b).collect();
                    let dz: Vec<Elem> = z.iter().zip(&zh).map(|(a, b)| a ^ b).collect();
                    Ok(if c2.in_dual(&dx)? && c1.in_dual(&dz)? {
                        Outcome::Degenerate
                    } else {
                        Outcome::Failure
                    })
                })
            })
            .collect::<Result<_>>()?,
        (DecodeMode::Split, QuantumCyclicCode::Hermitian(_)) => {
            return Err(Error::InvalidParameters("split decoding needs a CSS code".into()))
        }
    };
    let (total, exact, decoded) = counts
        .into_iter()
        .fold((0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    Ok(QetdStats {
        n,
        k,
        lmax,
        mode,
        total,
        exact,
        decoded,
    })
}

/// Enumerates all quaternary bursts of exactly length `l` starting at `start`.
fn count_shard(
    n: usize,
    l: usize,
    start: usize,
    mut run: impl FnMut(&[Elem]) -> Result<Outcome>,
) -> Result<(u64, u64, u64)> {
    let mut e = vec![0 as Elem; n];
    let inner = 4u64.pow(l.saturating_sub(2) as u32);
    let (mut total, mut exact, mut decoded) = (0, 0, 0);
    for a in 1..4 {
        for b in 1..4 {
            if l == 1 && b > 1 {
                break;
            }
            for idx in 0..inner {
                e[start + l - 1] = b;
                e[start] = a;
                let mut x = idx;
                for p in start + 1..start + l.saturating_sub(1) {
                    e[p] = (x % 4) as Elem;
                    x /= 4;
                }
                total += 1;
                match run(&e)? {
                    Outcome::Exact => {
                        exact += 1;
                        decoded += 1;
                    }
                    Outcome::Degenerate => decoded += 1,
                    Outcome::Failure => {}
                }
            }
        }
    }
    Ok((total, exact, decoded))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_generator;

    fn steane() -> CyclicCode {
        CyclicCode::from_generator(7, &parse_generator("(1^3 1^1 1^0)", &Field::gf2()).unwrap()).unwrap()
    }

    #[test]
    fn steane_decodes() {
        let c = steane();
        let mut e = vec![0; 7];
        e[0] = 1;
        assert_eq!(decode(&c, &c.syndrome(&e).unwrap()).unwrap(), e);
        let mut e6 = vec![0; 7];
        e6[6] = 1;
        assert_eq!(c.syndrome(&e6).unwrap(), vec![1, 0, 1]);
        assert_eq!(decode(&c, &[1, 0, 1]).unwrap(), e6);
        assert_eq!(decode(&c, &[0, 0, 0]).unwrap(), vec![0; 7]);
        assert!(decode(&c, &[0, 0]).is_err());
    }

    #[test]
    fn css_decode_examples() {
        let c = steane();
        let mut x = vec![0; 7];
        x[3] = 1;
        let zero = vec![0; 7];
        let out = css_decode(&c.syndrome(&x).unwrap(), &[0, 0, 0], &c, &c).unwrap();
        assert_eq!(split_pauli(&out), (x.clone(), zero.clone()));
        assert_eq!(css_decode(&[0, 0, 0], &[0, 0, 0], &c, &c).unwrap(), zero);
        let s = c.syndrome(&x).unwrap();
        let y = css_decode(&s, &s, &c, &c).unwrap();
        assert_eq!(y, join_pauli(&x, &x));
    }

    #[test]
    fn classify_examples() {
        let f = Field::gf4();
        let c = CyclicCode::from_generator(5, &parse_generator("(1^2 2^1 1^0)", &f).unwrap()).unwrap();
        let st = StabilizerTest::Hermitian(&c);
        let e = vec![0, 3, 0, 0, 0];
        assert_eq!(classify(&c, st, &e, &e).unwrap(), Outcome::Exact);
        let stab: Vec<Elem> = c.parity_check_matrix().row(1).iter().map(|&x| f.conj(x)).collect();
        let e2: Vec<Elem> = e.iter().zip(&stab).map(|(a, b)| a ^ b).collect();
        assert_eq!(classify(&c, st, &e, &e2).unwrap(), Outcome::Degenerate);
        // The generator itself is a codeword outside C^{⊥_H}: a logical error.
        let g = c.generator_matrix().row(0).to_vec();
        assert!(!st.contains(&g));
        let e3: Vec<Elem> = e.iter().zip(&g).map(|(a, b)| a ^ b).collect();
        assert_eq!(classify(&c, st, &e, &e3).unwrap(), Outcome::Failure);
        assert!(classify(&c, st, &e, &[1, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn count_formula() {
        assert_eq!(burst_count(5, 2), 51);
        assert_eq!(burst_count(7, 3), 255);
        assert_eq!(burst_count(13, 6), 39 + 108 + 396 + 1440 + 5184 + 18432);
    }
}
