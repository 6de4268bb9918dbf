//! Burst-error-correction limits of quantum cyclic codes.
//!
//! A quantum code is analysed one error component at a time. A component is a
//! classical cyclic code whose syndromes identify the error, together with the
//! stabilizer: the set of differences that act trivially. For the Hermitian
//! construction over GF(4) the component is `C` with stabilizer `C^{⊥_H}`; for a
//! CSS pair `(C_1, C_2)` the X part is `C_1` with stabilizer `C_2^⊥` and the Z
//! part is `C_2` with stabilizer `C_1^⊥`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cycliccode::{css_dual_containing, CyclicCode};
use crate::error::{Error, Result};
use crate::galois::Elem;
use crate::matgf::Matrix;
use crate::notation::emit_generator;

/// Which construction a quantum cyclic code comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionKind {
    Hermitian,
    Css,
}

impl std::fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ConstructionKind::Hermitian => "hermitian",
            ConstructionKind::Css => "css",
        })
    }
}

/// A quantum cyclic code whose dual-containment has been verified.
#[derive(Debug, Clone)]
pub enum QuantumCyclicCode {
    Hermitian(CyclicCode),
    /// `(C_1, C_2)` with `C_2^⊥ ⊆ C_1` (and `C_1^⊥ ⊆ C_2`).
    Css(CyclicCode, CyclicCode),
}

/// The set that decides whether a difference of two errors is harmless.
#[derive(Debug, Clone, Copy)]
pub enum StabilizerTest<'a> {
    /// Differences in `C^{⊥_H}` of the given GF(4) code.
    Hermitian(&'a CyclicCode),
    /// Differences in `D^⊥` of the given binary code `D`.
    Euclidean(&'a CyclicCode),
}

impl<'a> StabilizerTest<'a> {
    pub fn contains(&self, v: &[Elem]) -> bool {
        match self {
            StabilizerTest::Hermitian(c) => c.in_hermitian_dual(v).expect("vector length"),
            StabilizerTest::Euclidean(c) => c.in_dual(v).expect("vector length"),
        }
    }

    /// A linear map whose kernel is the stabilizer: `G conj(v)` or `G v`.
    pub fn signature(&self, v: &[Elem]) -> Vec<Elem> {
        match self {
            StabilizerTest::Hermitian(c) => c.hermitian_signature(v),
            StabilizerTest::Euclidean(c) => c.generator_matrix().mul_vec(v).expect("vector length"),
        }
    }
}

/// One error component: syndromes from `code`, harmless differences from
/// `stabilizer`.
#[derive(Debug, Clone, Copy)]
pub struct Component<'a> {
    pub code: &'a CyclicCode,
    pub stabilizer: StabilizerTest<'a>,
}

impl QuantumCyclicCode {
    /// Hermitian construction from a GF(4) code with `C^{⊥_H} ⊆ C`.
    pub fn hermitian(code: CyclicCode) -> Result<Self> {
        if !code.hermitian_dual_containing()? {
            return Err(Error::NotDualContaining);
        }
        Ok(QuantumCyclicCode::Hermitian(code))
    }

    /// CSS construction from binary codes; both `C_2^⊥ ⊆ C_1` and
    /// `C_1^⊥ ⊆ C_2` are checked (they are equivalent, so this is a
    /// consistency check). A single code gives `C_1 = C_2`.
    pub fn css(c1: CyclicCode, c2: CyclicCode) -> Result<Self> {
        if !css_dual_containing(&c1, &c2)? || !css_dual_containing(&c2, &c1)? {
            return Err(Error::NotDualContaining);
        }
        Ok(QuantumCyclicCode::Css(c1, c2))
    }

    pub fn kind(&self) -> ConstructionKind {
        match self {
            QuantumCyclicCode::Hermitian(_) => ConstructionKind::Hermitian,
            QuantumCyclicCode::Css(..) => ConstructionKind::Css,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            QuantumCyclicCode::Hermitian(c) | QuantumCyclicCode::Css(c, _) => c.n(),
        }
    }

    /// Quantum dimension: `2k - n` or `k_1 + k_2 - n`.
    pub fn quantum_k(&self) -> usize {
        match self {
            QuantumCyclicCode::Hermitian(c) => 2 * c.k() - c.n(),
            QuantumCyclicCode::Css(a, b) => a.k() + b.k() - a.n(),
        }
    }

    pub fn components(&self) -> Vec<Component<'_>> {
        match self {
            QuantumCyclicCode::Hermitian(c) => vec![Component {
                code: c,
                stabilizer: StabilizerTest::Hermitian(c),
            }],
            QuantumCyclicCode::Css(a, b) => vec![
                Component {
                    code: a,
                    stabilizer: StabilizerTest::Euclidean(b),
                },
                Component {
                    code: b,
                    stabilizer: StabilizerTest::Euclidean(a),
                },
            ],
        }
    }

    pub fn generator_strings(&self) -> Vec<String> {
        match self {
            QuantumCyclicCode::Hermitian(c) => vec![emit_generator(c.generator())],
            QuantumCyclicCode::Css(a, b) if a.generator() == b.generator() => {
                vec![emit_generator(a.generator())]
            }
            QuantumCyclicCode::Css(a, b) => {
                vec![emit_generator(a.generator()), emit_generator(b.generator())]
            }
        }
    }
}

/// `l` consecutive columns `[start, start + l)` of the shortened matrix `M^(l)`.
#[derive(Debug, Clone)]
pub struct WindowBlock {
    pub ell: usize,
    pub start: usize,
    pub block: Matrix,
}

/// Pairs `(e_i, f_i)` with equal syndromes arising from a rank-deficient
/// window: `e_i` inside the window, `f_i` in the last `l` positions, and
/// `e_i + f_i` a codeword.
#[derive(Debug, Clone)]
pub struct DependencyPairSet {
    pub ell: usize,
    pub start: usize,
    pub pairs: Vec<(Vec<Elem>, Vec<Elem>)>,
}

pub fn build_window(code: &CyclicCode, ell: usize, start: usize) -> Result<WindowBlock> {
    let (n, r) = (code.n(), code.r());
    if ell == 0 || 2 * ell > r {
        return Err(Error::OutOfRange(format!("window length {ell} with r = {r}")));
    }
    if start + 2 * ell > n {
        return Err(Error::OutOfRange(format!(
            "window start {start} beyond {}",
            n - 2 * ell
        )));
    }
    let block = code.parity_check_matrix().submatrix(0, r - ell, start, start + ell);
    Ok(WindowBlock { ell, start, block })
}

/// The dependency pairs of a window: one per free column of its reduction.
pub fn boxplus(code: &CyclicCode, w: &WindowBlock) -> DependencyPairSet {
    let n = code.n();
    let red = w.block.row_reduce();
    let pairs = red
        .null_vectors(w.ell)
        .into_iter()
        .map(|nv| {
            let mut e = vec![0; n];
            e[w.start..w.start + w.ell].copy_from_slice(&nv);
            let s = code.check_syndrome(&e).expect("length n");
            let f = code
                .solve_tail(&s, w.ell)
                .expect("null vector of M^(l) leaves the top rows clear");
            (e, f)
        })
        .collect();
    DependencyPairSet {
        ell: w.ell,
        start: w.start,
        pairs,
    }
}

/// True when the pair does not limit burst correction: `e + f` is in the
/// stabilizer. Errors if the syndromes differ.
pub fn degeneracy_check(code: &CyclicCode, e: &[Elem], f: &[Elem], stabilizer: StabilizerTest<'_>) -> Result<bool> {
    if code.syndrome(e)? != code.syndrome(f)? {
        return Err(Error::SyndromeMismatch);
    }
    let d: Vec<Elem> = e.iter().zip(f).map(|(a, b)| a ^ b).collect();
    Ok(stabilizer.contains(&d))
}

/// Limits of a single component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentLimits {
    /// Degenerate limit.
    pub l: usize,
    /// Nondegenerate limit.
    pub ell0: usize,
    /// Every length up to `floor(r/2)` passed.
    pub cap_limited: bool,
}

/// Columns `i < j` of `H` with `col_j = lambda * col_i`, as `(i, j, lambda)`.
fn proportional_columns(h: &Matrix) -> Vec<(usize, usize, Elem)> {
    let f = h.field();
    let cols: Vec<Vec<Elem>> = (0..h.cols()).map(|c| h.col(c)).collect();
    let mut out = Vec::new();
    for i in 0..cols.len() {
        let Some(p) = cols[i].iter().position(|&x| x != 0) else {
            continue;
        };
        for j in i + 1..cols.len() {
            if cols[j][p] == 0 {
                continue;
            }
            let lambda = f.div(cols[j][p], cols[i][p]).expect("nonzero");
            if cols[i].iter().zip(&cols[j]).all(|(&a, &b)| f.mul(lambda, a) == b) {
                out.push((i, j, lambda));
            }
        }
    }
    out
}

/// Algorithm 1 for one component.
pub fn component_limits(comp: Component<'_>) -> ComponentLimits {
    let code = comp.code;
    let (n, r) = (code.n(), code.r());
    let cap = r / 2;
    let h = code.parity_check_matrix();
    if r == 0 {
        return ComponentLimits {
            l: 0,
            ell0: 0,
            cap_limited: true,
        };
    }
    // Length-1 prechecks: a zero column, or two single errors with
    // proportional columns (a syndrome collision).
    if (0..n).any(|c| h.col(c).iter().all(|&x| x == 0)) {
        return ComponentLimits {
            l: 0,
            ell0: 0,
            cap_limited: false,
        };
    }
    let mut ell0 = None;
    for (i, j, lambda) in proportional_columns(h) {
        ell0 = Some(0);
        let mut d = vec![0; n];
        d[i] = lambda;
        d[j] = 1;
        if !comp.stabilizer.contains(&d) {
            return ComponentLimits {
                l: 0,
                ell0: 0,
                cap_limited: false,
            };
        }
    }
    for ell in 1..=cap {
        for start in 0..=n - 2 * ell {
            let w = build_window(code, ell, start).expect("admissible window");
            let set = boxplus(code, &w);
            if set.pairs.is_empty() {
                continue;
            }
            ell0.get_or_insert(ell - 1);
            for (e, f) in &set.pairs {
                let d: Vec<Elem> = e.iter().zip(f).map(|(a, b)| a ^ b).collect();
                if !comp.stabilizer.contains(&d) {
                    return ComponentLimits {
                        l: ell - 1,
                        ell0: ell0.unwrap_or(ell - 1),
                        cap_limited: false,
                    };
                }
            }
        }
    }
    ComponentLimits {
        l: cap,
        ell0: ell0.unwrap_or(cap),
        cap_limited: true,
    }
}

/// `n - K - 4L`; negative values violate the quantum Reiger bound.
pub fn qrb_delta(n: usize, k: usize, l: usize) -> i64 {
    n as i64 - k as i64 - 4 * l as i64
}

/// "optimal" for Δ = 0, "nearly-optimal" for Δ ∈ {1, 2}.
pub fn qrb_class(delta: i64) -> Option<&'static str> {
    match delta {
        0 => Some("optimal"),
        1 | 2 => Some("nearly-optimal"),
        _ => None,
    }
}

/// Burst limits of a quantum cyclic code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QccReport {
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub ell0: usize,
    pub delta: i64,
    pub construction: ConstructionKind,
    pub generators: Vec<String>,
    pub flags: Vec<String>,
}

/// Algorithm 1: the degenerate and nondegenerate burst limits, taking the
/// minimum over the error components.
pub fn algorithm1(code: &QuantumCyclicCode) -> QccReport {
    let limits: Vec<ComponentLimits> = code.components().into_iter().map(component_limits).collect();
    let l = limits.iter().map(|c| c.l).min().unwrap_or(0);
    let ell0 = limits.iter().map(|c| c.ell0).min().unwrap_or(0);
    let cap_limited = limits.iter().any(|c| c.cap_limited && c.l == l);
    let (n, k) = (code.n(), code.quantum_k());
    let delta = qrb_delta(n, k, l);
    let mut flags = Vec::new();
    if cap_limited {
        flags.push("cap-limited".to_string());
    }
    if let Some(c) = qrb_class(delta) {
        flags.push(c.to_string());
    }
    if delta < 0 {
        flags.push("qrb-violation".to_string());
    }
    QccReport {
        n,
        k,
        l,
        ell0,
        delta,
        construction: code.kind(),
        generators: code.generator_strings(),
        flags,
    }
}

/// Default cap on the number of bursts the oracle may enumerate.
pub const ORACLE_LIMIT: u128 = 50_000_000;

fn bursts_up_to(n: usize, q: u128, ell: usize) -> u128 {
    let mut total = 1u128;
    for len in 1..=ell.min(n) {
        let inner = if len == 1 {
            q - 1
        } else {
            (q - 1) * (q - 1) * q.pow(len as u32 - 2)
        };
        total += (n - len + 1) as u128 * inner;
    }
    total
}

/// Exhaustive oracle for one component: the largest `l <= cap` such that any
/// two bursts of length at most `l` with equal syndromes differ by a stabilizer
/// element (degenerate limit), and the largest `l` with no syndrome shared at
/// all (nondegenerate limit).
pub fn brute_force_component(comp: Component<'_>, cap: usize, limit: u128) -> Result<(usize, usize)> {
    let code = comp.code;
    let n = code.n();
    let q = code.field().q();
    let size = bursts_up_to(n, q as u128, cap);
    if size > limit {
        return Err(Error::TooLarge { size, limit });
    }
    // syndrome -> (signature of first burst, number of bursts, mixed signatures)
    let mut groups: HashMap<Vec<Elem>, (Vec<Elem>, usize, bool)> = HashMap::new();
    let zero = vec![0; n];
    groups.insert(code.syndrome(&zero)?, (comp.stabilizer.signature(&zero), 1, false));
    let (mut l, mut ell0) = (None, None);
    for len in 1..=cap {
        let mut pat = vec![0 as Elem; len];
        let inner = (q as u64).pow(len.saturating_sub(2) as u32);
        for start in 0..=n - len {
            for a in 1..q as Elem {
                for b in 1..q as Elem {
                    if len == 1 && b > 1 {
                        break;
                    }
                    for idx in 0..inner {
                        pat[0] = a;
                        if len > 1 {
                            pat[len - 1] = b;
                        }
                        let mut x = idx;
                        for slot in pat.iter_mut().take(len.saturating_sub(1)).skip(1) {
                            *slot = (x % q as u64) as Elem;
                            x /= q as u64;
                        }
                        let mut e = vec![0; n];
                        e[start..start + len].copy_from_slice(&pat);
                        let sig = comp.stabilizer.signature(&e);
                        let entry = groups
                            .entry(code.syndrome(&e)?)
                            .or_insert_with(|| (sig.clone(), 0, false));
                        entry.1 += 1;
                        if entry.0 != sig {
                            entry.2 = true;
                        }
                        if entry.1 > 1 && ell0.is_none() {
                            ell0 = Some(len - 1);
                        }
                        if entry.2 && l.is_none() {
                            l = Some(len - 1);
                        }
                    }
                }
            }
        }
        if l.is_some() {
            break;
        }
    }
    let l = l.unwrap_or(cap);
    Ok((l, ell0.unwrap_or(cap).min(l)))
}

/// Exhaustive oracle for the whole code: minimum over components.
pub fn brute_force_limit(code: &QuantumCyclicCode, limit: u128) -> Result<(usize, usize)> {
    let mut best = (usize::MAX, usize::MAX);
    for comp in code.components() {
        let (l, e0) = brute_force_component(comp, comp.code.r() / 2, limit)?;
        best = (best.0.min(l), best.1.min(e0));
    }
    Ok(best)
}
