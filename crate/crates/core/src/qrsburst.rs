//! True burst limits of quantum Reed-Solomon codes through their binary images
//! under a self-dual basis, next to the classical lower bound and the image
//! Reiger bound.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cycliccode::CyclicCode;
use crate::error::{Error, Result};
use crate::galois::{Elem, Field, SelfDualBasis};
use crate::polyring::Polynomial;

/// A narrow-sense RS code `[n = 2^m - 1, k_c]` with `n <= 2 k_c`, viewed as the
/// quantum code `[[n, K = 2 k_c - n]]_{2^m}`.
#[derive(Debug, Clone)]
pub struct RsCode {
    pub m: u32,
    pub n: usize,
    pub k_c: usize,
    pub k_quantum: usize,
    pub hbar: usize,
    pub code: CyclicCode,
    pub basis: SelfDualBasis,
}

/// Reference ordered self-dual bases; image burst lengths depend on the basis
/// and its order, so the default is pinned. Other `m` use the first basis in
/// backtracking order (`SelfDualBasis::construct(field, 0)`).
const REFERENCE_BASES: &[(u32, u32, &[Elem])] =
    &[(5, 0x25, &[24, 26, 10, 30, 23]), (6, 0x5B, &[60, 9, 58, 26, 44, 56])];

/// Default basis for the image analysis over `field`.
pub fn reference_basis(field: &Arc<Field>) -> SelfDualBasis {
    REFERENCE_BASES
        .iter()
        .find(|(m, modulus, _)| *m == field.m() && *modulus == field.modulus())
        .and_then(|(_, _, els)| SelfDualBasis::from_elements(field, els.to_vec()).ok())
        .unwrap_or_else(|| SelfDualBasis::construct(field, 0))
}

/// `prod_{i=1}^{r} (x - alpha^i)` for the table generator `alpha`.
pub fn narrow_sense_generator(field: &Arc<Field>, r: usize) -> Polynomial {
    let mut g = Polynomial::one(field);
    for i in 1..=r {
        let root = field.alpha_pow(i as u64);
        let lin = Polynomial::from_trusted(field, vec![root, 1]);
        g = g.mul(&lin).expect("same field");
    }
    g
}

impl RsCode {
    /// Builds the code over `GF(2^m)` (default modulus) with [`reference_basis`].
    pub fn new(m: u32, k_quantum: usize) -> Result<Self> {
        let field = Field::with_default_modulus(m)?;
        Self::with_basis(m, k_quantum, reference_basis(&field))
    }

    pub fn with_basis(m: u32, k_quantum: usize, basis: SelfDualBasis) -> Result<Self> {
        if !(2..=8).contains(&m) {
            return Err(Error::InvalidParameters(format!("m = {m} outside 2..=8")));
        }
        let field = basis.field().clone();
        if field.m() != m {
            return Err(Error::FieldMismatch);
        }
        let n = (1usize << m) - 1;
        if k_quantum > n || (n + k_quantum) % 2 != 0 {
            return Err(Error::InvalidParameters(format!(
                "k_c = (n + K)/2 is not an integer for n = {n}, K = {k_quantum}"
            )));
        }
        let k_c = (n + k_quantum) / 2;
        let r = n - k_c;
        let code = CyclicCode::from_generator(n, &narrow_sense_generator(&field, r))?;
        // C^⊥ ⊆ C: every dual-generator row must be a codeword.
        let dual_rows = code.parity_check_matrix();
        for i in 0..dual_rows.rows() {
            if !code.contains(dual_rows.row(i))? {
                return Err(Error::NotDualContaining);
            }
        }
        Ok(RsCode {
            m,
            n,
            k_c,
            k_quantum,
            hbar: r / 2,
            code,
            basis,
        })
    }

    pub fn field(&self) -> &Arc<Field> {
        self.code.field()
    }

    pub fn r(&self) -> usize {
        self.n - self.k_c
    }
}

/// Binary image: symbol `i` becomes bits `i*m .. i*m + m`, bit `j` being
/// `Tr(v_i a_j)`.
pub fn image_expand(v: &[Elem], basis: &SelfDualBasis) -> Vec<u8> {
    let m = basis.m();
    let mut out = vec![0u8; v.len() * m];
    for (i, &x) in v.iter().enumerate() {
        let bits = basis.coordinates(x);
        for j in 0..m {
            out[i * m + j] = (bits >> j & 1) as u8;
        }
    }
    out
}

/// Burst length of the binary image (0 for the zero vector).
pub fn image_burst_length(v: &[Elem], basis: &SelfDualBasis) -> usize {
    let m = basis.m();
    let Some(a) = v.iter().position(|&x| x != 0) else {
        return 0;
    };
    let b = v.iter().rposition(|&x| x != 0).expect("nonzero");
    let ca = basis.coordinates(v[a]);
    let cb = basis.coordinates(v[b]);
    let first = a * m + ca.trailing_zeros() as usize;
    let last = b * m + (31 - cb.leading_zeros() as usize);
    last - first + 1
}

/// `(hbar - 1) m + 1`: the image burst length guaranteed by the classical
/// symbol-level burst capability. A code with `hbar = 0` corrects nothing.
pub fn rs_lower_bound(rs: &RsCode) -> usize {
    match rs.hbar {
        0 => 0,
        h => (h - 1) * rs.m as usize + 1,
    }
}

/// `floor((n m - K m) / 4)`.
pub fn qrb_image(rs: &RsCode) -> usize {
    (rs.n * rs.m as usize - rs.k_quantum * rs.m as usize) / 4
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RsReport {
    pub m: u32,
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub lower: usize,
    pub qrb_image: usize,
    pub flags: Vec<String>,
}

/// Pairs of one window `B = [start, start + hbar]` of `M^(hbar+1)`.
#[derive(Debug, Clone)]
pub struct RsPairSets {
    pub start: usize,
    pub rank: usize,
    /// Basis pairs from the free columns.
    pub boxplus: Vec<(Vec<Elem>, Vec<Elem>)>,
}

/// The dependency pairs of every window of `M^(hbar+1)`.
pub fn rs_windows(rs: &RsCode) -> Vec<RsPairSets> {
    let code = &rs.code;
    let (n, r) = (rs.n, rs.r());
    let w = rs.hbar + 1;
    let h = code.parity_check_matrix();
    if 2 * w > n || w > r {
        return Vec::new();
    }
    (0..=n - 2 * w)
        .map(|start| {
            let block = h.submatrix(0, r - w, start, start + w);
            let red = block.row_reduce();
            let boxplus = red
                .null_vectors(w)
                .into_iter()
                .map(|nv| {
                    let mut e = vec![0; n];
                    e[start..start + w].copy_from_slice(&nv);
                    let s = code.check_syndrome(&e).expect("length n");
                    let f = code.solve_tail(&s, w).expect("triangular tail");
                    (e, f)
                })
                .collect();
            RsPairSets {
                start,
                rank: red.rank,
                boxplus,
            }
        })
        .collect()
}

/// Calls `visit(e, f)` for every nonzero `GF(2^m)` combination of a window's
/// basis pairs (the set ⊠), keeping `e` and `f` paired.
pub fn for_each_combination(field: &Field, pairs: &[(Vec<Elem>, Vec<Elem>)], mut visit: impl FnMut(&[Elem], &[Elem])) {
    let q = field.q();
    let v = pairs.len();
    if v == 0 {
        return;
    }
    let n = pairs[0].0.len();
    let total = q.pow(v as u32);
    let mut e = vec![0; n];
    let mut f = vec![0; n];
    for idx in 1..total {
        e.iter_mut().for_each(|x| *x = 0);
        f.iter_mut().for_each(|x| *x = 0);
        let mut x = idx;
        for (pe, pf) in pairs {
            let lam = (x % q) as Elem;
            x /= q;
            if lam == 0 {
                continue;
            }
            for j in 0..n {
                e[j] ^= field.mul(lam, pe[j]);
                f[j] ^= field.mul(lam, pf[j]);
            }
        }
        visit(&e, &f);
    }
}

/// Smallest `max(bl[e], bl[f])` over the nondegenerate members of one
/// window's ⊠ (those with `e + f` outside `C^⊥`).
fn window_minimum(rs: &RsCode, win: &RsPairSets) -> Option<usize> {
    let code = &rs.code;
    let mut best: Option<usize> = None;
    for_each_combination(code.field(), &win.boxplus, |e, f| {
        let d: Vec<Elem> = e.iter().zip(f).map(|(a, b)| a ^ b).collect();
        if code.in_dual(&d).expect("length n") {
            return;
        }
        let len = image_burst_length(e, &rs.basis).max(image_burst_length(f, &rs.basis));
        if best.map_or(true, |b| len < b) {
            best = Some(len);
        }
    });
    best
}

/// Algorithm 2: the minimum of [`window_minimum`] over all windows, minus one.
/// Without any nondegenerate pair the image Reiger bound is reported with a
/// `bound-limited` flag.
pub fn algorithm2(rs: &RsCode) -> RsReport {
    let windows = rs_windows(rs);
    let mut flags = Vec::new();
    for win in &windows {
        if win.rank > rs.hbar || win.rank + 1 < rs.hbar {
            log::warn!(
                "window {} has rank {} outside [{}, {}]",
                win.start,
                win.rank,
                rs.hbar.saturating_sub(1),
                rs.hbar
            );
            flags.push(format!("rank-bound:{}:{}", win.start, win.rank));
        }
    }
    let best = windows.par_iter().filter_map(|win| window_minimum(rs, win)).min();
    let qrb = qrb_image(rs);
    let lower = rs_lower_bound(rs);
    let l = match best {
        Some(b) => b - 1,
        None => {
            flags.push("bound-limited".to_string());
            qrb
        }
    };
    if l < lower || l > qrb {
        log::warn!(
            "L = {l} outside [{lower}, {qrb}] for m = {}, K = {}",
            rs.m,
            rs.k_quantum
        );
        flags.push("bound-inconsistent".to_string());
    }
    RsReport {
        m: rs.m,
        n: rs.n,
        k: rs.k_quantum,
        l,
        lower,
        qrb_image: qrb,
        flags,
    }
}

/// Rank over GF(2) of bit-packed vectors.
fn gf2_rank(mut vecs: Vec<Vec<u64>>) -> usize {
    let words = vecs.first().map_or(0, Vec::len);
    let mut rank = 0;
    for bit in 0..words * 64 {
        let (w, b) = (bit / 64, bit % 64);
        let Some(p) = (rank..vecs.len()).find(|&i| vecs[i][w] >> b & 1 == 1) else {
            continue;
        };
        vecs.swap(rank, p);
        let pivot = vecs[rank].clone();
        for (i, v) in vecs.iter_mut().enumerate() {
            if i != rank && v[w] >> b & 1 == 1 {
                v.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
            }
        }
        rank += 1;
    }
    rank
}

/// Exact burst limit of the binary image, independent of Algorithm 2: the
/// largest `ell` such that no two (non-wrap) bit bursts of length `<= ell` differ
/// by an element of `[C]` outside `[C^⊥]`. For each pair of bit windows the
/// test is `rank [Hb; Gb]_S != rank Hb_S` on the union `S` of their columns,
/// where `Hb`, `Gb` span `[C^⊥]` and `[C]`. Windows are normalised by symbol
/// shifts so the first starts within the first symbol. Returns `None` if no
/// violation exists up to `cap`.
pub fn image_burst_limit_exact(rs: &RsCode, cap: usize) -> Option<usize> {
    let m = rs.m as usize;
    let nn = rs.n * m;
    let field = rs.field();
    let mut rows: Vec<Vec<u8>> = Vec::new();
    let h = rs.code.parity_check_matrix();
    let g = rs.code.generator_matrix();
    for mat in [h, g] {
        for i in 0..mat.rows() {
            for &b in rs.basis.elements() {
                let v: Vec<Elem> = mat.row(i).iter().map(|&x| field.mul(x, b)).collect();
                rows.push(image_expand(&v, &rs.basis));
            }
        }
    }
    let h_rows = h.rows() * m;
    let column = |c: usize, upto: usize| {
        let mut v = vec![0u64; upto.div_ceil(64)];
        for (i, row) in rows[..upto].iter().enumerate() {
            if row[c] == 1 {
                v[i / 64] |= 1 << (i % 64);
            }
        }
        v
    };
    let cols_h: Vec<Vec<u64>> = (0..nn).map(|c| column(c, h_rows)).collect();
    let cols_all: Vec<Vec<u64>> = (0..nn).map(|c| column(c, rows.len())).collect();
    let violated = |ell: usize| {
        (0..m).any(|a| {
            (a..=nn - ell).any(|b| {
                let mut s: Vec<usize> = (a..a + ell).chain(b..b + ell).collect();
                s.sort_unstable();
                s.dedup();
                gf2_rank(s.iter().map(|&c| cols_h[c].clone()).collect())
                    != gf2_rank(s.iter().map(|&c| cols_all[c].clone()).collect())
            })
        })
    };
    (1..=cap.min(nn / 2)).find(|&ell| violated(ell)).map(|ell| ell - 1)
}
