//! Exhaustive search over dual-containing cyclic codes of a length range.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cycliccode::{css_dual_containing, CyclicCode};
use crate::error::{Error, Result};
use crate::galois::Field;
use crate::polyring::divisor_generators;
use crate::qccburst::{algorithm1, qrb_delta, QccReport, QuantumCyclicCode};

/// GF(2) searches single-code CSS constructions, GF(4) Hermitian ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldChoice {
    Gf2,
    Gf4,
}

impl FieldChoice {
    pub fn field(self) -> Arc<Field> {
        match self {
            FieldChoice::Gf2 => Field::gf2(),
            FieldChoice::Gf4 => Field::gf4(),
        }
    }
}

impl FromStr for FieldChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gf2" => Ok(FieldChoice::Gf2),
            "gf4" => Ok(FieldChoice::Gf4),
            other => Err(Error::Parse(format!("unknown field {other:?} (gf2 or gf4)"))),
        }
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldChoice::Gf2 => "gf2",
            FieldChoice::Gf4 => "gf4",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchJob {
    pub n_min: usize,
    pub n_max: usize,
    pub field: FieldChoice,
    /// Keep reports with `n - K - 4L <= delta_max`.
    pub delta_max: i64,
    /// Worker threads; 0 uses rayon's default.
    pub jobs: usize,
}

impl SearchJob {
    fn validate(&self) -> Result<()> {
        if self.n_min > self.n_max {
            return Err(Error::InvalidParameters(format!(
                "empty length range {}..={}",
                self.n_min, self.n_max
            )));
        }
        if self.n_max > 255 {
            return Err(Error::InvalidParameters("n_max above 255".into()));
        }
        Ok(())
    }
}

/// Every dual-containing quantum code of length `n` with `K >= 1` (odd `n`
/// only; `x^n - 1` must be separable).
pub fn candidates(n: usize, field: FieldChoice) -> Result<Vec<QuantumCyclicCode>> {
    if n < 3 || n % 2 == 0 {
        return Ok(Vec::new());
    }
    let f = field.field();
    let mut out = Vec::new();
    for g in divisor_generators(n, &f, 1, (n - 1) / 2)? {
        let code = CyclicCode::from_generator(n, &g)?;
        match field {
            FieldChoice::Gf4 => {
                if code.hermitian_dual_containing()? {
                    out.push(QuantumCyclicCode::Hermitian(code));
                }
            }
            FieldChoice::Gf2 => {
                if css_dual_containing(&code, &code)? {
                    out.push(QuantumCyclicCode::Css(code.clone(), code));
                }
            }
        }
    }
    Ok(out)
}

/// Runs [`algorithm1`] on every candidate in the range and keeps those with
/// `delta <= delta_max`, sorted by `(n, K, generators)`.
pub fn search(job: &SearchJob) -> Result<Vec<QccReport>> {
    job.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(job.jobs)
        .build()
        .map_err(|e| Error::InvalidParameters(e.to_string()))?;
    let codes: Vec<QuantumCyclicCode> = (job.n_min..=job.n_max)
        .map(|n| candidates(n, job.field))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    log::info!("{} candidate codes", codes.len());
    let mut reports: Vec<QccReport> = pool.install(|| {
        codes
            .par_iter()
            .map(algorithm1)
            .filter(|r| r.delta <= job.delta_max)
            .collect()
    });
    for r in &reports {
        debug_assert_eq!(r.delta, qrb_delta(r.n, r.k, r.l));
    }
    reports.sort_by(|a, b| (a.n, a.k, &a.generators).cmp(&(b.n, b.k, &b.generators)));
    Ok(reports)
}
