//! Serialization of burst-limit reports: JSON lines and a table-style CSV.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qccburst::QccReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

pub const CSV_HEADER: [&str; 4] = ["Δ", "[[n,k]]", "𝓛", "generator"];

/// Separator between the two generators of a CSS pair.
pub const GENERATOR_SEPARATOR: &str = " ; ";

/// `[[n,k]]` label.
pub fn code_label(n: usize, k: usize) -> String {
    format!("[[{n},{k}]]")
}

/// Parses a `[[n,k]]` label.
pub fn parse_code_label(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("malformed code label {s:?}"));
    let inner = s
        .trim()
        .strip_prefix("[[")
        .and_then(|t| t.strip_suffix("]]"))
        .ok_or_else(bad)?;
    let (n, k) = inner.split_once(',').ok_or_else(bad)?;
    Ok((
        n.trim().parse().map_err(|_| bad())?,
        k.trim().parse().map_err(|_| bad())?,
    ))
}

/// Renders reports; JSON is one object per line, CSV has [`CSV_HEADER`].
/// Output depends only on the reports and their order.
pub fn emit(reports: &[QccReport], format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = Vec::new();
            for r in reports {
                serde_json::to_writer(&mut out, r).map_err(|e| Error::Parse(e.to_string()))?;
                out.push(b'\n');
            }
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for r in reports {
                w.write_record([
                    r.delta.to_string(),
                    code_label(r.n, r.k),
                    r.l.to_string(),
                    r.generators.join(GENERATOR_SEPARATOR),
                ])?;
            }
            w.into_inner().map_err(|e| Error::Io(e.to_string()))
        }
    }
}

/// Inverse of the JSON form of [`emit`].
pub fn parse_json(bytes: &[u8]) -> Result<Vec<QccReport>> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qccburst::ConstructionKind;

    fn sample() -> QccReport {
        QccReport {
            n: 15,
            k: 3,
            l: 3,
            ell0: 3,
            delta: 0,
            construction: ConstructionKind::Hermitian,
            generators: vec!["(1^6 2^3 1^0)".into()],
            flags: vec!["optimal".into()],
        }
    }

    #[test]
    fn empty_csv_is_header_only() {
        let out = emit(&[], Format::Csv).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "Δ,\"[[n,k]]\",𝓛,generator\n");
        assert!(emit(&[], Format::Json).unwrap().is_empty());
    }

    #[test]
    fn json_object_fields() {
        let out = emit(&[sample()], Format::Json).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 1);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["construction"], "hermitian");
        for key in ["n", "K", "L", "ell0", "delta", "construction", "generators", "flags"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(parse_json(text.as_bytes()).unwrap(), vec![sample()]);
    }

    #[test]
    fn csv_row() {
        let out = String::from_utf8(emit(&[sample()], Format::Csv).unwrap()).unwrap();
        assert_eq!(out.lines().nth(1).unwrap(), "0,\"[[15,3]]\",3,(1^6 2^3 1^0)");
    }

    #[test]
    fn labels() {
        assert_eq!(parse_code_label("[[21, 9]]").unwrap(), (21, 9));
        assert_eq!(code_label(21, 9), "[[21,9]]");
        assert!(parse_code_label("[21,9]").is_err());
        assert_eq!("JSON".parse::<Format>().unwrap(), Format::Json);
    }
}
