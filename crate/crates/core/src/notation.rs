//! Compact generator notation `(c^e c^e ... c^0)`: each term is a coefficient
//! and an exponent, exponents strictly decreasing down to 0. Over GF(4) the
//! coefficients `1, 2, 3` stand for `1, w, w^2`. Whitespace may appear
//! anywhere but must separate one term's exponent from the next coefficient.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};
use crate::polyring::Polynomial;

/// Parses generator notation.
pub fn parse_generator(text: &str, field: &Arc<Field>) -> Result<Polynomial> {
    let tokens = tokenize(text)?;
    let bad = || Error::Parse(format!("malformed generator {text:?}"));
    let (first, rest) = tokens.split_first().ok_or_else(bad)?;
    let (last, body) = rest.split_last().ok_or_else(bad)?;
    if *first != Token::Open || *last != Token::Close || body.is_empty() || body.len() % 3 != 0 {
        return Err(bad());
    }
    let mut terms: Vec<(Elem, usize)> = Vec::new();
    for chunk in body.chunks(3) {
        let (c, e) = match chunk {
            [Token::Num(c), Token::Caret, Token::Num(e)] => (*c, *e as usize),
            _ => return Err(bad()),
        };
        if c == 0 || c >= field.q() as u64 {
            return Err(Error::Parse(format!(
                "coefficient {c} is not a nonzero element of GF({})",
                field.q()
            )));
        }
        if let Some(&(_, prev)) = terms.last() {
            if e >= prev {
                return Err(Error::Parse(format!(
                    "exponents must strictly decrease ({prev} then {e})"
                )));
            }
        }
        terms.push((c as Elem, e));
    }
    if terms.last().map(|t| t.1) != Some(0) {
        return Err(Error::Parse("final exponent must be 0".into()));
    }
    let mut coeffs = vec![0; terms[0].1 + 1];
    for (c, e) in terms {
        coeffs[e] = c;
    }
    Polynomial::new(field, coeffs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Caret,
    Num(u64),
}

/// Splits on `(`, `)`, `^` and whitespace; digit runs become numbers.
fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '(' => out.push(Token::Open),
            ')' => out.push(Token::Close),
            '^' => out.push(Token::Caret),
            c if c.is_whitespace() => {}
            c if c.is_ascii_digit() => {
                let mut s = c.to_string();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    s.push(d);
                    chars.next();
                }
                let v = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("number too large in {text:?}")))?;
                out.push(Token::Num(v));
            }
            other => return Err(Error::Parse(format!("unexpected {other:?} in {text:?}"))),
        }
    }
    Ok(out)
}

/// Inverse of [`parse_generator`]; the zero polynomial renders as `()`.
pub fn emit_generator(p: &Polynomial) -> String {
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(e, c)| format!("{c}^{e}"))
        .collect();
    format!("({})", terms.join(" "))
}
