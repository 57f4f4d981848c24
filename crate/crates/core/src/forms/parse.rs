use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use super::{IntForm, Integers, Monomial};
use crate::error::{Error, Result};

/// Parse an integer form.
///
/// Accepts the canonical serialization (`c*x^a*y^b*z^c` joined by `+`) and
/// the usual hand-written variants: whitespace, `-` between terms, omitted
/// coefficients or exponents (`2*x^2 - y*z`). All terms must share one degree;
/// the text `0` parses as the zero form of degree `zero_degree`.
pub fn parse_int_form(text: &str, zero_degree: u32) -> Result<IntForm> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::InvalidForm("empty form".into()));
    }
    let mut terms: Vec<(Monomial, BigInt)> = Vec::new();
    for raw in split_terms(&s) {
        let (neg, body) = strip_signs(raw)?;
        let (m, mut c) = parse_term(body)?;
        if neg {
            c = -c;
        }
        terms.push((m, c));
    }
    let degree = match terms.iter().find(|(_, c)| *c != BigInt::from(0)) {
        Some((m, _)) => m.iter().sum(),
        None => zero_degree,
    };
    for (m, c) in &terms {
        if m.iter().sum::<u32>() != degree && *c != BigInt::from(0) {
            return Err(Error::InvalidForm(format!("inhomogeneous term {m:?}")));
        }
    }
    IntForm::from_terms(Integers, degree, terms.into_iter().filter(|(m, _)| m.iter().sum::<u32>() == degree))
}

/// Split at `+`/`-` that start a new term (not directly after `*`, `^` or another sign).
fn split_terms(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len() {
        let c = bytes[i];
        let prev = bytes[i - 1];
        if (c == b'+' || c == b'-') && !matches!(prev, b'*' | b'^' | b'+' | b'-') {
            out.push(&s[start..i]);
            start = i;
        }
    }
    out.push(&s[start..]);
    out
}

fn strip_signs(term: &str) -> Result<(bool, &str)> {
    let mut neg = false;
    let mut rest = term;
    while let Some(c) = rest.chars().next() {
        match c {
            '+' => rest = &rest[1..],
            '-' => {
                neg = !neg;
                rest = &rest[1..];
            }
            _ => break,
        }
    }
    if rest.is_empty() {
        return Err(Error::InvalidForm(format!("dangling sign in `{term}`")));
    }
    Ok((neg, rest))
}

fn parse_term(body: &str) -> Result<(Monomial, BigInt)> {
    let mut coeff = BigInt::one();
    let mut m = [0u32; 3];
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(Error::InvalidForm(format!("empty factor in `{body}`")));
        }
        let first = factor.as_bytes()[0];
        if first.is_ascii_digit() || first == b'-' {
            let v: BigInt = factor.parse().map_err(|_| Error::InvalidForm(format!("bad coefficient `{factor}`")))?;
            coeff *= v;
            continue;
        }
        let (var, exp) = match factor.split_once('^') {
            Some((v, e)) => {
                let e: u32 = e.parse().map_err(|_| Error::InvalidForm(format!("bad exponent `{e}`")))?;
                (v, e)
            }
            None => (factor, 1),
        };
        let idx = match var {
            "x" => 0,
            "y" => 1,
            "z" => 2,
            _ => return Err(Error::InvalidForm(format!("unknown variable `{var}`"))),
        };
        m[idx] += exp;
    }
    Ok((m, coeff))
}
