//! Plain-text polynomial format used in scenario files and reports.
//!
//! Terms are joined by `+`/`-`; a term is an optional coefficient (`7` or
//! `3/2`) followed by `*`-separated variables `xN` with optional `^e`.
//! Whitespace is ignored. Printing is the `Display` impl of [`HomogPoly`].

use num_bigint::BigInt;

use super::monomial::Monomial;
use super::poly::HomogPoly;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

impl HomogPoly {
    /// Parses a homogeneous form in `num_vars` variables. The text `0` gives
    /// the zero form of degree 0; see [`HomogPoly::with_degree`].
    pub fn parse(text: &str, num_vars: usize, field: Field) -> Result<HomogPoly> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
        for (negative, body) in split_terms(&compact)? {
            let (m, mut c) = parse_term(body, num_vars, field)?;
            if negative {
                c = -c;
            }
            terms.push((m, c));
        }
        let degree = terms[0].0.degree();
        if let Some((m, _)) = terms.iter().find(|(m, _)| m.degree() != degree) {
            return Err(Error::Parse(format!(
                "not homogeneous: term {m} has degree {}, expected {degree}",
                m.degree()
            )));
        }
        HomogPoly::from_terms(num_vars, degree, field, terms)
    }
}

fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0;
    let mut negative = false;
    let mut i = 0;
    if matches!(bytes.first(), Some(b'+') | Some(b'-')) {
        negative = bytes[0] == b'-';
        start = 1;
        i = 1;
    }
    while i < bytes.len() {
        if bytes[i] == b'+' || bytes[i] == b'-' {
            // an exponent never carries a sign, so every sign starts a term
            out.push((negative, &s[start..i]));
            negative = bytes[i] == b'-';
            start = i + 1;
        }
        i += 1;
    }
    out.push((negative, &s[start..]));
    if let Some((_, t)) = out.iter().find(|(_, t)| t.is_empty()) {
        return Err(Error::Parse(format!("empty term in '{s}' near '{t}'")));
    }
    Ok(out)
}

fn parse_term(body: &str, num_vars: usize, field: Field) -> Result<(Monomial, Scalar)> {
    let mut coeff = field.one();
    let mut exps = vec![0u32; num_vars];
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in term '{body}'")));
        }
        if let Some(rest) = factor.strip_prefix('x') {
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, parse_u32(e, factor)?),
                None => (rest, 1),
            };
            let idx = parse_u32(idx, factor)? as usize;
            if idx >= num_vars {
                return Err(Error::Parse(format!(
                    "variable x{idx} out of range for {num_vars} variables"
                )));
            }
            exps[idx] += exp;
        } else {
            coeff = coeff * parse_coefficient(factor, field)?;
        }
    }
    Ok((Monomial::new(exps), coeff))
}

fn parse_u32(s: &str, ctx: &str) -> Result<u32> {
    s.parse()
        .map_err(|_| Error::Parse(format!("bad integer '{s}' in '{ctx}'")))
}

fn parse_coefficient(s: &str, field: Field) -> Result<Scalar> {
    let parse_int = |t: &str| {
        t.parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad coefficient '{s}'")))
    };
    match s.split_once('/') {
        Some((n, d)) => field.from_ratio(&parse_int(n)?, &parse_int(d)?),
        None => Ok(field.from_bigint(&parse_int(s)?)),
    }
}
