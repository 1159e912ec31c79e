//! Text format: one polynomial per line, terms like `3*x0^2*x3 - x1*x2*x4`.
//! Lines starting with `#` are comments.

use super::monomial::{Monomial, MAX_EXPONENT};
use super::polynomial::Polynomial;
use super::ring::Ring;
use crate::error::PolyError;

pub fn parse_polynomial(ring: &Ring, s: &str) -> Result<Polynomial, PolyError> {
    parse_line(ring, s, 1)
}

fn parse_line(ring: &Ring, s: &str, line: usize) -> Result<Polynomial, PolyError> {
    let err = |msg: String| PolyError::Parse { line, msg };
    let field = ring.field();
    let n = ring.nvars();
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty polynomial".into()));
    }
    // split into signed terms
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..=bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let (neg, body) = match t.as_bytes()[0] {
            b'-' => (true, &t[1..]),
            b'+' => (false, &t[1..]),
            _ => (false, t),
        };
        if body.is_empty() {
            return Err(err(format!("dangling sign in `{t}`")));
        }
        let mut coeff: u64 = 1;
        let mut exps = vec![0u32; n];
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(err(format!("empty factor in `{t}`")));
            }
            if factor.as_bytes()[0].is_ascii_digit() {
                let v: u64 = factor.parse().map_err(|_| err(format!("bad coefficient `{factor}`")))?;
                coeff = coeff * (v % field.modulus()) % field.modulus();
                continue;
            }
            let (name, e) = match factor.split_once('^') {
                Some((name, e)) => (name, e.parse::<u32>().map_err(|_| err(format!("bad exponent in `{factor}`")))?),
                None => (factor, 1),
            };
            let idx = ring.index_of_var(name).ok_or_else(|| err(format!("unknown variable `{name}`")))?;
            exps[idx] += e;
            if exps[idx] > MAX_EXPONENT {
                return Err(PolyError::ExponentOverflow);
            }
        }
        let mut c = coeff as u32;
        if neg {
            c = field.neg(c);
        }
        out.push((Monomial::from_exponents(&exps), c));
    }
    Ok(Polynomial::from_terms(ring, out))
}

/// Parses an ideal file; blank lines and `#` comments are skipped.
pub fn parse_polynomials(ring: &Ring, text: &str) -> Result<Vec<Polynomial>, PolyError> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_line(ring, line, k + 1)?);
    }
    Ok(out)
}

pub fn format_polynomials(polys: &[Polynomial]) -> String {
    let mut s = String::new();
    for f in polys {
        s.push_str(&f.to_string());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::PrimeField;

    #[test]
    fn parses_signs_and_powers() {
        let r = Ring::new(PrimeField::default_small(), 3).unwrap();
        let f = parse_polynomial(&r, "-x0^2 + 2*x1*x2 - 5").unwrap();
        assert_eq!(f.to_string(), "-x0^2 + 2*x1*x2 - 5");
        let g = parse_polynomial(&r, "x0*x0 - x0^2").unwrap();
        assert!(g.is_zero());
        assert_eq!(parse_polynomial(&r, "103*x1").unwrap().to_string(), "2*x1");
    }

    #[test]
    fn rejects_garbage() {
        let r = Ring::new(PrimeField::default_small(), 2).unwrap();
        assert!(matches!(parse_polynomial(&r, "x5"), Err(PolyError::Parse { .. })));
        assert!(matches!(parse_polynomial(&r, "x0**x1"), Err(PolyError::Parse { .. })));
        let text = "# header\nx0\n\nx1^\n";
        assert!(matches!(parse_polynomials(&r, text), Err(PolyError::Parse { line: 4, .. })));
    }

    #[test]
    fn file_round_trip() {
        let r = Ring::new(PrimeField::default_large(), 4).unwrap();
        let polys = parse_polynomials(&r, "x0*x1 - x2*x3\nx0^2 + 7*x3^2\n").unwrap();
        let text = format_polynomials(&polys);
        assert_eq!(parse_polynomials(&r, &text).unwrap(), polys);
    }
}
