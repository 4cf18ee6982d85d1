//! Canonical text form of polynomials over a table field.
//!
//! Terms are listed in descending graded-lex order as `c * x0^a x1^b x2^c`,
//! every variable written with its exponent, joined by ` + `. A coefficient
//! is an integer over a prime field and a bracketed list of power-basis
//! coordinates otherwise. The zero polynomial is `0`.

use super::{MPoly, Mono};
use crate::error::{Error, Result};
use crate::gf::{Field, Gf};

fn coeff_text(f: &Gf, c: &u32) -> String {
    let co = f.coords(c);
    if f.k() == 1 {
        co[0].to_string()
    } else {
        let parts: Vec<String> = co.iter().map(|x| x.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

pub fn poly_to_text(f: &Gf, p: &MPoly<Gf>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let terms: Vec<String> = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .map(|(i, e)| format!("x{i}^{e}"))
                .collect();
            format!("{} * {}", coeff_text(f, c), mono.join(" "))
        })
        .collect();
    terms.join(" + ")
}

fn parse_coeff(f: &Gf, s: &str) -> Result<u32> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let co = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<u64>>>()?;
        f.from_coords(&co)
    } else {
        let v: i64 = s.parse().map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        if f.k() != 1 && !(0..f.p() as i64).contains(&v) {
            return Err(Error::Parse(format!(
                "integer coefficient {v} outside the prime field"
            )));
        }
        Ok(f.from_int(v))
    }
}

/// Parses the canonical form (and the same form with terms in any order).
pub fn parse_poly(f: &Gf, text: &str, nvars: usize) -> Result<MPoly<Gf>> {
    let text = text.trim();
    if text == "0" {
        return Ok(MPoly::zero(nvars));
    }
    let mut terms = Vec::new();
    for term in text.split(" + ") {
        let (cs, ms) = term
            .split_once('*')
            .ok_or_else(|| Error::Parse(format!("term without '*': {term:?}")))?;
        let c = parse_coeff(f, cs)?;
        let mut m = Mono::from_elem(0, nvars);
        for tok in ms.split_whitespace() {
            let (v, e) = tok.split_once('^').unwrap_or((tok, "1"));
            let i: usize = v
                .strip_prefix('x')
                .and_then(|x| x.parse().ok())
                .filter(|&i: &usize| i < nvars)
                .ok_or_else(|| Error::Parse(format!("bad variable {v:?}")))?;
            let e: u32 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?;
            m[i] += e;
        }
        terms.push((m, c));
    }
    Ok(MPoly::from_terms(f, nvars, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::vars;

    #[test]
    fn canonical_text_round_trip() {
        let f = Gf::new(2, 1, 0).unwrap();
        let x = vars(&f, 3);
        let p = x[0].pow(&f, 3).add(&f, &x[1].mul(&f, &x[2]));
        let t = poly_to_text(&f, &p);
        assert_eq!(t, "1 * x0^3 x1^0 x2^0 + 1 * x0^0 x1^1 x2^1");
        assert_eq!(parse_poly(&f, &t, 3).unwrap(), p);
        assert_eq!(poly_to_text(&f, &MPoly::zero(3)), "0");
    }

    #[test]
    fn coordinate_coefficients() {
        let f = Gf::new(3, 2, 0).unwrap();
        let c = f.from_coords(&[2, 1]).unwrap();
        let p = MPoly::var(&f, 1, 3).scale(&f, &c);
        let t = poly_to_text(&f, &p);
        assert_eq!(t, "[2,1] * x0^0 x1^1 x2^0");
        assert_eq!(parse_poly(&f, &t, 3).unwrap(), p);
        assert!(parse_poly(&f, "[2] * x0^1", 3).is_err());
    }
}
