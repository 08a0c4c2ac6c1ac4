//! Text forms used by the command line and the sequence file format:
//! fields `Q` / `Q(sqrt,<d>)`, elements `a/b` or `a/b+c/e*sqrt(d)`
//! (whitespace-free), polynomials as comma-separated coefficient lists in
//! ascending degree, and sequence shorthands `arith:a:n`, `geom:a:q:n`,
//! `file:<path>`.

use std::fs;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::poly::Polynomial;
use crate::sequences::SequencePrefix;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_field(text: &str) -> Result<NumberField> {
    let t = text.trim();
    if t == "Q" {
        return Ok(NumberField::rationals());
    }
    let inner = t
        .strip_prefix("Q(sqrt,")
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| parse_err(format!("bad field literal `{t}`; use Q or Q(sqrt,<d>)")))?;
    let d: i64 = inner
        .parse()
        .map_err(|_| parse_err(format!("bad field parameter `{inner}`")))?;
    NumberField::quadratic(d)
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    match t.split_once('/') {
        None => {
            let n = BigInt::from_str(t).map_err(|_| parse_err(format!("bad integer `{t}`")))?;
            Ok(BigRational::from(n))
        }
        Some((num, den)) => {
            let n =
                BigInt::from_str(num).map_err(|_| parse_err(format!("bad numerator `{num}`")))?;
            let d = BigInt::from_str(den)
                .map_err(|_| parse_err(format!("bad denominator `{den}`")))?;
            if d.is_zero() {
                return Err(parse_err("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// One additive part of an element literal: a rational, `sqrt(d)`, or
/// `coeff*sqrt(d)`.
fn parse_part(field: NumberField, part: &str) -> Result<(BigRational, BigRational)> {
    if let Some(idx) = part.find("sqrt(") {
        let d_text = part[idx + 5..]
            .strip_suffix(')')
            .ok_or_else(|| parse_err(format!("unterminated sqrt in `{part}`")))?;
        let d: i64 = d_text
            .parse()
            .map_err(|_| parse_err(format!("bad sqrt parameter `{d_text}`")))?;
        if field.is_rationals() || d != field.d() {
            return Err(parse_err(format!(
                "sqrt({d}) does not belong to {field}"
            )));
        }
        let coeff_text = &part[..idx];
        let coeff = match coeff_text {
            "" | "+" => BigRational::from(BigInt::from(1)),
            "-" => BigRational::from(BigInt::from(-1)),
            _ => {
                let stripped = coeff_text
                    .strip_suffix('*')
                    .ok_or_else(|| parse_err(format!("missing `*` before sqrt in `{part}`")))?;
                parse_rational(stripped)?
            }
        };
        Ok((BigRational::zero(), coeff))
    } else {
        Ok((parse_rational(part)?, BigRational::zero()))
    }
}

/// Element literal: `a/b`, `a/b+c/e*sqrt(d)`, `c/e*sqrt(d)` and signed
/// variants, whitespace-free.
pub fn parse_element(field: NumberField, text: &str) -> Result<FieldElement> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(parse_err("empty element literal"));
    }
    // Split on top-level +/- signs (not inside sqrt(...) and not leading).
    let mut parts: Vec<String> = Vec::new();
    let mut current = String::new();
    let mut depth = 0usize;
    for (i, ch) in t.chars().enumerate() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '+' | '-' if i > 0 && depth == 0 => {
                let prev = t.chars().nth(i - 1).unwrap();
                // A sign following [0-9 ) ] starts a new part; after '/', '*'
                // or another sign it belongs to the number.
                if prev.is_ascii_digit() || prev == ')' {
                    parts.push(current.clone());
                    current.clear();
                }
            }
            _ => {}
        }
        current.push(ch);
    }
    parts.push(current);
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    for part in parts {
        let p = part.strip_prefix('+').unwrap_or(&part);
        let (pa, pb) = parse_part(field, p)?;
        a += pa;
        b += pb;
    }
    FieldElement::new(field, a, b)
}

/// Polynomial literal: comma-separated element literals, ascending degree.
pub fn parse_polynomial(field: NumberField, text: &str) -> Result<Polynomial> {
    let coeffs: Result<Vec<FieldElement>> = text
        .split(',')
        .map(|c| parse_element(field, c))
        .collect();
    Ok(Polynomial::new(field, coeffs?))
}

/// Sequence shorthand: `arith:a:n` (a, a+1, ..., a+n-1), `geom:a:q:n`
/// (a, aq, ..., a q^(n-1)), or `file:<path>`.
pub fn parse_sequence(field: NumberField, text: &str) -> Result<SequencePrefix> {
    let mut pieces = text.splitn(2, ':');
    let kind = pieces.next().unwrap_or_default();
    let rest = pieces.next().unwrap_or_default();
    match kind {
        "arith" => {
            let (start_text, n_text) = rest
                .rsplit_once(':')
                .ok_or_else(|| parse_err("arith:<start>:<n>"))?;
            let start = parse_element(field, start_text)?;
            let n: usize = n_text
                .parse()
                .map_err(|_| parse_err(format!("bad length `{n_text}`")))?;
            let one = FieldElement::one(field);
            let mut terms = Vec::with_capacity(n);
            let mut current = start;
            for _ in 0..n {
                terms.push(current.clone());
                current = current.add(&one);
            }
            SequencePrefix::new(field, terms)
        }
        "geom" => {
            let mut it = rest.rsplitn(2, ':');
            let n_text = it.next().ok_or_else(|| parse_err("geom:<a>:<q>:<n>"))?;
            let head = it.next().ok_or_else(|| parse_err("geom:<a>:<q>:<n>"))?;
            let (a_text, q_text) = head
                .split_once(':')
                .ok_or_else(|| parse_err("geom:<a>:<q>:<n>"))?;
            let a = parse_element(field, a_text)?;
            let q = parse_element(field, q_text)?;
            if q.is_zero() {
                return Err(Error::ZeroTerm);
            }
            let n: usize = n_text
                .parse()
                .map_err(|_| parse_err(format!("bad length `{n_text}`")))?;
            let mut terms = Vec::with_capacity(n);
            let mut current = a;
            for _ in 0..n {
                terms.push(current.clone());
                current = current.mul(&q);
            }
            SequencePrefix::new(field, terms)
        }
        "file" => parse_sequence_file(rest),
        _ => Err(parse_err(format!(
            "unknown sequence shorthand `{kind}`; use arith:, geom: or file:"
        ))),
    }
}

/// Sequence file: line 1 `field <literal>`, one element literal per line
/// afterwards; `#` comments and blank lines allowed.
pub fn parse_sequence_file(path: &str) -> Result<SequencePrefix> {
    let content =
        fs::read_to_string(path).map_err(|e| parse_err(format!("cannot read {path}: {e}")))?;
    parse_sequence_text(&content)
}

pub fn parse_sequence_text(content: &str) -> Result<SequencePrefix> {
    let mut field: Option<NumberField> = None;
    let mut terms = Vec::new();
    for raw in content.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match field {
            None => {
                let literal = line
                    .strip_prefix("field")
                    .ok_or_else(|| parse_err("sequence file must start with `field <literal>`"))?
                    .trim();
                field = Some(parse_field(literal)?);
            }
            Some(k) => terms.push(parse_element(k, line)?),
        }
    }
    let field = field.ok_or_else(|| parse_err("sequence file is empty"))?;
    SequencePrefix::new(field, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields() {
        assert!(parse_field("Q").unwrap().is_rationals());
        let k = parse_field("Q(sqrt,-1)").unwrap();
        assert_eq!(k.d(), -1);
        assert!(parse_field("Q(sqrt,12)").is_err());
        assert!(parse_field("Z").is_err());
    }

    #[test]
    fn elements_roundtrip() {
        let k = parse_field("Q(sqrt,5)").unwrap();
        for text in ["3/2", "-7", "1/2+1/2*sqrt(5)", "-1/3-2*sqrt(5)", "sqrt(5)"] {
            let e = parse_element(k, text).unwrap();
            let again = parse_element(k, &e.to_string()).unwrap();
            assert_eq!(e, again, "roundtrip failed for {text}");
        }
        let q = NumberField::rationals();
        assert_eq!(
            parse_element(q, "8/9").unwrap().as_rational().unwrap(),
            &BigRational::new(BigInt::from(8), BigInt::from(9))
        );
        assert!(parse_element(q, "sqrt(5)").is_err());
        assert!(parse_element(k, "sqrt(3)").is_err());
        assert!(parse_element(q, "1/0").is_err());
    }

    #[test]
    fn polynomials() {
        let q = NumberField::rationals();
        let f = parse_polynomial(q, "-2,0,1").unwrap();
        assert_eq!(f, Polynomial::from_ints(q, &[-2, 0, 1]));
        assert_eq!(f.to_string(), "-2,0,1");
        let g = parse_polynomial(q, "1/2,-3/4").unwrap();
        assert_eq!(g.degree(), 1);
    }

    #[test]
    fn sequences_shorthand() {
        let q = NumberField::rationals();
        let s = parse_sequence(q, "arith:1:21").unwrap();
        assert_eq!(s.len(), 21);
        assert_eq!(s.term(1), &FieldElement::from_int(q, 1));
        assert_eq!(s.term(21), &FieldElement::from_int(q, 21));

        let g = parse_sequence(q, "geom:1:2:5").unwrap();
        assert_eq!(g.term(5), &FieldElement::from_int(q, 16));

        let g2 = parse_sequence(q, "geom:3/2:1/2:3").unwrap();
        assert_eq!(
            g2.term(3).as_rational().unwrap(),
            &BigRational::new(BigInt::from(3), BigInt::from(8))
        );
    }

    #[test]
    fn sequence_file_text() {
        let text = "# sample\nfield Q(sqrt,5)\n1/2+1/2*sqrt(5)\n2 # golden ratio squared is 1 + phi\n";
        let s = parse_sequence_text(text).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.field().d(), 5);
    }
}
