//! The sparse term format used by the CLI and reports: a signed sum of
//! `c*x^a*y^b` terms with exact integer coefficients. Parsing is lenient
//! about whitespace and implicit `*`; formatting is canonical (terms sorted
//! by y-exponent then x-exponent, coefficients always explicit).

use num_bigint::BigInt;
use std::iter::Peekable;
use std::str::Chars;

use crate::error::{Error, Result};

/// Parse into `(coefficient, x-exponent, y-exponent)` triples, one per term.
/// Exponents may be negative (Laurent contexts); callers reject what their
/// domain does not allow.
pub fn parse_terms(s: &str) -> Result<Vec<(BigInt, i64, i64)>> {
    let mut it = s.chars().peekable();
    let mut out = Vec::new();
    skip_ws(&mut it);
    if it.peek().is_none() {
        return Err(Error::Parse("empty series expression".into()));
    }
    let mut first = true;
    loop {
        skip_ws(&mut it);
        let sign = match it.peek() {
            Some('+') => {
                it.next();
                1
            }
            Some('-') => {
                it.next();
                -1
            }
            None if !first => break,
            None => return Err(Error::Parse("dangling operator".into())),
            _ if first => 1,
            Some(c) => return Err(Error::Parse(format!("expected + or - before '{c}'"))),
        };
        let (coeff, xe, ye) = parse_term(&mut it)?;
        out.push((coeff * sign, xe, ye));
        first = false;
        skip_ws(&mut it);
        match it.peek() {
            None => break,
            Some('+') | Some('-') => continue,
            Some(c) => return Err(Error::Parse(format!("unexpected character '{c}'"))),
        }
    }
    Ok(out)
}

fn parse_term(it: &mut Peekable<Chars>) -> Result<(BigInt, i64, i64)> {
    let mut coeff = BigInt::from(1);
    let (mut xe, mut ye) = (0i64, 0i64);
    let mut factors = 0;
    loop {
        skip_ws(it);
        match it.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff *= parse_int(it)?;
                factors += 1;
            }
            Some('x') | Some('y') => {
                let var = it.next().unwrap();
                let exp = parse_exponent(it)?;
                if var == 'x' {
                    xe = xe
                        .checked_add(exp)
                        .ok_or_else(|| Error::Parse("exponent overflow".into()))?;
                } else {
                    ye = ye
                        .checked_add(exp)
                        .ok_or_else(|| Error::Parse("exponent overflow".into()))?;
                }
                factors += 1;
            }
            _ => break,
        }
        skip_ws(it);
        if it.peek() == Some(&'*') {
            it.next();
            // A '*' promises another factor.
            skip_ws(it);
            match it.peek() {
                Some(c) if c.is_ascii_digit() || *c == 'x' || *c == 'y' => {}
                _ => return Err(Error::Parse("dangling '*'".into())),
            }
        }
    }
    if factors == 0 {
        return Err(Error::Parse("empty term".into()));
    }
    Ok((coeff, xe, ye))
}

fn parse_exponent(it: &mut Peekable<Chars>) -> Result<i64> {
    if it.peek() != Some(&'^') {
        return Ok(1);
    }
    it.next();
    let neg = if it.peek() == Some(&'-') {
        it.next();
        true
    } else {
        false
    };
    let digits = take_digits(it)?;
    let v: i64 = digits
        .parse()
        .map_err(|_| Error::Parse(format!("exponent out of range: {digits}")))?;
    Ok(if neg { -v } else { v })
}

fn parse_int(it: &mut Peekable<Chars>) -> Result<BigInt> {
    let digits = take_digits(it)?;
    digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer: {digits}")))
}

fn take_digits(it: &mut Peekable<Chars>) -> Result<String> {
    let mut s = String::new();
    while let Some(c) = it.peek() {
        if c.is_ascii_digit() {
            s.push(*c);
            it.next();
        } else {
            break;
        }
    }
    if s.is_empty() {
        return Err(Error::Parse("expected digits".into()));
    }
    Ok(s)
}

fn skip_ws(it: &mut Peekable<Chars>) {
    while matches!(it.peek(), Some(c) if c.is_whitespace()) {
        it.next();
    }
}

/// Render terms given as `(coefficient string, x-exp, y-exp)`. Integer
/// coefficient strings participate in sign folding; anything else (such as
/// rational-function coefficients) is emitted verbatim.
pub fn format_term_strings(terms: &[(String, i64, i64)]) -> String {
    let mut sorted = terms.to_vec();
    sorted.sort_by_key(|&(_, xe, ye)| (ye, xe));
    if sorted.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (c, xe, ye)) in sorted.iter().enumerate() {
        let (neg, mag) = match c.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, c.as_str()),
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&render_term(mag, *xe, *ye));
    }
    out
}

fn render_term(mag: &str, xe: i64, ye: i64) -> String {
    let mut s = mag.to_string();
    if xe != 0 {
        s.push_str(&format!("*x^{xe}"));
    }
    if ye != 0 {
        s.push_str(&format!("*y^{ye}"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn terms_of(s: &str) -> Vec<(i64, i64, i64)> {
        parse_terms(s)
            .unwrap()
            .into_iter()
            .map(|(c, a, b)| (i64::try_from(c).unwrap(), a, b))
            .collect()
    }

    #[test]
    fn parses_the_documented_shapes() {
        assert_eq!(terms_of("1*x^4*y^2 + 2*x^15*y^3"), vec![(1, 4, 2), (2, 15, 3)]);
        assert_eq!(terms_of("x"), vec![(1, 1, 0)]);
        assert_eq!(terms_of("-x^2"), vec![(-1, 2, 0)]);
        assert_eq!(terms_of("3"), vec![(3, 0, 0)]);
        assert_eq!(terms_of("0"), vec![(0, 0, 0)]);
        assert_eq!(terms_of("x*y"), vec![(1, 1, 1)]);
        assert_eq!(terms_of("2x y"), vec![(2, 1, 1)]);
        assert_eq!(terms_of("1*x^-2"), vec![(1, -2, 0)]);
        assert_eq!(terms_of(" 1 + 1*x^1 "), vec![(1, 0, 0), (1, 1, 0)]);
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "x^", "q", "1 +", "+", "2**x", "x^2 y +", "1..2", "x + + y"] {
            assert!(parse_terms(bad).is_err(), "should reject {bad:?}");
        }
    }

    #[test]
    fn formats_canonically() {
        let terms = vec![
            ("2".to_string(), 15, 3),
            ("1".to_string(), 4, 2),
            ("-3".to_string(), 0, 0),
        ];
        assert_eq!(format_term_strings(&terms), "-3 + 1*x^4*y^2 + 2*x^15*y^3");
        assert_eq!(format_term_strings(&[]), "0");
    }

    proptest! {
        /// Formatting then parsing recovers the terms exactly.
        #[test]
        fn round_trip(terms in proptest::collection::vec((1i64..100, 0i64..40, 0i64..40), 0..8)) {
            // Deduplicate exponent pairs so the comparison is set-like.
            let mut seen = std::collections::BTreeMap::new();
            for (c, a, b) in &terms {
                seen.insert((*b, *a), *c);
            }
            let rendered: Vec<(String, i64, i64)> =
                seen.iter().map(|(&(b, a), &c)| (c.to_string(), a, b)).collect();
            let text = format_term_strings(&rendered);
            if seen.is_empty() {
                prop_assert_eq!(text, "0");
            } else {
                let parsed = parse_terms(&text).unwrap();
                let back: Vec<(String, i64, i64)> =
                    parsed.iter().map(|(c, a, b)| (c.to_string(), *a, *b)).collect();
                prop_assert_eq!(rendered, back);
            }
        }
    }
}
