use super::{Element, GradedRing, Monomial};
use crate::error::{Error, Result};

/// Parses a polynomial such as `x^2 + 2*x*y - y + 1` in the given ring.
///
/// Factors are multiplied left to right, so Koszul signs follow the written
/// order. Coefficients are integers reduced mod `p`.
pub fn parse_element(ring: &GradedRing, s: &str) -> Result<Element> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut out = Element::zero();
    let mut sign = 1i64;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut i = 0;
    if bytes[0] == b'-' || bytes[0] == b'+' {
        sign = if bytes[0] == b'-' { -1 } else { 1 };
        i = 1;
        start = 1;
    }
    while i <= bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && i > start) {
            let t = parse_term(ring, &s[start..i])?;
            let t = if sign < 0 { ring.neg(&t) } else { t };
            out = ring.add(&out, &t);
            if i < bytes.len() {
                sign = if bytes[i] == b'-' { -1 } else { 1 };
            }
            start = i + 1;
        }
        i += 1;
    }
    Ok(out)
}

fn parse_term(ring: &GradedRing, t: &str) -> Result<Element> {
    if t.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let mut acc = ring.one();
    for factor in t.split('*') {
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => {
                let e: u32 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in {factor}")))?;
                (b, e)
            }
            None => (factor, 1),
        };
        let value = if let Ok(c) = base.parse::<i64>() {
            ring.constant(c)
        } else if base == "0" {
            Element::zero()
        } else {
            let i = ring
                .gen_index(base)
                .ok_or_else(|| Error::Parse(format!("unknown generator {base}")))?;
            ring.monomial(Monomial::var(ring.ngens(), i), 1)
        };
        acc = ring.mul(&acc, &ring.pow(&value, exp));
    }
    Ok(acc)
}
