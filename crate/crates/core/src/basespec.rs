//! Text syntax for bases and points.
//!
//! Bases: `p/q`, an integer or decimal, `poly:c_n,...,c_0@[lo,hi]`,
//! `golden:M=k`, `kl:M=k`, `tribonacci`, and `beta:<word>` for the base
//! whose greedy expansion of 1 is the given finite word.
//!
//! Points: a rational or decimal number, or `pi:<sequence>` for the value of
//! an eventually periodic digit sequence.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::expansions::pi_q;
use crate::landmarks::{base_of_word, generalized_golden, kl_constant};
use crate::numerics::{BaseValue, FieldElement};
use crate::words::{EPSequence, Word};

fn parse_integer(text: &str, pos: usize) -> Result<BigInt> {
    text.trim().parse::<BigInt>().map_err(|_| Error::parse(pos, format!("expected an integer, found {text:?}")))
}

/// Parses `a/b`, an integer, or a decimal such as `-1.25`, exactly.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    parse_rational_at(text, 0)
}

fn parse_rational_at(text: &str, pos: usize) -> Result<BigRational> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::parse(pos, "expected a number"));
    }
    if let Some((n, d)) = t.split_once('/') {
        let num = parse_integer(n, pos)?;
        let den = parse_integer(d, pos + n.len() + 1)?;
        if den.is_zero() {
            return Err(Error::parse(pos + n.len() + 1, "zero denominator"));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let int_part = if int.is_empty() || int == "-" { BigInt::zero() } else { parse_integer(int, pos)?.abs() };
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::parse(pos + int.len() + 1, format!("bad fractional part {frac:?}")));
        }
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_part: BigInt = frac.parse().expect("checked digits");
        let v = BigRational::new(int_part * &scale + frac_part, scale);
        return Ok(if neg { -v } else { v });
    }
    Ok(BigRational::from_integer(parse_integer(t, pos)?))
}

fn named_m(text: &str, name: &str, given: Option<u32>) -> Result<u32> {
    let rest = &text[name.len()..];
    let value = rest
        .strip_prefix("M=")
        .ok_or_else(|| Error::parse(name.len(), "expected M=<integer>"))?;
    let m: u32 = value
        .trim()
        .parse()
        .map_err(|_| Error::parse(name.len() + 2, format!("bad alphabet bound {value:?}")))?;
    check_m(m, given, name.len() + 2)
}

fn check_m(m: u32, given: Option<u32>, pos: usize) -> Result<u32> {
    match given {
        Some(g) if g != m => Err(Error::parse(pos, format!("base is over M={m} but M={g} was requested"))),
        _ => Ok(m),
    }
}

/// Parses a base. `m` is the requested alphabet bound; forms that carry
/// their own bound must agree with it, and the rest default to 1.
pub fn parse_base_spec(text: &str, m: Option<u32>) -> Result<BaseValue> {
    let t = text.trim();
    if t.starts_with("golden:") {
        return generalized_golden(named_m(t, "golden:", m)?);
    }
    if t.starts_with("kl:") {
        return Ok(kl_constant(named_m(t, "kl:", m)?));
    }
    if t == "tribonacci" {
        let m = check_m(1, m, 0)?;
        let c: Vec<BigInt> = [1, -1, -1, -1].into_iter().map(BigInt::from).collect();
        return BaseValue::from_polynomial(&c, BigRational::new(9.into(), 5.into()), BigRational::new(19.into(), 10.into()), m);
    }
    let m = m.unwrap_or(1);
    if let Some(word) = t.strip_prefix("beta:") {
        let w = Word::parse(word, m).map_err(|e| shift_parse(e, 5))?;
        return base_of_word(&w);
    }
    if let Some(body) = t.strip_prefix("poly:") {
        let at = body.find('@').ok_or_else(|| Error::parse(5 + body.len(), "expected @[lo,hi]"))?;
        let mut coeffs = Vec::new();
        let mut offset = 5;
        for part in body[..at].split(',') {
            coeffs.push(parse_integer(part, offset)?);
            offset += part.len() + 1;
        }
        let range = body[at + 1..].trim();
        let inner = range
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::parse(5 + at + 1, "expected [lo,hi]"))?;
        let (lo, hi) = inner.split_once(',').ok_or_else(|| Error::parse(5 + at + 2, "expected lo,hi"))?;
        let lo_pos = 5 + at + 2;
        let lo = parse_rational_at(lo, lo_pos)?;
        let hi = parse_rational_at(hi, lo_pos + inner.find(',').unwrap() + 1)?;
        return BaseValue::from_polynomial(&coeffs, lo, hi, m);
    }
    BaseValue::from_rational(parse_rational(t)?, m)
}

fn shift_parse(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

/// Parses a point of Q(q).
pub fn parse_point(text: &str, q: &BaseValue) -> Result<FieldElement> {
    let t = text.trim();
    if let Some(seq) = t.strip_prefix("pi:") {
        let s = EPSequence::parse(seq, q.m()).map_err(|e| shift_parse(e, 3))?;
        return pi_q(&s, q);
    }
    q.ratio(&parse_rational(t)?)
}
