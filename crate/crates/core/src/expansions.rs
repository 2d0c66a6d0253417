//! Greedy, quasi-greedy and lazy digit expansions, and exact evaluation.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numerics::{BaseValue, FieldElement};
use crate::words::{Digits, EPSequence, Word};

/// Digit budget used when callers do not choose one.
pub const DEFAULT_DEPTH: usize = 4096;

/// Outcome of a digit algorithm.
#[derive(Debug, Clone)]
pub struct ExpansionResult {
    /// Exact sequence when the remainder orbit repeated, else the prefix
    /// computed within the depth budget.
    pub digits: Digits,
    /// Remainders `r_0 = x, r_1, ...` when a trace was requested.
    pub remainders: Option<Vec<FieldElement>>,
}

impl ExpansionResult {
    pub fn exact(&self) -> Option<&EPSequence> {
        self.digits.exact()
    }

    pub fn is_prefix_only(&self) -> bool {
        self.digits.exact().is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Greedy,
    QuasiGreedy,
}

/// Runs the greedy (`d <= q r`) or quasi-greedy (`d < q r`) recursion with
/// exact cycle detection on the remainders.
pub fn expand(x: &FieldElement, q: &BaseValue, depth: usize, alg: Algorithm, trace: bool) -> Result<ExpansionResult> {
    let m = q.m();
    if !q.in_jq(x)? {
        return Err(Error::OutOfJq);
    }
    if alg == Algorithm::QuasiGreedy && x.is_zero() {
        return Ok(ExpansionResult {
            digits: Digits::Exact(EPSequence::constant(0, m)),
            remainders: trace.then(|| vec![x.clone()]),
        });
    }
    let strict = alg == Algorithm::QuasiGreedy;
    if !trace {
        if let (Some(qr), Some(xr)) = (q.as_rational(), x.as_rational()) {
            return Ok(ExpansionResult { digits: expand_rational(&xr, &qr, m, depth, strict), remainders: None });
        }
    }
    let mut seen: HashMap<FieldElement, usize> = HashMap::new();
    let mut rems = vec![x.clone()];
    let mut digits = Vec::new();
    let mut r = x.clone();
    seen.insert(r.clone(), 0);
    while digits.len() < depth {
        let t = r.mul_q();
        let d = t
            .largest_digit_below(m, strict)
            .expect("remainders stay positive");
        r = t.sub_int(d);
        digits.push(d);
        if let Some(&j) = seen.get(&r) {
            let per = digits[j..].to_vec();
            digits.truncate(j);
            if trace {
                rems.push(r);
            }
            return Ok(ExpansionResult {
                digits: Digits::Exact(EPSequence::from_parts(digits, per, m)),
                remainders: trace.then_some(rems),
            });
        }
        seen.insert(r.clone(), digits.len());
        if trace {
            rems.push(r.clone());
        }
    }
    Ok(ExpansionResult {
        digits: Digits::Prefix(Word::new(digits, m).expect("digits within alphabet")),
        remainders: trace.then_some(rems),
    })
}

/// The same recursion for a rational base and point, on reduced integer
/// pairs instead of field elements.
fn expand_rational(x: &BigRational, q: &BigRational, m: u32, depth: usize, strict: bool) -> Digits {
    let (a, b) = (q.numer(), q.denom());
    let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
    // every prime of a denominator divides `small`, so common factors can
    // be found with remainders by a small integer instead of a full gcd
    let small = b * x.denom();
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    seen.insert((num.clone(), den.clone()), 0);
    let mut digits = Vec::new();
    while digits.len() < depth {
        let t_num = &num * a;
        let t_den = &den * b;
        let (whole, rest) = t_num.div_rem(&t_den);
        let mut d = whole.to_u32().map_or(m, |w| w.min(m));
        if strict && rest.is_zero() && BigInt::from(d) == whole {
            d -= 1;
        }
        num = t_num - &t_den * d;
        den = t_den;
        loop {
            let h = (&num % &small).gcd(&small);
            let g = if h.is_one() { h } else { (&den % &h).gcd(&h) };
            if g.is_one() {
                break;
            }
            num /= &g;
            den /= &g;
        }
        digits.push(d);
        let key = (num.clone(), den.clone());
        if let Some(&j) = seen.get(&key) {
            let per = digits[j..].to_vec();
            digits.truncate(j);
            return Digits::Exact(EPSequence::from_parts(digits, per, m));
        }
        seen.insert(key, digits.len());
    }
    Digits::Prefix(Word::new(digits, m).expect("digits within alphabet"))
}

/// The greedy expansion `b(x, q)`.
pub fn greedy_expand(x: &FieldElement, q: &BaseValue, depth: usize) -> Result<ExpansionResult> {
    expand(x, q, depth, Algorithm::Greedy, false)
}

/// The quasi-greedy expansion `a(x, q)`, with `a(0, q) = 0^∞`.
pub fn quasi_greedy_expand(x: &FieldElement, q: &BaseValue, depth: usize) -> Result<ExpansionResult> {
    expand(x, q, depth, Algorithm::QuasiGreedy, false)
}

/// The lazy expansion: reflection of the greedy expansion of `M/(q-1) - x`.
pub fn lazy_expand(x: &FieldElement, q: &BaseValue, depth: usize) -> Result<ExpansionResult> {
    if !q.in_jq(x)? {
        return Err(Error::OutOfJq);
    }
    let g = greedy_expand(&q.reflect_point(x)?, q, depth)?;
    Ok(ExpansionResult { digits: g.digits.reflect(), remainders: None })
}

/// `sum_{i<=|w|} w_i q^{|w|-i}` (Horner form of a word).
fn horner(w: &[u32], q: &BaseValue) -> Result<FieldElement> {
    let field = q.field()?;
    let mut acc = FieldElement::zero(field);
    for &d in w {
        acc = acc.mul_q().add(&FieldElement::from_integer(field, d));
    }
    Ok(acc)
}

/// Exact value `pi_q(s)` of an eventually periodic sequence.
pub fn pi_q(s: &EPSequence, q: &BaseValue) -> Result<FieldElement> {
    let m = q.m();
    if let Some(&digit) = s.pre_digits().iter().chain(s.per_digits()).find(|&&d| d > m) {
        return Err(Error::DigitOutOfRange { digit, m });
    }
    let qe = q.q()?;
    let per = s.per_digits();
    let mut total = horner(s.pre_digits(), q)?;
    if per != [0] {
        let denom = qe.pow(per.len()).sub_int(1);
        total = total.add(&horner(per, q)?.mul(&denom.inverse().expect("q^L > 1")));
    }
    let qinv = qe.inverse().expect("q is nonzero");
    Ok(total.mul(&qinv.pow(s.pre_digits().len())))
}

/// The first `n` digits of `s`.
pub fn truncate_to_greedy(s: &EPSequence, n: usize) -> Word {
    s.prefix(n)
}

/// `(β(q), α(q))`, the greedy and quasi-greedy expansions of 1.
///
/// Digit-stream bases report their defining digits as a prefix of length
/// `depth` for both.
pub fn alpha_beta(q: &BaseValue, depth: usize) -> Result<(ExpansionResult, ExpansionResult)> {
    if !q.is_exact() {
        let digits: Vec<u32> = (1..=depth).map(|i| q.stream_digit(i).unwrap()).collect();
        let w = Word::new(digits, q.m())?;
        let r = ExpansionResult { digits: Digits::Prefix(w), remainders: None };
        return Ok((r.clone(), r));
    }
    let one = q.int(1)?;
    Ok((greedy_expand(&one, q, depth)?, quasi_greedy_expand(&one, q, depth)?))
}

/// `α(q)` alone.
pub fn alpha(q: &BaseValue, depth: usize) -> Result<Digits> {
    Ok(alpha_beta_one(q, depth, Algorithm::QuasiGreedy)?.digits)
}

/// `β(q)` alone.
pub fn beta(q: &BaseValue, depth: usize) -> Result<Digits> {
    Ok(alpha_beta_one(q, depth, Algorithm::Greedy)?.digits)
}

fn alpha_beta_one(q: &BaseValue, depth: usize, alg: Algorithm) -> Result<ExpansionResult> {
    if !q.is_exact() {
        return Ok(alpha_beta(q, depth)?.0);
    }
    expand(&q.int(1)?, q, depth, alg, false)
}
