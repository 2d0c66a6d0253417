//! Distinguished bases and the combinatorics of the components of
//! `(1, M+1] \ closure(U)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{self, AdmissibleMode, BaseClass};
use crate::error::{Error, Result};
use crate::numerics::{refine_interval, BaseValue, DyadicInterval};
use crate::words::{Digits, EPSequence, Word};

fn thue_morse(i: usize) -> u32 {
    i.count_ones() & 1
}

/// Digit `i` (from 1) of α(q_KL) for alphabet bound `m`.
pub fn thue_morse_digit(m: u32, i: usize) -> u32 {
    let half = m.div_ceil(2);
    if m % 2 == 1 {
        half - 1 + thue_morse(i)
    } else {
        half + thue_morse(i) - thue_morse(i - 1)
    }
}

/// First `n` digits of the quasi-greedy expansion of 1 in the
/// Komornik-Loreti base.
pub fn thue_morse_alpha(m: u32, n: usize) -> Word {
    let digits = (1..=n).map(|i| thue_morse_digit(m, i)).collect();
    Word::new(digits, m).expect("Thue-Morse digits lie in the alphabet")
}

/// The Komornik-Loreti constant, the smallest base in U.
pub fn kl_constant(m: u32) -> BaseValue {
    BaseValue::digit_stream(m, format!("kl:M={m}"), move |i| thue_morse_digit(m, i))
}

/// The Komornik-Loreti constant with an enclosure of width `2^-precision`.
pub fn kl_enclosure(m: u32, precision: u32) -> (BaseValue, DyadicInterval) {
    let q = kl_constant(m);
    let iv = refine_interval(&q, precision);
    (q, iv)
}

/// The generalized golden ratio, the smallest base in V.
pub fn generalized_golden(m: u32) -> Result<BaseValue> {
    if m == 0 {
        return Err(Error::OutOfRange("alphabet bound M must be at least 1".into()));
    }
    let h = i64::from(m.div_ceil(2));
    if m % 2 == 0 {
        return BaseValue::rational(h + 1, 1, m);
    }
    let coeffs: Vec<BigInt> = [1, -h, -h].into_iter().map(BigInt::from).collect();
    BaseValue::from_polynomial(&coeffs, BigRational::new((2 * h + 1).into(), 2.into()), BigRational::from_integer((h + 1).into()), m)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Seed {
    /// Start from q0 = 1; the first rung is the generalized golden ratio.
    One,
    /// Start from a base in closure(U) \ U with the given finite β.
    FiniteBeta(Word),
}

fn ladder_step(s: &Word) -> Word {
    s.concat(&s.minus().expect("ladder words end in a nonzero digit").reflect())
}

/// The words `s_0, ..., s_n` with `β(q_i) = s_i 0^∞` along one component.
pub fn component_words(m: u32, seed: &Seed, n: usize) -> Result<Vec<Word>> {
    let mut out = Vec::with_capacity(n + 1);
    match seed {
        Seed::One => {
            out.push(Word::new(vec![1], m)?);
            if n >= 1 {
                let h = m.div_ceil(2);
                let s1 = if m % 2 == 0 { vec![h + 1] } else { vec![h, h] };
                out.push(Word::new(s1, m)?);
            }
        }
        Seed::FiniteBeta(w) => {
            if w.m() != m {
                return Err(Error::InadmissibleSeed(format!("{w} is over a different alphabet")));
            }
            if w.digits().last().is_none_or(|&d| d == 0) {
                return Err(Error::InadmissibleSeed(format!("{w} must end in a nonzero digit")));
            }
            if !classify::is_admissible(&w.padded(), AdmissibleMode::BetaOfOne).is_in() {
                return Err(Error::InadmissibleSeed(format!("{w} is not the greedy expansion of 1 in any base")));
            }
            let q0 = base_of_word(w)?;
            let class = classify::classify_base(&q0, 4 * w.len() + 64)?.class;
            if class != BaseClass::InClosureUNotU {
                return Err(Error::InadmissibleSeed(format!("{w} gives a base in {}", class.label())));
            }
            out.push(w.clone());
        }
    }
    while out.len() <= n {
        let next = ladder_step(out.last().unwrap());
        out.push(next);
    }
    out.truncate(n + 1);
    Ok(out)
}

/// The base q with `β(q) = w 0^∞`.
pub fn base_of_word(w: &Word) -> Result<BaseValue> {
    let m = w.m();
    let digits = w.digits();
    if digits.last().is_none_or(|&d| d == 0) {
        return Err(Error::Inadmissible(format!("{w} must end in a nonzero digit")));
    }
    if digits.iter().map(|&d| u64::from(d)).sum::<u64>() <= 1 {
        return Err(Error::Inadmissible(format!("{w} would give the base 1")));
    }
    if !classify::is_admissible(&w.padded(), AdmissibleMode::BetaOfOne).is_in() {
        return Err(Error::Inadmissible(format!("{w} is not the greedy expansion of 1 in any base")));
    }
    // x^L - w_1 x^(L-1) - ... - w_L, highest degree first
    let mut coeffs = vec![BigInt::from(1)];
    coeffs.extend(digits.iter().map(|&d| -BigInt::from(d)));
    BaseValue::from_polynomial(&coeffs, BigRational::from_integer(1.into()), BigRational::from_integer((i64::from(m) + 1).into()), m)
}

/// A connected component `(q1, q2)` of the complement of V, described by
/// its right endpoint.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentData {
    /// Left endpoint; `None` stands for 1.
    #[serde(serialize_with = "ser_opt_base")]
    pub q1: Option<BaseValue>,
    #[serde(serialize_with = "ser_base")]
    pub q2: BaseValue,
    pub k: usize,
    pub alpha_pattern: Word,
    pub forbidden: Vec<Word>,
}

fn ser_base<S: serde::Serializer>(q: &BaseValue, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn ser_opt_base<S: serde::Serializer>(q: &Option<BaseValue>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => ser_base(q, s),
        None => s.serialize_str("1"),
    }
}

impl ComponentData {
    /// α of the right endpoint.
    pub fn alpha(&self) -> EPSequence {
        self.alpha_pattern.concat(&self.alpha_pattern.reflect()).periodic()
    }
}

fn all_words(m: u32, k: usize) -> impl Iterator<Item = Vec<u32>> {
    let base = u64::from(m) + 1;
    let count = base.pow(k as u32);
    (0..count).map(move |mut code| {
        let mut digits = vec![0u32; k];
        for d in digits.iter_mut().rev() {
            *d = (code % base) as u32;
            code /= base;
        }
        digits
    })
}

/// Patterns `w` with `|w| = k` such that `(w reflect(w))^∞` is α of a base in
/// V \ closure(U) with reflection index exactly `k`.
pub fn v_patterns(m: u32, k: usize) -> Vec<Word> {
    let words: Vec<Vec<u32>> = all_words(m, k).filter(|w| w[k - 1] > 0).collect();
    words
        .into_par_iter()
        .filter_map(|digits| {
            let w = Word::new(digits, m).ok()?;
            let alpha = w.concat(&w.reflect()).periodic();
            let ok = classify::is_admissible(&alpha, AdmissibleMode::AlphaOfOne).is_in()
                && classify::alpha_in_v(&Digits::Exact(alpha.clone())).is_in()
                && classify::reflection_index(&alpha) == Some(k);
            ok.then_some(w)
        })
        .collect()
}

fn component_of_pattern(w: &Word) -> Result<ComponentData> {
    let m = w.m();
    let alpha = w.concat(&w.reflect()).periodic();
    let beta = alpha.period().plus()?;
    let q2 = base_of_word(&beta)?;
    let is_golden = w.digits() == [m.div_ceil(2)];
    let q1 = if is_golden { None } else { Some(base_of_word(w)?) };
    let forbidden = sft_blocks_for(w);
    Ok(ComponentData { q1, q2, k: w.len(), alpha_pattern: w.clone(), forbidden })
}

/// The component of the complement of V containing q, found among right
/// endpoints whose α has half-period at most `max_period`.
pub fn find_next_v_base(q: &BaseValue, max_period: usize, depth: usize) -> Result<ComponentData> {
    if !q.is_exact() {
        return Err(Error::UnsupportedBase(format!("{q} has no exact arithmetic")));
    }
    let class = classify::classify_base(q, depth)?.class;
    match class {
        BaseClass::NotInV => {}
        BaseClass::Unknown => return Err(Error::Undecided(depth)),
        c => return Err(Error::PreconditionViolated(format!("{q} lies in {}", c.label()))),
    }
    let m = q.m();
    let prec = 64 + 8 * max_period as u32;
    let mut patterns: Vec<Word> = (1..=max_period).flat_map(|k| v_patterns(m, k)).collect();
    patterns.sort_by(|a, b| {
        let (x, y) = (a.concat(&a.reflect()).periodic(), b.concat(&b.reflect()).periodic());
        x.cmp(&y)
    });
    let found = patterns.into_par_iter().find_map_first(|w| {
        let c = component_of_pattern(&w).ok()?;
        let below_right = c.q2.compare(q, prec * 4)? == Ordering::Greater;
        let above_left = match &c.q1 {
            None => true,
            Some(q1) => q1.compare(q, prec * 4)? == Ordering::Less,
        };
        (below_right && above_left).then_some(c)
    });
    found.ok_or(Error::PeriodBoundExceeded(max_period))
}

fn sft_blocks_for(pattern: &Word) -> Vec<Word> {
    let m = pattern.m();
    let k = pattern.len();
    let mut out = Vec::new();
    for j in 0..m {
        for a in all_words(m, k) {
            if a.as_slice() >= pattern.digits() {
                let mut digits = vec![j];
                digits.extend(a);
                out.push(Word::new(digits, m).expect("digits within the alphabet"));
            }
        }
    }
    out
}

/// The forbidden blocks `j a_1..a_k` with `j < M` and `a >= α_1..α_k`.
pub fn sft_blocks(c: &ComponentData) -> Vec<Word> {
    sft_blocks_for(&c.alpha_pattern)
}

/// Blocks together with their reflections, sorted and deduplicated.
pub fn sft_blocks_with_reflections(blocks: &[Word]) -> Vec<Word> {
    let mut all: Vec<Word> = blocks.iter().cloned().chain(blocks.iter().map(Word::reflect)).collect();
    all.sort();
    all.dedup();
    all
}

/// Whether `s` contains none of `blocks` as a factor.
pub fn avoids_blocks(s: &EPSequence, blocks: &[Word]) -> bool {
    let longest = blocks.iter().map(Word::len).max().unwrap_or(0);
    if longest == 0 {
        return true;
    }
    let span = s.pre_digits().len() + s.per_digits().len();
    let window: Vec<u32> = (0..span + longest).map(|i| s.digit(i)).collect();
    (0..span).all(|i| {
        blocks.iter().all(|b| {
            let d = b.digits();
            &window[i..i + d.len()] != d
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "case", content = "value", rename_all = "snake_case")]
pub enum Dimension {
    Value(f64),
    TwoPointSet,
    FullMeasure,
}

/// Hausdorff dimension of U_q for an integer base q.
pub fn hausdorff_dim_integer_base(q: &BaseValue) -> Result<Dimension> {
    let r = q.as_rational().ok_or(Error::NotInteger)?;
    if !r.is_integer() {
        return Err(Error::NotInteger);
    }
    let qi: i64 = r.to_integer().try_into().map_err(|_| Error::NotInteger)?;
    let m = i64::from(q.m());
    Ok(if qi == m + 1 {
        Dimension::FullMeasure
    } else if m >= 2 * qi - 2 {
        Dimension::TwoPointSet
    } else {
        Dimension::Value(((2 * qi - m - 1) as f64).ln() / (qi as f64).ln())
    })
}
