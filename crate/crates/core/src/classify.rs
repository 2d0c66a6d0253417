//! Lexicographic membership tests for sequences, bases and points.
//!
//! Every test scans the tails of a sequence against a reference sequence
//! (usually α(q)). When both are eventually periodic only finitely many
//! tails are distinct, so the scan is a complete decision. When the
//! reference is only known through a prefix, a tail that differs from it
//! inside the prefix still yields an exact comparison; a tail that agrees
//! with the whole prefix leaves the verdict at `UnknownAtDepth`.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansions::{self, greedy_expand, quasi_greedy_expand};
use crate::numerics::{BaseValue, FieldElement};
use crate::words::{Digits, EPSequence, Finiteness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    In,
    /// The defining inequality fails at index `witness` (1-based).
    Out { witness: usize },
    UnknownAtDepth { depth: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    /// Exact reference sequence the tails were compared with, if known.
    pub certificate: Option<EPSequence>,
    /// Digits of the reference that were available.
    pub depth: Option<usize>,
}

impl Verdict {
    fn new(status: Status, reference: &Digits) -> Self {
        Verdict { status, certificate: reference.exact().cloned(), depth: reference.known_len() }
    }

    pub fn is_in(&self) -> bool {
        self.status == Status::In
    }

    pub fn is_out(&self) -> bool {
        matches!(self.status, Status::Out { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self.status, Status::UnknownAtDepth { .. })
    }

    pub fn witness(&self) -> Option<usize> {
        match self.status {
            Status::Out { witness } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Clone, Copy)]
enum Trigger {
    /// `c_n < M`
    BelowTop,
    /// `c_n > 0`
    AboveZero,
}

#[derive(Clone, Copy)]
struct Rule {
    trigger: Trigger,
    reflect: bool,
    strict: bool,
}

const GREEDY: Rule = Rule { trigger: Trigger::BelowTop, reflect: false, strict: true };
const QUASI: Rule = Rule { trigger: Trigger::BelowTop, reflect: false, strict: false };
const REFLECTED_STRICT: Rule = Rule { trigger: Trigger::AboveZero, reflect: true, strict: true };
const REFLECTED_WEAK: Rule = Rule { trigger: Trigger::AboveZero, reflect: true, strict: false };

/// Compares `σ^n(s)` (reflected if asked) with `reference`.
fn compare_tail(s: &Digits, n: usize, reflect: bool, reference: &Digits) -> Option<Ordering> {
    let m = s.m();
    match s {
        Digits::Exact(seq) => {
            let tail = seq.shift(n);
            let tail = if reflect { tail.reflect() } else { tail };
            reference.compare_seq(&tail)
        }
        Digits::Prefix(w) => {
            let digits = w.digits();
            let mut i = 0;
            while n + i < digits.len() {
                let d = if reflect { m - digits[n + i] } else { digits[n + i] };
                let r = reference.digit(i)?;
                match d.cmp(&r) {
                    Ordering::Equal => i += 1,
                    o => return Some(o),
                }
            }
            None
        }
    }
}

fn scan(s: &Digits, reference: &Digits, rules: &[Rule]) -> Status {
    let m = s.m();
    let (limit, complete) = match s {
        Digits::Exact(seq) => (seq.window(), true),
        Digits::Prefix(w) => (w.len(), false),
    };
    let mut undecided = false;
    for n in 1..=limit {
        let c = s.digit(n - 1).unwrap();
        for rule in rules {
            let fires = match rule.trigger {
                Trigger::BelowTop => c < m,
                Trigger::AboveZero => c > 0,
            };
            if !fires {
                continue;
            }
            match compare_tail(s, n, rule.reflect, reference) {
                Some(o) => {
                    let bad = if rule.strict { o != Ordering::Less } else { o == Ordering::Greater };
                    if bad {
                        return Status::Out { witness: n };
                    }
                }
                None => undecided = true,
            }
        }
    }
    if undecided || !complete {
        Status::UnknownAtDepth { depth: reference.known_len().or(s.known_len()).unwrap_or(limit) }
    } else {
        Status::In
    }
}

fn require_infinite(s: &EPSequence, reference: &Digits) -> Option<Verdict> {
    (s.finiteness() == Finiteness::Finite)
        .then(|| Verdict::new(Status::Out { witness: s.pre_digits().len() }, reference))
}

/// Sequence tests against a fixed base, with α(q) computed once.
#[derive(Debug, Clone)]
pub struct SequenceTests {
    alpha: Digits,
    m: u32,
}

impl SequenceTests {
    pub fn new(q: &BaseValue, depth: usize) -> Result<Self> {
        Ok(SequenceTests { alpha: expansions::alpha(q, depth)?, m: q.m() })
    }

    pub fn alpha(&self) -> &Digits {
        &self.alpha
    }

    fn check_alphabet(&self, s: &EPSequence) -> Result<()> {
        if s.m() != self.m {
            return Err(Error::PreconditionViolated(format!(
                "sequence alphabet bound {} differs from base alphabet bound {}",
                s.m(),
                self.m
            )));
        }
        Ok(())
    }

    fn run(&self, s: &EPSequence, rules: &[Rule]) -> Result<Verdict> {
        self.check_alphabet(s)?;
        let status = scan(&Digits::Exact(s.clone()), &self.alpha, rules);
        Ok(Verdict::new(status, &self.alpha))
    }

    /// Tails after digits below M are strictly below α.
    pub fn is_greedy(&self, s: &EPSequence) -> Result<Verdict> {
        self.run(s, &[GREEDY])
    }

    /// Infinite, and tails after digits below M are at most α.
    pub fn is_quasi_greedy(&self, s: &EPSequence) -> Result<Verdict> {
        self.check_alphabet(s)?;
        if let Some(v) = require_infinite(s, &self.alpha) {
            return Ok(v);
        }
        self.run(s, &[QUASI])
    }

    /// Both strict tail conditions of a unique expansion.
    pub fn is_univoque(&self, s: &EPSequence) -> Result<Verdict> {
        self.run(s, &[GREEDY, REFLECTED_STRICT])
    }

    /// Infinite, and both tail conditions with non-strict inequalities.
    pub fn in_v_prime(&self, s: &EPSequence) -> Result<Verdict> {
        self.check_alphabet(s)?;
        if let Some(v) = require_infinite(s, &self.alpha) {
            return Ok(v);
        }
        self.run(s, &[QUASI, REFLECTED_WEAK])
    }
}

pub fn is_greedy_seq(s: &EPSequence, q: &BaseValue, depth: usize) -> Result<Verdict> {
    SequenceTests::new(q, depth)?.is_greedy(s)
}

pub fn is_quasi_greedy_seq(s: &EPSequence, q: &BaseValue, depth: usize) -> Result<Verdict> {
    SequenceTests::new(q, depth)?.is_quasi_greedy(s)
}

pub fn is_univoque_seq(s: &EPSequence, q: &BaseValue, depth: usize) -> Result<Verdict> {
    SequenceTests::new(q, depth)?.is_univoque(s)
}

pub fn in_v_prime(s: &EPSequence, q: &BaseValue, depth: usize) -> Result<Verdict> {
    SequenceTests::new(q, depth)?.in_v_prime(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibleMode {
    /// Realizable as β(q).
    BetaOfOne,
    /// Realizable as α(q).
    AlphaOfOne,
}

/// Whether `s` is β(q) or α(q) for some q in [1, M+1].
pub fn is_admissible(s: &EPSequence, mode: AdmissibleMode) -> Verdict {
    let reference = Digits::Exact(s.clone());
    match mode {
        AdmissibleMode::BetaOfOne => Verdict::new(scan(&reference, &reference, &[GREEDY]), &reference),
        AdmissibleMode::AlphaOfOne => require_infinite(s, &reference)
            .unwrap_or_else(|| Verdict::new(scan(&reference, &reference, &[QUASI]), &reference)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum BaseClass {
    InU,
    InClosureUNotU,
    /// `k` is the least index with `reflect(σ^k α) = α`.
    InVNotClosureU { k: usize },
    NotInV,
    Unknown,
}

impl BaseClass {
    pub fn in_v(&self) -> bool {
        matches!(self, BaseClass::InU | BaseClass::InClosureUNotU | BaseClass::InVNotClosureU { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            BaseClass::InU => "U",
            BaseClass::InClosureUNotU => "closure(U) \\ U",
            BaseClass::InVNotClosureU { .. } => "V \\ closure(U)",
            BaseClass::NotInV => "not in V",
            BaseClass::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BaseClassification {
    pub class: BaseClass,
    pub alpha: Digits,
    pub beta: Digits,
    /// Weak reflected test on α.
    pub v: Verdict,
    /// Strict reflected test on α, when reached.
    pub closure_u: Option<Verdict>,
    /// Strict reflected test on β, when reached.
    pub u: Option<Verdict>,
}

/// Weak reflected tail test of a candidate α against itself (membership in V).
pub fn alpha_in_v(alpha: &Digits) -> Verdict {
    Verdict::new(scan(alpha, alpha, &[REFLECTED_WEAK]), alpha)
}

/// Strict reflected tail test of a candidate α against itself (membership in closure(U)).
pub fn alpha_in_closure_u(alpha: &Digits) -> Verdict {
    Verdict::new(scan(alpha, alpha, &[REFLECTED_STRICT]), alpha)
}

/// Least `k >= 1` with `reflect(σ^k α) = α`.
pub fn reflection_index(alpha: &EPSequence) -> Option<usize> {
    let r = alpha.reflect();
    (1..=alpha.window()).find(|&k| alpha.shift(k) == r)
}

/// Places q among U, closure(U) and V.
pub fn classify_base(q: &BaseValue, depth: usize) -> Result<BaseClassification> {
    let (beta, alpha) = expansions::alpha_beta(q, depth)?;
    let (beta, alpha) = (beta.digits, alpha.digits);
    let v = alpha_in_v(&alpha);
    let mut out = BaseClassification {
        class: BaseClass::Unknown,
        alpha: alpha.clone(),
        beta: beta.clone(),
        v: v.clone(),
        closure_u: None,
        u: None,
    };
    match v.status {
        Status::Out { .. } => out.class = BaseClass::NotInV,
        Status::UnknownAtDepth { .. } => {}
        Status::In => {
            let cu = alpha_in_closure_u(&alpha);
            out.closure_u = Some(cu.clone());
            match cu.status {
                Status::Out { .. } => {
                    let k = reflection_index(alpha.exact().expect("exact when decided"))
                        .expect("equality case of the weak test");
                    out.class = BaseClass::InVNotClosureU { k };
                }
                Status::UnknownAtDepth { .. } => {}
                Status::In => {
                    let u = Verdict::new(scan(&beta, &beta, &[REFLECTED_STRICT]), &beta);
                    out.class = match u.status {
                        Status::In => BaseClass::InU,
                        Status::Out { .. } => BaseClass::InClosureUNotU,
                        Status::UnknownAtDepth { .. } => BaseClass::Unknown,
                    };
                    out.u = Some(u);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GreedyTail {
    /// Finite greedy expansion (the set A_q).
    Aq,
    /// Infinite greedy expansion (the set B_q).
    Bq,
    /// Greedy orbit did not close within the depth budget.
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "class", content = "part", rename_all = "snake_case")]
pub enum PointClass {
    InUq,
    InVqNotUq(GreedyTail),
    NotInVq,
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointClassification {
    pub class: PointClass,
    /// Quasi-greedy expansion a(x, q).
    pub quasi_greedy: Digits,
    pub alpha: Digits,
    pub univoque: Verdict,
    /// Reflected weak test of a(x, q) against α, when reached.
    pub v: Option<Verdict>,
}

/// Places x among U_q and V_q.
pub fn classify_point(x: &FieldElement, q: &BaseValue, depth: usize) -> Result<PointClassification> {
    let tests = SequenceTests::new(q, depth)?;
    classify_point_with(x, q, &tests, depth)
}

/// As [`classify_point`], reusing α from `tests`.
pub fn classify_point_with(x: &FieldElement, q: &BaseValue, tests: &SequenceTests, depth: usize) -> Result<PointClassification> {
    let a = quasi_greedy_expand(x, q, depth)?.digits;
    let alpha = tests.alpha.clone();
    let univoque = Verdict::new(scan(&a, &alpha, &[GREEDY, REFLECTED_STRICT]), &alpha);
    let mut out = PointClassification {
        class: PointClass::Unknown,
        quasi_greedy: a.clone(),
        alpha: alpha.clone(),
        univoque: univoque.clone(),
        v: None,
    };
    if univoque.is_in() {
        out.class = PointClass::InUq;
        return Ok(out);
    }
    let v = Verdict::new(scan(&a, &alpha, &[REFLECTED_WEAK]), &alpha);
    out.class = match (univoque.status, v.status) {
        (_, Status::Out { .. }) => PointClass::NotInVq,
        (Status::Out { .. }, Status::In) => {
            let tail = match greedy_expand(x, q, depth)?.digits {
                Digits::Exact(b) if b.finiteness() == Finiteness::Finite => GreedyTail::Aq,
                Digits::Exact(_) => GreedyTail::Bq,
                Digits::Prefix(_) => GreedyTail::Undetermined,
            };
            PointClass::InVqNotUq(tail)
        }
        _ => PointClass::Unknown,
    };
    out.v = Some(v);
    Ok(out)
}

/// The V_q test phrased against β(q) instead of α(q).
pub fn v_test_against_beta(x: &FieldElement, q: &BaseValue, depth: usize) -> Result<Verdict> {
    let a = quasi_greedy_expand(x, q, depth)?.digits;
    let beta = expansions::beta(q, depth)?;
    Ok(Verdict::new(scan(&a, &beta, &[REFLECTED_WEAK]), &beta))
}
