//! Enumeration of expansions: the exact prefix tree, the closed-form lists
//! of all expansions, gap endpoints, approximants and growth bounds.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{self, BaseClass, GreedyTail, PointClass, SequenceTests};
use crate::error::{Error, Result};
use crate::expansions::{self, greedy_expand, pi_q};
use crate::landmarks::generalized_golden;
use crate::numerics::{BaseValue, FieldElement};
use crate::words::{Digits, EPSequence, Word};

/// Default ceiling on the number of nodes kept per tree level.
pub const DEFAULT_CAP: usize = 10_000_000;

/// Digits `d` with `q r - d` in `[0, M/(q-1)]`, paired with the new remainder.
fn children(r: &FieldElement, q: &BaseValue) -> Result<Vec<(u32, FieldElement)>> {
    let m = q.m();
    let qr = r.mul_q();
    let Some(hi) = qr.largest_digit_below(m, false) else {
        return Ok(Vec::new());
    };
    let over = qr.sub(&q.max_point()?);
    let lo = if over.sign() <= 0 {
        0
    } else {
        over.largest_digit_below(m, true).map_or(0, |d| d + 1)
    };
    Ok((lo..=hi).map(|d| (d, qr.sub_int(d))).collect())
}

fn check_point(x: &FieldElement, q: &BaseValue) -> Result<()> {
    if !q.in_jq(x)? {
        return Err(Error::OutOfJq);
    }
    Ok(())
}

/// All length-`n` prefixes of expansions of x, with the level counts.
#[derive(Debug, Clone, Serialize)]
pub struct ExpansionTree {
    pub depth: usize,
    /// Sorted lexicographically.
    pub prefixes: Vec<Word>,
    /// `counts[j - 1]` is the number of length-`j` prefixes.
    pub counts: Vec<u64>,
}

pub fn expansion_tree(x: &FieldElement, q: &BaseValue, n: usize, cap: usize) -> Result<ExpansionTree> {
    check_point(x, q)?;
    let m = q.m();
    let mut level: Vec<(Vec<u32>, FieldElement)> = vec![(Vec::new(), x.clone())];
    let mut counts = Vec::with_capacity(n);
    for _ in 0..n {
        let next: Result<Vec<Vec<(Vec<u32>, FieldElement)>>> = level
            .par_iter()
            .map(|(w, r)| {
                Ok(children(r, q)?
                    .into_iter()
                    .map(|(d, r2)| {
                        let mut w2 = w.clone();
                        w2.push(d);
                        (w2, r2)
                    })
                    .collect())
            })
            .collect();
        level = next?.into_iter().flatten().collect();
        if level.len() > cap {
            return Err(Error::BudgetExceeded(cap));
        }
        counts.push(level.len() as u64);
    }
    let prefixes = level.into_iter().map(|(w, _)| Word::new(w, m)).collect::<Result<Vec<_>>>()?;
    Ok(ExpansionTree { depth: n, prefixes, counts })
}

/// The counts `N_1, ..., N_n` alone. Prefixes sharing a remainder have the
/// same continuations, so they are merged; `cap` bounds distinct remainders.
pub fn expansion_counts(x: &FieldElement, q: &BaseValue, n: usize, cap: usize) -> Result<Vec<u64>> {
    check_point(x, q)?;
    let mut level: HashMap<FieldElement, u64> = HashMap::from([(x.clone(), 1)]);
    let mut counts = Vec::with_capacity(n);
    for _ in 0..n {
        let expanded: Result<Vec<(Vec<(u32, FieldElement)>, u64)>> =
            level.par_iter().map(|(r, &c)| Ok((children(r, q)?, c))).collect();
        let mut next: HashMap<FieldElement, u64> = HashMap::new();
        for (kids, c) in expanded? {
            for (_, r) in kids {
                *next.entry(r).or_insert(0) += c;
            }
        }
        if next.len() > cap {
            return Err(Error::BudgetExceeded(cap));
        }
        counts.push(next.values().sum());
        level = next;
    }
    Ok(counts)
}

/// `head · repeat^N · tail` for `N = 0, 1, ...`; a single sequence when
/// `repeat` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Schema {
    pub head: Word,
    pub repeat: Word,
    pub tail: EPSequence,
}

impl Schema {
    pub fn fixed(s: EPSequence) -> Self {
        let m = s.m();
        Schema { head: Word::empty(m), repeat: Word::empty(m), tail: s }
    }

    pub fn family(repeat: Word, tail: EPSequence) -> Self {
        Schema { head: Word::empty(repeat.m()), repeat, tail }
    }

    pub fn is_family(&self) -> bool {
        !self.repeat.is_empty()
    }

    pub fn instantiate(&self, n: usize) -> EPSequence {
        self.tail.prepend(&self.head.concat(&self.repeat.repeat(n)))
    }

    pub fn prepend(&self, w: &Word) -> Self {
        Schema { head: w.concat(&self.head), ..self.clone() }
    }

    pub fn reflect(&self) -> Self {
        Schema { head: self.head.reflect(), repeat: self.repeat.reflect(), tail: self.tail.reflect() }
    }

    /// Length-`n` prefixes over all instantiations.
    pub fn prefixes(&self, n: usize) -> BTreeSet<Word> {
        let top = if self.is_family() { n / self.repeat.len() + 1 } else { 0 };
        (0..=top).map(|k| self.instantiate(k).prefix(n)).collect()
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_family() {
            write!(f, "{}[{}]^N {}", self.head, self.repeat, self.tail)
        } else {
            write!(f, "{}", self.instantiate(0))
        }
    }
}

/// A complete list of expansions as finitely many schemas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionList {
    pub schemas: Vec<Schema>,
}

impl ExpansionList {
    pub fn prefixes(&self, n: usize) -> BTreeSet<Word> {
        self.schemas.iter().flat_map(|s| s.prefixes(n)).collect()
    }

    fn reflect(&self) -> Self {
        ExpansionList { schemas: self.schemas.iter().map(Schema::reflect).collect() }
    }
}

impl fmt::Display for ExpansionList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.schemas.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn exact_alpha(alpha: &Digits, depth: usize) -> Result<EPSequence> {
    alpha.exact().cloned().ok_or(Error::Undecided(depth))
}

fn is_even_golden(alpha: &EPSequence) -> bool {
    let m = alpha.m();
    m % 2 == 0 && *alpha == EPSequence::constant(m / 2, m)
}

fn list_for_one(alpha: &EPSequence, class: BaseClass) -> Result<ExpansionList> {
    let m = alpha.m();
    let top = Word::new(vec![m], m)?;
    let schemas = match class {
        BaseClass::InU => vec![Schema::fixed(alpha.clone())],
        BaseClass::InClosureUNotU => {
            let block = alpha.prefix(alpha.window());
            vec![Schema::fixed(alpha.clone()), Schema::family(block.clone(), block.plus()?.padded())]
        }
        BaseClass::InVNotClosureU { .. } if is_even_golden(alpha) => {
            let h = m / 2;
            let mid = Word::new(vec![h], m)?;
            vec![
                Schema::fixed(alpha.clone()),
                Schema::family(mid.clone(), mid.plus()?.padded()),
                Schema::family(mid.clone(), EPSequence::new(&mid.minus()?, &top)?),
            ]
        }
        BaseClass::InVNotClosureU { .. } => {
            let period = alpha.per_digits().len();
            let block = alpha.prefix(period);
            let half = alpha.prefix(period / 2);
            vec![
                Schema::fixed(alpha.clone()),
                Schema::family(block.clone(), block.plus()?.padded()),
                Schema::family(block, EPSequence::new(&half.minus()?, &top)?),
            ]
        }
        BaseClass::NotInV | BaseClass::Unknown => unreachable!("callers resolve the class first"),
    };
    Ok(ExpansionList { schemas })
}

/// All expansions of 1 for a base in V.
pub fn expansions_of_one(q: &BaseValue, depth: usize) -> Result<ExpansionList> {
    let c = classify::classify_base(q, depth)?;
    if c.class == BaseClass::Unknown {
        return Err(Error::Undecided(depth));
    }
    if c.class == BaseClass::NotInV {
        return Err(Error::UnsupportedBase("1 has no closed-form expansion list outside V".into()));
    }
    list_for_one(&exact_alpha(&c.alpha, depth)?, c.class)
}

/// All expansions of a point of `V_q \ U_q` for a base in V.
pub fn expansions_of_point(x: &FieldElement, q: &BaseValue, depth: usize) -> Result<ExpansionList> {
    let point = classify::classify_point(x, q, depth)?;
    let tail = match point.class {
        PointClass::InVqNotUq(t) => t,
        PointClass::Unknown => return Err(Error::Undecided(depth)),
        _ => return Err(Error::NotInVMinusU),
    };
    match tail {
        GreedyTail::Aq => {}
        GreedyTail::Bq => {
            let mirror = q.reflect_point(x)?;
            return Ok(expansions_of_point(&mirror, q, depth)?.reflect());
        }
        GreedyTail::Undetermined => return Err(Error::Undecided(depth)),
    }
    let base = classify::classify_base(q, depth)?;
    if base.class == BaseClass::Unknown {
        return Err(Error::Undecided(depth));
    }
    if !base.class.in_v() {
        return Err(Error::PreconditionViolated(format!("{q} is not in V")));
    }
    let alpha = exact_alpha(&base.alpha, depth)?;
    let b = match greedy_expand(x, q, depth)?.digits {
        Digits::Exact(b) => b,
        Digits::Prefix(_) => return Err(Error::Undecided(depth)),
    };
    let bw = b.finite_word().ok_or(Error::NotFiniteGreedy)?;
    let m = q.m();
    let top = Word::new(vec![m], m)?;
    let lowered = bw.minus()?;
    let mut schemas = vec![Schema::fixed(b.clone())];
    schemas.extend(list_for_one(&alpha, base.class)?.schemas.iter().map(|s| s.prepend(&lowered)));
    if let BaseClass::InVNotClosureU { k } = base.class {
        let d = bw.digits();
        let n = d.len();
        if is_even_golden(&alpha) && d[n - 1] >= 2 {
            let mut pre = d.to_vec();
            pre[n - 1] -= 2;
            schemas.push(Schema::fixed(EPSequence::new(&Word::new(pre, m)?, &top)?));
        }
        if n > k && d[n - k - 1] > 0 {
            let pattern = alpha.prefix(k).minus()?.reflect();
            if d[n - k..] == *pattern.digits() {
                let pre = Word::new(d[..n - k].to_vec(), m)?.minus()?;
                schemas.push(Schema::fixed(EPSequence::new(&pre, &top)?));
            }
        }
    }
    Ok(ExpansionList { schemas })
}

/// Right end of the gap of `J_q \ V_q` (or the next point of `V_q`) that
/// starts at a point with finite greedy expansion.
#[derive(Debug, Clone, Serialize)]
pub struct GapEndpoint {
    pub left_greedy: EPSequence,
    pub right_digits: Digits,
    #[serde(serialize_with = "ser_opt_field")]
    pub x_right: Option<FieldElement>,
}

fn ser_opt_field<S: serde::Serializer>(x: &Option<FieldElement>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// `b_1..b_n · reflect(α)` for a finite greedy word `b_1..b_n`.
pub fn gap_right_digits(b_left: &Word, q: &BaseValue, depth: usize) -> Result<Digits> {
    if b_left.digits().last().is_none_or(|&d| d == 0) {
        return Err(Error::NotFiniteGreedy);
    }
    Ok(match expansions::alpha(q, depth)? {
        Digits::Exact(a) => Digits::Exact(a.reflect().prepend(b_left)),
        Digits::Prefix(a) => Digits::Prefix(b_left.concat(&a.reflect())),
    })
}

pub fn gap_right_endpoint(x_left: &FieldElement, q: &BaseValue, depth: usize) -> Result<GapEndpoint> {
    check_point(x_left, q)?;
    if classify::classify_base(q, depth)?.class == BaseClass::NotInV {
        return Err(Error::PreconditionViolated(format!("{q} is not in V")));
    }
    let b = greedy_expand(x_left, q, depth)?.exact().cloned().ok_or(Error::NotFiniteGreedy)?;
    let bw = b.finite_word().ok_or(Error::NotFiniteGreedy)?;
    let right_digits = gap_right_digits(&bw, q, depth)?;
    let x_right = match &right_digits {
        Digits::Exact(s) => Some(pi_q(s, q)?),
        Digits::Prefix(_) => None,
    };
    Ok(GapEndpoint { left_greedy: b, right_digits, x_right })
}

#[derive(Debug, Clone, Serialize)]
pub struct Approximant {
    /// Cut index `n_i`.
    pub cut: usize,
    pub greedy: EPSequence,
    #[serde(serialize_with = "ser_field")]
    pub x: FieldElement,
}

fn ser_field<S: serde::Serializer>(x: &FieldElement, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Cut indices `n` of the unique expansion `c` with `c_n > 0` and
/// `reflect(c_{m+1}..c_n) < α_1..α_{n-m}` whenever `m < n` and `c_m > 0`.
fn is_cut(c: &EPSequence, alpha: &Digits, n: usize) -> Option<bool> {
    let m_bound = c.m();
    if c.digit(n - 1) == 0 {
        return Some(false);
    }
    for m in 1..n {
        if c.digit(m - 1) == 0 {
            continue;
        }
        let mut less = false;
        for (i, pos) in (m..n).enumerate() {
            let r = m_bound - c.digit(pos);
            let a = alpha.digit(i)?;
            if r != a {
                if r > a {
                    return Some(false);
                }
                less = true;
                break;
            }
        }
        if !less {
            return Some(false);
        }
    }
    Some(true)
}

/// Points of A_q increasing to a univoque point x, each re-verified.
pub fn aq_approximants(x: &FieldElement, q: &BaseValue, count: usize, depth: usize) -> Result<Vec<Approximant>> {
    if x.is_zero() {
        return Err(Error::NotUnivoquePoint);
    }
    if classify::classify_base(q, depth)?.class == BaseClass::NotInV {
        return Err(Error::PreconditionViolated(format!("{q} is not in V")));
    }
    let tests = SequenceTests::new(q, depth)?;
    let point = classify::classify_point_with(x, q, &tests, depth)?;
    match point.class {
        PointClass::InUq => {}
        PointClass::Unknown => return Err(Error::Undecided(depth)),
        _ => return Err(Error::NotUnivoquePoint),
    }
    let c = point.quasi_greedy.exact().cloned().ok_or(Error::Undecided(depth))?;
    let mut out = Vec::with_capacity(count);
    let mut n = 0;
    while out.len() < count {
        n += 1;
        if n > depth {
            return Err(Error::Undecided(depth));
        }
        if !is_cut(&c, tests.alpha(), n).ok_or(Error::Undecided(depth))? {
            continue;
        }
        let greedy = c.prefix(n).padded();
        let xi = pi_q(&greedy, q)?;
        let check = classify::classify_point_with(&xi, q, &tests, depth)?;
        if check.class != PointClass::InVqNotUq(GreedyTail::Aq) {
            return Err(Error::PreconditionViolated(format!("cut {n} gives {:?}", check.class)));
        }
        out.push(Approximant { cut: n, greedy, x: xi });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchingBound {
    pub k: usize,
    pub bound: f64,
}

/// Least `k >= 2` for the branching construction below the generalized
/// golden ratio, and the resulting growth exponent `log 2 / (k log(M+1))`.
pub fn branching_dim_lower_bound(x: &FieldElement, q: &BaseValue) -> Result<BranchingBound> {
    let m_top = q.m();
    match q.compare(&generalized_golden(m_top)?, 1024) {
        Some(std::cmp::Ordering::Less) => {}
        Some(_) => return Err(Error::BaseTooLarge),
        None => return Err(Error::Undecided(1024)),
    }
    check_point(x, q)?;
    if x.is_zero() || q.reflect_point(x)?.is_zero() {
        return Err(Error::PreconditionViolated("x must lie in the interior of J_q".into()));
    }
    let m = i64::from(m_top.div_ceil(2));
    let big_m = i64::from(m_top);
    let qv = q.q()?;
    let inv = qv.inverse().expect("q > 1");
    let one = q.int(1)?;
    let max = q.max_point()?;
    // (m-1)/q + M/q^2 + ... + M/q^k, grown one term at a time
    let mut partial = inv.mul_int(m - 1);
    let mut inv_pow = inv.clone();
    for k in 2..=4096usize {
        inv_pow = inv_pow.mul(&inv);
        partial = partial.add(&inv_pow.mul_int(big_m));
        if partial.cmp_exact(&one).is_le() {
            continue;
        }
        let qk1 = qv.pow(k).sub_int(1).inverse().expect("q^k > 1");
        let sparse = qk1.mul_int(m);
        let dense = max.sub(&qk1.mul_int(big_m));
        let left = inv.mul_int(big_m - 1).add(&inv.mul(&max));
        if sparse.cmp_exact(&inv).is_le() && left.cmp_exact(&dense).is_le() {
            let bound = std::f64::consts::LN_2 / (k as f64 * ((m_top + 1) as f64).ln());
            return Ok(BranchingBound { k, bound });
        }
    }
    Err(Error::Undecided(4096))
}

type Bound = Option<EPSequence>;

/// Pending constraints on the unread tail `t`: `t < upper` and `t > lower`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct TailState {
    upper: Bound,
    lower: Bound,
}

fn advance(bound: &Bound, d: u32, below: bool) -> Option<Bound> {
    let Some(b) = bound else { return Some(None) };
    let head = b.digit(0);
    if d == head {
        Some(Some(b.shift(1)))
    } else if (d < head) == below {
        Some(None)
    } else {
        None
    }
}

fn tighter(a: Bound, b: Bound, below: bool) -> Bound {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(if (x < y) == below { x } else { y }),
    }
}

fn step(s: &TailState, d: u32, alpha: &EPSequence, reflected: &EPSequence) -> Option<TailState> {
    let m = alpha.m();
    let upper = advance(&s.upper, d, true)?;
    let lower = advance(&s.lower, d, false)?;
    let upper = if d < m { tighter(upper, Some(alpha.clone()), true) } else { upper };
    let lower = if d > 0 { tighter(lower, Some(reflected.clone()), false) } else { lower };
    Some(TailState { upper, lower })
}

fn candidate_tails(m: u32, span: usize) -> Vec<EPSequence> {
    let words = |len: usize| -> Vec<Word> {
        let base = u64::from(m) + 1;
        (0..base.pow(len as u32))
            .map(|mut code| {
                let mut digits = vec![0u32; len];
                for d in digits.iter_mut().rev() {
                    *d = (code % base) as u32;
                    code /= base;
                }
                Word::new(digits, m).expect("digits within the alphabet")
            })
            .collect()
    };
    let pres: Vec<Word> = (0..=span).flat_map(words).collect();
    let pers: Vec<Word> = (1..=span).flat_map(words).collect();
    let mut out: Vec<EPSequence> =
        pres.iter().flat_map(|p| pers.iter().map(move |r| EPSequence::new(p, r).expect("same alphabet"))).collect();
    out.sort();
    out.dedup();
    out
}

/// Numbers of length-`n` words (for `n = 1..=n_max`) that extend to a
/// sequence with a unique expansion in base q.
///
/// Words are tracked through the tightest pending tail constraints. A
/// constraint state counts as extendable when some eventually periodic
/// univoque tail with preperiod and period at most `span` satisfies it;
/// each witness is checked exactly.
pub fn univoque_prefix_counts(q: &BaseValue, n_max: usize, span: usize, depth: usize) -> Result<Vec<u64>> {
    let tests = SequenceTests::new(q, depth)?;
    let alpha = exact_alpha(tests.alpha(), depth)?;
    let reflected = alpha.reflect();
    let m = q.m();
    let candidates: Vec<EPSequence> = candidate_tails(m, span)
        .into_par_iter()
        .filter(|t| tests.is_univoque(t).map(|v| v.is_in()).unwrap_or(false))
        .collect();
    let mut viable: HashMap<TailState, bool> = HashMap::new();
    let mut is_viable = |s: &TailState| -> bool {
        *viable.entry(s.clone()).or_insert_with(|| {
            candidates.iter().any(|t| {
                s.upper.as_ref().is_none_or(|u| t < u) && s.lower.as_ref().is_none_or(|l| t > l)
            })
        })
    };
    let mut level: HashMap<TailState, u64> = HashMap::from([(TailState { upper: None, lower: None }, 1)]);
    let mut counts = Vec::with_capacity(n_max);
    for _ in 0..n_max {
        let mut next: HashMap<TailState, u64> = HashMap::new();
        for (s, c) in &level {
            for d in 0..=m {
                if let Some(t) = step(s, d, &alpha, &reflected) {
                    *next.entry(t).or_insert(0) += c;
                }
            }
        }
        next.retain(|s, _| is_viable(s));
        counts.push(next.values().sum());
        level = next;
    }
    Ok(counts)
}
