//! Finite words and eventually periodic sequences over `{0, ..., M}`.
//!
//! [`EPSequence`] values are kept in a unique normal form (primitive period,
//! shortest preperiod), so structural equality coincides with equality of the
//! underlying infinite sequences.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

fn check_digits(digits: &[u32], m: u32) -> Result<()> {
    match digits.iter().find(|&&d| d > m) {
        Some(&digit) => Err(Error::DigitOutOfRange { digit, m }),
        None => Ok(()),
    }
}

fn render(digits: &[u32], m: u32) -> String {
    if m <= 9 {
        digits.iter().map(|d| char::from(b'0' + *d as u8)).collect()
    } else {
        digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn parse_digits(text: &str, offset: usize, m: u32) -> Result<Vec<u32>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let digits: Vec<u32> = if m > 9 || text.contains(',') {
        let mut out = Vec::new();
        let mut pos = offset;
        for part in text.split(',') {
            let d = part
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::parse(pos, format!("expected a digit, found {part:?}")))?;
            out.push(d);
            pos += part.len() + 1;
        }
        out
    } else {
        text.chars()
            .enumerate()
            .map(|(i, c)| {
                c.to_digit(10)
                    .ok_or_else(|| Error::parse(offset + i, format!("unexpected character {c:?}")))
            })
            .collect::<Result<_>>()?
    };
    check_digits(&digits, m)?;
    Ok(digits)
}

/// A finite word over the alphabet `{0, ..., m}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    digits: Vec<u32>,
    m: u32,
}

impl Word {
    pub fn new(digits: Vec<u32>, m: u32) -> Result<Self> {
        check_digits(&digits, m)?;
        Ok(Word { digits, m })
    }

    pub fn empty(m: u32) -> Self {
        Word { digits: Vec::new(), m }
    }

    pub fn parse(text: &str, m: u32) -> Result<Self> {
        Ok(Word { digits: parse_digits(text.trim(), 0, m)?, m })
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn reflect(&self) -> Self {
        Word { digits: self.digits.iter().map(|d| self.m - d).collect(), m: self.m }
    }

    /// `w⁺`: last digit incremented.
    pub fn plus(&self) -> Result<Self> {
        match self.digits.last() {
            Some(&d) if d < self.m => {
                let mut w = self.clone();
                *w.digits.last_mut().unwrap() += 1;
                Ok(w)
            }
            _ => Err(Error::LastDigitAtBound),
        }
    }

    /// `w⁻`: last digit decremented.
    pub fn minus(&self) -> Result<Self> {
        match self.digits.last() {
            Some(&d) if d > 0 => {
                let mut w = self.clone();
                *w.digits.last_mut().unwrap() -= 1;
                Ok(w)
            }
            _ => Err(Error::LastDigitAtBound),
        }
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        Word { digits, m: self.m }
    }

    pub fn repeat(&self, n: usize) -> Self {
        Word { digits: self.digits.repeat(n), m: self.m }
    }

    pub fn prefix(&self, n: usize) -> Self {
        Word { digits: self.digits[..n.min(self.len())].to_vec(), m: self.m }
    }

    pub fn push(&mut self, d: u32) {
        assert!(d <= self.m, "digit {d} exceeds alphabet bound {}", self.m);
        self.digits.push(d);
    }

    /// `w 0^∞`.
    pub fn padded(&self) -> EPSequence {
        EPSequence::from_parts(self.digits.clone(), vec![0], self.m)
    }

    /// `w^∞`; the word must be nonempty.
    pub fn periodic(&self) -> EPSequence {
        EPSequence::from_parts(Vec::new(), self.digits.clone(), self.m)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Plain lexicographic order on digit lists.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.digits.cmp(&other.digits)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.digits, self.m))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Classification of a sequence by its tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Finiteness {
    Finite,
    CoFinite,
    DoublyInfinite,
}

/// An eventually periodic sequence `pre · per^∞` in normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EPSequence {
    pre: Vec<u32>,
    per: Vec<u32>,
    m: u32,
}

impl EPSequence {
    pub fn new(pre: &Word, per: &Word) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::parse(0, "period must be nonempty"));
        }
        Ok(Self::from_parts(pre.digits.clone(), per.digits.clone(), pre.m.max(per.m)))
    }

    pub(crate) fn from_parts(pre: Vec<u32>, per: Vec<u32>, m: u32) -> Self {
        debug_assert!(!per.is_empty());
        debug_assert!(pre.iter().chain(&per).all(|&d| d <= m));
        let mut s = EPSequence { pre, per, m };
        s.normalize();
        s
    }

    /// The constant sequence `d^∞`.
    pub fn constant(d: u32, m: u32) -> Self {
        EPSequence { pre: Vec::new(), per: vec![d], m }
    }

    fn normalize(&mut self) {
        let n = self.per.len();
        if let Some(p) = (1..n).find(|&p| n % p == 0 && (p..n).all(|i| self.per[i] == self.per[i - p])) {
            self.per.truncate(p);
        }
        while let (Some(&a), Some(&b)) = (self.pre.last(), self.per.last()) {
            if a != b {
                break;
            }
            self.pre.pop();
            self.per.rotate_right(1);
        }
    }

    pub fn parse(text: &str, m: u32) -> Result<Self> {
        let text = text.trim();
        let (pre, per) = match text.find('(') {
            Some(open) => {
                if !text.ends_with(')') {
                    return Err(Error::parse(text.len(), "expected ')' at end of period"));
                }
                let inner = &text[open + 1..text.len() - 1];
                if inner.contains('(') || inner.contains(')') {
                    return Err(Error::parse(open, "nested parentheses"));
                }
                let pre = parse_digits(text[..open].trim_end_matches(','), 0, m)?;
                let per = parse_digits(inner, open + 1, m)?;
                if per.is_empty() {
                    return Err(Error::parse(open + 1, "empty period"));
                }
                (pre, per)
            }
            None => {
                if text.contains(')') {
                    return Err(Error::parse(text.find(')').unwrap(), "unmatched ')'"));
                }
                (parse_digits(text, 0, m)?, vec![0])
            }
        };
        Ok(Self::from_parts(pre, per, m))
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn preperiod(&self) -> Word {
        Word { digits: self.pre.clone(), m: self.m }
    }

    pub fn period(&self) -> Word {
        Word { digits: self.per.clone(), m: self.m }
    }

    pub fn pre_digits(&self) -> &[u32] {
        &self.pre
    }

    pub fn per_digits(&self) -> &[u32] {
        &self.per
    }

    /// Digit `c_{i+1}` (zero-based index).
    pub fn digit(&self, i: usize) -> u32 {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.per[(i - self.pre.len()) % self.per.len()]
        }
    }

    pub fn digits(&self) -> impl Iterator<Item = u32> + '_ {
        (0..).map(move |i| self.digit(i))
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word { digits: self.digits().take(n).collect(), m: self.m }
    }

    /// Number of positions after which all tails repeat: every tail
    /// `σ^n(s)` with `n >= 1` equals one with `1 <= n <= window()`.
    pub fn window(&self) -> usize {
        self.pre.len() + self.per.len()
    }

    /// Drops the first `n` digits.
    pub fn shift(&self, n: usize) -> Self {
        if n <= self.pre.len() {
            return EPSequence { pre: self.pre[n..].to_vec(), per: self.per.clone(), m: self.m };
        }
        let off = (n - self.pre.len()) % self.per.len();
        let mut per = self.per.clone();
        per.rotate_left(off);
        EPSequence { pre: Vec::new(), per, m: self.m }
    }

    pub fn reflect(&self) -> Self {
        EPSequence {
            pre: self.pre.iter().map(|d| self.m - d).collect(),
            per: self.per.iter().map(|d| self.m - d).collect(),
            m: self.m,
        }
    }

    /// `w · self`.
    pub fn prepend(&self, w: &Word) -> Self {
        let mut pre = w.digits.clone();
        pre.extend_from_slice(&self.pre);
        Self::from_parts(pre, self.per.clone(), self.m)
    }

    pub fn finiteness(&self) -> Finiteness {
        if self.per == [0] && !self.pre.is_empty() {
            Finiteness::Finite
        } else if self.per == [self.m] && !self.pre.is_empty() {
            Finiteness::CoFinite
        } else {
            Finiteness::DoublyInfinite
        }
    }

    /// `Some(w)` with `self = w 0^∞` and `w` ending in a nonzero digit.
    pub fn finite_word(&self) -> Option<Word> {
        (self.finiteness() == Finiteness::Finite).then(|| self.preperiod())
    }

    pub fn is_infinite(&self) -> bool {
        self.finiteness() != Finiteness::Finite
    }

    /// Exact lexicographic comparison.
    pub fn lex_compare(&self, other: &Self) -> Ordering {
        let (la, lb) = (self.per.len(), other.per.len());
        let bound = self.pre.len().max(other.pre.len()) + la.lcm(&lb) + la.max(lb);
        for i in 0..bound {
            match self.digit(i).cmp(&other.digit(i)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for EPSequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EPSequence {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_compare(other)
    }
}

impl fmt::Display for EPSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", render(&self.pre, self.m), render(&self.per, self.m))
    }
}

impl fmt::Debug for EPSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EP[M={}]({self})", self.m)
    }
}

impl Serialize for EPSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Digits known either as an exact eventually periodic sequence or only
/// through a finite prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Digits {
    Exact(EPSequence),
    Prefix(Word),
}

impl Digits {
    pub fn exact(&self) -> Option<&EPSequence> {
        match self {
            Digits::Exact(s) => Some(s),
            Digits::Prefix(_) => None,
        }
    }

    pub fn m(&self) -> u32 {
        match self {
            Digits::Exact(s) => s.m(),
            Digits::Prefix(w) => w.m(),
        }
    }

    /// Known digit count; unbounded for exact sequences.
    pub fn known_len(&self) -> Option<usize> {
        match self {
            Digits::Exact(_) => None,
            Digits::Prefix(w) => Some(w.len()),
        }
    }

    pub fn digit(&self, i: usize) -> Option<u32> {
        match self {
            Digits::Exact(s) => Some(s.digit(i)),
            Digits::Prefix(w) => w.digits().get(i).copied(),
        }
    }

    pub fn prefix(&self, n: usize) -> Word {
        match self {
            Digits::Exact(s) => s.prefix(n),
            Digits::Prefix(w) => w.prefix(n),
        }
    }

    pub fn reflect(&self) -> Self {
        match self {
            Digits::Exact(s) => Digits::Exact(s.reflect()),
            Digits::Prefix(w) => Digits::Prefix(w.reflect()),
        }
    }

    /// Compares `s` with these digits; `None` when a finite prefix is
    /// exhausted before the sequences differ.
    pub fn compare_seq(&self, s: &EPSequence) -> Option<Ordering> {
        match self {
            Digits::Exact(a) => Some(s.lex_compare(a)),
            Digits::Prefix(w) => {
                for (i, &d) in w.digits().iter().enumerate() {
                    match s.digit(i).cmp(&d) {
                        Ordering::Equal => continue,
                        o => return Some(o),
                    }
                }
                None
            }
        }
    }
}

impl fmt::Display for Digits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Digits::Exact(s) => write!(f, "{s}"),
            Digits::Prefix(w) => write!(f, "{w}..."),
        }
    }
}

impl Serialize for Digits {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
