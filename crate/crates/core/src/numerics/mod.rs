//! Exact bases and exact arithmetic in Q(q).
//!
//! A [`BaseValue`] is either exact (rational, or algebraic with a minimal
//! polynomial and isolating interval) or defined by a digit stream, in which
//! case only interval enclosures are available.

mod field;
pub mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

pub use field::{FieldElement, NumberField};

use crate::error::{Error, Result};
use crate::words::Word;

/// Closed interval with dyadic endpoints (an exact point for rational bases).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub precision: u32,
}

impl DyadicInterval {
    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }
}

impl Serialize for DyadicInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DyadicInterval", 5)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.serialize_field("lo_approx", &self.lo_f64())?;
        st.serialize_field("hi_approx", &self.hi_f64())?;
        st.serialize_field("precision", &self.precision)?;
        st.end()
    }
}

type DigitFn = dyn Fn(usize) -> u32 + Send + Sync;

/// A base given by its quasi-greedy expansion of 1, `1 = sum a_i q^-i`.
///
/// The defined value must not be a dyadic rational; bisection would never
/// separate it from a grid point.
pub struct DigitStream {
    label: String,
    digit: Arc<DigitFn>,
    /// `(k, p)`: the base lies strictly inside `(k / 2^p, (k+1) / 2^p)`.
    cell: RwLock<Option<(BigInt, u32)>>,
}

const STREAM_DIGIT_CAP: usize = 1 << 15;

impl DigitStream {
    /// Sign of `f(c) - 1` where `f(c) = sum a_i c^-i`, for rational `c > 1`.
    /// Positive means the base is larger than `c`.
    ///
    /// Powers of `1/c` are carried as fixed-point integers with a floor and a
    /// ceiling copy, so every partial sum is bracketed exactly; the working
    /// precision doubles whenever rounding swamps the remaining tail.
    fn side_of(&self, c: &BigRational, m: u32) -> Ordering {
        let (num, den) = (c.numer(), c.denom());
        let tail_num = den * BigInt::from(m);
        let tail_den = num - den;
        let mut bits = 64 + 2 * num.bits().max(den.bits()) as usize;
        loop {
            assert!(bits < STREAM_DIGIT_CAP * 4, "digit stream {} does not separate from {c}", self.label);
            let one = BigInt::one() << bits;
            let (mut p_lo, mut p_hi) = (one.clone(), one.clone());
            let (mut s_lo, mut s_hi) = (BigInt::zero(), BigInt::zero());
            for n in 1..=STREAM_DIGIT_CAP {
                p_lo = (&p_lo * den).div_floor(num);
                p_hi = (&p_hi * den).div_ceil(num);
                let a = (self.digit)(n);
                if a != 0 {
                    s_lo += &p_lo * a;
                    s_hi += &p_hi * a;
                }
                if s_lo > one {
                    return Ordering::Greater;
                }
                let tail = (&p_hi * &tail_num).div_ceil(&tail_den);
                if &s_hi + &tail < one {
                    return Ordering::Less;
                }
                if tail <= &s_hi - &s_lo + 1u32 {
                    break;
                }
            }
            bits *= 2;
        }
    }

    fn cell(&self, prec: u32, m: u32) -> (BigInt, u32) {
        if let Some((k, p)) = self.cell.read().unwrap().clone() {
            if p >= prec {
                return (k >> (p - prec) as usize, prec);
            }
        }
        let mut slot = self.cell.write().unwrap();
        let (mut k, mut p) = match slot.clone() {
            Some(c) => c,
            None => {
                let mut k = 1u32;
                while k < m && self.side_of(&BigRational::from_integer((k + 1).into()), m).is_gt() {
                    k += 1;
                }
                (BigInt::from(k), 0)
            }
        };
        while p < prec {
            let mid = BigRational::new(2 * &k + 1, BigInt::one() << (p + 1) as usize);
            k = if self.side_of(&mid, m).is_gt() { 2 * k + 1 } else { 2 * k };
            p += 1;
        }
        *slot = Some((k.clone(), p));
        (k, p)
    }
}

#[derive(Clone)]
enum Repr {
    Exact { field: Arc<NumberField>, defining: Arc<Vec<BigInt>> },
    Stream(Arc<DigitStream>),
}

struct Inner {
    m: u32,
    repr: Repr,
    max_point: OnceLock<FieldElement>,
}

/// A base q in (1, M+1] together with the alphabet bound M.
#[derive(Clone)]
pub struct BaseValue(Arc<Inner>);

/// Read-only description of how a base is represented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseKind {
    Rational(BigRational),
    /// Defining and minimal polynomials, lowest degree first.
    Algebraic { defining: Vec<BigInt>, minimal: Vec<BigInt> },
    DigitStream { label: String },
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

impl BaseValue {
    fn from_repr(m: u32, repr: Repr) -> Self {
        BaseValue(Arc::new(Inner { m, repr, max_point: OnceLock::new() }))
    }

    fn check_alphabet(m: u32) -> Result<()> {
        if m == 0 {
            return Err(Error::OutOfRange("alphabet bound M must be at least 1".into()));
        }
        Ok(())
    }

    /// The rational base `num/den`.
    pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>, m: u32) -> Result<Self> {
        Self::check_alphabet(m)?;
        let den = den.into();
        if den.is_zero() {
            return Err(Error::OutOfRange("zero denominator".into()));
        }
        let r = BigRational::new(num.into(), den);
        Self::from_rational(r, m)
    }

    pub fn from_rational(r: BigRational, m: u32) -> Result<Self> {
        Self::check_alphabet(m)?;
        if r <= rat(1) || r > rat(i64::from(m) + 1) {
            return Err(Error::OutOfRange(format!("{r} is not in (1, {}]", m + 1)));
        }
        let field = NumberField::rational(&r);
        let defining = Arc::new(field.minimal_polynomial().to_vec());
        Ok(Self::from_repr(m, Repr::Exact { field, defining }))
    }

    /// The unique root of `coeffs` (highest degree first) in `[lo, hi]`.
    pub fn from_polynomial(coeffs: &[BigInt], lo: BigRational, hi: BigRational, m: u32) -> Result<Self> {
        Self::check_alphabet(m)?;
        let p: Vec<BigInt> = poly::trim(coeffs.iter().rev().cloned().collect());
        if p.len() < 2 {
            return Err(Error::NotIsolating("polynomial is constant".into()));
        }
        if lo >= hi {
            return Err(Error::NotIsolating(format!("empty interval [{lo}, {hi}]")));
        }
        if lo < rat(1) || hi > rat(i64::from(m) + 1) {
            return Err(Error::OutOfRange(format!("[{lo}, {hi}] is not inside (1, {}]", m + 1)));
        }
        let roots = poly::count_roots_closed(&p, &lo, &hi);
        if roots != 1 {
            return Err(Error::NotIsolating(format!("{roots} real roots in [{lo}, {hi}]")));
        }
        if lo == rat(1) && poly::sign_at(&p, &lo) == 0 {
            return Err(Error::OutOfRange("the isolated root is 1".into()));
        }
        let factor = poly::irreducible_factors(&p)
            .into_iter()
            .find(|f| poly::count_roots_closed(f, &lo, &hi) == 1)
            .expect("some irreducible factor carries the isolated root");
        let defining = Arc::new(p);
        if factor.len() == 2 {
            let r = BigRational::new(-factor[0].clone(), factor[1].clone());
            let field = NumberField::rational(&r);
            if r <= rat(1) || r > rat(i64::from(m) + 1) {
                return Err(Error::OutOfRange(format!("root {r} is not in (1, {}]", m + 1)));
            }
            return Ok(Self::from_repr(m, Repr::Exact { field, defining }));
        }
        let field = NumberField::algebraic(factor, lo, hi);
        Ok(Self::from_repr(m, Repr::Exact { field, defining }))
    }

    /// A base defined by `1 = sum digit(i) q^-i` (indices from 1). The
    /// digits must form the quasi-greedy expansion of 1 in that base.
    pub fn digit_stream(m: u32, label: impl Into<String>, digit: impl Fn(usize) -> u32 + Send + Sync + 'static) -> Self {
        let stream = DigitStream { label: label.into(), digit: Arc::new(digit), cell: RwLock::new(None) };
        Self::from_repr(m, Repr::Stream(Arc::new(stream)))
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn kind(&self) -> BaseKind {
        match &self.0.repr {
            Repr::Exact { field, defining } => match field.as_rational() {
                Some(r) => BaseKind::Rational(r),
                None => BaseKind::Algebraic {
                    defining: defining.as_ref().clone(),
                    minimal: field.minimal_polynomial().to_vec(),
                },
            },
            Repr::Stream(s) => BaseKind::DigitStream { label: s.label.clone() },
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.0.repr, Repr::Exact { .. })
    }

    /// The number field Q(q); fails for digit-stream bases.
    pub fn field(&self) -> Result<&Arc<NumberField>> {
        match &self.0.repr {
            Repr::Exact { field, .. } => Ok(field),
            Repr::Stream(s) => Err(Error::UnsupportedBase(format!("{} has no exact arithmetic", s.label))),
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.field().ok().and_then(|f| f.as_rational())
    }

    /// Digit `i` (from 1) of the defining stream, for digit-stream bases.
    pub fn stream_digit(&self, i: usize) -> Option<u32> {
        match &self.0.repr {
            Repr::Stream(s) => Some((s.digit)(i)),
            Repr::Exact { .. } => None,
        }
    }

    /// The base as a field element.
    pub fn q(&self) -> Result<FieldElement> {
        Ok(FieldElement::generator(self.field()?))
    }

    pub fn int(&self, v: i64) -> Result<FieldElement> {
        Ok(FieldElement::from_integer(self.field()?, v))
    }

    pub fn ratio(&self, r: &BigRational) -> Result<FieldElement> {
        Ok(FieldElement::from_rational(self.field()?, r))
    }

    /// Right end `M/(q-1)` of the interval J_q.
    pub fn max_point(&self) -> Result<FieldElement> {
        if let Some(v) = self.0.max_point.get() {
            return Ok(v.clone());
        }
        let q1 = self.q()?.sub_int(1);
        let v = q1.inverse().expect("q > 1").mul_int(self.m());
        Ok(self.0.max_point.get_or_init(|| v).clone())
    }

    /// `M/(q-1) - x`.
    pub fn reflect_point(&self, x: &FieldElement) -> Result<FieldElement> {
        Ok(self.max_point()?.sub(x))
    }

    /// Whether `x` lies in J_q.
    pub fn in_jq(&self, x: &FieldElement) -> Result<bool> {
        Ok(x.sign() >= 0 && self.max_point()?.sub(x).sign() >= 0)
    }

    /// Floating approximation.
    pub fn approx(&self) -> f64 {
        let iv = refine_interval(self, 60);
        (iv.lo_f64() + iv.hi_f64()) / 2.0
    }

    /// Exact comparison of two bases; equality is decided exactly when both
    /// are exact, otherwise `None` is returned if the enclosures at
    /// `max_precision` bits still overlap.
    pub fn compare(&self, other: &BaseValue, max_precision: u32) -> Option<Ordering> {
        if let (Ok(a), Ok(b)) = (self.field(), other.field()) {
            if a.same_as(b) {
                return Some(Ordering::Equal);
            }
            // b's value is a root of a's minimal polynomial only if equal
            let mp = a.minimal_polynomial();
            let qb = FieldElement::generator(b);
            let mut acc = FieldElement::zero(b);
            for c in mp.iter().rev() {
                acc = acc.mul(&qb).add(&FieldElement::from_integer(b, c.clone()));
            }
            if acc.is_zero() {
                return Some(Ordering::Equal);
            }
        }
        let mut prec = 32;
        while prec <= max_precision {
            let x = refine_interval(self, prec);
            let y = refine_interval(other, prec);
            if x.hi < y.lo {
                return Some(Ordering::Less);
            }
            if y.hi < x.lo {
                return Some(Ordering::Greater);
            }
            prec *= 2;
        }
        None
    }
}

impl fmt::Debug for BaseValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BaseValue(M={}, {})", self.m(), self)
    }
}

impl fmt::Display for BaseValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            BaseKind::Rational(r) => write!(f, "{r}"),
            BaseKind::Algebraic { minimal, .. } => {
                let iv = refine_interval(self, 40);
                write!(f, "root of {} near {:.9}", render_poly(&minimal), (iv.lo_f64() + iv.hi_f64()) / 2.0)
            }
            BaseKind::DigitStream { label } => write!(f, "{label}"),
        }
    }
}

/// Human-readable polynomial in x from low-to-high coefficients.
pub fn render_poly(p: &[BigInt]) -> String {
    let mut out = String::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c < &BigInt::zero();
        let mag = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coef = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
        out.push_str(&match i {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{i}"),
        });
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Enclosure of the base of width at most 2^-precision (`precision >= 1`).
/// Repeated calls give nested intervals.
pub fn refine_interval(b: &BaseValue, precision: u32) -> DyadicInterval {
    let precision = precision.max(1);
    let (lo, hi) = match &b.0.repr {
        Repr::Exact { field, .. } => field.grid_cell(precision),
        Repr::Stream(s) => {
            let (k, p) = s.cell(precision, b.m());
            let den = BigInt::one() << p as usize;
            (BigRational::new(k.clone(), den.clone()), BigRational::new(k + 1, den))
        }
    };
    DyadicInterval { lo, hi, precision }
}

/// The decimal cell `[a / 10^digits, (a + 1) / 10^digits]` containing the
/// base, with `a = floor(q 10^digits)`. `None` if dyadic refinement up to
/// `max_precision` bits does not settle `a`.
pub fn decimal_enclosure(b: &BaseValue, digits: u32, max_precision: u32) -> Option<(BigRational, BigRational)> {
    let scale = BigRational::from_integer(num_traits::pow(BigInt::from(10), digits as usize));
    let cell = |a: BigInt| (BigRational::new(a.clone(), scale.to_integer()), BigRational::new(a + 1, scale.to_integer()));
    if let Some(r) = b.as_rational() {
        return Some(cell((r * &scale).floor().to_integer()));
    }
    let mut prec = 16;
    while prec <= max_precision {
        let iv = refine_interval(b, prec);
        let lo = (&iv.lo * &scale).floor().to_integer();
        // the base lies strictly inside the dyadic cell, so an upper end on
        // the decimal grid still pins the cell below it
        let hi = (&iv.hi * &scale).ceil().to_integer() - 1;
        if lo == hi {
            return Some(cell(lo));
        }
        prec *= 2;
    }
    None
}

/// Exact sign of a field element.
pub fn field_sign(e: &FieldElement) -> i32 {
    e.sign()
}

/// `sum_{i <= |w|} w_i q^-i` exactly.
pub fn field_eval_prefix(w: &Word, b: &BaseValue) -> Result<FieldElement> {
    let m = b.m();
    if let Some(&digit) = w.digits().iter().find(|&&d| d > m) {
        return Err(Error::DigitOutOfRange { digit, m });
    }
    let field = b.field()?;
    // Horner in q, then divide by q^|w|.
    let mut acc = FieldElement::zero(field);
    for &d in w.digits() {
        acc = acc.mul_q().add(&FieldElement::from_integer(field, d));
    }
    let qinv = b.q()?.inverse().expect("q is nonzero");
    Ok(acc.mul(&qinv.pow(w.len())))
}
