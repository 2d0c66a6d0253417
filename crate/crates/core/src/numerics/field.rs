//! The number field Q(q) and exact arithmetic on its elements.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{self, IntPoly};

/// Q(q) for a real algebraic q, described by its minimal polynomial and a
/// rational interval that isolates q among the real roots.
///
/// A rational q is the degree-one case with polynomial `den*x - num`.
pub struct NumberField {
    minimal: IntPoly,
    bracket: RwLock<(BigRational, BigRational)>,
    powers: RwLock<Option<PowerTable>>,
}

/// Integer enclosures of q^i scaled by 2^prec, for i below the degree.
#[derive(Clone)]
struct PowerTable {
    prec: u32,
    lo: Vec<BigInt>,
    hi: Vec<BigInt>,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

impl NumberField {
    pub(crate) fn rational(r: &BigRational) -> Arc<Self> {
        let minimal = vec![-r.numer().clone(), r.denom().clone()];
        Arc::new(NumberField {
            minimal,
            bracket: RwLock::new((r.clone(), r.clone())),
            powers: RwLock::new(None),
        })
    }

    /// `minimal` must be irreducible of degree at least 2 with exactly one
    /// root in `[lo, hi]`; callers verify this.
    pub(crate) fn algebraic(minimal: IntPoly, lo: BigRational, hi: BigRational) -> Arc<Self> {
        Arc::new(NumberField {
            minimal: poly::primitive(&minimal),
            bracket: RwLock::new((lo, hi)),
            powers: RwLock::new(None),
        })
    }

    pub fn degree(&self) -> usize {
        self.minimal.len() - 1
    }

    /// Minimal polynomial, lowest degree first.
    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.minimal
    }

    /// The value of q when the field is Q itself.
    pub fn as_rational(&self) -> Option<BigRational> {
        (self.degree() == 1).then(|| BigRational::new(-self.minimal[0].clone(), self.minimal[1].clone()))
    }

    /// Current isolating interval (shrinks as refinement proceeds).
    pub fn bracket(&self) -> (BigRational, BigRational) {
        self.bracket.read().unwrap().clone()
    }

    /// Shrinks the isolating interval until its width is below 2^-bits.
    pub fn refine_bracket(&self, bits: u32) -> (BigRational, BigRational) {
        let target = BigRational::new(BigInt::one(), pow2(bits));
        {
            let b = self.bracket.read().unwrap();
            if &b.1 - &b.0 < target {
                return b.clone();
            }
        }
        let mut b = self.bracket.write().unwrap();
        let (mut lo, mut hi) = b.clone();
        let s_lo = poly::sign_at(&self.minimal, &lo);
        let two = BigRational::from_integer(2.into());
        while &hi - &lo >= target {
            let mid = (&lo + &hi) / &two;
            let s = poly::sign_at(&self.minimal, &mid);
            if s == 0 {
                lo = mid.clone();
                hi = mid;
                break;
            }
            if s == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        *b = (lo.clone(), hi.clone());
        (lo, hi)
    }

    /// Grid cell `(k, k+1) / 2^prec` containing q; exact point for rationals.
    pub(crate) fn grid_cell(&self, prec: u32) -> (BigRational, BigRational) {
        if let Some(r) = self.as_rational() {
            return (r.clone(), r);
        }
        let (lo, hi) = self.refine_bracket(prec + 1);
        let scale = BigRational::from_integer(pow2(prec));
        let kl = (&lo * &scale).floor().to_integer();
        let kh = (&hi * &scale).floor().to_integer();
        let k = if kl == kh {
            kl
        } else {
            let g = BigRational::new(kh.clone(), pow2(prec));
            if poly::sign_at(&self.minimal, &g) == poly::sign_at(&self.minimal, &lo) {
                kh
            } else {
                kl
            }
        };
        (
            BigRational::new(k.clone(), pow2(prec)),
            BigRational::new(k + 1, pow2(prec)),
        )
    }

    fn power_table(&self, prec: u32) -> PowerTable {
        if let Some(t) = self.powers.read().unwrap().as_ref() {
            if t.prec >= prec {
                return t.clone();
            }
        }
        let d = self.degree();
        let (lo, hi) = self.refine_bracket(prec + 8 + 4 * d as u32);
        let scale = BigRational::from_integer(pow2(prec));
        let (mut pl, mut ph) = (BigRational::one(), BigRational::one());
        let (mut tl, mut th) = (Vec::with_capacity(d), Vec::with_capacity(d));
        for _ in 0..d {
            tl.push((&pl * &scale).floor().to_integer());
            th.push((&ph * &scale).ceil().to_integer());
            pl *= &lo;
            ph *= &hi;
        }
        let table = PowerTable { prec, lo: tl, hi: th };
        let mut slot = self.powers.write().unwrap();
        if slot.as_ref().is_none_or(|t| t.prec < prec) {
            *slot = Some(table.clone());
        }
        table
    }

    /// Integer enclosure of `sum num_i q^i` scaled by 2^prec.
    fn enclose(&self, num: &[BigInt], prec: u32) -> (BigInt, BigInt, u32) {
        let t = self.power_table(prec);
        let shift = t.prec - prec;
        let (mut s_lo, mut s_hi) = (BigInt::zero(), BigInt::zero());
        for (i, c) in num.iter().enumerate() {
            if c.is_positive() {
                s_lo += c * &t.lo[i];
                s_hi += c * &t.hi[i];
            } else if c.is_negative() {
                s_lo += c * &t.hi[i];
                s_hi += c * &t.lo[i];
            }
        }
        (s_lo, s_hi, prec + shift)
    }

    /// Exact sign of `sum num_i q^i`.
    fn sign_of_poly(&self, num: &[BigInt]) -> i32 {
        match num.len() {
            0 => 0,
            1 => poly::sign_of(&num[0]),
            _ => {
                let mut prec = 64u32;
                loop {
                    let (lo, hi, _) = self.enclose(num, prec);
                    if lo.is_positive() {
                        return 1;
                    }
                    if hi.is_negative() {
                        return -1;
                    }
                    prec *= 2;
                }
            }
        }
    }

    /// Whether both describe the same real number field with the same q.
    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        if Arc::ptr_eq(self, other) {
            return true;
        }
        if self.minimal != other.minimal {
            return false;
        }
        let (a0, a1) = self.bracket();
        let (b0, b1) = other.bracket();
        let lo = if a0 > b0 { a0 } else { b0 };
        let hi = if a1 < b1 { a1 } else { b1 };
        lo <= hi && poly::count_roots_closed(&self.minimal, &lo, &hi) == 1
    }

    /// Reduces an integer polynomial in q modulo the minimal polynomial.
    /// Returns the reduced numerator and the factor the denominator must be
    /// multiplied by.
    fn reduce(&self, mut c: Vec<BigInt>) -> (Vec<BigInt>, BigInt) {
        let d = self.degree();
        let lc = &self.minimal[d];
        let mut scale = BigInt::one();
        while c.len() > d {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = c.len() - d;
            if !lc.is_one() {
                for v in c.iter_mut() {
                    *v *= lc;
                }
                scale *= lc;
            }
            for (j, m) in self.minimal[..d].iter().enumerate() {
                c[j + shift] -= &top * m;
            }
        }
        (poly::trim(c), scale)
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField(minimal={:?})", self.minimal)
    }
}

/// An element of Q(q), stored as `(sum num_i q^i) / den` in lowest terms.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl FieldElement {
    fn normalized(field: Arc<NumberField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let num = poly::trim(num);
        if num.is_empty() {
            return FieldElement { field, num, den: BigInt::one() };
        }
        let mut g = num.iter().fold(den.clone(), |acc, c| acc.gcd(c));
        if den.is_negative() {
            g = -g;
        }
        let num = num.into_iter().map(|c| c / &g).collect();
        FieldElement { field, num, den: den / g }
    }

    fn from_scaled(field: &Arc<NumberField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let (num, s) = field.reduce(num);
        Self::normalized(field.clone(), num, den * s)
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        FieldElement { field: field.clone(), num: Vec::new(), den: BigInt::one() }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_integer(field, 1)
    }

    pub fn from_integer(field: &Arc<NumberField>, v: impl Into<BigInt>) -> Self {
        Self::normalized(field.clone(), vec![v.into()], BigInt::one())
    }

    pub fn from_rational(field: &Arc<NumberField>, r: &BigRational) -> Self {
        Self::normalized(field.clone(), vec![r.numer().clone()], r.denom().clone())
    }

    /// The base q itself.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_scaled(field, vec![BigInt::zero(), BigInt::one()], BigInt::one())
    }

    /// Builds `sum coeffs_i q^i` from rational coefficients.
    pub fn from_coeffs(field: &Arc<NumberField>, coeffs: &[BigRational]) -> Self {
        let lcm = coeffs.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        Self::from_scaled(field, num, lcm)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Canonical rational coefficient vector (lowest power of q first).
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Exact sign: -1, 0 or +1.
    pub fn sign(&self) -> i32 {
        self.field.sign_of_poly(&self.num)
    }

    /// Rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.num.len() {
            0 => Some(BigRational::zero()),
            1 => Some(BigRational::new(self.num[0].clone(), self.den.clone())),
            _ => None,
        }
    }

    fn check(&self, other: &Self) {
        assert!(
            self.field.same_as(&other.field),
            "field elements from different number fields"
        );
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        self.check(other);
        let n = self.num.len().max(other.num.len());
        let z = BigInt::zero();
        let num = (0..n)
            .map(|i| {
                let a = self.num.get(i).unwrap_or(&z) * &other.den;
                let b = other.num.get(i).unwrap_or(&z) * &self.den;
                if negate {
                    a - b
                } else {
                    a + b
                }
            })
            .collect();
        Self::normalized(self.field.clone(), num, &self.den * &other.den)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_impl(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_impl(other, true)
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out = vec![BigInt::zero(); self.num.len() + other.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            for (j, b) in other.num.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_scaled(&self.field, out, &self.den * &other.den)
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        Self::normalized(
            self.field.clone(),
            self.num.iter().map(|c| c * &k).collect(),
            self.den.clone(),
        )
    }

    /// Multiplication by q.
    pub fn mul_q(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut num = Vec::with_capacity(self.num.len() + 1);
        num.push(BigInt::zero());
        num.extend(self.num.iter().cloned());
        Self::from_scaled(&self.field, num, self.den.clone())
    }

    /// `self - d` for an integer d.
    pub fn sub_int(&self, d: u32) -> Self {
        let mut num = self.num.clone();
        if num.is_empty() {
            num.push(BigInt::zero());
        }
        num[0] -= &self.den * BigInt::from(d);
        Self::normalized(self.field.clone(), num, self.den.clone())
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let m = poly::to_rat(&self.field.minimal);
        let a = poly::to_rat(&self.num);
        let s = poly::inverse_mod(&a, &m)?;
        let s: Vec<BigRational> = s
            .into_iter()
            .map(|c| c * BigRational::from_integer(self.den.clone()))
            .collect();
        Some(Self::from_coeffs(&self.field, &s))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn cmp_exact(&self, other: &Self) -> std::cmp::Ordering {
        self.sub(other).sign().cmp(&0)
    }

    /// Sign of `self - d` for an integer d.
    pub fn cmp_int(&self, d: u32) -> std::cmp::Ordering {
        self.sub_int(d).sign().cmp(&0)
    }

    /// Rational enclosure of the value with width about 2^-prec times the
    /// size of the coefficients.
    pub fn enclosure(&self, prec: u32) -> (BigRational, BigRational) {
        if let Some(r) = self.as_rational() {
            return (r.clone(), r);
        }
        let (lo, hi, p) = self.field.enclose(&self.num, prec);
        let s = pow2(p) * &self.den;
        (BigRational::new(lo, s.clone()), BigRational::new(hi, s))
    }

    /// Floating approximation of the value.
    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(80);
        let mid = (lo + hi) / BigRational::from_integer(2.into());
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Largest digit `d <= m` with `d <= self` (or `d < self` when strict).
    /// Returns `None` when even 0 fails the test (negative value, or zero
    /// in the strict case).
    pub fn largest_digit_below(&self, m: u32, strict: bool) -> Option<u32> {
        let ok = |d: u32| {
            let s = self.cmp_int(d);
            if strict {
                s.is_gt()
            } else {
                !s.is_lt()
            }
        };
        let guess = match self.as_rational() {
            Some(r) => r.floor().to_integer(),
            None => self.enclosure(64).0.floor().to_integer(),
        };
        let mut d = guess.clamp(BigInt::zero(), BigInt::from(m)).to_u32().unwrap();
        while d > 0 && !ok(d) {
            d -= 1;
        }
        if d == 0 && !ok(0) {
            return None;
        }
        while d < m && ok(d + 1) {
            d += 1;
        }
        Some(d)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den && self.field.same_as(&other.field)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_empty() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                1 => format!("{c}*q"),
                _ => format!("{c}*q^{i}"),
            });
        }
        let body = terms.join(" + ").replace("+ -", "- ");
        if self.den.is_one() {
            write!(f, "{body}")
        } else if terms.len() == 1 {
            write!(f, "{body}/{}", self.den)
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}
