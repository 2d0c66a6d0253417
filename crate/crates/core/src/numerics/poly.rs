//! Univariate polynomial helpers over Z and Q.
//!
//! Coefficient vectors are stored lowest degree first and kept trimmed
//! (no trailing zeros), so the zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntPoly = Vec<BigInt>;
pub type RatPoly = Vec<BigRational>;

pub fn trim<T: Zero>(mut p: Vec<T>) -> Vec<T> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn degree<T>(p: &[T]) -> Option<usize> {
    p.len().checked_sub(1)
}

/// Sign of `p(x)` for rational `x`, computed exactly by clearing denominators.
pub fn sign_at(p: &[BigInt], x: &BigRational) -> i32 {
    let Some(d) = degree(p) else { return 0 };
    let (n, den) = (x.numer(), x.denom());
    // sum a_i n^i den^(d-i), den > 0
    let mut acc = BigInt::zero();
    let mut npow = BigInt::one();
    let mut dpows = Vec::with_capacity(d + 1);
    let mut t = BigInt::one();
    for _ in 0..=d {
        dpows.push(t.clone());
        t *= den;
    }
    for (i, a) in p.iter().enumerate() {
        if !a.is_zero() {
            acc += a * &npow * &dpows[d - i];
        }
        npow *= n;
    }
    sign_of(&acc)
}

pub fn sign_of(v: &BigInt) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn rat_sign(v: &BigRational) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

pub fn to_rat(p: &[BigInt]) -> RatPoly {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

/// Clears denominators and removes the content; leading coefficient positive.
pub fn primitive_from_rat(p: &[BigRational]) -> IntPoly {
    let p = trim(p.to_vec());
    if p.is_empty() {
        return Vec::new();
    }
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    primitive(&ints)
}

pub fn primitive(p: &[BigInt]) -> IntPoly {
    let p = trim(p.to_vec());
    let Some(lead) = p.last() else { return p };
    let mut g = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if lead.is_negative() {
        g = -g;
    }
    p.into_iter().map(|c| c / &g).collect()
}

pub fn derivative(p: &[BigInt]) -> IntPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

/// Quotient and remainder of rational polynomial division; `b` must be nonzero.
pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (RatPoly, RatPoly) {
    let b = trim(b.to_vec());
    let db = degree(&b).expect("division by the zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = &r[dr] / &lead;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &c * bc;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

pub fn gcd(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Squarefree part as a primitive integer polynomial.
pub fn squarefree(p: &[BigInt]) -> IntPoly {
    let dp = derivative(p);
    if dp.is_empty() {
        return primitive(p);
    }
    let g = gcd(&to_rat(p), &to_rat(&dp));
    let (q, _) = divrem(&to_rat(p), &g);
    primitive_from_rat(&q)
}

/// Sturm chain of a squarefree polynomial.
pub fn sturm_chain(p: &[BigInt]) -> Vec<IntPoly> {
    let mut chain = vec![primitive(p)];
    let d = derivative(p);
    if d.is_empty() {
        return chain;
    }
    chain.push(primitive(&d));
    loop {
        let n = chain.len();
        let (_, r) = divrem(&to_rat(&chain[n - 2]), &to_rat(&chain[n - 1]));
        if r.is_empty() {
            break;
        }
        // primitive() may flip sign to make the leading coefficient positive,
        // so undo that to keep the chain's sign pattern intact.
        let neg: RatPoly = r.iter().map(|c| -c).collect();
        let prim = primitive_from_rat(&neg);
        let lead_neg = neg.last().map(rat_sign).unwrap_or(0);
        let fixed = if lead_neg < 0 {
            prim.into_iter().map(|c| -c).collect()
        } else {
            prim
        };
        chain.push(fixed);
    }
    chain
}

fn sign_changes(chain: &[IntPoly], x: &BigRational) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for p in chain {
        let s = sign_at(p, x);
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Number of distinct real roots of `p` in the closed interval `[lo, hi]`.
pub fn count_roots_closed(p: &[BigInt], lo: &BigRational, hi: &BigRational) -> usize {
    let sf = squarefree(p);
    if degree(&sf).unwrap_or(0) == 0 {
        return 0;
    }
    let chain = sturm_chain(&sf);
    let half_open = sign_changes(&chain, lo).saturating_sub(sign_changes(&chain, hi));
    half_open + usize::from(sign_at(&sf, lo) == 0)
}

/// Irreducible factors over Z (primitive, positive leading coefficient),
/// without multiplicities.
pub fn irreducible_factors(p: &[BigInt]) -> Vec<IntPoly> {
    let poly: algebraics::polynomial::Polynomial<BigInt> = p.to_vec().into();
    let factors = poly.factor();
    factors
        .polynomial_factors
        .into_iter()
        .map(|f| primitive(&f.polynomial.into_coefficients()))
        .filter(|f| degree(f).unwrap_or(0) >= 1)
        .collect()
}

/// Extended Euclid in Q[x]: returns `s` with `s * a = 1 mod m`, assuming
/// `a` and `m` are coprime.
pub fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<RatPoly> {
    let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
    let (mut s0, mut s1): (RatPoly, RatPoly) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    let (_, s) = divrem(&s0.iter().map(|x| x / &c).collect::<RatPoly>(), m);
    Some(s)
}
