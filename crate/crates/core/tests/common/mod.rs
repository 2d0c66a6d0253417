#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use univoque::landmarks;
use univoque::numerics::BaseValue;
use univoque::words::Word;

pub fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn poly_base(c: &[i64], lo: BigRational, hi: BigRational, m: u32) -> BaseValue {
    let c: Vec<BigInt> = c.iter().map(|&v| v.into()).collect();
    BaseValue::from_polynomial(&c, lo, hi, m).unwrap()
}

pub fn golden() -> BaseValue {
    poly_base(&[1, -1, -1], r(3, 2), r(17, 10), 1)
}

pub fn tribonacci() -> BaseValue {
    poly_base(&[1, -1, -1, -1], r(9, 5), r(19, 10), 1)
}

pub fn beta_word(w: &str, m: u32) -> BaseValue {
    landmarks::base_of_word(&Word::parse(w, m).unwrap()).unwrap()
}

pub fn rational(n: i64, d: i64, m: u32) -> BaseValue {
    BaseValue::rational(n, d, m).unwrap()
}

/// Bases on which every rational point has an eventually periodic greedy
/// expansion, so that exact answers are expected.
pub fn pisot_bases() -> Vec<BaseValue> {
    vec![
        golden(),
        tribonacci(),
        beta_word("1101", 1),
        rational(2, 1, 1),
        rational(2, 1, 2),
        rational(3, 1, 3),
        landmarks::generalized_golden(3).unwrap(),
    ]
}

/// Pisot bases plus rational non-integer ones, whose orbits rarely close.
pub fn mixed_bases() -> Vec<BaseValue> {
    let mut v = pisot_bases();
    v.push(rational(3, 2, 1));
    v.push(rational(9, 5, 1));
    v.push(rational(5, 2, 2));
    v
}
