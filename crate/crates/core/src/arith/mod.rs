//! Exact integer, rational and polynomial arithmetic.

pub mod integer;
pub mod linalg;
pub mod multipoly;
pub mod poly;
pub mod roots;

pub use num_bigint::BigInt as Integer;
pub use num_rational::BigRational as Rational;

use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};

pub use integer::{factor_integer, is_prime, kth_power_free_part, squarefree_part, FactorBudget};
pub use multipoly::MultiPoly;
pub use poly::{poly_gcd, UniPoly};
pub use roots::rational_roots;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(Integer::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn from_int(v: Integer) -> Rational {
    Rational::from_integer(v)
}

/// Parses "p", "-p" or "p/q".
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Malformed(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let valid = |x: &str| {
        let body = x.strip_prefix(['-', '+']).unwrap_or(x);
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(n) || !valid(d) {
        return Err(bad());
    }
    let n: Integer = n.trim_start_matches('+').parse().map_err(|_| bad())?;
    let d: Integer = d.trim_start_matches('+').parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn parse_integer(s: &str) -> Result<Integer> {
    let r = parse_rational(s)?;
    if !r.is_integer() {
        return Err(Error::Malformed(format!("not an integer: {s:?}")));
    }
    Ok(r.to_integer())
}

/// Exact rational k-th root, if it exists.
pub fn rational_root(q: &Rational, k: u32) -> Option<Rational> {
    if q.is_zero() {
        return Some(Rational::zero());
    }
    if q.is_negative() && k % 2 == 0 {
        return None;
    }
    let n = integer_root(q.numer(), k)?;
    let d = integer_root(q.denom(), k)?;
    Some(Rational::new(n, d))
}

/// Exact integer k-th root (sign preserved for odd k).
pub fn integer_root(n: &Integer, k: u32) -> Option<Integer> {
    if n.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return integer_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

pub fn is_square(q: &Rational) -> bool {
    rational_root(q, 2).is_some()
}

pub fn pow(q: &Rational, e: u32) -> Rational {
    num_traits::pow(q.clone(), e as usize)
}

pub fn ipow(q: &Integer, e: u32) -> Integer {
    num_traits::pow(q.clone(), e as usize)
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &Integer, p: &Integer) -> u32 {
    let mut n = n.abs();
    let mut v = 0;
    if n.is_zero() {
        return u32::MAX;
    }
    loop {
        let (q, r) = num_integer::Integer::div_rem(&n, p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation_q(q: &Rational, p: &Integer) -> i64 {
    valuation(q.numer(), p) as i64 - valuation(q.denom(), p) as i64
}

pub fn is_one(q: &Rational) -> bool {
    q.is_one()
}
