//! Rational roots of integer polynomials: real-root isolation by Descartes bisection,
//! secant/bisection refinement on dyadic intervals, continued-fraction reconstruction
//! with the leading-coefficient denominator bound, and exact verification.

use super::poly::UniPoly;
use super::{Integer, Rational};
use crate::error::{Error, Result};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

const SIEVE_PRIMES: [u64; 24] = [
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197,
    199, 211, 223, 227,
];

/// All rational roots of a nonzero polynomial, sorted by (numerator, denominator).
pub fn rational_roots(p: &UniPoly) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return Err(Error::InfiniteRootSet);
    }
    let mut f = p.primitive_integer();
    let mut roots = Vec::new();
    if f[0].is_zero() {
        roots.push(Rational::zero());
        let lead = f.iter().position(|c| !c.is_zero()).unwrap();
        f.drain(..lead);
    }
    if f.len() > 1 && !sieve_admits_root(&f) {
        return Ok(roots);
    }
    if f.len() > 1 {
        if !squarefree_mod_p(&f) {
            f = UniPoly::from_integers(&f).squarefree().primitive_integer();
        }
        roots.extend(nonzero_roots(&f));
    }
    roots.sort_by(|a, b| (a.numer(), a.denom()).cmp(&(b.numer(), b.denom())));
    roots.dedup();
    for r in &roots {
        debug_assert!(p.eval(r).is_zero());
    }
    Ok(roots)
}

fn nonzero_roots(f: &[Integer]) -> Vec<Rational> {
    let bound = f.last().unwrap().abs();
    let mut out = Vec::new();
    for sign in [1i32, -1] {
        let g: Vec<Integer> = f
            .iter()
            .enumerate()
            .map(|(k, c)| if sign < 0 && k % 2 == 1 { -c } else { c.clone() })
            .collect();
        let isolated = isolate_positive(&g);
        // exact roots at bisection points can be endpoints of neighbouring intervals
        let mut deflated = UniPoly::from_integers(&g);
        for iv in &isolated {
            if let Isolated::Exact(r) = iv {
                deflated = deflated.exact_div(&UniPoly::linear_root(r)).expect("exact root divides");
            }
        }
        let h = deflated.primitive_integer();
        for iv in isolated {
            let found = match iv {
                Isolated::Exact(r) => Some(r),
                Isolated::Interval(lo, hi) => refine(&h, lo, hi, &bound),
            };
            if let Some(r) = found {
                out.push(if sign < 0 { -r } else { r });
            }
        }
    }
    out
}

/// Reduction modulo small primes not dividing the leading coefficient; a prime with no root
/// modulo p rules out every rational root.
fn sieve_admits_root(f: &[Integer]) -> bool {
    let lc = f.last().unwrap();
    let mut tried = 0;
    for &p in SIEVE_PRIMES.iter() {
        if (lc % p).is_zero() {
            continue;
        }
        let red = reduce_mod(f, p);
        if !(0..p).any(|x| eval_mod(&red, x, p) == 0) {
            return false;
        }
        tried += 1;
        if tried >= 16 {
            break;
        }
    }
    true
}

fn reduce_mod(f: &[Integer], p: u64) -> Vec<u64> {
    let pb = Integer::from(p);
    f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect()
}

fn eval_mod(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Certifies squarefreeness through a prime of good reduction.
fn squarefree_mod_p(f: &[Integer]) -> bool {
    let lc = f.last().unwrap();
    let d = f.len() as u64 - 1;
    for &p in SIEVE_PRIMES.iter().take(6) {
        if (lc % p).is_zero() || d >= p {
            continue;
        }
        let a = reduce_mod(f, p);
        let b: Vec<u64> = a.iter().enumerate().skip(1).map(|(k, &c)| c * (k as u64 % p) % p).collect();
        if gcd_mod(a, b, p).len() == 1 {
            return true;
        }
    }
    false
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let c = a.last().unwrap() * inv % p;
            let shift = a.len() - b.len();
            for (j, &bj) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + p - c * bj % p) % p;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

enum Isolated {
    Exact(Rational),
    Interval(Rational, Rational),
}

fn sign_variations(c: &[Integer]) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for x in c {
        let s = if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

fn taylor_shift_one(c: &mut [Integer]) {
    let d = c.len();
    for i in 0..d {
        for j in (i..d - 1).rev() {
            let t = c[j + 1].clone();
            c[j] += t;
        }
    }
}

/// Upper bound for the number of roots in (0,1).
fn descartes_01(q: &[Integer]) -> usize {
    let mut r: Vec<Integer> = q.iter().rev().cloned().collect();
    taylor_shift_one(&mut r);
    sign_variations(&r)
}

/// Isolates the positive roots of a squarefree integer polynomial with f(0) != 0.
fn isolate_positive(f: &[Integer]) -> Vec<Isolated> {
    let d = f.len() - 1;
    let lc_bits = f[d].bits() as i64;
    let max_bits = f[..d].iter().map(|c| c.bits() as i64).max().unwrap_or(0);
    let k = (max_bits - lc_bits + 2).max(0) as u64;
    let q: Vec<Integer> = f.iter().enumerate().map(|(i, c)| c << (k * i as u64)).collect();
    let scale = Rational::from_integer(Integer::one() << k);
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<Integer>, Integer, u64)> = vec![(q, Integer::zero(), 0)];
    while let Some((q, c, h)) = stack.pop() {
        let v = descartes_01(&q);
        if v == 0 {
            continue;
        }
        let den = Rational::from_integer(Integer::one() << h);
        if v == 1 {
            let lo = Rational::from_integer(c.clone()) / &den * &scale;
            let hi = Rational::from_integer(&c + 1) / &den * &scale;
            out.push(Isolated::Interval(lo, hi));
            continue;
        }
        let dq = q.len() - 1;
        let left: Vec<Integer> = q.iter().enumerate().map(|(i, a)| a << (dq - i)).collect();
        let mut right = left.clone();
        taylor_shift_one(&mut right);
        if right[0].is_zero() {
            let mid = Rational::new(2 * &c + 1, Integer::one() << (h + 1)) * &scale;
            out.push(Isolated::Exact(mid));
            right.remove(0);
        }
        stack.push((right, 2 * &c + 1, h + 1));
        stack.push((left, 2 * &c, h + 1));
    }
    out
}

fn eval_int(f: &[Integer], x: &Rational) -> Rational {
    let a = x.numer();
    let b = x.denom();
    let mut acc = f.last().unwrap().clone();
    let mut bp = Integer::one();
    for c in f.iter().rev().skip(1) {
        bp *= b;
        acc = acc * a + c * &bp;
    }
    Rational::new(acc, bp)
}

/// Simplest rational (smallest denominator, then smallest numerator) in the closed interval [a, b].
pub fn simplest_in(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(a <= b);
    if a.is_negative() && b.is_positive() || a.is_zero() || b.is_zero() {
        return Rational::zero();
    }
    if b.is_negative() {
        return -simplest_in(&-b, &-a);
    }
    // continued-fraction walk for 0 < a <= b
    let mut terms: Vec<Integer> = Vec::new();
    let (mut lo, mut hi) = (a.clone(), b.clone());
    let last;
    loop {
        let fl = lo.floor();
        if fl == lo {
            last = fl.to_integer();
            break;
        }
        if fl.clone() + Rational::one() <= hi {
            last = fl.to_integer() + 1;
            break;
        }
        terms.push(fl.to_integer());
        let nlo = Rational::one() / (&hi - &fl);
        let nhi = Rational::one() / (&lo - &fl);
        lo = nlo;
        hi = nhi;
    }
    let mut v = Rational::from_integer(last);
    for t in terms.into_iter().rev() {
        v = Rational::from_integer(t) + Rational::one() / v;
    }
    v
}

/// Refines an isolating interval of a simple root until it can hold at most one rational
/// with denominator <= bound; returns the root if it is rational.
fn refine(f: &[Integer], mut lo: Rational, mut hi: Rational, bound: &Integer) -> Option<Rational> {
    let two_l2 = Rational::from_integer(2 * bound * bound);
    let mut flo = eval_int(f, &lo);
    let mut fhi = eval_int(f, &hi);
    debug_assert!(!flo.is_zero() && !fhi.is_zero());
    let mut bits: u32 = 4;
    loop {
        let c = simplest_in(&lo, &hi);
        if c.denom() <= bound && eval_int(f, &c).is_zero() {
            return Some(c);
        }
        let w = &hi - &lo;
        if &w * &two_l2 < Rational::one() {
            return None;
        }
        // secant guess snapped to a grid of 2^bits cells
        let n = Integer::one() << bits;
        let step = &w / Rational::from_integer(n.clone());
        let lam = &flo / (&flo - &fhi);
        let idx = (lam * Rational::from_integer(n.clone())).floor().to_integer();
        let idx = idx.clamp(Integer::zero(), &n - 1);
        let a = &lo + &step * Rational::from_integer(idx.clone());
        let b = &a + &step;
        let fa = if idx.is_zero() { flo.clone() } else { eval_int(f, &a) };
        let fb = if idx == &n - 1 { fhi.clone() } else { eval_int(f, &b) };
        if fa.is_zero() {
            return Some(a);
        }
        if fb.is_zero() {
            return Some(b);
        }
        if fa.is_positive() != fb.is_positive() {
            lo = a;
            hi = b;
            flo = fa;
            fhi = fb;
            bits = (bits * 2).min(1 << 16);
            continue;
        }
        let mid = (&lo + &hi) / Rational::from_integer(Integer::from(2));
        let fm = eval_int(f, &mid);
        if fm.is_zero() {
            return Some(mid);
        }
        if fm.is_positive() == flo.is_positive() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
        bits = (bits / 2).max(2);
    }
}
