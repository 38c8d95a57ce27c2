use super::{Integer, Rational};
use crate::error::{Error, Result};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::sync::OnceLock;

const TRIAL_LIMIT: u32 = 1_000_000;

/// Work limit for the rho stage of `factor_integer`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorBudget {
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget { rho_iterations: 100_000_000 }
    }
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        sieve.iter().enumerate().filter(|(_, &b)| b).map(|(k, _)| k as u32).collect()
    })
}

/// Miller-Rabin with the first 13 prime bases: deterministic below 3.3e24,
/// a strong probable-prime test beyond that.
pub fn is_prime(n: &Integer) -> bool {
    if *n < Integer::from(2) {
        return false;
    }
    const BASES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    for &p in &BASES {
        let p = Integer::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = Integer::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = Integer::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Prime factorisation of |n| with the default work budget.
pub fn factor_integer(n: &Integer) -> Result<Vec<(Integer, u32)>> {
    factor_integer_with(n, FactorBudget::default())
}

pub fn factor_integer_with(n: &Integer, budget: FactorBudget) -> Result<Vec<(Integer, u32)>> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let mut m = n.abs();
    let mut out: BTreeMap<Integer, u32> = BTreeMap::new();
    for &p in small_primes() {
        let pb = Integer::from(p);
        if &pb * &pb > m {
            break;
        }
        if (&m % p).is_zero() {
            let mut e = 0;
            while (&m % p).is_zero() {
                m /= p;
                e += 1;
            }
            out.insert(pb, e);
        }
    }
    if m > Integer::one() {
        let mut left = budget.rho_iterations;
        split_large(&m, 1, &mut out, &mut left)?;
    }
    Ok(out.into_iter().collect())
}

fn split_large(m: &Integer, mult: u32, out: &mut BTreeMap<Integer, u32>, budget: &mut u64) -> Result<()> {
    if m.is_one() {
        return Ok(());
    }
    if is_prime(m) {
        *out.entry(m.clone()).or_insert(0) += mult;
        return Ok(());
    }
    // perfect powers first: rho is slow on them and they are common in twisted models
    let bits = m.bits() as u32;
    for k in (2..=bits / 20 + 1).rev() {
        let r = m.nth_root(k);
        if r > Integer::one() && super::ipow(&r, k) == *m {
            return split_large(&r, mult * k, out, budget);
        }
    }
    let f = brent_rho(m, budget)?;
    let g = m / &f;
    split_large(&f, mult, out, budget)?;
    split_large(&g, mult, out, budget)
}

fn brent_rho(n: &Integer, budget: &mut u64) -> Result<Integer> {
    let one = Integer::one();
    let mut c = Integer::one();
    loop {
        let f = |x: &Integer| (x * x + &c) % n;
        let mut y = Integer::from(2);
        let mut r: u64 = 1;
        let mut q = Integer::one();
        let mut g = Integer::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const BLOCK: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = BLOCK.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    q = (&q * (&x - &y).abs()) % n;
                }
                if *budget < steps {
                    return Err(Error::FactorBudgetExceeded);
                }
                *budget -= steps;
                g = q.gcd(n);
                k += steps;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g != *n {
            return Ok(g);
        }
        c += 1;
    }
}

/// The k-th-power-free integer s with q/s a k-th power of a rational; sign(s) = sign(q) for odd k,
/// and for even k the sign of q is carried into s as well.
pub fn kth_power_free_part(q: &Rational, k: u32) -> Result<Integer> {
    if q.is_zero() {
        return Err(Error::Zero);
    }
    // q = n/d  ~  n * d^(k-1) modulo k-th powers
    let m = q.numer() * super::ipow(q.denom(), k - 1);
    let mut s = Integer::one();
    for (p, e) in factor_integer(&m)? {
        s *= super::ipow(&p, e % k);
    }
    if q.is_negative() {
        s = -s;
    }
    Ok(s)
}

/// The squarefree integer s with q/s a rational square.
pub fn squarefree_part(q: &Rational) -> Result<Integer> {
    kth_power_free_part(q, 2)
}

pub fn to_u64(n: &Integer) -> Option<u64> {
    n.to_u64()
}
