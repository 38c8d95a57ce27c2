use super::{Integer, Rational};
use crate::error::{Error, Result};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial over the rationals; `coeffs[k]` is the coefficient of x^k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(cs: I) -> Self {
        Self::new(cs.into_iter().map(super::rat).collect())
    }

    pub fn from_integers(cs: &[Integer]) -> Self {
        Self::new(cs.iter().cloned().map(Rational::from_integer).collect())
    }

    /// x - r
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(Integer::from(k)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// self(other(x))
    pub fn compose(&self, other: &UniPoly) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.deg();
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        if r.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Quotient, if `d` divides `self` exactly.
    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.lc();
        Self::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    /// Primitive integer polynomial with positive leading coefficient, proportional to `self`.
    pub fn primitive_integer(&self) -> Vec<Integer> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut l = Integer::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let mut v: Vec<Integer> = self.coeffs.iter().map(|c| (c * &l).to_integer()).collect();
        let mut g = Integer::zero();
        for c in &v {
            g = g.gcd(c);
        }
        if v.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
        v
    }

    /// Whether all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn squarefree(&self) -> UniPoly {
        let g = poly_gcd(self, &self.derivative()).unwrap_or_else(|_| UniPoly::one());
        self.exact_div(&g).expect("gcd divides")
    }
}

/// Monic gcd over the rationals, by a primitive pseudo-remainder sequence in Z[x].
pub fn poly_gcd(p: &UniPoly, q: &UniPoly) -> Result<UniPoly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut a, mut b) = (p.primitive_integer(), q.primitive_integer());
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(pseudo_rem(a, &b));
        a = b;
        b = r;
    }
    Ok(UniPoly::from_integers(&a).monic())
}

/// lc(b)^k a mod b in Z[x], k = deg a - deg b + 1; trailing zeros trimmed.
fn pseudo_rem(mut a: Vec<Integer>, b: &[Integer]) -> Vec<Integer> {
    let lb = b.last().expect("nonzero divisor");
    while a.len() >= b.len() {
        let la = a.last().unwrap().clone();
        let shift = a.len() - b.len();
        let g = la.gcd(lb);
        let (ma, mb) = (lb / &g, &la / &g);
        for c in a.iter_mut() {
            *c *= &ma;
        }
        for (k, c) in b.iter().enumerate() {
            a[shift + k] -= &mb * c;
        }
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
    }
    a
}

fn primitive(mut v: Vec<Integer>) -> Vec<Integer> {
    let mut g = Integer::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    v
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}
