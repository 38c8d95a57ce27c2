use super::{Integer, Rational};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse polynomial with integer coefficients in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Integer>,
}

/// Graded lexicographic comparison: total degree first, then exponents left to right.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Integer) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable x_k.
    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Self::monomial(e, Integer::one())
    }

    pub fn monomial(exps: Vec<u32>, c: Integer) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Integer)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Integer) {
        assert_eq!(exps.len(), self.nvars, "arity mismatch");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps.clone()).or_insert_with(Integer::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Integer {
        self.terms.get(exps).cloned().unwrap_or_else(Integer::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending grlex order.
    pub fn terms(&self) -> Vec<(&Vec<u32>, &Integer)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex(b.0, a.0));
        v
    }

    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|e| e[k]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = Rational::from_integer(c.clone());
            for (xi, &ei) in x.iter().zip(e) {
                if ei > 0 {
                    t *= super::pow(xi, ei);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_int(&self, x: &[Integer]) -> Integer {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Integer::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &ei) in x.iter().zip(e) {
                if ei > 0 {
                    t *= super::ipow(xi, ei);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exchanges two variables.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, c)| {
                let mut e = e.clone();
                e.swap(i, j);
                (e, c.clone())
            }),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.nvars, Integer::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, c: &Integer) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(e, v)| (e.clone(), v * c)))
    }

    /// Renders with the given variable names, descending grlex order.
    pub fn render(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms().into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(&ei, _)| ei > 0)
                .map(|(&ei, n)| if ei == 1 { n.to_string() } else { format!("{n}^{ei}") })
                .collect();
            let neg = c < &Integer::zero();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), -c)))
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut r = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                r.add_term(e, ca * cb);
            }
        }
        r
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|k| format!("x{k}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        f.write_str(&self.render(&refs))
    }
}
