//! Weierstrass models over Q.

use crate::arith::{
    factor_integer, from_int, int, ipow, parse_rational, pow, rat, rational_root, valuation, Integer, Rational,
};
use crate::error::{Error, Result};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::fmt;

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, nonsingular.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassModel {
    a: [Rational; 5],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub b2: Rational,
    pub b4: Rational,
    pub b6: Rational,
    pub b8: Rational,
    pub c4: Rational,
    pub c6: Rational,
    pub disc: Rational,
    pub j: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionType {
    Good,
    Multiplicative,
    Additive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistKind {
    Quartic,
    Sextic,
}

fn b_invariants(a: &[Rational; 5]) -> (Rational, Rational, Rational, Rational) {
    let [a1, a2, a3, a4, a6] = a;
    let b2 = a1 * a1 + rat(4) * a2;
    let b4 = rat(2) * a4 + a1 * a3;
    let b6 = a3 * a3 + rat(4) * a6;
    let b8 = a1 * a1 * a6 + rat(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    (b2, b4, b6, b8)
}

fn disc_of(a: &[Rational; 5]) -> Rational {
    let (b2, b4, b6, b8) = b_invariants(a);
    -(&b2 * &b2 * &b8) - rat(8) * pow(&b4, 3) - rat(27) * &b6 * &b6 + rat(9) * &b2 * &b4 * &b6
}

impl WeierstrassModel {
    pub fn new(a: [Rational; 5]) -> Result<Self> {
        let d = disc_of(&a);
        if d.is_zero() {
            return Err(Error::SingularModel(d.to_string()));
        }
        Ok(WeierstrassModel { a })
    }

    pub fn short(a: Rational, b: Rational) -> Result<Self> {
        Self::new([Rational::zero(), Rational::zero(), Rational::zero(), a, b])
    }

    pub fn short_i(a: i64, b: i64) -> Result<Self> {
        Self::short(rat(a), rat(b))
    }

    pub fn coeffs(&self) -> &[Rational; 5] {
        &self.a
    }

    pub fn is_short(&self) -> bool {
        self.a[0].is_zero() && self.a[1].is_zero() && self.a[2].is_zero()
    }

    /// (A, B) of a short model; panics on long models, use `to_short` first.
    pub fn ab(&self) -> (&Rational, &Rational) {
        assert!(self.is_short(), "long model where a short one is required");
        (&self.a[3], &self.a[4])
    }

    pub fn a4(&self) -> &Rational {
        &self.a[3]
    }

    pub fn a6(&self) -> &Rational {
        &self.a[4]
    }

    /// The short model (-c4/48, -c6/864), isomorphic over Q.
    pub fn to_short(&self) -> WeierstrassModel {
        if self.is_short() {
            return self.clone();
        }
        let inv = invariants(self);
        WeierstrassModel::short(-inv.c4 / rat(48), -inv.c6 / rat(864)).expect("nonsingular")
    }

    pub fn j(&self) -> Rational {
        invariants(self).j
    }

    pub fn disc(&self) -> Rational {
        disc_of(&self.a)
    }

    pub fn to_json(&self) -> Value {
        let inv = invariants(self);
        json!({
            "model": self.a.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "c4": inv.c4.to_string(),
            "c6": inv.c6.to_string(),
            "disc": inv.disc.to_string(),
            "j": inv.j.to_string(),
        })
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_short() {
            write!(f, "{},{}", self.a[3], self.a[4])
        } else {
            let s: Vec<String> = self.a.iter().map(|c| c.to_string()).collect();
            write!(f, "{}", s.join(","))
        }
    }
}

pub fn invariants(w: &WeierstrassModel) -> Invariants {
    let (b2, b4, b6, b8) = b_invariants(&w.a);
    let c4 = &b2 * &b2 - rat(24) * &b4;
    let c6 = -pow(&b2, 3) + rat(36) * &b2 * &b4 - rat(216) * &b6;
    let disc = disc_of(&w.a);
    let j = pow(&c4, 3) / &disc;
    Invariants { b2, b4, b6, b8, c4, c6, disc, j }
}

/// Parses "A,B" or "a1,a2,a3,a4,a6".
pub fn parse_curve(text: &str) -> Result<WeierstrassModel> {
    let parts: Vec<&str> = text.trim().split(',').collect();
    let vals: Vec<Rational> = parts.iter().map(|p| parse_rational(p)).collect::<Result<_>>()?;
    match vals.len() {
        2 => WeierstrassModel::short(vals[0].clone(), vals[1].clone()),
        5 => WeierstrassModel::new([
            vals[0].clone(),
            vals[1].clone(),
            vals[2].clone(),
            vals[3].clone(),
            vals[4].clone(),
        ]),
        k => Err(Error::Malformed(format!("expected 2 or 5 coefficients, got {k}"))),
    }
}

fn require_nonzero(d: &Rational) -> Result<()> {
    if d.is_zero() {
        Err(Error::Zero)
    } else {
        Ok(())
    }
}

/// (d^2 A, d^3 B)
pub fn quadratic_twist(e: &WeierstrassModel, d: &Rational) -> Result<WeierstrassModel> {
    require_nonzero(d)?;
    let s = e.to_short();
    let (a, b) = s.ab();
    WeierstrassModel::short(d * d * a, pow(d, 3) * b)
}

/// Quartic (dA, 0) for j = 1728 shapes, sextic (0, dB) for j = 0 shapes.
pub fn special_twist(e: &WeierstrassModel, d: &Rational, kind: TwistKind) -> Result<WeierstrassModel> {
    require_nonzero(d)?;
    let s = e.to_short();
    let (a, b) = s.ab();
    match kind {
        TwistKind::Quartic if b.is_zero() => WeierstrassModel::short(d * a, Rational::zero()),
        TwistKind::Sextic if a.is_zero() => WeierstrassModel::short(Rational::zero(), d * b),
        _ => Err(Error::Precondition(format!("{kind:?} twist needs the matching shape"))),
    }
}

/// u with A2 = u^4 A1 and B2 = u^6 B1 (positive u), if the curves are isomorphic over Q.
pub fn is_isomorphic(e1: &WeierstrassModel, e2: &WeierstrassModel) -> Option<Rational> {
    let (s1, s2) = (e1.to_short(), e2.to_short());
    let (a1, b1) = s1.ab();
    let (a2, b2) = s2.ab();
    if a1.is_zero() != a2.is_zero() || b1.is_zero() != b2.is_zero() {
        return None;
    }
    let u = if a1.is_zero() {
        rational_root(&(b2 / b1), 6)?
    } else if b1.is_zero() {
        rational_root(&(a2 / a1), 4)?
    } else {
        // u^2 = (B2/B1)/(A2/A1)
        let u2 = (b2 / b1) / (a2 / a1);
        rational_root(&u2, 2)?
    };
    let u = u.abs();
    (pow(&u, 4) * a1 == *a2 && pow(&u, 6) * b1 == *b2).then_some(u)
}

/// d = B c4' / (2 A c6') with quadratic_twist(e_ref, d) isomorphic to e_target.
pub fn twist_parameter(e_ref: &WeierstrassModel, e_target: &WeierstrassModel) -> Result<Rational> {
    let r = e_ref.to_short();
    let (a, b) = r.ab();
    let it = invariants(e_target);
    let jr = r.j();
    if jr != it.j {
        return Err(Error::Precondition("j-invariants differ".into()));
    }
    if jr.is_zero() || jr == rat(1728) || it.c6.is_zero() {
        return Err(Error::Precondition("twist parameter undefined for j in {0, 1728}".into()));
    }
    Ok(b * &it.c4 / (rat(2) * a * &it.c6))
}

fn centered_mod(x: &Integer, m: i64) -> Integer {
    let m = int(m);
    let mut r = x.mod_floor(&m);
    if r.clone() * 2 > m {
        r -= &m;
    }
    r
}

/// Integral short model isomorphic to `e` (scales by the lcm of denominators).
pub fn integral_short(e: &WeierstrassModel) -> WeierstrassModel {
    let s = e.to_short();
    let (a, b) = s.ab();
    let l = a.denom().lcm(b.denom());
    let l = from_int(l);
    WeierstrassModel::short(a * pow(&l, 4), b * pow(&l, 6)).expect("nonsingular")
}

/// Global minimal model over Q in reduced form (a1, a3 in {0,1}, a2 in {-1,0,1}).
pub fn minimal_model(e: &WeierstrassModel) -> Result<WeierstrassModel> {
    let inv = invariants(&integral_short(e));
    let c4 = inv.c4.to_integer();
    let c6 = inv.c6.to_integer();
    let disc = inv.disc.to_integer();
    let g = (&c6 * &c6).gcd(&disc);
    let mut u = Integer::one();
    for (p, _) in factor_integer(&g)? {
        let mut d = valuation(&g, &p) / 12;
        if d == 0 {
            continue;
        }
        if p == int(2) {
            let a = (&c4 / ipow(&p, 4 * d)).mod_floor(&int(16));
            let b = (&c6 / ipow(&p, 6 * d)).mod_floor(&int(32));
            let ok = b.mod_floor(&int(4)) == int(3) || (a.is_zero() && (b.is_zero() || b == int(8)));
            if !ok {
                d -= 1;
            }
        } else if p == int(3) && valuation(&c6, &p) == 6 * d + 2 {
            d -= 1;
        }
        u *= ipow(&p, d);
    }
    let c4 = c4 / ipow(&u, 4);
    let c6 = c6 / ipow(&u, 6);
    let b2 = centered_mod(&-&c6, 12);
    let b4: Integer = (&b2 * &b2 - &c4) / int(24);
    let b6: Integer = (-ipow(&b2, 3) + int(36) * &b2 * &b4 - &c6) / int(216);
    let a1 = b2.mod_floor(&int(2));
    let a3 = b6.mod_floor(&int(2));
    let a2 = (&b2 - &a1) / 4;
    let a4 = (&b4 - &a1 * &a3) / 2;
    let a6 = (&b6 - &a3) / 4;
    let m = WeierstrassModel::new([from_int(a1), from_int(a2), from_int(a3), from_int(a4), from_int(a6)])?;
    let mi = invariants(&m);
    if mi.c4 != from_int(c4) || mi.c6 != from_int(c6) {
        return Err(Error::Inconsistency("minimal model invariants do not match".into()));
    }
    Ok(m)
}

fn reduction_from_minimal(m: &Invariants, p: &Integer) -> ReductionType {
    let disc = m.disc.to_integer();
    if !(&disc % p).is_zero() {
        ReductionType::Good
    } else if !(m.c4.to_integer() % p).is_zero() {
        ReductionType::Multiplicative
    } else {
        ReductionType::Additive
    }
}

pub fn reduction_type(e: &WeierstrassModel, p: &Integer) -> Result<ReductionType> {
    let m = minimal_model(e)?;
    Ok(reduction_from_minimal(&invariants(&m), p))
}

/// No additive reduction at primes not dividing n.
pub fn is_semistable_outside(e: &WeierstrassModel, n: u64) -> Result<bool> {
    let m = invariants(&minimal_model(e)?);
    let g = m.c4.to_integer().gcd(&m.disc.to_integer());
    if g.is_zero() {
        return Ok(true);
    }
    let n = Integer::from(n);
    for (p, _) in factor_integer(&g)? {
        if !(&n % &p).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Primes of additive reduction (from the minimal model).
pub fn additive_primes(e: &WeierstrassModel) -> Result<Vec<Integer>> {
    let m = invariants(&minimal_model(e)?);
    let g = m.c4.to_integer().gcd(&m.disc.to_integer());
    Ok(factor_integer(&g)?.into_iter().map(|(p, _)| p).collect())
}
