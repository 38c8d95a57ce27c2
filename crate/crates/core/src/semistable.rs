//! The long models F_n(a, b) for n in {4, 6, 9}, their invariants (alpha_n, gamma_n),
//! and Bezout witnesses bounding gcd(alpha_n, gamma_n).

use crate::arith::{int, ipow, linalg, Integer, MultiPoly, Rational};
use crate::atlas::Atlas;
use crate::curves::{invariants, WeierstrassModel};
use crate::error::{Error, Result};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

pub const SEMISTABLE_LEVELS: [u32; 3] = [4, 6, 9];

fn check_level(n: u32) -> Result<()> {
    if SEMISTABLE_LEVELS.contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidLevel(n))
    }
}

/// (c_n, e_n) of the ideal bound: c_n (r a^e + s b^e) lies in (alpha_n, gamma_n).
pub fn bezout_bound(n: u32) -> Result<(Integer, u32)> {
    check_level(n)?;
    Ok(match n {
        4 => (ipow(&int(2), 28), 6),
        6 => (ipow(&int(2), 16) * ipow(&int(3), 24), 15),
        _ => (ipow(&int(3), 39), 15),
    })
}

fn a() -> MultiPoly {
    MultiPoly::var(2, 0)
}

fn b() -> MultiPoly {
    MultiPoly::var(2, 1)
}

fn lin(ca: i64, cb: i64) -> MultiPoly {
    &a().scale(&int(ca)) + &b().scale(&int(cb))
}

fn hom(cs: &[i64]) -> MultiPoly {
    // sum cs[k] a^(d-k) b^k with d = len - 1
    let d = cs.len() as u32 - 1;
    MultiPoly::from_terms(2, cs.iter().enumerate().map(|(k, &c)| (vec![d - k as u32, k as u32], int(c))))
}

/// alpha_n(a, b) and gamma_n(a, b) as polynomials in Z[a, b].
pub fn alpha_gamma_polys(n: u32) -> Result<(MultiPoly, MultiPoly)> {
    check_level(n)?;
    let k = |c: i64| MultiPoly::constant(2, int(c));
    Ok(match n {
        4 => (
            &k(16) * &hom(&[256, 16, 1]),
            &(&k(4096) * &(&a().pow(2) * &b().pow(2))) * &lin(16, 1).pow(2),
        ),
        6 => (
            &(&k(9) * &lin(12, 1)) * &hom(&[15552, 3888, 252, 1]),
            &(&(&k(729) * &(&a() * &b().pow(6))) * &lin(8, 1).pow(2)) * &lin(9, 1).pow(3),
        ),
        _ => (
            &(&k(9) * &lin(6, 1)) * &hom(&[2160, 756, 234, 1]),
            &(&(&k(729) * &a()) * &lin(-3, 1).pow(9)) * &hom(&[9, 3, 1]),
        ),
    })
}

pub fn alpha_gamma(n: u32, a: &Integer, b: &Integer) -> Result<(Integer, Integer)> {
    let (al, ga) = alpha_gamma_polys(n)?;
    let x = [a.clone(), b.clone()];
    Ok((al.eval_int(&x), ga.eval_int(&x)))
}

/// F_n(a, b): y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x.
pub fn f_model(n: u32, a: &Integer, b: &Integer) -> Result<WeierstrassModel> {
    let (_, g) = alpha_gamma(n, a, b)?;
    if g.is_zero() {
        return Err(Error::DegenerateParameters);
    }
    let q = |v: Integer| Rational::from_integer(v);
    let z = Integer::zero();
    let coeffs = match n {
        4 => [z.clone(), b - int(16) * a, z.clone(), int(-16) * a * b, z],
        6 => [
            int(36) * a + int(5) * b,
            int(2) * b * (int(9) * a + b),
            int(9) * b * (int(8) * a + b) * (int(9) * a + b),
            z.clone(),
            z,
        ],
        _ => [int(3) * (int(6) * a + b), z.clone(), ipow(&(b - int(3) * a), 3), z.clone(), z],
    };
    WeierstrassModel::new(coeffs.map(q))
}

/// c4(F_n(a,b)) = alpha_n(a,b) and disc(F_n(a,b)) = gamma_n(a,b).
pub fn verify_lemma41(n: u32, a: &Integer, b: &Integer) -> Result<bool> {
    let e = f_model(n, a, b)?;
    let (al, ga) = alpha_gamma(n, a, b)?;
    let inv = invariants(&e);
    Ok(inv.c4 == Rational::from_integer(al) && inv.disc == Rational::from_integer(ga))
}

/// gcd(alpha_n(a,b), gamma_n(a,b)) divides c_n, for coprime a, b.
pub fn gcd_bound_check(n: u32, a: &Integer, b: &Integer) -> Result<bool> {
    if !a.gcd(b).is_one() {
        return Err(Error::Precondition(format!("gcd({a}, {b}) != 1")));
    }
    let (al, ga) = alpha_gamma(n, a, b)?;
    let (c, _) = bezout_bound(n)?;
    let g = al.gcd(&ga);
    Ok(!g.is_zero() && (&c % &g).is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Target {
    A,
    B,
}

/// mu * alpha_n + nu * gamma_n = constant * a^e (target A) or constant * b^e (target B).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutWitness {
    pub n: u32,
    pub target: Target,
    pub mu: MultiPoly,
    pub nu: MultiPoly,
    pub constant: Integer,
}

impl BezoutWitness {
    pub fn exponent(&self) -> u32 {
        bezout_bound(self.n).map(|(_, e)| e).unwrap_or(0)
    }

    /// Exact re-check of the identity in Z[a, b].
    pub fn verify(&self) -> Result<bool> {
        let (al, ga) = alpha_gamma_polys(self.n)?;
        let e = self.exponent();
        let mono = match self.target {
            Target::A => vec![e, 0],
            Target::B => vec![0, e],
        };
        let lhs = &(&self.mu * &al) + &(&self.nu * &ga);
        Ok(lhs == MultiPoly::monomial(mono, self.constant.clone()))
    }

    pub fn to_json(&self) -> Value {
        let terms = |p: &MultiPoly| -> Vec<Value> {
            p.terms().into_iter().map(|(e, c)| json!([e[0], e[1], c.to_string()])).collect()
        };
        json!({
            "target": if self.target == Target::A { "a" } else { "b" },
            "mu": terms(&self.mu),
            "nu": terms(&self.nu),
            "constant": self.constant.to_string(),
        })
    }
}

fn homogeneous_basis(deg: i64) -> Vec<Vec<u32>> {
    if deg < 0 {
        return Vec::new();
    }
    let d = deg as u32;
    (0..=d).map(|k| vec![d - k, k]).collect()
}

/// Cofactors for one target monomial, by an exact homogeneous linear solve of degree e_n.
pub fn derive_bezout_target(n: u32, target: Target) -> Result<BezoutWitness> {
    let (al, ga) = alpha_gamma_polys(n)?;
    let (bound, e) = bezout_bound(n)?;
    let mu_basis = homogeneous_basis(e as i64 - al.total_degree() as i64);
    let nu_basis = homogeneous_basis(e as i64 - ga.total_degree() as i64);
    let rows = homogeneous_basis(e as i64);
    let mut cols: Vec<MultiPoly> = Vec::new();
    for m in &mu_basis {
        cols.push(&MultiPoly::monomial(m.clone(), Integer::one()) * &al);
    }
    for m in &nu_basis {
        cols.push(&MultiPoly::monomial(m.clone(), Integer::one()) * &ga);
    }
    let matrix: Vec<Vec<Rational>> =
        rows.iter().map(|r| cols.iter().map(|c| Rational::from_integer(c.coeff(r))).collect()).collect();
    let want = match target {
        Target::A => vec![e, 0],
        Target::B => vec![0, e],
    };
    let rhs: Vec<Rational> = rows.iter().map(|r| if *r == want { Rational::one() } else { Rational::zero() }).collect();
    let x = linalg::solve(matrix, rhs).ok_or_else(|| Error::Derivation(format!("n={n}: target not in the ideal")))?;
    let mut l = Integer::one();
    for v in &x {
        l = l.lcm(v.denom());
    }
    let ints: Vec<Integer> = x.iter().map(|v| (v * Rational::from_integer(l.clone())).to_integer()).collect();
    let mut g = l.clone();
    for v in &ints {
        g = g.gcd(v);
    }
    let ints: Vec<Integer> = ints.iter().map(|v| v / &g).collect();
    let constant = (&l / &g).abs();
    let (mu_c, nu_c) = ints.split_at(mu_basis.len());
    let mu = MultiPoly::from_terms(2, mu_basis.into_iter().zip(mu_c.iter().cloned()));
    let nu = MultiPoly::from_terms(2, nu_basis.into_iter().zip(nu_c.iter().cloned()));
    let w = BezoutWitness { n, target, mu, nu, constant };
    if !w.verify()? {
        return Err(Error::Derivation(format!("n={n}: identity fails after clearing denominators")));
    }
    if !(&bound % &w.constant).is_zero() {
        return Err(Error::Derivation(format!("n={n}: constant {} does not divide {bound}", w.constant)));
    }
    Ok(w)
}

pub fn derive_bezout(n: u32) -> Result<Vec<BezoutWitness>> {
    Ok(vec![derive_bezout_target(n, Target::A)?, derive_bezout_target(n, Target::B)?])
}

fn terms_of(v: &Value, what: &str) -> Result<MultiPoly> {
    let bad = || Error::Fixture(format!("bezout {what}: expected [[i, j, \"c\"], ...]"));
    let mut p = MultiPoly::zero(2);
    for t in v.as_array().ok_or_else(bad)? {
        let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(bad)?;
        let i = t[0].as_u64().ok_or_else(bad)? as u32;
        let j = t[1].as_u64().ok_or_else(bad)? as u32;
        let c: Integer = t[2].as_str().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        p.add_term(vec![i, j], c);
    }
    Ok(p)
}

pub(crate) fn parse_bezout(n: u32, text: &str) -> Result<Vec<BezoutWitness>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Fixture(format!("bezout_{n}.json: {e}")))?;
    let entries = v.as_array().ok_or_else(|| Error::Fixture(format!("bezout_{n}.json: expected a list")))?;
    entries
        .iter()
        .map(|e| {
            let target = match e["target"].as_str() {
                Some("a") => Target::A,
                Some("b") => Target::B,
                _ => return Err(Error::Fixture(format!("bezout_{n}.json: bad target"))),
            };
            let constant = e["constant"]
                .as_str()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Fixture(format!("bezout_{n}.json: bad constant")))?;
            Ok(BezoutWitness { n, target, mu: terms_of(&e["mu"], "mu")?, nu: terms_of(&e["nu"], "nu")?, constant })
        })
        .collect()
}

/// Fixture text for bezout_<n>.json.
pub fn bezout_fixture_text(ws: &[BezoutWitness]) -> String {
    let lines: Vec<String> = ws.iter().map(|w| w.to_json().to_string()).collect();
    format!("[\n{}\n]\n", lines.join(",\n"))
}

impl Atlas {
    pub fn bezout_witnesses(&self, n: u32) -> Result<&[BezoutWitness]> {
        check_level(n)?;
        self.bezout.get(&n).map(|v| v.as_slice()).ok_or(Error::InvalidLevel(n))
    }
}
