//! Kernel isogenies of degree 2 and 3, division polynomials and modular polynomials.

use crate::arith::{rat, rational_roots, MultiPoly, Rational, UniPoly};
use crate::atlas::Atlas;
use crate::curves::WeierstrassModel;
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

fn short_parts(e: &WeierstrassModel) -> (Rational, Rational) {
    let s = e.to_short();
    let (a, b) = s.ab();
    (a.clone(), b.clone())
}

/// x^3 + A x + B
pub fn cubic(e: &WeierstrassModel) -> UniPoly {
    let (a, b) = short_parts(e);
    UniPoly::new(vec![b, a, Rational::zero(), Rational::one()])
}

/// x-only division polynomial of the short model of `e`.
///
/// Odd m gives psi_m. Even m gives (x^3 + Ax + B) * psi_m / (2y), whose roots are the
/// abscissas of the nonzero m-torsion points; in particular m = 2 gives x^3 + Ax + B.
pub fn division_polynomial(e: &WeierstrassModel, m: usize) -> Result<UniPoly> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    let (a, b) = short_parts(e);
    let f = cubic(e);
    let sixteen_f2 = (&f * &f).scale(&rat(16));
    let mut ps: Vec<UniPoly> = vec![
        UniPoly::zero(),
        UniPoly::one(),
        UniPoly::one(),
        UniPoly::new(vec![-(&a * &a), rat(12) * &b, rat(6) * &a, Rational::zero(), rat(3)]),
        UniPoly::new(vec![
            rat(-8) * &b * &b - &a * &a * &a,
            rat(-4) * &a * &b,
            rat(-5) * &a * &a,
            rat(20) * &b,
            rat(5) * &a,
            Rational::zero(),
            Rational::one(),
        ])
        .scale(&rat(2)),
    ];
    while ps.len() <= m {
        let n = ps.len();
        let k = n / 2;
        let next = if n % 2 == 1 {
            let t1 = &ps[k + 2] * &ps[k].pow(3);
            let t2 = &ps[k - 1] * &ps[k + 1].pow(3);
            if k % 2 == 0 {
                &(&sixteen_f2 * &t1) - &t2
            } else {
                &t1 - &(&sixteen_f2 * &t2)
            }
        } else {
            let inner = &(&ps[k + 2] * &ps[k - 1].pow(2)) - &(&ps[k - 2] * &ps[k + 1].pow(2));
            &ps[k] * &inner
        };
        ps.push(next);
    }
    Ok(if m % 2 == 0 { &f * &ps[m] } else { ps[m].clone() })
}

/// D(x) = prod (x - x_P) over the nonzero points of a cyclic kernel of order 2 or 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelPolynomial {
    pub curve: WeierstrassModel,
    pub d: UniPoly,
    pub sigma2: Rational,
    pub degree: usize,
}

impl KernelPolynomial {
    /// Kernel generated by a point with abscissa x0: a root of x^3+Ax+B (degree 2)
    /// or of psi_3 (degree 3).
    pub fn new(curve: &WeierstrassModel, degree: usize, x0: &Rational) -> Result<Self> {
        let curve = curve.to_short();
        let lin = UniPoly::linear_root(x0);
        let d = match degree {
            2 => {
                if !cubic(&curve).eval(x0).is_zero() {
                    return Err(Error::NotAKernel(format!("{x0} is not a root of x^3+Ax+B")));
                }
                lin
            }
            3 => {
                if !division_polynomial(&curve, 3)?.eval(x0).is_zero() {
                    return Err(Error::NotAKernel(format!("{x0} is not a root of psi_3")));
                }
                lin.pow(2)
            }
            _ => return Err(Error::Precondition(format!("kernel degree {degree} not supported"))),
        };
        let sigma2 = -d.coeff(degree - 2);
        Ok(KernelPolynomial { curve, d, sigma2, degree })
    }
}

/// x -> N(x)/D(x) between short models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalIsogenyMap {
    pub domain: WeierstrassModel,
    pub codomain: WeierstrassModel,
    pub n: UniPoly,
    pub d: UniPoly,
}

/// Normalised isogeny with the given kernel; the abscissa map follows
/// N/D = n x - s2 - (3x^2 + A) D'/D - 2 (x^3 + Ax + B) (D'/D)'.
pub fn isogeny_from_kernel(k: &KernelPolynomial) -> Result<RationalIsogenyMap> {
    let (a, _) = short_parts(&k.curve);
    let f = cubic(&k.curve);
    let d = &k.d;
    let d1 = d.derivative();
    let d2 = d1.derivative();
    let lin = UniPoly::new(vec![-k.sigma2.clone(), rat(k.degree as i64)]);
    let quad = UniPoly::new(vec![a, Rational::zero(), rat(3)]);
    // everything over D^2
    let num = &(&(&lin * &(d * d)) - &(&quad * &(&d1 * d))) - &(&f * &(&(&d2 * d) - &(&d1 * &d1))).scale(&rat(2));
    let den = d * d;
    let g = crate::arith::poly_gcd(&num, &den)?;
    let mut n = num.exact_div(&g).expect("gcd divides");
    let mut dd = den.exact_div(&g).expect("gcd divides");
    let lc = dd.lc();
    n = n.scale(&(Rational::one() / &lc));
    dd = dd.monic();
    let codomain = extract_codomain(&k.curve, &n, &dd)?;
    Ok(RationalIsogenyMap { domain: k.curve.clone(), codomain, n, d: dd })
}

/// Solves f1 (N'D - N D')^2 - N^3 D = D^3 (A2 N + B2 D) for constants A2, B2.
fn extract_codomain(domain: &WeierstrassModel, n: &UniPoly, d: &UniPoly) -> Result<WeierstrassModel> {
    let f = cubic(domain);
    let w = &(&n.derivative() * d) - &(n * &d.derivative());
    let p = &(&f * &(&w * &w)) - &(&n.pow(3) * d);
    let q = p
        .exact_div(&d.pow(3))
        .ok_or_else(|| Error::Derivation("map identity: D^3 does not divide".into()))?;
    if n.deg() <= d.deg() {
        return Err(Error::Derivation("numerator degree too small".into()));
    }
    let a2 = q.coeff(n.deg()) / n.lc();
    let rest = &q - &n.scale(&a2);
    let (b2, r) = rest.div_rem(d);
    if !r.is_zero() || b2.deg() > 0 {
        return Err(Error::Derivation("codomain identity has a nonzero residual".into()));
    }
    WeierstrassModel::short(a2, b2.coeff(0))
}

/// Whether the map satisfies f1 * ((N/D)')^2 = (N/D)^3 + A2 (N/D) + B2 exactly.
pub fn verify_normalized(map: &RationalIsogenyMap) -> bool {
    if map.d.is_zero() {
        return false;
    }
    let f = cubic(&map.domain);
    let (a2, b2) = short_parts(&map.codomain);
    let (n, d) = (&map.n, &map.d);
    let w = &(&n.derivative() * d) - &(n * &d.derivative());
    let lhs = &f * &(&w * &w);
    let rhs = &(&(&n.pow(3) * d) + &(n * &d.pow(3)).scale(&a2)) + &d.pow(4).scale(&b2);
    (&lhs - &rhs).is_zero()
}

/// Codomains of every rational isogeny of degree `l` in {2, 3} out of `e`, by kernel abscissa.
pub fn kernel_isogenies(e: &WeierstrassModel, l: usize) -> Result<Vec<RationalIsogenyMap>> {
    let e = e.to_short();
    let poly = match l {
        2 => cubic(&e),
        3 => division_polynomial(&e, 3)?,
        _ => return Err(Error::Precondition(format!("kernel degree {l} not supported"))),
    };
    rational_roots(&poly)?
        .iter()
        .map(|x0| isogeny_from_kernel(&KernelPolynomial::new(&e, l, x0)?))
        .collect()
}

/// Symmetric Phi_l(X, Y) with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularPolynomial {
    pub level: u32,
    pub poly: MultiPoly,
}

impl ModularPolynomial {
    /// Parses lines "[a,b] c", each unordered exponent pair listed once.
    pub fn parse(level: u32, text: &str) -> Result<Self> {
        let mut poly = MultiPoly::zero(2);
        let mut seen = BTreeSet::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse { line: k + 1, msg: msg.to_string() };
            let rest = line.strip_prefix('[').ok_or_else(|| err("expected '['"))?;
            let (pair, coeff) = rest.split_once(']').ok_or_else(|| err("expected ']'"))?;
            let (a, b) = pair.split_once(',').ok_or_else(|| err("expected exponent pair"))?;
            let a: u32 = a.trim().parse().map_err(|_| err("bad exponent"))?;
            let b: u32 = b.trim().parse().map_err(|_| err("bad exponent"))?;
            let c: crate::arith::Integer = coeff.trim().parse().map_err(|_| err("bad coefficient"))?;
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(err("exponent pair listed twice"));
            }
            poly.add_term(vec![a, b], c.clone());
            if a != b {
                poly.add_term(vec![b, a], c);
            }
        }
        if poly.is_zero() {
            return Err(Error::Parse { line: 0, msg: format!("no coefficients for level {level}") });
        }
        let m = ModularPolynomial { level, poly };
        m.check()?;
        Ok(m)
    }

    fn check(&self) -> Result<()> {
        let deg = self.level + 1;
        let bad = |msg: String| Error::Parse { line: 0, msg };
        if self.poly.degree_in(0) != deg || self.poly.degree_in(1) != deg {
            return Err(bad(format!("level {}: expected degree {deg} in each variable", self.level)));
        }
        if !self.poly.coeff(&[deg, 0]).is_one() {
            return Err(bad(format!("level {}: X^{deg} coefficient is not 1", self.level)));
        }
        if self.poly.swap_vars(0, 1) != self.poly {
            return Err(bad(format!("level {}: not symmetric", self.level)));
        }
        Ok(())
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.poly.eval(&[x.clone(), y.clone()])
    }

    /// Coefficients keyed by (a, b) for X^a Y^b.
    pub fn coefficients(&self) -> BTreeMap<(u32, u32), crate::arith::Integer> {
        self.poly.terms().into_iter().map(|(e, c)| ((e[0], e[1]), c.clone())).collect()
    }
}

impl Atlas {
    pub fn phi_vanishes(&self, l: u32, j1: &Rational, j2: &Rational) -> Result<bool> {
        Ok(self.phi(l)?.eval(j1, j2).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use crate::curves::is_isomorphic;

    fn e(a: i64, b: i64) -> WeierstrassModel {
        WeierstrassModel::short_i(a, b).unwrap()
    }

    #[test]
    fn division_polynomial_examples() {
        assert_eq!(division_polynomial(&e(3, 5), 1).unwrap(), UniPoly::one());
        assert_eq!(division_polynomial(&e(0, 16), 3).unwrap(), UniPoly::from_ints([0, 192, 0, 0, 3]));
        assert_eq!(division_polynomial(&e(-15, -22), 2).unwrap(), UniPoly::from_ints([-22, -15, 0, 1]));
        // psi_5 has leading term 5 x^12; psi_4 / (2y) leading 2 x^6
        assert_eq!(division_polynomial(&e(2, 7), 5).unwrap().lc(), rat(5));
        assert_eq!(division_polynomial(&e(2, 7), 4).unwrap().deg(), 9);
        assert!(division_polynomial(&e(2, 7), 0).is_err());
    }

    #[test]
    fn two_isogeny_of_y2_x3_minus_x() {
        let k = KernelPolynomial::new(&e(-1, 0), 2, &rat(0)).unwrap();
        let m = isogeny_from_kernel(&k).unwrap();
        assert_eq!(m.codomain, e(4, 0));
        assert_eq!(m.n, UniPoly::from_ints([-1, 0, 1]));
        assert_eq!(m.d, UniPoly::x());
        assert!(verify_normalized(&m));
        let mut bad = m.clone();
        bad.codomain = e(4, 1);
        assert!(!verify_normalized(&bad));
    }

    #[test]
    fn three_isogeny_of_27a4() {
        let k = KernelPolynomial::new(&e(0, 16), 3, &rat(0)).unwrap();
        assert_eq!(k.d, UniPoly::from_ints([0, 0, 1]));
        let m = isogeny_from_kernel(&k).unwrap();
        assert_eq!(m.codomain.j(), rat(0));
        assert!(is_isomorphic(&m.codomain, &e(0, -432)).is_some());
        assert_eq!((m.n.deg(), m.d.deg()), (3, 2));
        assert!(verify_normalized(&m));
    }

    #[test]
    fn kernel_must_be_a_root() {
        assert!(matches!(KernelPolynomial::new(&e(-1, 0), 2, &rat(2)), Err(Error::NotAKernel(_))));
        assert!(matches!(KernelPolynomial::new(&e(0, 16), 3, &rat(1)), Err(Error::NotAKernel(_))));
    }

    #[test]
    fn identity_map_is_normalized() {
        let c = e(-15, -22);
        let m = RationalIsogenyMap { domain: c.clone(), codomain: c, n: UniPoly::x(), d: UniPoly::one() };
        assert!(verify_normalized(&m));
    }

    #[test]
    fn worked_example_two_isogeny() {
        let k = KernelPolynomial::new(&e(-15, -22), 2, &rat(-2)).unwrap();
        let m = isogeny_from_kernel(&k).unwrap();
        // j = 0: the codomain sits at the j of C_{6,2}(-6, d)
        assert_eq!(m.codomain.j(), rat(0));
    }

    #[test]
    fn phi_parsing() {
        let a = Atlas::embedded();
        let p2 = a.phi(2).unwrap();
        assert_eq!(p2.poly.coeff(&[3, 0]), crate::arith::int(1));
        assert_eq!(p2.poly.coeff(&[2, 2]), crate::arith::int(-1));
        assert_eq!(p2.poly.coeff(&[2, 0]), crate::arith::int(-162000));
        assert_eq!(p2.poly.coeff(&[0, 2]), crate::arith::int(-162000));
        assert_eq!(p2.eval(&rat(0), &rat(54000)), rat(0));
        let p3 = a.phi(3).unwrap();
        assert_eq!(p3.poly.degree_in(0), 4);
        assert_eq!(p3.poly.swap_vars(0, 1), p3.poly);
        assert!(matches!(ModularPolynomial::parse(2, ""), Err(Error::Parse { .. })));
        assert!(matches!(ModularPolynomial::parse(2, "[3,0] 1\n[x] 2\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn phi_vanishing_examples() {
        let a = Atlas::embedded();
        assert!(a.phi_vanishes(2, &rat(54000), &rat(0)).unwrap());
        assert!(!a.phi_vanishes(2, &rat(54000), &rat(54000)).unwrap());
        // the 3-edges of the n = 6 square at t = -6 join 54000 to 54000 and 0 to 0
        assert!(a.phi_vanishes(3, &rat(0), &rat(0)).unwrap());
        assert!(a.phi_vanishes(3, &rat(54000), &rat(54000)).unwrap());
        assert!(!a.phi_vanishes(3, &rat(0), &rat(54000)).unwrap());
        assert_eq!(a.phi_vanishes(11, &rat(0), &ratio(1, 2)), Err(Error::PhiUnavailable(11)));
    }
}
