//! Fricke parameterisations j_{n,1}, j_{n,2} of the genus-zero X0(n).

use crate::arith::{rational_roots, Integer, Rational, UniPoly};
use crate::atlas::Atlas;
use crate::error::{Error, Result};
use num_traits::Zero;
use serde_json::Value;
use std::collections::BTreeMap;

pub const GENUS_ZERO_LEVELS: [u32; 14] = [2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25];

pub fn is_genus_zero(n: u32) -> bool {
    GENUS_ZERO_LEVELS.contains(&n)
}

/// j_{n,i}(t) = num(t) / den(t) with integer, coprime num and den.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrickeParam {
    pub n: u32,
    pub i: usize,
    pub num: UniPoly,
    pub den: UniPoly,
}

impl FrickeParam {
    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return Err(Error::CuspParameter);
        }
        Ok(self.num.eval(t) / d)
    }

    pub fn is_pole(&self, t: &Rational) -> bool {
        self.den.eval(t).is_zero()
    }

    /// max(deg num, deg den): the degree of t -> j_{n,i}(t).
    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }
}

fn int_list(v: &Value, what: &str) -> Result<Vec<Integer>> {
    let arr = v.as_array().ok_or_else(|| Error::Fixture(format!("{what}: expected a list")))?;
    arr.iter()
        .map(|c| {
            let s = c.as_str().ok_or_else(|| Error::Fixture(format!("{what}: integers must be strings")))?;
            s.parse::<Integer>().map_err(|_| Error::Fixture(format!("{what}: bad integer {s:?}")))
        })
        .collect()
}

pub(crate) fn parse_fricke(text: &str) -> Result<BTreeMap<(u32, usize), FrickeParam>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Fixture(format!("fricke_params.json: {e}")))?;
    let entries = v.as_array().ok_or_else(|| Error::Fixture("fricke_params.json: expected a list".into()))?;
    let mut out = BTreeMap::new();
    for e in entries {
        let n = e["n"].as_u64().ok_or_else(|| Error::Fixture("fricke entry without n".into()))? as u32;
        let i = e["i"].as_u64().ok_or_else(|| Error::Fixture("fricke entry without i".into()))? as usize;
        let num = UniPoly::from_integers(&int_list(&e["num"], "num")?);
        let den = UniPoly::from_integers(&int_list(&e["den"], "den")?);
        if num.is_zero() || den.is_zero() {
            return Err(Error::Fixture(format!("fricke ({n},{i}): zero polynomial")));
        }
        out.insert((n, i), FrickeParam { n, i, num, den });
    }
    for n in GENUS_ZERO_LEVELS {
        for i in 1..=2 {
            if !out.contains_key(&(n, i)) {
                return Err(Error::Fixture(format!("fricke_params.json lacks ({n},{i})")));
            }
        }
    }
    Ok(out)
}

impl Atlas {
    pub fn fricke(&self, n: u32, i: usize) -> Result<&FrickeParam> {
        if !is_genus_zero(n) {
            return Err(Error::InvalidLevel(n));
        }
        self.fricke.get(&(n, i)).ok_or(Error::InvalidIndex { n, i })
    }

    pub fn fricke_eval(&self, n: u32, i: usize, t: &Rational) -> Result<Rational> {
        self.fricke(n, i)?.eval(t)
    }

    /// All rational t with j_{n,1}(t) = j0, poles excluded, ascending.
    pub fn fricke_solve(&self, n: u32, j0: &Rational) -> Result<Vec<Rational>> {
        let f = self.fricke(n, 1)?;
        let p = &f.num - &f.den.scale(j0);
        if p.is_zero() {
            return Err(Error::InfiniteRootSet);
        }
        let mut roots: Vec<Rational> = rational_roots(&p)?.into_iter().filter(|t| !f.is_pole(t)).collect();
        roots.sort();
        Ok(roots)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExceptionalKind {
    /// R_n: parameters where the family curves are singular.
    SingularFamily,
    /// Rational t with j_{n,1}(t) = j_{n,2}(t) in {0, 1728}.
    Coincidence0_1728,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalSet {
    pub n: u32,
    pub kind: ExceptionalKind,
    /// Defining polynomial; the constant 1 for the empty set.
    pub poly: UniPoly,
}

impl ExceptionalSet {
    pub fn rational_members(&self) -> Vec<Rational> {
        if self.poly.deg() == 0 {
            return Vec::new();
        }
        rational_roots(&self.poly).expect("nonzero polynomial")
    }

    pub fn contains(&self, t: &Rational) -> bool {
        self.poly.eval(t).is_zero()
    }
}

pub fn exceptional_params(n: u32, kind: ExceptionalKind) -> Result<ExceptionalSet> {
    if !is_genus_zero(n) {
        return Err(Error::InvalidLevel(n));
    }
    let poly = match kind {
        ExceptionalKind::SingularFamily => match n {
            2 => UniPoly::from_ints([64, 1]),
            3 => UniPoly::from_ints([27, 1]),
            5 => UniPoly::from_ints([125, 22, 1]),
            7 => UniPoly::from_ints([49, 13, 1]),
            10 | 25 => UniPoly::from_ints([4, 0, 1]),
            13 => &UniPoly::from_ints([13, 6, 1]) * &UniPoly::from_ints([13, 5, 1]),
            _ => UniPoly::one(),
        },
        ExceptionalKind::Coincidence0_1728 => match n {
            2 => UniPoly::from_ints([64, 1]),
            3 => UniPoly::from_ints([27, 1]),
            _ => UniPoly::one(),
        },
    };
    Ok(ExceptionalSet { n, kind, poly })
}

/// The common value j_{n,1} = j_{n,2} on R_n, for the levels where it is a single value.
pub fn singular_family_j(n: u32) -> Option<i64> {
    match n {
        3 | 7 => Some(0),
        2 | 5 | 10 | 25 => Some(1728),
        _ => None,
    }
}
