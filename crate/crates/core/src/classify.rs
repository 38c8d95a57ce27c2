//! Isogeny classes over Q from the family tables, cross-checked by a breadth-first
//! search over kernel isogenies, the derivative model and sporadic j-values.

use crate::arith::{
    kth_power_free_part, rational_root, rational_roots, squarefree_part, Integer, Rational, UniPoly,
};
use crate::atlas::Atlas;
use crate::curves::{
    is_isomorphic, is_semistable_outside, minimal_model, quadratic_twist, twist_parameter, WeierstrassModel,
};
use crate::error::{Error, Result};
use crate::families::{k_indices, member_count, special_curve, SpecialKind, SPORADIC_LEVELS};
use crate::fricke::{is_genus_zero, GENUS_ZERO_LEVELS};
use crate::isogeny::kernel_isogenies;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Kenku's bound on the size of an isogeny class over Q.
pub const MAX_CLASS_SIZE: usize = 8;

/// Levels whose neighbours the search takes from the derivative model.
const DERIVATIVE_LEVELS: [u32; 3] = [5, 7, 13];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    GenusZero,
    Sporadic,
    SpecialJ0,
    SpecialJ1728,
    Singleton,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::GenusZero => "genus_zero",
            Branch::Sporadic => "sporadic",
            Branch::SpecialJ0 => "special_j0",
            Branch::SpecialJ1728 => "special_j1728",
            Branch::Singleton => "singleton",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyClass {
    /// Isogeny class degree; 1 for a singleton.
    pub n: u32,
    pub branch: Branch,
    pub t: Option<Rational>,
    pub d: Option<Integer>,
    /// `d` is a class in Q*/(Q*)^m for this m.
    pub twist_exponent: u32,
    /// (family index, model) in index order.
    pub members: Vec<(usize, WeierstrassModel)>,
    pub edges: Vec<(usize, usize, u32)>,
    pub matrix: Vec<Vec<u32>>,
    /// Position in `members` of the classified curve.
    pub input_position: usize,
}

impl IsogenyClass {
    /// The exponent the other convention assigns to the special branches (4 and 6 swapped).
    pub fn twist_exponent_alt(&self) -> Option<u32> {
        match self.branch {
            Branch::SpecialJ0 => Some(4),
            Branch::SpecialJ1728 => Some(6),
            _ => None,
        }
    }

    pub fn member(&self, i: usize) -> Option<&WeierstrassModel> {
        self.members.iter().find(|(k, _)| *k == i).map(|(_, m)| m)
    }

    /// Same class with every member replaced by its global minimal model.
    pub fn minimal(&self) -> Result<IsogenyClass> {
        let members = self
            .members
            .iter()
            .map(|(i, m)| Ok((*i, minimal_model(m)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(IsogenyClass { members, ..self.clone() })
    }

    pub fn to_json(&self) -> Value {
        let members: Vec<Value> = self
            .members
            .iter()
            .map(|(i, m)| {
                if m.is_short() {
                    let (a, b) = m.ab();
                    json!({"i": i, "A": a.to_string(), "B": b.to_string()})
                } else {
                    json!({"i": i, "a": m.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()})
                }
            })
            .collect();
        let mut v = json!({
            "n": self.n,
            "branch": self.branch.as_str(),
            "t": self.t.as_ref().map(|t| t.to_string()),
            "d": self.d.as_ref().map(|d| d.to_string()),
            "twist_exponent": self.twist_exponent,
            "members": members,
            "edges": self.edges.iter().map(|&(a, b, l)| json!([a, b, l])).collect::<Vec<_>>(),
            "matrix": self.matrix,
        });
        if let Some(alt) = self.twist_exponent_alt() {
            v["twist_exponent_alt"] = json!(alt);
        }
        v
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("graph isogeny_class_n{} {{\n", self.n);
        for (i, _) in &self.members {
            let _ = writeln!(s, "  {i} [label=\"C_{{{},{i}}}\"];", self.n);
        }
        for (a, b, l) in &self.edges {
            let _ = writeln!(s, "  {a} -- {b} [label={l}];");
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

pub fn emit_graph(class: &IsogenyClass, format: GraphFormat) -> String {
    match format {
        GraphFormat::Dot => class.to_dot(),
        GraphFormat::Json => serde_json::to_string_pretty(&class.to_json()).expect("json") + "\n",
    }
}

/// The isogeny graph found by the breadth-first search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsGraph {
    pub nodes: Vec<WeierstrassModel>,
    pub edges: Vec<(usize, usize, u32)>,
}

impl BfsGraph {
    pub fn j_multiset(&self) -> Vec<Rational> {
        let mut js: Vec<Rational> = self.nodes.iter().map(|m| m.j()).collect();
        js.sort();
        js
    }

    pub fn label_multiset(&self) -> Vec<u32> {
        let mut ls: Vec<u32> = self.edges.iter().map(|e| e.2).collect();
        ls.sort();
        ls
    }
}

/// Output of Algorithm 1 for one rational point t of X0(n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusZeroHit {
    pub t: Rational,
    /// T(t), with the input isomorphic to C_{n,k1}(t, T(t)).
    pub d: Rational,
    pub members: Vec<(usize, WeierstrassModel)>,
}

fn is_special_j(j: &Rational) -> bool {
    j.is_zero() || *j == Rational::from_integer(1728.into())
}

fn naive_model(j: &Rational, dj: &Rational) -> Result<WeierstrassModel> {
    // (-J'^2 / (48 J (J - 1728)), -J'^3 / (864 J^2 (J - 1728)))
    let k = j - Rational::from_integer(1728.into());
    let a = -(dj * dj) / (Rational::from_integer(48.into()) * j * &k);
    let b = -(dj * dj * dj) / (Rational::from_integer(864.into()) * j * j * &k);
    WeierstrassModel::short(a, b)
}

fn eval_rational_derivative(num: &UniPoly, den: &UniPoly, t: &Rational) -> Rational {
    let (n, d) = (num.eval(t), den.eval(t));
    (num.derivative().eval(t) * &d - &n * den.derivative().eval(t)) / (&d * &d)
}

impl Atlas {
    /// (6912 A^3, 4 A^3 + 27 B^2) for every genus-zero member.
    pub(crate) fn member_jpolys(&self) -> &BTreeMap<(u32, usize), (UniPoly, UniPoly)> {
        self.jpolys.get_or_init(|| {
            self.families
                .genus_zero
                .iter()
                .map(|(&key, (a, b))| {
                    let a3 = a.pow(3);
                    let num = a3.scale(&Rational::from_integer(6912.into()));
                    let den = &a3.scale(&Rational::from_integer(4.into()))
                        + &(b * b).scale(&Rational::from_integer(27.into()));
                    (key, (num, den))
                })
                .collect()
        })
    }

    /// Admissible t with J_{n,i}(t) = j, sorted by (numerator, denominator).
    pub fn family_preimages(&self, n: u32, i: usize, j: &Rational) -> Result<Vec<Rational>> {
        let (num, den) = self.member_jpolys().get(&(n, i)).ok_or(Error::InvalidIndex { n, i })?;
        let p = num - &den.scale(j);
        let one = Rational::one();
        Ok(rational_roots(&p)?
            .into_iter()
            .filter(|t| self.family_curve(n, i, t, &one).is_ok())
            .collect())
    }

    /// Algorithm 1: the families through E at level n.
    pub fn isogenies_genus_0(&self, e: &WeierstrassModel, n: u32) -> Result<Vec<GenusZeroHit>> {
        if n < 2 || !is_genus_zero(n) {
            return Err(Error::InvalidLevel(n));
        }
        let e = e.to_short();
        let j = e.j();
        if is_special_j(&j) {
            return Err(Error::Precondition("j(E) must not be 0 or 1728".into()));
        }
        let (k1, _) = k_indices(n)?;
        let one = Rational::one();
        let mut out = Vec::new();
        for t in self.fricke_solve(n, &j)? {
            let Ok(reference) = self.family_curve(n, k1, &t, &one) else { continue };
            let d = twist_parameter(&reference, &e)?;
            let members = (1..=member_count(n)?)
                .map(|i| Ok((i, self.family_curve(n, i, &t, &d)?)))
                .collect::<Result<Vec<_>>>()?;
            out.push(GenusZeroHit { t, d, members });
        }
        Ok(out)
    }

    /// Breadth-first closure of E under rational isogenies of prime degree.
    pub fn bfs_cross_oracle(&self, e: &WeierstrassModel) -> Result<BfsGraph> {
        let mut nodes = vec![e.to_short()];
        let mut edges: Vec<(usize, usize, u32)> = Vec::new();
        let mut next = 0;
        while next < nodes.len() {
            let x = nodes[next].clone();
            for (l, y) in self.prime_neighbours(&x)? {
                let k = match nodes.iter().position(|m| is_isomorphic(m, &y).is_some()) {
                    Some(k) => k,
                    None => {
                        nodes.push(y);
                        if nodes.len() > MAX_CLASS_SIZE {
                            return Err(Error::Inconsistency(format!(
                                "search from {e} found more than {MAX_CLASS_SIZE} curves"
                            )));
                        }
                        nodes.len() - 1
                    }
                };
                let edge = (next.min(k), next.max(k), l);
                if next != k && !edges.contains(&edge) {
                    edges.push(edge);
                }
            }
            next += 1;
        }
        edges.sort();
        Ok(BfsGraph { nodes, edges })
    }

    pub(crate) fn prime_neighbours(&self, x: &WeierstrassModel) -> Result<Vec<(u32, WeierstrassModel)>> {
        let mut out = Vec::new();
        for l in [2u32, 3] {
            for map in kernel_isogenies(x, l as usize)? {
                out.push((l, map.codomain.to_short()));
            }
        }
        let j = x.j();
        if is_special_j(&j) {
            return Ok(out);
        }
        for l in DERIVATIVE_LEVELS {
            let (f1, f2) = (self.fricke(l, 1)?, self.fricke(l, 2)?);
            for t0 in self.fricke_solve(l, &j)? {
                let d1 = eval_rational_derivative(&f1.num, &f1.den, &t0);
                let j2 = f2.eval(&t0)?;
                let d2 = eval_rational_derivative(&f2.num, &f2.den, &t0);
                let delta = twist_parameter(&naive_model(&j, &d1)?, x)?;
                let twist = Rational::from_integer(l.into()) * delta;
                out.push((l, quadratic_twist(&naive_model(&j2, &d2)?, &twist)?));
            }
        }
        let one = Rational::one();
        for (&(n, i), _) in self.families.sporadic.iter() {
            if !is_prime_level(n) {
                continue;
            }
            let reference = self.sporadic_curve(n, i, &one)?;
            if reference.j() != j {
                continue;
            }
            let d = twist_parameter(&reference, x)?;
            let partner = sporadic_partner(n, i);
            out.push((n, self.sporadic_curve(n, partner, &d)?));
        }
        Ok(out)
    }

    /// The isogeny class of E, checked against the breadth-first search.
    pub fn isogeny_class(&self, e: &WeierstrassModel) -> Result<IsogenyClass> {
        let e = e.to_short();
        let bfs = self.bfs_cross_oracle(&e)?;
        let class = self.classify_with(&e, &bfs)?;
        check_agreement(&class, &bfs)?;
        Ok(class)
    }

    fn classify_with(&self, e: &WeierstrassModel, bfs: &BfsGraph) -> Result<IsogenyClass> {
        if let Some(class) = self.sporadic_class(e)? {
            return Ok(class);
        }
        let j = e.j();
        if is_special_j(&j) {
            if let Some(y) = bfs.nodes.iter().find(|m| !is_special_j(&m.j())) {
                let class = match self.sporadic_class(y)? {
                    Some(c) => c,
                    None => self.generic_class(y)?.ok_or_else(|| {
                        Error::Inconsistency(format!("neighbour {y} of {e} has no family"))
                    })?,
                };
                return locate_input(class, e);
            }
            return self.special_class(e);
        }
        if let Some(class) = self.generic_class(e)? {
            return Ok(class);
        }
        Ok(IsogenyClass {
            n: 1,
            branch: Branch::Singleton,
            t: None,
            d: None,
            twist_exponent: 2,
            members: vec![(1, e.clone())],
            edges: Vec::new(),
            matrix: vec![vec![1]],
            input_position: 0,
        })
    }

    /// Algorithm 2 over the genus-zero families.
    fn generic_class(&self, e: &WeierstrassModel) -> Result<Option<IsogenyClass>> {
        let j = e.j();
        // largest level first, then smallest (i, numerator t, denominator t)
        let mut best: Option<(u32, usize, Rational)> = None;
        'levels: for &n in GENUS_ZERO_LEVELS.iter().rev() {
            for i in 1..=member_count(n)? {
                if let Some(t) = self.family_preimages(n, i, &j)?.into_iter().next() {
                    best = Some((n, i, t));
                    break 'levels;
                }
            }
        }
        let Some((n, i, t)) = best else { return Ok(None) };
        let reference = self.family_curve(n, i, &t, &Rational::one())?;
        let d = Rational::from_integer(squarefree_part(&twist_parameter(&reference, e)?)?);
        let members = (1..=member_count(n)?)
            .map(|k| Ok((k, self.family_curve(n, k, &t, &d)?)))
            .collect::<Result<Vec<_>>>()?;
        let graph = self.graph_data(n)?;
        let mut edges = graph.edges.clone();
        edges.sort();
        let class = IsogenyClass {
            n,
            branch: Branch::GenusZero,
            t: Some(t),
            d: Some(d.to_integer()),
            twist_exponent: 2,
            members,
            edges,
            matrix: graph.matrix.clone(),
            input_position: i - 1,
        };
        locate_input(class, e).map(Some)
    }

    /// Sporadic j-match, with the cube test for the j = 0 members.
    fn sporadic_class(&self, e: &WeierstrassModel) -> Result<Option<IsogenyClass>> {
        let j = e.j();
        let (ea, eb) = e.ab();
        let one = Rational::one();
        let mut best: Option<(Integer, usize, u32)> = None;
        for (&(n, i), (a, b)) in self.families.sporadic.iter() {
            let reference = self.sporadic_curve(n, i, &one)?;
            if reference.j() != j {
                continue;
            }
            let d = if a.is_zero() {
                let Some(s) = rational_root(&(eb / Rational::from_integer(b.clone())), 3) else { continue };
                squarefree_part(&s)?
            } else if b.is_zero() {
                let Some(s) = rational_root(&(ea / Rational::from_integer(a.clone())), 2) else { continue };
                squarefree_part(&s)?
            } else {
                squarefree_part(&twist_parameter(&reference, e)?)?
            };
            if is_isomorphic(&self.sporadic_curve(n, i, &Rational::from_integer(d.clone()))?, e).is_none() {
                continue;
            }
            let better = match &best {
                None => true,
                Some((bd, bi, _)) => (d.abs(), i) < (bd.abs(), *bi) || (d.abs() == bd.abs() && i == *bi && d > *bd),
            };
            if better {
                best = Some((d, i, n));
            }
        }
        let Some((d, i, n)) = best else { return Ok(None) };
        let graph = self.graph_data(n)?;
        let (indices, mut edges, matrix) = if n == 11 {
            let pair: Vec<usize> = if i <= 2 { vec![1, 2] } else { vec![3, 4] };
            let edges = graph.edges.iter().filter(|e| pair.contains(&e.0)).cloned().collect();
            (pair, edges, graph.matrix.clone())
        } else {
            ((1..=member_count(n)?).collect(), graph.edges.clone(), graph.matrix.clone())
        };
        edges.sort();
        let dq = Rational::from_integer(d.clone());
        let members = indices
            .iter()
            .map(|&k| Ok((k, self.sporadic_curve(n, k, &dq)?)))
            .collect::<Result<Vec<_>>>()?;
        let class = IsogenyClass {
            n,
            branch: Branch::Sporadic,
            t: None,
            d: Some(d),
            twist_exponent: 2,
            members,
            edges,
            matrix,
            input_position: 0,
        };
        locate_input(class, e).map(Some)
    }

    /// j in {0, 1728} with no neighbour outside {0, 1728}: the two-curve special classes.
    fn special_class(&self, e: &WeierstrassModel) -> Result<IsogenyClass> {
        let (a, b) = e.ab();
        let (kind, branch, n, m, d) = if a.is_zero() {
            // (0, 16 d) and (0, -432 d), d modulo sixth powers
            let d = kth_power_free_part(&(b / Rational::from_integer(16.into())), 6)?;
            (SpecialKind::J0N3, Branch::SpecialJ0, 3, 6, d)
        } else {
            // (-d, 0) and (4 d, 0), d modulo fourth powers
            let d = kth_power_free_part(&-a.clone(), 4)?;
            (SpecialKind::J1728N2, Branch::SpecialJ1728, 2, 4, d)
        };
        let dq = Rational::from_integer(d.clone());
        let members = vec![(1, special_curve(kind, 1, &dq)?), (2, special_curve(kind, 2, &dq)?)];
        let class = IsogenyClass {
            n,
            branch,
            t: None,
            d: Some(d),
            twist_exponent: m,
            members,
            edges: vec![(1, 2, n)],
            matrix: vec![vec![1, n], vec![n, 1]],
            input_position: 0,
        };
        locate_input(class, e)
    }

    /// A squarefree d with E^d semistable at every prime not dividing some n0 in {4, 6, 9}
    /// that divides the class degree.
    pub fn semistable_twist(&self, e: &WeierstrassModel) -> Result<(Integer, WeierstrassModel)> {
        let e = e.to_short();
        let class = self.isogeny_class(&e)?;
        let n0 = [4u32, 6, 9]
            .into_iter()
            .find(|k| class.n % k == 0)
            .ok_or_else(|| Error::Precondition(format!("class degree {} is not divisible by 4, 6 or 9", class.n)))?;
        let one = Rational::one();
        for (_, m) in &class.members {
            let j = m.j();
            if is_special_j(&j) {
                continue;
            }
            for i in 1..=member_count(n0)? {
                for t in self.family_preimages(n0, i, &j)? {
                    // F_{n0}(a, b) with t = b/a is C_{n0,1}(t, a) for n0 = 4 and C_{n0,1}(t, 1) otherwise
                    let dn = if n0 == 4 { Rational::from_integer(t.denom().clone()) } else { one.clone() };
                    let dm = twist_parameter(&self.family_curve(n0, i, &t, &one)?, m)?;
                    let d = squarefree_part(&(dn * dm))?;
                    let twisted = quadratic_twist(&e, &Rational::from_integer(d.clone()))?;
                    if is_semistable_outside(&twisted, n0 as u64)? {
                        return Ok((d, twisted));
                    }
                }
            }
        }
        Err(Error::Inconsistency(format!("no semistable twist of {e} found at level {n0}")))
    }
}

fn is_prime_level(n: u32) -> bool {
    matches!(n, 11 | 17 | 19 | 37 | 43 | 67 | 163)
}

fn sporadic_partner(n: u32, i: usize) -> usize {
    debug_assert!(SPORADIC_LEVELS.contains(&n));
    match i {
        1 => 2,
        2 => 1,
        3 => 4,
        _ => 3,
    }
}

/// Sets `input_position`, failing unless exactly one member is isomorphic to `e`.
fn locate_input(mut class: IsogenyClass, e: &WeierstrassModel) -> Result<IsogenyClass> {
    let hits: Vec<usize> =
        (0..class.members.len()).filter(|&k| is_isomorphic(&class.members[k].1, e).is_some()).collect();
    if hits.len() != 1 {
        return Err(Error::Inconsistency(format!(
            "{e} matches {} members of the level {} class",
            hits.len(),
            class.n
        )));
    }
    class.input_position = hits[0];
    Ok(class)
}

/// Members and prime edges of `class` must match the search graph up to isomorphism.
fn check_agreement(class: &IsogenyClass, bfs: &BfsGraph) -> Result<()> {
    let fail = |msg: String| Err(Error::Inconsistency(msg));
    if class.members.len() != bfs.nodes.len() {
        return fail(format!(
            "level {} class has {} members, search found {}",
            class.n,
            class.members.len(),
            bfs.nodes.len()
        ));
    }
    let mut node_of = BTreeMap::new();
    for (i, m) in &class.members {
        let hits: Vec<usize> = (0..bfs.nodes.len()).filter(|&k| is_isomorphic(&bfs.nodes[k], m).is_some()).collect();
        if hits.len() != 1 {
            return fail(format!("member C_{{{},{i}}} = {m} matches {} search nodes", class.n, hits.len()));
        }
        node_of.insert(*i, hits[0]);
    }
    let mut mapped: Vec<(usize, usize, u32)> = class
        .edges
        .iter()
        .map(|&(a, b, l)| {
            let (x, y) = (node_of[&a], node_of[&b]);
            (x.min(y), x.max(y), l)
        })
        .collect();
    mapped.sort();
    if mapped != bfs.edges {
        return fail(format!("level {} edges {:?} differ from search edges {:?}", class.n, mapped, bfs.edges));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn atlas() -> &'static Atlas {
        Atlas::embedded()
    }

    fn curve(a: i64, b: i64) -> WeierstrassModel {
        WeierstrassModel::short_i(a, b).unwrap()
    }

    fn pairs(class: &IsogenyClass) -> Vec<(String, String)> {
        class.members.iter().map(|(_, m)| (m.ab().0.to_string(), m.ab().1.to_string())).collect()
    }

    #[test]
    fn worked_example() {
        let c = atlas().isogeny_class(&curve(-15, -22)).unwrap();
        assert_eq!((c.n, c.branch), (6, Branch::GenusZero));
        assert_eq!(c.t, Some(rat(-6)));
        assert_eq!(c.d, Some(Integer::from(-1)));
        let want = [("-19440", "-1026432"), ("0", "-2985984"), ("-174960", "27713664"), ("0", "80621568")];
        let want: Vec<(String, String)> = want.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        assert_eq!(pairs(&c), want);
        let labels: Vec<u32> = c.edges.iter().map(|e| e.2).collect();
        assert_eq!(labels, vec![2, 3, 3, 2]);
        assert_eq!(c.input_position, 0);
    }

    #[test]
    fn sporadic_27() {
        let c = atlas().isogeny_class(&curve(0, 16)).unwrap();
        assert_eq!((c.n, c.branch, c.d.clone()), (27, Branch::Sporadic, Some(Integer::one())));
        let want = [("-4320", "-109296"), ("0", "-432"), ("0", "16"), ("-480", "4048")];
        let want: Vec<(String, String)> = want.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        assert_eq!(pairs(&c), want);
        let bfs = atlas().bfs_cross_oracle(&curve(0, 16)).unwrap();
        assert_eq!(bfs.nodes.len(), 4);
        assert_eq!(bfs.label_multiset(), vec![3, 3, 3]);
    }

    #[test]
    fn singleton() {
        let c = atlas().isogeny_class(&curve(1, 1)).unwrap();
        assert_eq!((c.n, c.branch), (1, Branch::Singleton));
        assert_eq!(atlas().bfs_cross_oracle(&curve(1, 1)).unwrap().nodes.len(), 1);
        assert_eq!(c.to_dot(), "graph isogeny_class_n1 {\n  1 [label=\"C_{1,1}\"];\n}\n");
    }

    #[test]
    fn algorithm_one() {
        let hits = atlas().isogenies_genus_0(&curve(-15, -22), 6).unwrap();
        assert_eq!(hits.len(), 1);
        assert_eq!((hits[0].t.clone(), hits[0].d.clone()), (rat(-6), rat(-1)));
        assert!(atlas().isogenies_genus_0(&curve(-15, -22), 5).unwrap().is_empty());
        assert!(matches!(atlas().isogenies_genus_0(&curve(0, 16), 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn special_branches() {
        // y^2 = x^3 + 1: 36.a, reached from j = 0 through a 2-isogeny
        let c = atlas().isogeny_class(&curve(0, 1)).unwrap();
        assert_eq!(c.branch, Branch::GenusZero);
        assert_eq!(c.n, 6);
        // y^2 = x^3 + 2 is 27.a twisted by 2 (2/16 is a cube)
        let c = atlas().isogeny_class(&curve(0, 2)).unwrap();
        assert_eq!((c.n, c.branch, c.d.clone()), (27, Branch::Sporadic, Some(Integer::from(2))));
        // y^2 = x^3 + 3: only the 3-isogeny to (0, -81)
        let c = atlas().isogeny_class(&curve(0, 3)).unwrap();
        assert_eq!((c.n, c.branch, c.twist_exponent), (3, Branch::SpecialJ0, 6));
        assert!(is_isomorphic(c.member(2).unwrap(), &curve(0, -81)).is_some());
        // y^2 = x^3 + 2x
        let c = atlas().isogeny_class(&curve(2, 0)).unwrap();
        assert_eq!((c.n, c.branch, c.twist_exponent), (2, Branch::SpecialJ1728, 4));
        assert!(is_isomorphic(c.member(2).unwrap(), &curve(-8, 0)).is_some());
        assert_eq!(c.to_json()["twist_exponent_alt"], json!(6));
        // y^2 = x^3 - x: 32.a, two 2-isogenies leave j = 1728
        let c = atlas().isogeny_class(&curve(-1, 0)).unwrap();
        assert_eq!((c.n, c.branch), (4, Branch::GenusZero));
    }

    #[test]
    fn semistable_twists() {
        let (d, t) = atlas().semistable_twist(&curve(-15, -22)).unwrap();
        assert!(d == Integer::from(-1) || d == Integer::one());
        assert!(is_semistable_outside(&t, 6).unwrap());
        let (d, _) = atlas().semistable_twist(&curve(-375, -2750)).unwrap();
        assert!(d == Integer::from(5) || d == Integer::from(-5));
        // 2-isogeny class only: y^2 = x^3 + 2x
        assert!(matches!(atlas().semistable_twist(&curve(2, 0)), Err(Error::Precondition(_))));
    }

    #[test]
    fn dot_for_worked_example() {
        let c = atlas().isogeny_class(&curve(-15, -22)).unwrap();
        let dot = emit_graph(&c, GraphFormat::Dot);
        assert!(dot.starts_with("graph isogeny_class_n6 {"));
        assert_eq!(dot.matches(" -- ").count(), 4);
        assert_eq!(dot.matches("[label=\"C_{6,").count(), 4);
    }
}
