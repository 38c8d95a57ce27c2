//! Curve families: genus-zero C_{n,i}(t,d), sporadic C_{n,i}(d), the j = 0 / 1728
//! special pairs, and isogeny graph data.

use crate::arith::{from_int, pow, Integer, Rational, UniPoly};
use crate::atlas::Atlas;
use crate::curves::WeierstrassModel;
use crate::error::{Error, Result};
use crate::fricke::{exceptional_params, is_genus_zero, ExceptionalKind, GENUS_ZERO_LEVELS};
use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub const SPORADIC_LEVELS: [u32; 11] = [11, 14, 15, 17, 19, 21, 27, 37, 43, 67, 163];

pub fn is_sporadic(n: u32) -> bool {
    SPORADIC_LEVELS.contains(&n)
}

/// Number of members m_n of the family at level n.
pub fn member_count(n: u32) -> Result<usize> {
    Ok(match n {
        2 | 3 | 5 | 7 | 13 => 2,
        9 | 25 => 3,
        4 | 6 | 10 => 4,
        8 | 18 => 6,
        12 | 16 => 8,
        11 | 14 | 15 | 21 | 27 => 4,
        17 | 19 | 37 | 43 | 67 | 163 => 2,
        _ => return Err(Error::InvalidLevel(n)),
    })
}

/// (k1, k2): the members whose j-invariants are j_{n,1}(t) and j_{n,2}(t).
pub fn k_indices(n: u32) -> Result<(usize, usize)> {
    Ok(match n {
        2 | 3 | 5 | 7 | 13 => (1, 2),
        4 => (4, 2),
        6 | 10 => (1, 4),
        8 => (3, 6),
        9 | 25 => (1, 3),
        12 => (5, 4),
        16 => (2, 8),
        18 => (1, 6),
        _ => return Err(Error::InvalidLevel(n)),
    })
}

/// Prime-degree edges (i, k, l) and the matrix of minimal cyclic degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphData {
    pub n: u32,
    pub edges: Vec<(usize, usize, u32)>,
    pub matrix: Vec<Vec<u32>>,
}

impl GraphData {
    /// Structural checks: symmetric, unit diagonal, entries dividing n with maximum n,
    /// and every entry the least product of edge primes along a path.
    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Error::Fixture(format!("graph n={}: {m}", self.n));
        let k = self.matrix.len();
        let mut max = 0;
        for (r, row) in self.matrix.iter().enumerate() {
            if row.len() != k {
                return Err(bad("matrix not square".into()));
            }
            if row[r] != 1 {
                return Err(bad("diagonal entry is not 1".into()));
            }
            for (c, &v) in row.iter().enumerate() {
                if v != self.matrix[c][r] {
                    return Err(bad("matrix not symmetric".into()));
                }
                if v == 0 || self.n % v != 0 {
                    return Err(bad(format!("entry {v} does not divide n")));
                }
                max = max.max(v);
            }
        }
        if max != self.n {
            return Err(bad("largest entry differs from n".into()));
        }
        for comp in self.components() {
            if comp.len() != k {
                return Err(bad("component size differs from matrix size".into()));
            }
            let dist = self.path_products(&comp);
            for (a, &i) in comp.iter().enumerate() {
                for (b, &j) in comp.iter().enumerate() {
                    let want = self.matrix[a][b] as u64;
                    if dist[a][b] != want {
                        return Err(bad(format!("entry ({i},{j}) = {want} but least path product is {}", dist[a][b])));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_dot(&self) -> String {
        let m = self.matrix.len();
        let mut s = format!("graph isogeny_class_n{} {{\n", self.n);
        for i in 1..=m {
            s.push_str(&format!("  {i} [label=\"C_{{{},{i}}}\"];\n", self.n));
        }
        for (a, b, l) in &self.edges {
            s.push_str(&format!("  {a} -- {b} [label={l}];\n"));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "edges": self.edges.iter().map(|&(a, b, l)| json!([a, b, l])).collect::<Vec<_>>(),
            "matrix": self.matrix,
        })
    }

    /// Connected vertex sets (1-based). Level 11 has two, each matching the 2x2 matrix.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let verts: Vec<usize> = {
            let mut v: Vec<usize> = self.edges.iter().flat_map(|&(a, b, _)| [a, b]).collect();
            v.sort();
            v.dedup();
            v
        };
        let mut out: Vec<Vec<usize>> = Vec::new();
        for &v in &verts {
            if out.iter().any(|c| c.contains(&v)) {
                continue;
            }
            let mut comp = vec![v];
            let mut k = 0;
            while k < comp.len() {
                let x = comp[k];
                for &(a, b, _) in &self.edges {
                    for (p, q) in [(a, b), (b, a)] {
                        if p == x && !comp.contains(&q) {
                            comp.push(q);
                        }
                    }
                }
                k += 1;
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    /// Least product of edge labels between members of one component (Floyd-Warshall).
    fn path_products(&self, comp: &[usize]) -> Vec<Vec<u64>> {
        let k = comp.len();
        let pos = |v: usize| comp.iter().position(|&c| c == v);
        let mut d = vec![vec![u64::MAX; k]; k];
        for (a, row) in d.iter_mut().enumerate() {
            row[a] = 1;
        }
        for &(a, b, l) in &self.edges {
            if let (Some(x), Some(y)) = (pos(a), pos(b)) {
                d[x][y] = d[x][y].min(l as u64);
                d[y][x] = d[y][x].min(l as u64);
            }
        }
        for m in 0..k {
            for a in 0..k {
                for b in 0..k {
                    if d[a][m] != u64::MAX && d[m][b] != u64::MAX {
                        d[a][b] = d[a][b].min(d[a][m] * d[m][b]);
                    }
                }
            }
        }
        d
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyTables {
    pub genus_zero: BTreeMap<(u32, usize), (UniPoly, UniPoly)>,
    pub sporadic: BTreeMap<(u32, usize), (Integer, Integer)>,
    pub graphs: BTreeMap<u32, GraphData>,
}

fn int_of(v: &Value, what: &str) -> Result<Integer> {
    let s = v.as_str().ok_or_else(|| Error::Fixture(format!("{what}: integers must be strings")))?;
    s.parse().map_err(|_| Error::Fixture(format!("{what}: bad integer {s:?}")))
}

fn poly_of(v: &Value, what: &str) -> Result<UniPoly> {
    let arr = v.as_array().ok_or_else(|| Error::Fixture(format!("{what}: expected a list")))?;
    let cs: Vec<Integer> = arr.iter().map(|c| int_of(c, what)).collect::<Result<_>>()?;
    Ok(UniPoly::from_integers(&cs))
}

fn index_of(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| Error::Fixture(format!("{what}: expected a nonnegative integer")))
}

impl FamilyTables {
    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Fixture(format!("families.json: {e}")))?;
        let entries = v.as_array().ok_or_else(|| Error::Fixture("families.json: expected a list".into()))?;
        let mut t = FamilyTables::default();
        for e in entries {
            let n = index_of(&e["n"], "n")? as u32;
            if let Some(edges) = e.get("edges") {
                let edges = edges
                    .as_array()
                    .ok_or_else(|| Error::Fixture("edges: expected a list".into()))?
                    .iter()
                    .map(|x| {
                        let x = x.as_array().filter(|x| x.len() == 3);
                        let x = x.ok_or_else(|| Error::Fixture("edge: expected [i,k,l]".into()))?;
                        Ok((index_of(&x[0], "edge")? as usize, index_of(&x[1], "edge")? as usize, index_of(&x[2], "edge")? as u32))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let matrix = e["matrix"]
                    .as_array()
                    .ok_or_else(|| Error::Fixture("matrix: expected a list".into()))?
                    .iter()
                    .map(|row| {
                        row.as_array()
                            .ok_or_else(|| Error::Fixture("matrix row".into()))?
                            .iter()
                            .map(|c| Ok(index_of(c, "matrix")? as u32))
                            .collect::<Result<Vec<u32>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let g = GraphData { n, edges, matrix };
                g.check()?;
                t.graphs.insert(n, g);
                continue;
            }
            let i = index_of(&e["i"], "i")? as usize;
            if e["A"].is_array() {
                t.genus_zero.insert((n, i), (poly_of(&e["A"], "A")?, poly_of(&e["B"], "B")?));
            } else {
                t.sporadic.insert((n, i), (int_of(&e["A"], "A")?, int_of(&e["B"], "B")?));
            }
        }
        for n in GENUS_ZERO_LEVELS.into_iter().chain(SPORADIC_LEVELS) {
            let m = member_count(n)?;
            let table_len = if is_genus_zero(n) {
                t.genus_zero.keys().filter(|k| k.0 == n).count()
            } else {
                t.sporadic.keys().filter(|k| k.0 == n).count()
            };
            if table_len != m {
                return Err(Error::Fixture(format!("level {n}: {table_len} members, expected {m}")));
            }
            if !t.graphs.contains_key(&n) {
                return Err(Error::Fixture(format!("level {n}: no graph entry")));
            }
        }
        Ok(t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialKind {
    /// y^2 = x^3 - d x and y^2 = x^3 + 4 d x
    J1728N2,
    /// y^2 = x^3 + 16 d and y^2 = x^3 - 432 d
    J0N3,
}

pub fn special_curve(kind: SpecialKind, i: usize, d: &Rational) -> Result<WeierstrassModel> {
    if d.is_zero() {
        return Err(Error::Zero);
    }
    let (a, b) = match (kind, i) {
        (SpecialKind::J1728N2, 1) => (-d, Rational::zero()),
        (SpecialKind::J1728N2, 2) => (d * Rational::from_integer(4.into()), Rational::zero()),
        (SpecialKind::J0N3, 1) => (Rational::zero(), d * Rational::from_integer(16.into())),
        (SpecialKind::J0N3, 2) => (Rational::zero(), d * Rational::from_integer((-432).into())),
        _ => {
            let n = if kind == SpecialKind::J1728N2 { 2 } else { 3 };
            return Err(Error::InvalidIndex { n, i });
        }
    };
    WeierstrassModel::short(a, b)
}

impl Atlas {
    /// A_{n,i}(t), B_{n,i}(t).
    pub fn family_polys(&self, n: u32, i: usize) -> Result<&(UniPoly, UniPoly)> {
        if !is_genus_zero(n) {
            return Err(Error::InvalidLevel(n));
        }
        self.families.genus_zero.get(&(n, i)).ok_or(Error::InvalidIndex { n, i })
    }

    /// C_{n,i}(t, d): y^2 = x^3 + d^2 A_{n,i}(t) x + d^3 B_{n,i}(t).
    pub fn family_curve(&self, n: u32, i: usize, t: &Rational, d: &Rational) -> Result<WeierstrassModel> {
        let (a, b) = self.family_polys(n, i)?;
        if d.is_zero() {
            return Err(Error::Zero);
        }
        if self.fricke(n, 1)?.is_pole(t) || self.fricke(n, 2)?.is_pole(t) {
            return Err(Error::CuspParameter);
        }
        if exceptional_params(n, ExceptionalKind::SingularFamily)?.contains(t) {
            return Err(Error::SingularParameter);
        }
        let (at, bt) = (a.eval(t), b.eval(t));
        WeierstrassModel::short(d * d * at, pow(d, 3) * bt).map_err(|_| Error::SingularParameter)
    }

    /// j(C_{n,i}(t, 1)).
    pub fn family_j(&self, n: u32, i: usize, t: &Rational) -> Result<Rational> {
        Ok(self.family_curve(n, i, t, &Rational::from_integer(1.into()))?.j())
    }

    /// C_{n,i}(d): y^2 = x^3 + d^2 A x + d^3 B with Table 5 constants.
    pub fn sporadic_curve(&self, n: u32, i: usize, d: &Rational) -> Result<WeierstrassModel> {
        if !is_sporadic(n) {
            return Err(Error::InvalidLevel(n));
        }
        let (a, b) = self.families.sporadic.get(&(n, i)).ok_or(Error::InvalidIndex { n, i })?;
        if d.is_zero() {
            return Err(Error::Zero);
        }
        WeierstrassModel::short(d * d * from_int(a.clone()), pow(d, 3) * from_int(b.clone()))
    }

    pub fn graph_data(&self, n: u32) -> Result<&GraphData> {
        self.families.graphs.get(&n).ok_or(Error::InvalidLevel(n))
    }
}
