//! Named, individually runnable checks of the computer-verified claims behind the tables.
//!
//! Identity checks evaluate at more points than the degree bound allows a nonzero
//! polynomial to vanish on, so a pass is a proof. The rest sample with a seeded ChaCha
//! stream and are reproducible from (samples, seed).

use crate::arith::{
    int, poly_gcd, rat, ratio, rational_roots, Integer, MultiPoly, Rational, UniPoly,
};
use crate::atlas::Atlas;
use crate::curves::{
    is_isomorphic, is_semistable_outside, parse_curve, WeierstrassModel,
};
use crate::error::{Error, Result};
use crate::families::{k_indices, member_count, SPORADIC_LEVELS};
use crate::fricke::{exceptional_params, singular_family_j, ExceptionalKind, GENUS_ZERO_LEVELS};
use crate::isogeny::kernel_isogenies;
use crate::semistable::{
    alpha_gamma, alpha_gamma_polys, derive_bezout, f_model, gcd_bound_check, verify_lemma41, SEMISTABLE_LEVELS,
};
use num_integer::Integer as _;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

pub const DEFAULT_SAMPLES: usize = 50;
pub const DEFAULT_SEED: u64 = 20240;

/// Check names with the claim each one reproduces.
pub const CHECKS: [(&str, &str); 10] = [
    ("prop31_j", "Prop. 3.1(i): j(C_{n,k_i}(t,d)) = j_{n,i}(t); every other member is Phi-linked to it"),
    ("prop31_noniso", "Prop. 3.1(ii): the members C_{n,i}(t,d) are pairwise non-isomorphic over Q(t,d)"),
    ("prop31_edges", "Prop. 3.1(iii)-(iv): every graph edge is a rational isogeny of the labelled degree"),
    ("lemma33", "Lemma 3.3: on R_n, j_{n,1} = j_{n,2} in {0,1728}; the rational coincidence set"),
    ("lemma44", "Lemma 4.4: for n in {4,6,9}, j_{n,1}(t) in {0,1728} forces j_{n,1}(t) != j_{n,2}(t)"),
    ("lemma53", "Lemma 5.3: the sets S_{n,i,k} and pairwise non-isomorphism over Q"),
    ("lemma41", "Lemma 4.1: c4(F_n) = alpha_n and disc(F_n) = gamma_n"),
    ("lemma42_gcd", "Lemma 4.2: gcd(alpha_n, gamma_n) | c_n via Bezout witnesses; Theorem B on samples"),
    ("phi_compat", "Prop. 3.1(iv), Table 4: Phi_l vanishes on every prime edge"),
    ("oracle_agreement", "Classification agrees with the breadth-first isogeny search"),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped(_) => "skipped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    /// Evaluations actually performed.
    pub samples: usize,
    pub seed: u64,
    pub elapsed: Duration,
    pub counterexample: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    /// One JSON object; the elapsed time only when `timings` is set.
    pub fn to_json(&self, timings: bool) -> Value {
        let mut v = json!({
            "check": self.name,
            "status": self.status.label(),
            "samples": self.samples,
            "seed": self.seed,
            "counterexample": self.counterexample,
        });
        if let Status::Skipped(reason) = &self.status {
            v["reason"] = json!(reason);
        }
        if timings {
            v["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        }
        v
    }
}

pub fn claim_of(name: &str) -> Option<&'static str> {
    CHECKS.iter().find(|c| c.0 == name).map(|c| c.1)
}

/// The check-to-claim mapping, one line per check.
pub fn report_header() -> String {
    let mut s = String::new();
    for (name, claim) in CHECKS {
        let _ = writeln!(s, "# {name:<17} {claim}");
    }
    s
}

pub fn render_jsonl(reports: &[CheckReport], timings: bool) -> String {
    reports.iter().map(|r| format!("{}\n", r.to_json(timings))).collect()
}

pub fn render_table(reports: &[CheckReport], timings: bool) -> String {
    let mut s = report_header();
    let _ = writeln!(s, "{:<17} {:<8} {:>8} {:>8}{}", "check", "status", "samples", "seed", if timings { "  elapsed" } else { "" });
    for r in reports {
        let time = if timings { format!("  {:>5}ms", r.elapsed.as_millis()) } else { String::new() };
        let _ = writeln!(s, "{:<17} {:<8} {:>8} {:>8}{}", r.name, r.status.label(), r.samples, r.seed, time);
        match (&r.status, &r.counterexample) {
            (Status::Skipped(reason), _) => {
                let _ = writeln!(s, "    {reason}");
            }
            (_, Some(c)) => {
                let _ = writeln!(s, "    counterexample: {c}");
            }
            _ => {}
        }
    }
    s
}

enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

struct Run {
    outcome: Outcome,
    evaluations: usize,
}

impl Run {
    fn pass(evaluations: usize) -> Run {
        Run { outcome: Outcome::Pass, evaluations }
    }

    fn fail(evaluations: usize, counterexample: String) -> Run {
        Run { outcome: Outcome::Fail(counterexample), evaluations }
    }
}

fn rng_for(name: &str, seed: u64) -> ChaCha8Rng {
    let idx = CHECKS.iter().position(|c| c.0 == name).unwrap_or(0) as u64;
    ChaCha8Rng::seed_from_u64(seed ^ (idx + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Runs one check. Unknown names are an error; everything else yields a report.
pub fn run_check(atlas: &Atlas, name: &str, samples: usize, seed: u64) -> Result<CheckReport> {
    if claim_of(name).is_none() {
        return Err(Error::UnknownCheck(name.to_string()));
    }
    let mut rng = rng_for(name, seed);
    let start = Instant::now();
    let run = match name {
        "prop31_j" => prop31_j(atlas, samples, &mut rng),
        "prop31_noniso" => prop31_noniso(atlas, &mut rng),
        "prop31_edges" => prop31_edges(atlas, samples, &mut rng),
        "lemma33" => lemma33(atlas),
        "lemma44" => lemma44(atlas),
        "lemma53" => lemma53(atlas, samples, &mut rng),
        "lemma41" => lemma41(samples, &mut rng),
        "lemma42_gcd" => lemma42_gcd(atlas, samples, &mut rng),
        "phi_compat" => phi_compat(atlas, samples, &mut rng),
        _ => oracle_agreement(atlas, samples, seed),
    };
    let elapsed = start.elapsed();
    let (status, counterexample, evaluations) = match run {
        Ok(Run { outcome: Outcome::Pass, evaluations }) => (Status::Pass, None, evaluations),
        Ok(Run { outcome: Outcome::Fail(c), evaluations }) => (Status::Fail, Some(c), evaluations),
        Ok(Run { outcome: Outcome::Skipped(r), evaluations }) => (Status::Skipped(r), None, evaluations),
        Err(e) => (Status::Fail, Some(format!("error: {e}")), 0),
    };
    Ok(CheckReport { name: name.to_string(), status, samples: evaluations, seed, elapsed, counterexample })
}

/// Every check, run in parallel and returned in name order.
pub fn run_all(atlas: &Atlas, samples: usize, seed: u64) -> Vec<CheckReport> {
    let mut reports: Vec<CheckReport> = std::thread::scope(|s| {
        let handles: Vec<_> = CHECKS
            .iter()
            .map(|(name, _)| s.spawn(move || run_check(atlas, name, samples, seed).expect("known check")))
            .collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    });
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    reports
}

pub fn any_failed(reports: &[CheckReport]) -> bool {
    reports.iter().any(|r| r.failed())
}

// ---- sampling ----

fn rand_t(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-60..=60), rng.gen_range(1..=8))
}

fn rand_d(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let d = rng.gen_range(-30i64..=30);
        if d != 0 {
            return rat(d);
        }
    }
}

/// A random (t, d) at which every member of level n is an elliptic curve.
fn sample_family(atlas: &Atlas, n: u32, rng: &mut ChaCha8Rng) -> Result<(Rational, Rational, Vec<WeierstrassModel>)> {
    let m = member_count(n)?;
    for _ in 0..1000 {
        let (t, d) = (rand_t(rng), rand_d(rng));
        let members: Result<Vec<_>> = (1..=m).map(|i| atlas.family_curve(n, i, &t, &d)).collect();
        if let Ok(members) = members {
            return Ok((t, d, members));
        }
    }
    Err(Error::Precondition(format!("no admissible parameter found at level {n}")))
}

fn coprime_pair(rng: &mut ChaCha8Rng, bound: i64) -> (Integer, Integer) {
    loop {
        let (a, b) = (int(rng.gen_range(-bound..=bound)), int(rng.gen_range(-bound..=bound)));
        if a.gcd(&b).is_one() {
            return (a, b);
        }
    }
}

fn deg(p: &UniPoly) -> usize {
    p.degree().unwrap_or(0)
}

/// Phi(N_a/D_a, N_b/D_b) * D_a^L * D_b^L at an integer t, L the degree of Phi in each variable.
fn phi_cleared(phi: &BTreeMap<(u32, u32), Integer>, l_deg: u32, fa: (&UniPoly, &UniPoly), fb: (&UniPoly, &UniPoly), t: &Rational) -> Integer {
    let powers = |p: &UniPoly| {
        let x = p.eval(t).to_integer();
        let mut v = vec![Integer::one()];
        for k in 0..l_deg as usize {
            let next = &v[k] * &x;
            v.push(next);
        }
        v
    };
    let (na, da, nb, db) = (powers(fa.0), powers(fa.1), powers(fb.0), powers(fb.1));
    let l = l_deg as usize;
    phi.iter()
        .map(|(&(i, j), c)| {
            let (i, j) = (i as usize, j as usize);
            c * &na[i] * &da[l - i] * &nb[j] * &db[l - j]
        })
        .fold(Integer::zero(), |acc, x| acc + x)
}

fn phi_degree(phi: &BTreeMap<(u32, u32), Integer>) -> u32 {
    phi.keys().map(|&(i, j)| i.max(j)).max().unwrap_or(0)
}

// ---- checks ----

fn prop31_j(atlas: &Atlas, samples: usize, rng: &mut ChaCha8Rng) -> Result<Run> {
    let jp = atlas.member_jpolys();
    let mut evals = 0;
    let mut missing = BTreeSet::new();
    for n in GENUS_ZERO_LEVELS {
        let (k1, k2) = k_indices(n)?;
        let mut verified = BTreeSet::new();
        for (fi, k) in [(1, k1), (2, k2)] {
            let fr = atlas.fricke(n, fi)?;
            let (nf, df) = &jp[&(n, k)];
            let bound = deg(nf).max(deg(df)) + fr.degree();
            let offset: i64 = rng.gen_range(-100..=100);
            for s in 0..(bound + 1).max(samples) {
                let t = rat(offset + s as i64);
                evals += 1;
                if nf.eval(&t) * fr.den.eval(&t) != fr.num.eval(&t) * df.eval(&t) {
                    return Ok(Run::fail(evals, format!("(n={n}, i={k}) at t={t}: j(C_{{{n},{k}}}) != j_{{{n},{fi}}}")));
                }
            }
            verified.insert(k);
        }
        // the remaining members through Phi along prime edges
        let edges = atlas.graph_data(n)?.edges.clone();
        loop {
            let next = edges.iter().find_map(|&(a, b, l)| {
                if verified.contains(&a) && !verified.contains(&b) {
                    Some((a, b, l))
                } else if verified.contains(&b) && !verified.contains(&a) {
                    Some((b, a, l))
                } else {
                    None
                }
            });
            let Some((a, b, l)) = next else { break };
            let Ok(phi) = atlas.phi(l) else {
                missing.insert(l);
                verified.insert(b);
                continue;
            };
            let coeffs = phi.coefficients();
            let ld = phi_degree(&coeffs);
            let (fa, fb) = (&jp[&(n, a)], &jp[&(n, b)]);
            let bound = ld as usize * (deg(&fa.0).max(deg(&fa.1)) + deg(&fb.0).max(deg(&fb.1)));
            let offset: i64 = rng.gen_range(-100..=100);
            for s in 0..=bound {
                let t = rat(offset + s as i64);
                evals += 1;
                if !phi_cleared(&coeffs, ld, (&fa.0, &fa.1), (&fb.0, &fb.1), &t).is_zero() {
                    return Ok(Run::fail(
                        evals,
                        format!("(n={n}, i={b}) at t={t}: Phi_{l}(j(C_{{{n},{a}}}), j(C_{{{n},{b}}})) != 0"),
                    ));
                }
            }
            verified.insert(b);
        }
        let m = member_count(n)?;
        if verified.len() != m {
            return Ok(Run::fail(evals, format!("level {n}: members not reachable from C_{{{n},{k1}}}")));
        }
    }
    if !missing.is_empty() {
        return Ok(Run { outcome: Outcome::Skipped(unavailable(&missing)), evaluations: evals });
    }
    Ok(Run::pass(evals))
}

fn unavailable(levels: &BTreeSet<u32>) -> String {
    let list: Vec<String> = levels.iter().map(|l| l.to_string()).collect();
    format!("phi data unavailable (level {})", list.join(", "))
}

fn prop31_noniso(atlas: &Atlas, rng: &mut ChaCha8Rng) -> Result<Run> {
    let jp = atlas.member_jpolys();
    let mut evals = 0;
    for n in GENUS_ZERO_LEVELS {
        let m = member_count(n)?;
        for i in 1..=m {
            for k in i + 1..=m {
                evals += 1;
                let (ni, di) = &jp[&(n, i)];
                let (nk, dk) = &jp[&(n, k)];
                if !(&(ni * dk) - &(nk * di)).is_zero() {
                    continue;
                }
                // equal j-functions: the twist between them must not be a square in Q(t)
                let one = Rational::one();
                let mut witnessed = false;
                for _ in 0..50 {
                    let t = rand_t(rng);
                    let (Ok(ci), Ok(ck)) = (atlas.family_curve(n, i, &t, &one), atlas.family_curve(n, k, &t, &one)) else {
                        continue;
                    };
                    if is_isomorphic(&ci, &ck).is_none() {
                        witnessed = true;
                        break;
                    }
                }
                if !witnessed {
                    return Ok(Run::fail(evals, format!("(n={n}) members {i} and {k} share j and no sampled t separates them")));
                }
            }
        }
    }
    Ok(Run::pass(evals))
}

fn has_edge(atlas: &Atlas, from: &WeierstrassModel, to: &WeierstrassModel, l: u32) -> Result<bool> {
    let candidates: Vec<WeierstrassModel> = if l <= 3 {
        kernel_isogenies(from, l as usize)?.into_iter().map(|m| m.codomain).collect()
    } else {
        atlas.prime_neighbours(from)?.into_iter().filter(|x| x.0 == l).map(|x| x.1).collect()
    };
    Ok(candidates.iter().any(|c| is_isomorphic(c, to).is_some()))
}

fn special(e: &WeierstrassModel) -> bool {
    let j = e.j();
    j.is_zero() || j == rat(1728)
}

fn prop31_edges(atlas: &Atlas, samples: usize, rng: &mut ChaCha8Rng) -> Result<Run> {
    let mut evals = 0;
    for n in GENUS_ZERO_LEVELS {
        let edges = atlas.graph_data(n)?.edges.clone();
        let mut done = 0;
        while done < samples {
            let (t, d, members) = sample_family(atlas, n, rng)?;
            if members.iter().any(special) {
                continue;
            }
            for &(a, b, l) in &edges {
                evals += 1;
                if !has_edge(atlas, &members[a - 1], &members[b - 1], l)? {
                    return Ok(Run::fail(evals, format!("(n={n}, t={t}, d={d}): no {l}-isogeny C_{{{n},{a}}} -> C_{{{n},{b}}}")));
                }
            }
            done += 1;
        }
    }
    for n in SPORADIC_LEVELS {
        let edges = atlas.graph_data(n)?.edges.clone();
        for _ in 0..samples.min(5) {
            let d = rand_d(rng);
            let members: Vec<WeierstrassModel> =
                (1..=member_count(n)?).map(|i| atlas.sporadic_curve(n, i, &d)).collect::<Result<_>>()?;
            for &(a, b, l) in &edges {
                if l > 13 || l == 11 || (l > 3 && special(&members[a - 1])) {
                    continue;
                }
                evals += 1;
                if !has_edge(atlas, &members[a - 1], &members[b - 1], l)? {
                    return Ok(Run::fail(evals, format!("(n={n}, d={d}): no {l}-isogeny C_{{{n},{a}}} -> C_{{{n},{b}}}")));
                }
            }
        }
    }
    Ok(Run::pass(evals))
}

/// Removes from p every factor it shares with q.
fn strip_common(p: &UniPoly, q: &UniPoly) -> Result<UniPoly> {
    let mut p = p.clone();
    loop {
        let g = poly_gcd(&p, q)?;
        if deg(&g) == 0 {
            return Ok(p.monic());
        }
        p = p.exact_div(&g).expect("gcd divides");
    }
}

fn lemma33(atlas: &Atlas) -> Result<Run> {
    let mut evals = 0;
    let values = [rat(0), rat(1728)];
    for n in GENUS_ZERO_LEVELS {
        let (f1, f2) = (atlas.fricke(n, 1)?, atlas.fricke(n, 2)?);
        let r = exceptional_params(n, ExceptionalKind::SingularFamily)?.poly;
        // R_n from the discriminant of C_{n,1}(t,1), cusps removed
        let (a, b) = atlas.family_polys(n, 1)?;
        let disc = &a.pow(3).scale(&rat(4)) + &(b * b).scale(&rat(27));
        let derived = strip_common(&disc.squarefree(), &(&f1.den * &f2.den))?;
        evals += 1;
        if derived != r.monic() {
            return Ok(Run::fail(evals, format!("n={n}: singular locus {derived} differs from R_n = {r}")));
        }
        // on R_n (over the algebraic closure): both Fricke values equal 0 or 1728
        let mut covered = 0;
        for v in &values {
            let g = poly_gcd(&r, &(&f1.num - &f1.den.scale(v)))?;
            if deg(&g) == 0 {
                continue;
            }
            evals += 1;
            let rem = (&f2.num - &f2.den.scale(v)).div_rem(&g).1;
            if !rem.is_zero() {
                return Ok(Run::fail(evals, format!("n={n}: j_{{{n},2}} != {v} on the roots of {g}")));
            }
            covered += deg(&g);
            if let Some(expect) = singular_family_j(n) {
                if *v != rat(expect) {
                    return Ok(Run::fail(evals, format!("n={n}: R_n maps to {v}, expected {expect}")));
                }
            }
        }
        if covered != deg(&r) {
            return Ok(Run::fail(evals, format!("n={n}: some root of {r} maps outside {{0, 1728}}")));
        }
        // rational t with j_{n,1}(t) = j_{n,2}(t) in {0, 1728}
        let mut found = Vec::new();
        for v in &values {
            let g = poly_gcd(&(&f1.num - &f1.den.scale(v)), &(&f2.num - &f2.den.scale(v)))?;
            if deg(&g) > 0 {
                found.extend(rational_roots(&g)?);
            }
        }
        found.sort();
        let mut listed = exceptional_params(n, ExceptionalKind::Coincidence0_1728)?.rational_members();
        listed.sort();
        evals += 1;
        if found != listed {
            let show = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
            return Ok(Run::fail(evals, format!("n={n}: coincidence set {{{}}}, listed {{{}}}", show(&found), show(&listed))));
        }
    }
    Ok(Run::pass(evals))
}

fn lemma44(atlas: &Atlas) -> Result<Run> {
    let mut evals = 0;
    for n in SEMISTABLE_LEVELS {
        let (f1, f2) = (atlas.fricke(n, 1)?, atlas.fricke(n, 2)?);
        for v in [rat(0), rat(1728)] {
            evals += 1;
            let g = poly_gcd(&(&f1.num - &f1.den.scale(&v)), &(&f2.num - &f2.den.scale(&v)))?;
            if deg(&g) > 0 {
                return Ok(Run::fail(evals, format!("n={n}: j_{{{n},1}} = j_{{{n},2}} = {v} on the roots of {g}")));
            }
        }
    }
    Ok(Run::pass(evals))
}

/// Levels where S_{n,i,k} is empty for every i != k.
const EMPTY_S: [u32; 8] = [5, 8, 10, 12, 13, 16, 18, 25];

fn lemma53(atlas: &Atlas, samples: usize, rng: &mut ChaCha8Rng) -> Result<Run> {
    let jp = atlas.member_jpolys();
    let one = Rational::one();
    let mut evals = 0;
    for n in GENUS_ZERO_LEVELS {
        let m = member_count(n)?;
        for i in 1..=m {
            for k in i + 1..=m {
                let (ni, di) = &jp[&(n, i)];
                let (nk, dk) = &jp[&(n, k)];
                let p = &(ni * dk) - &(nk * di);
                if p.is_zero() {
                    return Ok(Run::fail(evals, format!("(n={n}): J_{{{n},{i}}} = J_{{{n},{k}}} identically")));
                }
                // S_{n,i,k} and S_{n,k,i} share this polynomial
                for t in rational_roots(&p)? {
                    let ci = atlas.family_curve(n, i, &t, &one);
                    let ck = atlas.family_curve(n, k, &t, &one);
                    if ci.is_err() && ck.is_err() {
                        continue;
                    }
                    evals += 1;
                    if EMPTY_S.contains(&n) {
                        let (a, b) = if ci.is_ok() { (i, k) } else { (k, i) };
                        return Ok(Run::fail(evals, format!("(n={n}, i={a}, k={b}): t={t} lies in S_{{n,i,k}}")));
                    }
                    if let (Ok(ci), Ok(ck)) = (ci, ck) {
                        if is_isomorphic(&ci, &ck).is_some() {
                            return Ok(Run::fail(evals, format!("(n={n}, t={t}, d=1): C_{{{n},{i}}} ~ C_{{{n},{k}}}")));
                        }
                    }
                }
            }
        }
        for _ in 0..samples {
            let (t, d, members) = sample_family(atlas, n, rng)?;
            for i in 0..m {
                for k in i + 1..m {
                    evals += 1;
                    if is_isomorphic(&members[i], &members[k]).is_some() {
                        return Ok(Run::fail(evals, format!("(n={n}, t={t}, d={d}): C_{{{n},{}}} ~ C_{{{n},{}}}", i + 1, k + 1)));
                    }
                }
            }
        }
    }
    Ok(Run::pass(evals))
}

/// a1..a6 of F_n(a, b) as polynomials in Z[a, b].
fn f_model_polys(n: u32) -> [MultiPoly; 5] {
    let c = |v: i64| MultiPoly::constant(2, int(v));
    let a = MultiPoly::var(2, 0);
    let b = MultiPoly::var(2, 1);
    let lin = |x: i64, y: i64| &(&a * &c(x)) + &(&b * &c(y));
    let z = MultiPoly::zero(2);
    match n {
        4 => [z.clone(), lin(-16, 1), z.clone(), &c(-16) * &(&a * &b), z],
        6 => [
            lin(36, 5),
            &(&c(2) * &b) * &lin(9, 1),
            &(&(&c(9) * &b) * &lin(8, 1)) * &lin(9, 1),
            z.clone(),
            z,
        ],
        _ => [&c(3) * &lin(6, 1), z.clone(), lin(-3, 1).pow(3), z.clone(), z],
    }
}

/// c4 and the discriminant of F_n computed symbolically from the b-invariants.
fn symbolic_c4_disc(n: u32) -> (MultiPoly, MultiPoly) {
    let [a1, a2, a3, a4, a6] = f_model_polys(n);
    let c = |v: i64| MultiPoly::constant(2, int(v));
    let b2 = &(&a1 * &a1) + &(&c(4) * &a2);
    let b4 = &(&c(2) * &a4) + &(&a1 * &a3);
    let b6 = &(&a3 * &a3) + &(&c(4) * &a6);
    let b8 = &(&(&(&(&a1 * &a1) * &a6) + &(&(&c(4) * &a2) * &a6)) - &(&(&a1 * &a3) * &a4))
        + &(&(&a2 * &(&a3 * &a3)) - &(&a4 * &a4));
    let c4 = &(&b2 * &b2) - &(&c(24) * &b4);
    let disc = &(&(&(&c(-1) * &(&b2 * &b2)) * &b8) - &(&c(8) * &b4.pow(3)))
        + &(&(&c(9) * &(&(&b2 * &b4) * &b6)) - &(&c(27) * &(&b6 * &b6)));
    (c4, disc)
}

fn lemma41(samples: usize, rng: &mut ChaCha8Rng) -> Result<Run> {
    let mut evals = 0;
    for n in SEMISTABLE_LEVELS {
        let (alpha, gamma) = alpha_gamma_polys(n)?;
        let (c4, disc) = symbolic_c4_disc(n);
        evals += 1;
        if c4 != alpha || disc != gamma {
            return Ok(Run::fail(evals, format!("n={n}: symbolic c4/disc of F_n differ from alpha_n/gamma_n")));
        }
        let mut done = 0;
        while done < samples {
            let (a, b) = coprime_pair(rng, 1000);
            if alpha_gamma(n, &a, &b)?.1.is_zero() {
                continue;
            }
            evals += 1;
            done += 1;
            let model = f_model(n, &a, &b)?;
            let sym = f_model_polys(n);
            let pt = [Rational::from_integer(a.clone()), Rational::from_integer(b.clone())];
            let same_model = sym.iter().zip(model.coeffs()).all(|(p, q)| p.eval(&pt) == *q);
            if !same_model || !verify_lemma41(n, &a, &b)? {
                return Ok(Run::fail(evals, format!("(n={n}, a={a}, b={b})")));
            }
        }
    }
    Ok(Run::pass(evals))
}

/// Theorem B at (a, b): F_n(a, b) is semistable at every prime not dividing n.
pub fn theorem_b_holds(n: u32, a: &Integer, b: &Integer) -> Result<bool> {
    is_semistable_outside(&f_model(n, a, b)?, n as u64)
}

fn lemma42_gcd(atlas: &Atlas, samples: usize, rng: &mut ChaCha8Rng) -> Result<Run> {
    let mut evals = 0;
    for n in SEMISTABLE_LEVELS {
        for w in atlas.bezout_witnesses(n)? {
            evals += 1;
            if !w.verify()? {
                return Ok(Run::fail(evals, format!("n={n}: stored Bezout witness {} fails", w.to_json())));
            }
        }
        for w in derive_bezout(n)? {
            evals += 1;
            if !w.verify()? {
                return Ok(Run::fail(evals, format!("n={n}: derived Bezout witness {} fails", w.to_json())));
            }
        }
        for _ in 0..samples.max(1) * 20 {
            let (a, b) = coprime_pair(rng, 1_000_000);
            if alpha_gamma(n, &a, &b)?.1.is_zero() {
                continue;
            }
            evals += 1;
            if !gcd_bound_check(n, &a, &b)? {
                return Ok(Run::fail(evals, format!("(n={n}, a={a}, b={b}): gcd(alpha, gamma) does not divide c_n")));
            }
        }
        let mut done = 0;
        while done < samples {
            let (a, b) = coprime_pair(rng, 20);
            if alpha_gamma(n, &a, &b)?.1.is_zero() {
                continue;
            }
            evals += 1;
            done += 1;
            if !theorem_b_holds(n, &a, &b)? {
                return Ok(Run::fail(evals, format!("(n={n}, a={a}, b={b}): F_n has additive reduction outside n")));
            }
        }
    }
    Ok(Run::pass(evals))
}

/// Result of the Phi test for the edges of one graph at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeReport {
    pub n: u32,
    pub l: u32,
    pub status: Status,
    pub evaluations: usize,
    pub counterexample: Option<String>,
}

/// Phi_l on the prime edges of every graph: `samples` (t, d) per genus-zero level,
/// the table constants (up to a sampled twist) for the sporadic levels.
pub fn phi_edge_reports(atlas: &Atlas, samples: usize, seed: u64) -> Result<Vec<EdgeReport>> {
    phi_edges(atlas, samples, &mut rng_for("phi_compat", seed))
}

fn phi_edges(atlas: &Atlas, samples: usize, rng: &mut ChaCha8Rng) -> Result<Vec<EdgeReport>> {
    let mut out = Vec::new();
    for n in GENUS_ZERO_LEVELS.into_iter().chain(SPORADIC_LEVELS) {
        let edges = atlas.graph_data(n)?.edges.clone();
        let labels: BTreeSet<u32> = edges.iter().map(|e| e.2).collect();
        let mut points: Vec<(String, Vec<Rational>)> = Vec::new();
        if GENUS_ZERO_LEVELS.contains(&n) {
            for _ in 0..samples {
                let (t, d, members) = sample_family(atlas, n, rng)?;
                points.push((format!("t={t}, d={d}"), members.iter().map(|e| e.j()).collect()));
            }
        } else {
            let d = rand_d(rng);
            let js = (1..=member_count(n)?).map(|i| Ok(atlas.sporadic_curve(n, i, &d)?.j())).collect::<Result<_>>()?;
            points.push((format!("d={d}"), js));
        }
        for l in labels {
            let Ok(phi) = atlas.phi(l) else {
                out.push(EdgeReport { n, l, status: Status::Skipped(unavailable(&[l].into())), evaluations: 0, counterexample: None });
                continue;
            };
            let mut rep = EdgeReport { n, l, status: Status::Pass, evaluations: 0, counterexample: None };
            'pts: for (label, js) in &points {
                for &(a, b, _) in edges.iter().filter(|e| e.2 == l) {
                    rep.evaluations += 1;
                    if !phi.eval(&js[a - 1], &js[b - 1]).is_zero() {
                        rep.status = Status::Fail;
                        rep.counterexample = Some(format!("(n={n}, {label}): Phi_{l} on C_{{{n},{a}}} -- C_{{{n},{b}}}"));
                        break 'pts;
                    }
                }
            }
            out.push(rep);
        }
    }
    Ok(out)
}

fn phi_compat(atlas: &Atlas, samples: usize, rng: &mut ChaCha8Rng) -> Result<Run> {
    let reports = phi_edges(atlas, samples, rng)?;
    let evals = reports.iter().map(|r| r.evaluations).sum();
    if let Some(bad) = reports.iter().find(|r| r.status == Status::Fail) {
        return Ok(Run::fail(evals, bad.counterexample.clone().unwrap_or_default()));
    }
    let missing: BTreeSet<u32> =
        reports.iter().filter(|r| matches!(r.status, Status::Skipped(_))).map(|r| r.l).collect();
    if !missing.is_empty() {
        return Ok(Run { outcome: Outcome::Skipped(unavailable(&missing)), evaluations: evals });
    }
    Ok(Run::pass(evals))
}

// ---- corpus ----

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: String,
    pub curve: WeierstrassModel,
}

/// Curves entered by hand: the worked example, j in {0, 1728}, and small conductors.
pub const HAND_CURVES: [&str; 20] = [
    "-15,-22",
    "0,16",
    "1,1",
    "0,1",
    "0,3",
    "-1,0",
    "2,0",
    "0,-1,1,-10,-20",
    "1,0,1,4,-6",
    "1,1,1,-10,-10",
    "1,-1,1,-1,-14",
    "0,1,1,-9,-15",
    "1,0,0,-4,-1",
    "1,0,1,-5,-8",
    "1,0,1,1,2",
    "0,0,1,-1,0",
    "1,-1,0,-2,-1",
    "1,0,1,-1,-2",
    "0,-1,0,-4,4",
    "-11,-14",
];

pub fn hand_corpus() -> Vec<CorpusEntry> {
    HAND_CURVES
        .iter()
        .map(|s| CorpusEntry { label: s.to_string(), curve: parse_curve(s).expect("hand-listed curves parse") })
        .collect()
}

/// `count` family members at random small parameters, cycling through all levels.
pub fn family_corpus(atlas: &Atlas, count: usize, seed: u64) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let levels: Vec<u32> = GENUS_ZERO_LEVELS.into_iter().chain(SPORADIC_LEVELS).collect();
    let mut out = Vec::with_capacity(count);
    let mut k = 0;
    while out.len() < count {
        let n = levels[k % levels.len()];
        k += 1;
        let m = member_count(n).expect("known level");
        let i = rng.gen_range(1..=m);
        let d = loop {
            let d = rng.gen_range(-10i64..=10);
            if d != 0 {
                break rat(d);
            }
        };
        if SPORADIC_LEVELS.contains(&n) {
            let curve = atlas.sporadic_curve(n, i, &d).expect("sporadic table");
            out.push(CorpusEntry { label: format!("C_{{{n},{i}}}({d})"), curve });
            continue;
        }
        let t = ratio(rng.gen_range(-12..=12), rng.gen_range(1..=3));
        if let Ok(curve) = atlas.family_curve(n, i, &t, &d) {
            out.push(CorpusEntry { label: format!("C_{{{n},{i}}}({t},{d})"), curve });
        }
    }
    out
}

fn oracle_agreement(atlas: &Atlas, samples: usize, seed: u64) -> Result<Run> {
    let mut evals = 0;
    for entry in family_corpus(atlas, samples, seed).into_iter().chain(hand_corpus()) {
        evals += 1;
        if let Err(why) = agreement(atlas, &entry.curve) {
            return Ok(Run::fail(evals, format!("{} [{}]: {why}", entry.curve, entry.label)));
        }
    }
    Ok(Run::pass(evals))
}

/// Compares the table-driven class of E with the search graph by j-values and edge labels.
pub fn agreement(atlas: &Atlas, e: &WeierstrassModel) -> std::result::Result<(), String> {
    let bfs = atlas.bfs_cross_oracle(e).map_err(|x| x.to_string())?;
    let class = atlas.isogeny_class(e).map_err(|x| x.to_string())?;
    let mut js: Vec<Rational> = class.members.iter().map(|m| m.1.j()).collect();
    js.sort();
    if js != bfs.j_multiset() {
        return Err("j-invariants differ".into());
    }
    let mut labels: Vec<u32> = class.edges.iter().map(|e| e.2).collect();
    labels.sort();
    if labels != bfs.label_multiset() {
        return Err("edge labels differ".into());
    }
    Ok(())
}
