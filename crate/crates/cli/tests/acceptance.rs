//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any criterion fails.

use atlas_core::arith::{rat, squarefree_part, Integer, Rational, UniPoly};
use atlas_core::curves::quadratic_twist;
use atlas_core::fricke::{exceptional_params, singular_family_j, ExceptionalKind};
use atlas_core::semistable::{alpha_gamma, derive_bezout, gcd_bound_check, SEMISTABLE_LEVELS};
use atlas_core::verify::{family_corpus, hand_corpus, phi_edge_reports, run_check, theorem_b_holds, Status};
use atlas_core::Atlas;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

const SEED: u64 = 7;
const WORKED_EXAMPLE_LIMIT: Duration = Duration::from_secs(1);
const SPORADIC_LIMIT: Duration = Duration::from_secs(10);
const THEOREM_B_LIMIT: Duration = Duration::from_secs(60);
const LEMMA53_SAMPLES: usize = 50;
const PHI_SAMPLES: usize = 25;
const CORPUS_SIZE: usize = 200;
const LEMMA41_SAMPLES: usize = 100;
const GCD_PAIRS: usize = 1000;
const THEOREM_B_PAIRS: usize = 100;
const THEOREM_B_BOUND: i64 = 20;
const TWIST_PAIRS: usize = 50;

const TABLE5: [(u32, &[(&str, &str)]); 11] = [
    (11, &[("-1149984", "-487018224"), ("-9504", "365904"), ("-395307", "373960422"), ("-38907", "-2953962")]),
    (14, &[("-2361555", "1396762542"), ("-138915", "24504606"), ("-48195", "-4072194"), ("-2835", "-71442")]),
    (15, &[("-162675", "-25254450"), ("-675", "-79650"), ("712125", "-104861250"), ("-97875", "14208750")]),
    (17, &[("-247394115", "-1679010134850"), ("-3940515", "3010787550")]),
    (19, &[("-219488", "-39617584"), ("-608", "5776")]),
    (21, &[("-1396035", "634881726"), ("-1104435", "907504398"), ("3645", "-13122"), ("-54675", "-5156946")]),
    (27, &[("-4320", "-109296"), ("0", "-432"), ("0", "16"), ("-480", "4048")]),
    (37, &[("-269675595", "-1704553285050"), ("-10395", "444150")]),
    (43, &[("-25442240", "-49394836848"), ("-13760", "621264")]),
    (67, &[("-529342880", "-4687634371504"), ("-117920", "15585808")]),
    (163, &[("-924354639680", "-342062961763303088"), ("-34790720", "78984748304")]),
];

type Verdict = Result<String, String>;

fn atlas() -> &'static Atlas {
    Atlas::embedded()
}

fn run_cli(args: &[&str], input: Option<&str>) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_atlas"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .expect("atlas binary");
    {
        let mut stdin = child.stdin.take().unwrap();
        if let Some(text) = input {
            stdin.write_all(text.as_bytes()).unwrap();
        }
    }
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn check_report(name: &str, samples: usize) -> Verdict {
    let r = run_check(atlas(), name, samples, SEED).map_err(|e| e.to_string())?;
    match r.status {
        Status::Pass => Ok(format!("{name} pass, {} evaluations", r.samples)),
        Status::Fail => Err(format!("{name} fail: {}", r.counterexample.unwrap_or_default())),
        Status::Skipped(why) => Err(format!("{name} skipped: {why}")),
    }
}

fn pairs_of(members: &Value) -> Vec<(u64, String, String)> {
    members
        .as_array()
        .unwrap()
        .iter()
        .map(|m| (m["i"].as_u64().unwrap(), m["A"].as_str().unwrap().to_string(), m["B"].as_str().unwrap().to_string()))
        .collect()
}

fn worked_example() -> Verdict {
    let start = Instant::now();
    let (code, out) = run_cli(&["classify", "-15,-22", "--json"], None);
    let elapsed = start.elapsed();
    if code != 0 {
        return Err(format!("exit code {code}"));
    }
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let d: Integer = v["d"].as_str().unwrap().parse().unwrap();
    let square_class = squarefree_part(&Rational::from_integer(d)).unwrap();
    let want = [("-19440", "-1026432"), ("0", "-2985984"), ("-174960", "27713664"), ("0", "80621568")];
    let want: Vec<(u64, String, String)> =
        want.iter().enumerate().map(|(k, (a, b))| (k as u64 + 1, a.to_string(), b.to_string())).collect();
    let labels: Vec<u64> = v["edges"].as_array().unwrap().iter().map(|e| e[2].as_u64().unwrap()).collect();
    let ok = v["n"] == 6
        && v["t"] == "-6"
        && square_class == Integer::from(-1)
        && pairs_of(&v["members"]) == want
        && labels == [2, 3, 3, 2]
        && v["matrix"] == serde_json::json!([[1, 2, 3, 6], [2, 1, 6, 3], [3, 6, 1, 2], [6, 3, 2, 1]]);
    if !ok {
        return Err(format!("unexpected class {out}"));
    }
    if elapsed >= WORKED_EXAMPLE_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("n=6, t=-6, d=-1, four models and edges 2,3,3,2 in {} ms", elapsed.as_millis()))
}

fn sporadic_tables() -> Verdict {
    let start = Instant::now();
    let mut lines = String::new();
    for (n, row) in TABLE5 {
        for (k, (a, b)) in row.iter().enumerate() {
            let (code, out) = run_cli(&["sporadic", &n.to_string(), &(k + 1).to_string(), "1"], None);
            if code != 0 || out.trim() != format!("{a},{b}") {
                return Err(format!("sporadic {n} {} printed {}", k + 1, out.trim()));
            }
            lines.push_str(&format!("{a},{b}\n"));
        }
    }
    let (code, out) = run_cli(&["classify", "--stdin", "--json"], Some(&lines));
    if code != 0 {
        return Err(format!("batch classify exit code {code}"));
    }
    let mut classes = out.lines();
    for (n, row) in TABLE5 {
        for k in 0..row.len() {
            let v: Value = serde_json::from_str(classes.next().unwrap()).unwrap();
            let range: Vec<usize> = if n == 11 { if k < 2 { vec![1, 2] } else { vec![3, 4] } } else { (1..=row.len()).collect() };
            let want: Vec<(u64, String, String)> =
                range.iter().map(|&i| (i as u64, row[i - 1].0.to_string(), row[i - 1].1.to_string())).collect();
            if v["branch"] != "sporadic" || pairs_of(&v["members"]) != want {
                return Err(format!("class of C_{{{n},{}}}: {v}", k + 1));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= SPORADIC_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("32 models and their classes reproduced in {} ms", elapsed.as_millis()))
}

fn lemma33_sets() -> Verdict {
    let p = |cs: &[i64]| UniPoly::from_ints(cs.iter().copied());
    let printed = [
        (2, p(&[64, 1])),
        (3, p(&[27, 1])),
        (5, p(&[125, 22, 1])),
        (7, p(&[49, 13, 1])),
        (10, p(&[4, 0, 1])),
        (13, &p(&[13, 6, 1]) * &p(&[13, 5, 1])),
        (25, p(&[4, 0, 1])),
    ];
    for n in atlas_core::fricke::GENUS_ZERO_LEVELS {
        let want = printed.iter().find(|x| x.0 == n).map(|x| x.1.clone()).unwrap_or_else(UniPoly::one);
        let got = exceptional_params(n, ExceptionalKind::SingularFamily).map_err(|e| e.to_string())?.poly;
        if got != want {
            return Err(format!("R_{n} = {got}"));
        }
        let coincide = exceptional_params(n, ExceptionalKind::Coincidence0_1728).unwrap().rational_members();
        let want: Vec<Rational> = match n {
            2 => vec![rat(-64)],
            3 => vec![rat(-27)],
            _ => vec![],
        };
        if coincide != want {
            return Err(format!("coincidence set at n={n}: {coincide:?}"));
        }
    }
    for (n, v) in [(3, 0), (7, 0), (2, 1728), (5, 1728), (10, 1728), (25, 1728)] {
        if singular_family_j(n) != Some(v) {
            return Err(format!("n={n} assigned {:?}", singular_family_j(n)));
        }
    }
    check_report("lemma33", 0).map(|s| format!("sets as printed; {s}"))
}

fn edge_verification() -> Verdict {
    let reports = phi_edge_reports(atlas(), PHI_SAMPLES, SEED).map_err(|e| e.to_string())?;
    let (mut passed, mut skipped) = (0, Vec::new());
    for r in &reports {
        let required = atlas_core::atlas::REQUIRED_PHI.contains(&r.l);
        match &r.status {
            Status::Fail => return Err(r.counterexample.clone().unwrap_or_default()),
            Status::Pass => passed += 1,
            Status::Skipped(_) if required => return Err(format!("required Phi_{} skipped at n={}", r.l, r.n)),
            Status::Skipped(_) => skipped.push(format!("n={} l={}", r.n, r.l)),
        }
        if atlas_core::fricke::GENUS_ZERO_LEVELS.contains(&r.n) && r.status != Status::Pass {
            return Err(format!("genus-zero level {} degree {} not verified", r.n, r.l));
        }
    }
    Ok(format!("{passed} (level, degree) groups vanish; {} skipped without data: {}", skipped.len(), skipped.join(", ")))
}

fn gcd_corollary() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in SEMISTABLE_LEVELS {
        let mut done = 0;
        while done < GCD_PAIRS {
            let a = Integer::from(rng.gen_range(-1_000_000i64..=1_000_000));
            let b = Integer::from(rng.gen_range(-1_000_000i64..=1_000_000));
            if num_integer::Integer::gcd(&a, &b) != Integer::from(1) || alpha_gamma(n, &a, &b).unwrap().1 == Integer::from(0) {
                continue;
            }
            done += 1;
            if !gcd_bound_check(n, &a, &b).map_err(|e| e.to_string())? {
                return Err(format!("n={n}, a={a}, b={b}"));
            }
        }
        for w in derive_bezout(n).map_err(|e| e.to_string())? {
            if !w.verify().map_err(|e| e.to_string())? {
                return Err(format!("n={n}: derived witness fails"));
            }
        }
    }
    Ok(format!("{GCD_PAIRS} coprime pairs per n, derived witnesses re-verified"))
}

fn theorem_b() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for n in SEMISTABLE_LEVELS {
        let mut done = 0;
        while done < THEOREM_B_PAIRS {
            let a = Integer::from(rng.gen_range(-THEOREM_B_BOUND..=THEOREM_B_BOUND));
            let b = Integer::from(rng.gen_range(-THEOREM_B_BOUND..=THEOREM_B_BOUND));
            if num_integer::Integer::gcd(&a, &b) != Integer::from(1) || alpha_gamma(n, &a, &b).unwrap().1 == Integer::from(0) {
                continue;
            }
            done += 1;
            if !theorem_b_holds(n, &a, &b).map_err(|e| e.to_string())? {
                return Err(format!("F_{n}({a},{b}) has an additive prime outside {n}"));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= THEOREM_B_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{THEOREM_B_PAIRS} pairs per n semistable outside n in {} ms", elapsed.as_millis()))
}

fn twist_invariance() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    for entry in family_corpus(atlas(), TWIST_PAIRS, SEED + 2) {
        let d = loop {
            let d = rng.gen_range(-30i64..=30);
            if d != 0 && d != 1 && squarefree_part(&rat(d)).unwrap() == Integer::from(d) {
                break rat(d);
            }
        };
        let twisted = quadratic_twist(&entry.curve, &d).unwrap();
        let (a, b) = (atlas().isogeny_class(&entry.curve), atlas().isogeny_class(&twisted));
        match (a, b) {
            (Ok(a), Ok(b)) if a.n == b.n => {}
            (a, b) => return Err(format!("{} twisted by {d}: {:?} vs {:?}", entry.curve, a.map(|c| c.n), b.map(|c| c.n))),
        }
    }
    Ok(format!("{TWIST_PAIRS} (E, d) pairs keep their class degree"))
}

fn determinism() -> Verdict {
    let (c1, v1) = run_cli(&["verify"], None);
    let (c2, v2) = run_cli(&["verify"], None);
    if c1 != 0 || c2 != 0 {
        return Err(format!("verify exit codes {c1}, {c2}"));
    }
    if v1 != v2 {
        return Err("verify output differs between runs".into());
    }
    let lines: String = family_corpus(atlas(), CORPUS_SIZE, SEED)
        .into_iter()
        .chain(hand_corpus())
        .map(|e| format!("{}\n", e.curve))
        .collect();
    let (k1, o1) = run_cli(&["classify", "--stdin", "--json"], Some(&lines));
    let (k2, o2) = run_cli(&["classify", "--stdin", "--json"], Some(&lines));
    if k1 != 0 || k1 != k2 || o1 != o2 {
        return Err("corpus classification differs between runs".into());
    }
    Ok(format!("verify ({} bytes) and corpus classification ({} bytes) identical", v1.len(), o1.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 12] = [
        ("worked example", worked_example),
        ("sporadic tables", sporadic_tables),
        ("prop 3.1(i) identity", || check_report("prop31_j", 0)),
        ("lemma 3.3 sets", lemma33_sets),
        ("lemma 5.3 sampling", || check_report("lemma53", LEMMA53_SAMPLES)),
        ("edge verification", edge_verification),
        ("oracle agreement", || check_report("oracle_agreement", CORPUS_SIZE)),
        ("lemma 4.1 identity", || check_report("lemma41", LEMMA41_SAMPLES)),
        ("lemma 4.2 gcd bound", gcd_corollary),
        ("theorem B samples", theorem_b),
        ("twist invariance", twist_invariance),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = f();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
