//! `atlas`: isogeny classes, families and verification from the command line.

use atlas_core::arith::{parse_rational, Rational};
use atlas_core::classify::IsogenyClass;
use atlas_core::curves::{parse_curve, WeierstrassModel};
use atlas_core::verify::{self, CHECKS, DEFAULT_SAMPLES, DEFAULT_SEED};
use atlas_core::{Atlas, Error};
use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::fmt::Write as _;
use std::io::{BufRead, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "atlas", version, about = "Explicit isogeny classes of elliptic curves over Q")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct CurveArg {
    /// "A,B" for y^2 = x^3 + Ax + B, or "a1,a2,a3,a4,a6"; rationals as p/q
    #[arg(allow_hyphen_values = true, required_unless_present = "stdin")]
    curve: Option<String>,
    /// Read one curve per line from standard input
    #[arg(long, conflicts_with = "curve")]
    stdin: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Isogeny class of a curve
    Classify {
        #[command(flatten)]
        input: CurveArg,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        /// Only the isogeny graph, in DOT
        #[arg(long)]
        dot: bool,
        /// Replace every member by its global minimal model
        #[arg(long)]
        minimal: bool,
    },
    /// C_{n,i}(t,d) for a genus-zero level n
    Family {
        n: u32,
        i: usize,
        #[arg(allow_hyphen_values = true)]
        t: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// C_{n,i}(d) for a sporadic level n
    Sporadic {
        n: u32,
        i: usize,
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// j_{n,i}(t)
    Fricke {
        n: u32,
        i: usize,
        #[arg(allow_hyphen_values = true)]
        t: String,
    },
    /// Isogeny graph and matrix of level n
    Graph {
        n: u32,
        #[arg(long)]
        dot: bool,
    },
    /// Quadratic twist semistable outside n for n in {4, 6, 9}
    SemistableTwist {
        #[command(flatten)]
        input: CurveArg,
    },
    /// Run the verification checks
    Verify {
        #[arg(long, value_parser = PossibleValuesParser::new(CHECKS.map(|c| c.0)))]
        check: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also write one JSON report per line to this file
        #[arg(long)]
        jsonl: Option<PathBuf>,
        /// Include elapsed times (output is then no longer reproducible)
        #[arg(long)]
        timings: bool,
    },
    /// Rational n-isogenies from E through the level-n families
    Isogenies {
        #[arg(allow_hyphen_values = true)]
        curve: String,
        n: u32,
    },
}

type Outcome = Result<String, Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let atlas = match Atlas::from_env() {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match run(&atlas, cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn curve(text: &str) -> Result<WeierstrassModel, Error> {
    parse_curve(text)
}

fn run(atlas: &Atlas, cmd: Cmd) -> Result<ExitCode, Error> {
    match cmd {
        Cmd::Classify { input, json, dot, minimal } => {
            let f = move |text: &str| classify(atlas, text, json, dot, minimal);
            per_curve(input, json, f)
        }
        Cmd::SemistableTwist { input } => per_curve(input, false, |text| semistable(atlas, text)),
        Cmd::Family { n, i, t, d } => {
            let e = atlas.family_curve(n, i, &parse_rational(&t)?, &parse_rational(&d)?)?;
            println!("{e}");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sporadic { n, i, d } => {
            let e = atlas.sporadic_curve(n, i, &parse_rational(&d)?)?;
            println!("{e}");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Fricke { n, i, t } => {
            println!("{}", atlas.fricke_eval(n, i, &parse_rational(&t)?)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Graph { n, dot } => {
            let g = atlas.graph_data(n)?;
            if dot {
                print!("{}", g.to_dot());
            } else {
                print!("{}", graph_text(n, &g.edges, &g.matrix));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { check, samples, seed, jsonl, timings } => {
            let reports = match check {
                Some(name) => vec![verify::run_check(atlas, &name, samples, seed)?],
                None => verify::run_all(atlas, samples, seed),
            };
            print!("{}", verify::render_table(&reports, timings));
            if let Some(path) = jsonl {
                std::fs::write(&path, verify::render_jsonl(&reports, timings))
                    .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
            }
            Ok(if verify::any_failed(&reports) { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Cmd::Isogenies { curve: text, n } => {
            let e = curve(&text)?;
            let mut out = String::new();
            for hit in atlas.isogenies_genus_0(&e, n)? {
                let _ = writeln!(out, "t: {}", hit.t);
                let _ = writeln!(out, "d: {}", hit.d);
                for (i, m) in &hit.members {
                    let _ = writeln!(out, "  C_{{{n},{i}}}: {m}");
                }
            }
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Runs `f` on the single curve argument, or on every line of standard input in parallel.
fn per_curve<F>(input: CurveArg, json_lines: bool, f: F) -> Result<ExitCode, Error>
where
    F: Fn(&str) -> Outcome + Sync,
{
    if let Some(text) = input.curve {
        print!("{}", f(&text)?);
        return Ok(ExitCode::SUCCESS);
    }
    let lines: Vec<String> = std::io::stdin()
        .lock()
        .lines()
        .map_while(|l| l.ok())
        .map(|l| l.trim().to_string())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let results = parallel_map(&lines, &f);
    let mut failed = false;
    let mut stdout = std::io::stdout().lock();
    for (line, res) in lines.iter().zip(results) {
        let block = match (res, json_lines) {
            (Ok(s), true) => s,
            (Ok(s), false) => format!("# {line}\n{s}"),
            (Err(e), true) => {
                failed = true;
                format!("{}\n", json!({"input": line, "error": e.to_string()}))
            }
            (Err(e), false) => {
                failed = true;
                format!("# {line}\nerror: {e}\n")
            }
        };
        let _ = stdout.write_all(block.as_bytes());
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn parallel_map<F>(lines: &[String], f: &F) -> Vec<Outcome>
where
    F: Fn(&str) -> Outcome + Sync,
{
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(lines.len().max(1));
    let chunk = lines.len().div_ceil(workers).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = lines
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|l| f(l)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn classify(atlas: &Atlas, text: &str, json: bool, dot: bool, minimal: bool) -> Outcome {
    let e = curve(text)?;
    let mut class = atlas.isogeny_class(&e)?;
    if minimal {
        class = class.minimal()?;
    }
    Ok(if dot {
        class.to_dot()
    } else if json {
        let mut v = class.to_json();
        v["input_position"] = json!(class.input_position);
        format!("{v}\n")
    } else {
        class_text(&class)
    })
}

fn class_text(c: &IsogenyClass) -> String {
    let mut s = String::new();
    let show = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    let _ = writeln!(s, "n: {}", c.n);
    let _ = writeln!(s, "branch: {}", c.branch.as_str());
    let _ = writeln!(s, "t: {}", show(c.t.as_ref().map(Rational::to_string)));
    let _ = writeln!(s, "d: {}", show(c.d.as_ref().map(|d| d.to_string())));
    let _ = writeln!(s, "twist exponent: {}", c.twist_exponent);
    let _ = writeln!(s, "members:");
    for (k, (i, m)) in c.members.iter().enumerate() {
        let mark = if k == c.input_position { "  (input)" } else { "" };
        let _ = writeln!(s, "  C_{{{},{i}}}: {m}{mark}", c.n);
    }
    s.push_str(&graph_text(c.n, &c.edges, &c.matrix));
    s
}

fn graph_text(n: u32, edges: &[(usize, usize, u32)], matrix: &[Vec<u32>]) -> String {
    let mut s = String::from("edges:\n");
    for (a, b, l) in edges {
        let _ = writeln!(s, "  C_{{{n},{a}}} -- C_{{{n},{b}}}: {l}");
    }
    s.push_str("matrix:\n");
    for row in matrix {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "  {}", cells.join(" "));
    }
    s
}

fn semistable(atlas: &Atlas, text: &str) -> Outcome {
    let e = curve(text)?;
    let (d, twisted) = atlas.semistable_twist(&e)?;
    Ok(format!("d: {d}\nmodel: {twisted}\n"))
}
