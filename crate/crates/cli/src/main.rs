//! galnil: Galois-group property tests from the command line.
//!
//! Exit codes: 0 success, 1 disagreement with the oracle or the corpus,
//! 2 bad input, 3 undecided because a budget ran out.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use galnil::corpus::{check_entry, load_corpus, CorpusEntry, EntryOutcome, Expect};
use galnil::exact::{parse_poly, QPoly};
use galnil::props::{property_by_name, Config, Engine, PropertyValue, Route};
use galnil::report::{GaloisReport, OracleSummary};
use galnil::Error;

#[derive(Parser, Debug)]
#[command(
    name = "galnil",
    version,
    about = "Nilpotence, solvability and Γ_d tests for Galois groups"
)]
struct Args {
    /// Polynomial, either constant-term-first coefficients ("-2 0 0 1") or
    /// an expression ("x^3-2"). May be repeated.
    #[arg(long, allow_hyphen_values = true)]
    poly: Vec<String>,
    /// File with one polynomial per line; `#` starts a comment line.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Run a JSON-lines corpus and compare against its expectations.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long)]
    nilpotent: bool,
    #[arg(long)]
    solvable: bool,
    /// Test membership in Γ_d (1 <= d <= 7). May be repeated.
    #[arg(long = "gamma-d")]
    gamma_d: Vec<usize>,
    #[arg(long)]
    primes: bool,
    /// Evaluate registered properties by name (nilpotent, solvable,
    /// gamma-<d>, primes) along the chosen route.
    #[arg(long)]
    property: Vec<String>,
    #[arg(long, value_enum, default_value_t = RouteArg::Tower)]
    route: RouteArg,
    /// Also compute the group with the splitting-field oracle and compare.
    #[arg(long)]
    oracle: bool,
    /// Print the oracle's verdicts as a corpus line instead of a report.
    #[arg(long)]
    expect_from_oracle: bool,
    /// C in the budget C·n^d.
    #[arg(long, default_value_t = 4)]
    budget_constant: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, conflicts_with = "human")]
    json: bool,
    #[arg(long)]
    human: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RouteArg {
    Tower,
    Oracle,
}

fn main() -> ExitCode {
    let args = Args::parse();
    ExitCode::from(run(&args))
}

fn run(args: &Args) -> u8 {
    let engine = Engine::new(Config {
        budget_constant: args.budget_constant,
        ..Config::default()
    });
    if let Some(path) = &args.corpus {
        return run_corpus(args, &engine, path);
    }
    let inputs = match collect_inputs(args) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("galnil: {e}");
            return 2;
        }
    };
    if inputs.is_empty() {
        eprintln!("galnil: no polynomial given (use --poly, --file or --corpus)");
        return 2;
    }
    let mut code = 0u8;
    for (text, f) in &inputs {
        let c = if args.expect_from_oracle {
            expect_line(&engine, text, f)
        } else if !args.property.is_empty() {
            run_properties(args, &engine, text, f)
        } else {
            run_report(args, &engine, text, f)
        };
        code = merge(code, c);
    }
    code
}

/// 2 beats 1 beats 3 beats 0.
fn merge(a: u8, b: u8) -> u8 {
    let rank = |c: u8| match c {
        2 => 3,
        1 => 2,
        3 => 1,
        _ => 0,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        _ => 2,
    }
}

fn collect_inputs(args: &Args) -> galnil::Result<Vec<(String, QPoly)>> {
    let mut texts: Vec<String> = args.poly.clone();
    if let Some(path) = &args.file {
        let body = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        texts.extend(
            body.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(String::from),
        );
    }
    texts
        .into_iter()
        .map(|t| {
            let f = parse_poly(&t)?;
            if f.is_constant() {
                return Err(Error::ConstantPolynomial);
            }
            Ok((t, f))
        })
        .collect()
}

fn run_report(args: &Args, engine: &Engine, text: &str, f: &QPoly) -> u8 {
    let any = args.nilpotent || args.solvable || args.primes || !args.gamma_d.is_empty();
    let (nilpotent, primes) = if any {
        (args.nilpotent, args.primes)
    } else {
        (true, true)
    };
    let mut gammas = args.gamma_d.clone();
    if args.solvable || !any {
        gammas.push(4);
    }
    if !any {
        gammas.push(5);
    }
    gammas.sort_unstable();
    gammas.dedup();
    let start = Instant::now();
    let verdict = engine.verdict(f, nilpotent, &gammas, primes);
    let tower_ms = start.elapsed().as_millis() as u64;
    let mut code = 0;
    let mut report = match verdict {
        Ok(v) => GaloisReport::new(text, f, v),
        Err(e) => {
            code = error_code(&e);
            if code == 2 {
                eprintln!("galnil: {e}");
                return 2;
            }
            let mut r = GaloisReport::new(text, f, Default::default());
            r.undecided = Some(e.to_string());
            r
        }
    };
    report.timings.insert("tower".into(), tower_ms);
    if args.oracle {
        let start = Instant::now();
        match engine.oracle_group(f) {
            Ok(g) => {
                if let Err(e) = report.attach_oracle(&g) {
                    eprintln!("galnil: oracle: {e}");
                    return 2;
                }
                if report.undecided.is_none() && report.oracle_agrees == Some(false) {
                    code = 1;
                }
            }
            Err(e) => {
                eprintln!("galnil: oracle: {e}");
                code = merge(code, 3);
            }
        }
        report
            .timings
            .insert("oracle".into(), start.elapsed().as_millis() as u64);
    }
    if args.human {
        print_human(&report);
    } else {
        println!("{}", report.to_json());
    }
    code
}

fn print_human(r: &GaloisReport) {
    println!("f = {}", r.input.pretty);
    if let Some(u) = &r.undecided {
        println!("  undecided: {u}");
    }
    let v = &r.verdicts;
    if let Some(b) = v.nilpotent {
        println!("  nilpotent: {b}");
    }
    if let Some(b) = v.solvable {
        println!("  solvable: {b}");
    }
    for (d, b) in &v.gamma_d {
        println!("  in Γ_{d}: {b}");
    }
    if let Some(ps) = &v.primes {
        println!("  primes dividing #Gal: {ps:?}");
    }
    for t in &r.towers {
        let status = match &t.failure {
            None => "accepted".to_string(),
            Some(why) => format!("rejected: {why}"),
        };
        println!(
            "  tower p = {}: block sizes {:?}, {status}",
            t.prime, t.block_sizes
        );
    }
    if let Some(o) = &r.oracle {
        println!(
            "  oracle: order {}, nilpotent {}, solvable {}, agrees {}",
            o.order,
            o.nilpotent,
            o.solvable,
            r.oracle_agrees.unwrap_or(false)
        );
    }
}

#[derive(Serialize)]
struct PropertyReport {
    poly: String,
    route: Route,
    values: Vec<(String, PropertyValue)>,
}

fn run_properties(args: &Args, engine: &Engine, text: &str, f: &QPoly) -> u8 {
    let route = match args.route {
        RouteArg::Tower => Route::Tower,
        RouteArg::Oracle => Route::Oracle,
    };
    let mut values = Vec::new();
    for name in &args.property {
        let p = match property_by_name(name) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("galnil: {e}");
                return 2;
            }
        };
        match p.evaluate(engine, f, route) {
            Ok(v) => values.push((p.name(), v)),
            Err(e) => {
                eprintln!("galnil: {}: {e}", p.name());
                return error_code(&e);
            }
        }
    }
    if args.human {
        for (k, v) in &values {
            println!("{k}: {v}");
        }
    } else {
        let r = PropertyReport {
            poly: text.to_string(),
            route,
            values,
        };
        println!("{}", serde_json::to_string(&r).expect("serializes"));
    }
    0
}

fn expect_line(engine: &Engine, text: &str, f: &QPoly) -> u8 {
    let g = match engine.oracle_group(f) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("galnil: oracle: {e}");
            return error_code(&e);
        }
    };
    let o = match OracleSummary::of(&g) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("galnil: {e}");
            return 2;
        }
    };
    let entry = CorpusEntry {
        name: None,
        poly: text.to_string(),
        expect: Expect {
            nilpotent: o.nilpotent,
            solvable: o.solvable,
            gamma5: o.gamma5,
            primes: o.primes,
        },
    };
    println!("{}", serde_json::to_string(&entry).expect("serializes"));
    0
}

#[derive(Serialize)]
struct CorpusSummary {
    entries: usize,
    agree: usize,
    disagree: usize,
    outcomes: Vec<EntryOutcome>,
}

fn run_corpus(args: &Args, engine: &Engine, path: &Path) -> u8 {
    let entries = match load_corpus(path) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("galnil: {e}");
            return 2;
        }
    };
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<EntryOutcome>>> = Mutex::new(vec![None; entries.len()]);
    std::thread::scope(|s| {
        for _ in 0..args.jobs.max(1) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= entries.len() {
                    break;
                }
                let out = check_entry(engine, &entries[i]);
                results.lock().unwrap()[i] = Some(out);
            });
        }
    });
    let outcomes: Vec<EntryOutcome> = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|o| o.unwrap())
        .collect();
    let agree = outcomes.iter().filter(|o| o.agree).count();
    let summary = CorpusSummary {
        entries: outcomes.len(),
        agree,
        disagree: outcomes.len() - agree,
        outcomes,
    };
    if args.human {
        for (e, o) in entries.iter().zip(&summary.outcomes) {
            let label = e.name.clone().unwrap_or_else(|| e.poly.clone());
            let status = if o.agree { "ok" } else { "FAIL" };
            let detail = o.error.clone().unwrap_or_default();
            println!("{status:4}  {label}  {detail}");
        }
        println!(
            "{} entries, {} agree, {} disagree",
            summary.entries, summary.agree, summary.disagree
        );
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(&summary).expect("serializes")
        );
    }
    if summary.disagree > 0 {
        1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_precedence() {
        assert_eq!(merge(0, 3), 3);
        assert_eq!(merge(3, 1), 1);
        assert_eq!(merge(1, 3), 1);
        assert_eq!(merge(1, 2), 2);
        assert_eq!(merge(2, 0), 2);
        assert_eq!([3, 0, 1, 3].into_iter().fold(0, merge), 1);
    }

    #[test]
    fn args_parse() {
        let a = Args::try_parse_from([
            "galnil",
            "--poly",
            "-2 0 0 1",
            "--gamma-d",
            "4",
            "--gamma-d",
            "5",
        ])
        .unwrap();
        assert_eq!(a.poly, vec!["-2 0 0 1"]);
        assert_eq!(a.gamma_d, vec![4, 5]);
        assert!(Args::try_parse_from(["galnil", "--json", "--human"]).is_err());
    }
}
