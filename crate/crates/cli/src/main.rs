//! Batch command-line front end: parse JSON input documents, dispatch to the
//! library, and emit canonical machine-readable (or plain text) output.
//!
//! Exit codes: 0 on success, 1 on domain errors (the structured error object
//! names the offending condition), 2 on malformed input or bad flags.

mod doc;

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use doc::{
    big_to_json, error_name, exponent_rows_json, groups_json, malformed, parse_charseq, parse_pair,
    parse_shortform, rational_vector_json, shortform_json, CliError,
};
use quasiord::charseq::{validate, SemigroupPresentation};
use quasiord::essential::{essential_divisors, essential_matrix, singular_locus};
use quasiord::inverse::{recover, ShortFormInput};
use quasiord::series::{count_fibers, expand, poincare_forward, short_form, TruncatedSeries};
use quasiord::zeta::{equi_check, monodromy_zeta, ZetaCase};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(
    name = "quasiord",
    version,
    about = "Poincaré series of quasi-ordinary hypersurface singularities, exactly"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a characteristic-exponent document
    Validate { input: Option<PathBuf> },
    /// Full derived data: generators, characteristic integers, lattice
    Invariants { input: Option<PathBuf> },
    /// Singular locus, essential valuations, essential matrix
    Essential { input: Option<PathBuf> },
    /// Poincaré series as a cyclotomic quotient
    Poincare {
        input: Option<PathBuf>,
        /// Cancel common factors
        #[arg(long)]
        short: bool,
    },
    /// Expand a series document on a coefficient box
    Expand {
        input: Option<PathBuf>,
        /// Comma-separated per-variable bounds
        #[arg(long)]
        bound: String,
    },
    /// Count semigroup elements per multidegree on a box
    Count {
        input: Option<PathBuf>,
        /// Comma-separated per-valuation bounds
        #[arg(long)]
        bound: String,
    },
    /// Recover the normalized exponents from a short form
    Invert { input: Option<PathBuf> },
    /// Monodromy zeta function and its factorization check
    Zeta { input: Option<PathBuf> },
    /// Equisingularity comparison of two short forms
    Equi {
        first: PathBuf,
        second: Option<PathBuf>,
    },
}

fn read_source(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| malformed(format!("cannot read {}: {}", p.display(), e))),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| malformed(format!("cannot read stdin: {}", e)))?;
            Ok(buf)
        }
    }
}

fn read_json(path: &Option<PathBuf>) -> Result<Value, CliError> {
    let text = read_source(path)?;
    serde_json::from_str(&text).map_err(|e| malformed(format!("invalid JSON: {}", e)))
}

fn read_presentation(path: &Option<PathBuf>) -> Result<SemigroupPresentation, CliError> {
    let cs = parse_charseq(&read_json(path)?)?;
    Ok(validate(&cs)?)
}

fn parse_bound(spec: &str) -> Result<Vec<usize>, CliError> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| malformed(format!("bad bound entry \"{}\"", s)))
        })
        .collect()
}

fn series_json(s: &TruncatedSeries) -> Value {
    json!({
        "vars": s.vars,
        "bound": s.bound,
        "coefficients": s
            .nonzero()
            .iter()
            .map(|(idx, c)| json!([idx, big_to_json(c)]))
            .collect::<Vec<_>>(),
    })
}

fn series_text(s: &TruncatedSeries) -> String {
    let mut out = String::new();
    for (idx, c) in s.nonzero() {
        out.push_str(&format!("{:?}: {}\n", idx, c));
    }
    out
}

fn run(cli: &Cli) -> Result<(Value, String), CliError> {
    match &cli.command {
        Command::Validate { input } => {
            let sp = read_presentation(input)?;
            let value = json!({
                "ok": true,
                "d": sp.dim(),
                "g": sp.g(),
                "normalized": sp.normalized,
            });
            let text = format!(
                "valid characteristic sequence: d = {}, g = {}, normalized = {}\n",
                sp.dim(),
                sp.g(),
                sp.normalized
            );
            Ok((value, text))
        }
        Command::Invariants { input } => {
            let sp = read_presentation(input)?;
            let value = json!({
                "d": sp.dim(),
                "g": sp.g(),
                "lambdas": sp.char_seq.lambdas.iter().map(rational_vector_json).collect::<Vec<_>>(),
                "gammas": sp.gammas.iter().map(rational_vector_json).collect::<Vec<_>>(),
                "n": sp.ns.iter().map(big_to_json).collect::<Vec<_>>(),
                "c": sp.c,
                "degree": big_to_json(&sp.degree),
                "m": sp.m.iter().map(big_to_json).collect::<Vec<_>>(),
                "normalized": sp.normalized,
                "lattice_basis": exponent_rows_json(&sp.lattice_n.basis_matrix().row_vecs()),
            });
            let mut text = format!("d = {}, g = {}, c = {}\n", sp.dim(), sp.g(), sp.c);
            for (gamma, n) in sp.gammas.iter().zip(&sp.ns) {
                text.push_str(&format!("gamma = {}   n = {}\n", gamma, n));
            }
            text.push_str(&format!(
                "degree = {}, m = {:?}, normalized = {}\n",
                sp.degree, sp.m, sp.normalized
            ));
            Ok((value, text))
        }
        Command::Essential { input } => {
            let sp = read_presentation(input)?;
            let sl = singular_locus(&sp);
            let ed = essential_divisors(&sp);
            let em = essential_matrix(&ed, &sp)?;
            let value = json!({
                "d": sp.dim(),
                "singular_locus": {
                    "codim1": sl.codim1,
                    "codim2": sl.codim2.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
                },
                "ws": exponent_rows_json(&ed.ws),
                "groups": groups_json(&ed.groups),
                "two_group_mode": ed.two_group_mode,
                "matrix": exponent_rows_json(&em.matrix.row_vecs()),
                "structure": {
                    "checks": em.report.checks.iter()
                        .map(|(name, ok)| json!([name, ok])).collect::<Vec<_>>(),
                    "ok": em.report.all_ok(),
                },
            });
            let mut text = format!(
                "codimension-one components: {:?}\ncodimension-two components: {:?}\n",
                sl.codim1, sl.codim2
            );
            for w in &ed.ws {
                text.push_str(&format!("w = {:?}\n", w));
            }
            text.push_str(&format!(
                "groups: s1 = {}, s2 = {}, s0 = {}\nstructure checks ok: {}\n",
                ed.groups.s1,
                ed.groups.s2,
                ed.groups.s0,
                em.report.all_ok()
            ));
            Ok((value, text))
        }
        Command::Poincare { input, short } => {
            let sp = read_presentation(input)?;
            let ed = essential_divisors(&sp);
            let mut cr = poincare_forward(&sp, &ed)?;
            if *short {
                cr = short_form(&cr);
            }
            Ok((shortform_json(&cr), format!("{}\n", cr)))
        }
        Command::Expand { input, bound } => {
            let cr = parse_shortform(&read_json(input)?)?;
            let bound = parse_bound(bound)?;
            let series = expand(&cr, &bound)?;
            Ok((series_json(&series), series_text(&series)))
        }
        Command::Count { input, bound } => {
            let sp = read_presentation(input)?;
            let ed = essential_divisors(&sp);
            let bound = parse_bound(bound)?;
            let series = count_fibers(&sp, &ed, &bound)?;
            Ok((series_json(&series), series_text(&series)))
        }
        Command::Invert { input } => {
            let cr = parse_shortform(&read_json(input)?)?;
            let report = recover(&ShortFormInput::new(cr)?)?;
            let value = json!({
                "d": report.d,
                "g": report.g,
                "c": report.c,
                "n": report.ns.iter().map(big_to_json).collect::<Vec<_>>(),
                "lambdas": report.lambdas.iter().map(rational_vector_json).collect::<Vec<_>>(),
                "gammas": report.gammas.iter().map(rational_vector_json).collect::<Vec<_>>(),
                "branch": report.branch.as_str(),
                "solve_log": report.solve_log.iter().map(|r| json!({
                    "columns": exponent_rows_json(&r.columns),
                    "rhs": r.rhs.iter().map(big_to_json).collect::<Vec<_>>(),
                    "solution": r.solution.iter()
                        .map(|x| json!(quasiord::rat::rational_to_string(x)))
                        .collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            let mut text = format!(
                "d = {}, g = {}, c = {}, n = {:?}, branch = {}\n",
                report.d,
                report.g,
                report.c,
                report.ns.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
                report.branch.as_str()
            );
            for l in &report.lambdas {
                text.push_str(&format!("lambda = {}\n", l));
            }
            Ok((value, text))
        }
        Command::Zeta { input } => {
            let sp = read_presentation(input)?;
            let ed = essential_divisors(&sp);
            let report = monodromy_zeta(&sp, &ed)?;
            let value = json!({
                "case": match report.case { ZetaCase::A => "A", ZetaCase::B => "B" },
                "b": report.b.iter().map(big_to_json).collect::<Vec<_>>(),
                "n": big_to_json(&report.n),
                "i0": report.i0,
                "h_semigroup": report.h_semigroup.iter().map(big_to_json).collect::<Vec<_>>(),
                "zeta": {
                    "numerator": exponent_rows_json(&report.zeta.numerator),
                    "denominator": exponent_rows_json(&report.zeta.denominator),
                },
                "identity_verified": report.identity_verified,
            });
            let text = format!(
                "case {:?}: zeta = {}\nb = {:?}, n = {}, identity verified: {}\n",
                report.case, report.zeta, report.b, report.n, report.identity_verified
            );
            Ok((value, text))
        }
        Command::Equi { first, second } => {
            let (a, b) = match second {
                Some(second) => {
                    let a = parse_shortform(&read_json(&Some(first.clone()))?)?;
                    let b = parse_shortform(&read_json(&Some(second.clone()))?)?;
                    (a, b)
                }
                None => parse_pair(&read_json(&Some(first.clone()))?)?,
            };
            let result = equi_check(&ShortFormInput::new(a)?, &ShortFormInput::new(b)?)?;
            let value = match result {
                Some(k) => json!({ "equisingular": true, "k": k }),
                None => json!({ "equisingular": false }),
            };
            let text = match result {
                Some(k) => format!("equisingular deformation: {} padded coordinate(s)\n", k),
                None => "not related by an equisingular padding\n".to_string(),
            };
            Ok((value, text))
        }
    }
}

fn main() {
    // QOI_THREADS caps worker threads; computation is sequential, so any cap
    // is respected and output bytes never depend on it
    if let Ok(raw) = std::env::var("QOI_THREADS") {
        if raw.parse::<usize>().map(|n| n == 0).unwrap_or(true) {
            eprintln!("warning: ignoring invalid QOI_THREADS value {:?}", raw);
        }
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, text)) => match cli.format {
            Format::Json => println!("{}", value),
            Format::Text => print!("{}", text),
        },
        Err(CliError::Domain(e)) => {
            println!(
                "{}",
                json!({ "error": error_name(&e), "detail": e.to_string() })
            );
            std::process::exit(1);
        }
        Err(CliError::Malformed(msg)) => {
            println!("{}", json!({ "error": "MalformedInput", "detail": msg }));
            std::process::exit(2);
        }
    }
}
