//! Command-line front end: validate algebras, count and compute invariants,
//! verify candidate expressions, symmetrize into the enveloping algebra, and
//! emit the family algebras as JSON.
//!
//! Exit codes: 0 on success, 1 for validation or parse failures, 2 for
//! computation failures (stuck normalization, inconclusive rank checks,
//! unsupported generators). Failures carry a machine-readable error object on
//! stderr.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use casinv::algebra::{AlgebraFile, LieAlgebra, TriangularSpec};
use casinv::closedform::closed_form_basis;
use casinv::error::Error;
use casinv::grammar::{parse_invariant, print_invariant};
use casinv::invariant::InvariantExpression;
use casinv::normalize::invariants_by_normalization;
use casinv::scalar::{rat_from_str, rat_to_string};
use casinv::uea::{print_sym_outcome, symmetrize_invariant};
use casinv::vars::PrintSpace;
use casinv::verify::{generic_invariant_count, verification_report, DEFAULT_SEED};

#[derive(Parser)]
#[command(
    name = "casinv",
    version,
    about = "Exact invariants of solvable triangular Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    #[value(name = "closed-form")]
    ClosedForm,
    Normalize,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Jacobi identity and report violations
    Validate {
        /// Algebra JSON file; stdin when omitted or "-"
        algebra: Option<PathBuf>,
    },
    /// Print the number of functionally independent invariants
    Count {
        algebra: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Print a basis of invariants, one expression per line
    Invariants {
        algebra: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        /// Log each normalization step to stderr
        #[arg(long)]
        explain: bool,
        /// Structured output instead of plain expressions
        #[arg(long)]
        json: bool,
    },
    /// Check expressions (one per line) for invariance
    Verify {
        algebra: Option<PathBuf>,
        /// Expression file; stdin when omitted or "-"
        exprs: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Map an invariant into the enveloping algebra
    Symmetrize {
        /// Algebra JSON file; "-" reads stdin
        algebra: PathBuf,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Emit a family algebra as JSON
    Family {
        /// One of t0, t, st, t_gamma, g48
        family: String,
        #[arg(long)]
        n: Option<usize>,
        /// Rows of gamma: entries comma-separated, rows semicolon-separated
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        /// Parameter of g48 as p or p/q
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Error> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| Error::ParseError(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::ParseError(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn load_algebra(path: &Option<PathBuf>) -> Result<LieAlgebra, Error> {
    let text = read_input(path)?;
    AlgebraFile::from_json(&text)?.build()
}

fn emit_error(err: &Error) -> ExitCode {
    let obj = serde_json::json!({
        "error": { "kind": err.kind(), "message": err.to_string() }
    });
    eprintln!("{obj}");
    if err.is_computation_failure() {
        ExitCode::from(2)
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Validate { algebra } => {
            let alg = load_algebra(&algebra)?;
            let violations = alg.validate();
            if violations.is_empty() {
                println!("ok: {} basis elements, Jacobi identity holds", alg.dim());
                Ok(ExitCode::SUCCESS)
            } else {
                for v in &violations {
                    let residual: Vec<String> = v
                        .residual
                        .iter()
                        .map(|(k, c)| format!("{}*{}", rat_to_string(c), alg.basis_label(*k)))
                        .collect();
                    println!(
                        "jacobi violation at ({},{},{}): residual {}",
                        v.i,
                        v.j,
                        v.k,
                        residual.join(" + ")
                    );
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Count { algebra, seed } => {
            let alg = load_algebra(&algebra)?;
            let n = generic_invariant_count(&alg, seed)?;
            println!("{n}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Invariants {
            algebra,
            method,
            explain,
            json,
        } => {
            let alg = load_algebra(&algebra)?;
            let method = match method {
                Method::Auto => {
                    if alg.family().is_some() {
                        Method::ClosedForm
                    } else {
                        Method::Normalize
                    }
                }
                m => m,
            };
            let table = alg.base_table();
            let (exprs, space, method_name) = match method {
                Method::ClosedForm => {
                    let basis = closed_form_basis(&alg)?;
                    (basis, PrintSpace::Algebra, "closed-form")
                }
                Method::Normalize => {
                    let result = invariants_by_normalization(&alg)?;
                    if explain {
                        for step in &result.trace {
                            eprintln!("{}", step.detail);
                        }
                    }
                    let exprs = result
                        .basis
                        .into_iter()
                        .map(InvariantExpression::Rational)
                        .collect();
                    (exprs, PrintSpace::Dual, "normalize")
                }
                Method::Auto => unreachable!(),
            };
            let printed: Vec<String> = exprs
                .iter()
                .map(|e| print_invariant(e, &table, space))
                .collect();
            if json {
                let obj = serde_json::json!({
                    "method": method_name,
                    "count": printed.len(),
                    "space": match space { PrintSpace::Algebra => "algebra", PrintSpace::Dual => "dual" },
                    "invariants": printed,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&obj).expect("serializable")
                );
            } else {
                for line in &printed {
                    println!("{line}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            algebra,
            exprs,
            json,
        } => {
            let alg = load_algebra(&algebra)?;
            let table = alg.base_table();
            let text = read_input(&exprs)?;
            // accept either a plain expression list or the --json output of
            // the invariants command
            let mut lines: Vec<String> = Vec::new();
            if let Ok(v) = serde_json::from_str::<serde_json::Value>(&text) {
                if let Some(arr) = v.get("invariants").and_then(|x| x.as_array()) {
                    for item in arr {
                        if let Some(s) = item.as_str() {
                            lines.push(s.to_string());
                        }
                    }
                }
            }
            if lines.is_empty() {
                lines = text
                    .lines()
                    .map(|l| l.trim())
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(|l| l.to_string())
                    .collect();
            }
            let mut items = Vec::with_capacity(lines.len());
            for line in &lines {
                let expr = parse_invariant(line, &table)?;
                items.push((line.clone(), expr));
            }
            let report = verification_report(&alg, &items)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                );
            } else {
                for r in &report {
                    println!("{}\t{}", r.invariant, r.expression);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Symmetrize { algebra, expr } => {
            let alg = load_algebra(&Some(algebra))?;
            let table = alg.base_table();
            let parsed = parse_invariant(&expr, &table)?;
            let outcome = symmetrize_invariant(&parsed, &alg)?;
            println!("{}", print_sym_outcome(&outcome, &alg));
            Ok(ExitCode::SUCCESS)
        }
        Command::Family {
            family,
            n,
            gamma,
            b,
            output,
        } => {
            let alg = build_family(&family, n, gamma.as_deref(), b.as_deref())?;
            let text = alg.to_file().to_json();
            match output {
                Some(path) => std::fs::write(&path, text + "\n").map_err(|e| {
                    Error::ParseError(format!("cannot write {}: {e}", path.display()))
                })?,
                None => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn build_family(
    family: &str,
    n: Option<usize>,
    gamma: Option<&str>,
    b: Option<&str>,
) -> Result<LieAlgebra, Error> {
    let need_n = || n.ok_or_else(|| Error::SpecError(format!("family {family} needs --n")));
    match family {
        "t0" => casinv::algebra::build_t0(need_n()?),
        "t" => casinv::algebra::build_t(need_n()?),
        "st" => casinv::algebra::build_st(need_n()?),
        "t_gamma" => {
            let n = need_n()?;
            let text = gamma.ok_or_else(|| Error::SpecError("t_gamma needs --gamma".into()))?;
            let rows = text
                .split(';')
                .map(|row| {
                    row.split(',')
                        .map(|cell| {
                            rat_from_str(cell).ok_or_else(|| {
                                Error::ParseError(format!("bad gamma entry {cell:?}"))
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(casinv::algebra::build_t_gamma(&TriangularSpec::new(
                n, rows,
            )?))
        }
        "g48" => {
            let b = b.ok_or_else(|| Error::SpecError("g48 needs --b".into()))?;
            let b =
                rat_from_str(b).ok_or_else(|| Error::ParseError(format!("bad rational {b:?}")))?;
            Ok(casinv::algebra::build_g48(b))
        }
        other => Err(Error::SpecError(format!("unknown family {other:?}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => emit_error(&err),
    }
}
