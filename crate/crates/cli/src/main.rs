//! Command line front end: ordinal arithmetic, series summation, partial
//! sums along fundamental sequences, and rearrangement verification.
//!
//! Exit codes: 0 success or verified pass, 1 verification failed, 2 bad
//! input or invalid budget, 3 unresolved sum or inconclusive verdict.

use clap::{Args, Parser, Subcommand};
use ordsum::{
    abs_converges, canonical_enumeration, make_family, parse, parse_bijection_spec,
    parse_family_spec, partials_along, perturb, rearrange_from_omega, render, sum_series,
    verify_invariance, EngineError, EvalBudget, Hypersequence, Ordinal, SpaceElement, SpaceTag,
    SumOutcome, Verdict, VERIFY_CSV_HEADER,
};
use std::cmp::Ordering;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNRESOLVED: u8 = 3;

/// Window used for seeded batch perturbations.
const BATCH_WINDOW: u64 = 64;

#[derive(Parser)]
#[command(
    name = "ordsum",
    version,
    about = "Sums of series indexed by countable ordinals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ordinal expression arithmetic
    Ord {
        #[command(subcommand)]
        op: OrdOp,
    },
    /// Sum a series, optionally rearranged over a larger ordinal
    Sum {
        #[command(flatten)]
        common: Common,
        /// Report the sum of term norms instead of the sum
        #[arg(long)]
        norms: bool,
    },
    /// Partial sums along the fundamental sequence of a limit
    Partials {
        #[command(flatten)]
        common: Common,
        /// Limit ordinal to approach (defaults to the series ordinal)
        #[arg(long)]
        limit: Option<String>,
        /// Number of stages to report
        #[arg(long, default_value_t = 8)]
        count: u64,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check that rearranging the series does not move its sum
    Verify {
        #[command(flatten)]
        common: Common,
        /// Verify this many seeded perturbations and emit CSV rows
        #[arg(long)]
        batch: Option<u64>,
        /// First seed for batch perturbations
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OrdOp {
    /// Parse an expression and print its normal form
    Eval { expr: String },
    /// Compare two ordinals, printing <, =, or >
    Cmp { left: String, right: String },
    /// Ordinal addition (order-sensitive)
    Add { left: String, right: String },
    /// Ordinal multiplication (order-sensitive)
    Mul { left: String, right: String },
}

#[derive(Args)]
struct Common {
    /// Series: family:<name> or family:<name>(<params>), or custom:harmonic,
    /// custom:basel
    series: String,
    /// Ordinal indexing the series
    #[arg(long, default_value = "w")]
    ordinal: String,
    /// Enumeration: canonical, or perturb:<seed>:<window>
    #[arg(long, default_value = "canonical")]
    bijection: String,
    /// Error tolerance for certified summation
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Samples allowed per limit stage
    #[arg(long, default_value_t = 1_000_000)]
    limit_cap: u64,
    /// Total term evaluations allowed
    #[arg(long, default_value_t = 10_000_000)]
    term_cap: u64,
    /// Permit heuristic limit detection when no certificate exists
    #[arg(long)]
    uncertified: bool,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(e: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: format!("error: {}", e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ord { op } => cmd_ord(op),
        Command::Sum { common, norms } => cmd_sum(common, norms),
        Command::Partials {
            common,
            limit,
            count,
            csv,
        } => cmd_partials(common, limit, count, csv),
        Command::Verify {
            common,
            batch,
            seed,
            csv,
        } => cmd_verify(common, batch, seed, csv),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("{}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn parse_ordinal(expr: &str) -> Result<Ordinal, Failure> {
    parse(expr).map_err(|e| {
        let caret = " ".repeat(e.position);
        Failure {
            code: EXIT_USAGE,
            message: format!("error: {e}\n  {expr}\n  {caret}^"),
        }
    })
}

fn build_series(spec: &str) -> Result<Hypersequence, Failure> {
    if let Some(name) = spec.strip_prefix("custom:") {
        return match name {
            "harmonic" => Ok(Hypersequence::new(
                Ordinal::omega(),
                SpaceTag::Scalar,
                |i: &Ordinal| SpaceElement::Scalar(1.0 / (i.to_u64().expect("below w") as f64 + 1.0)),
            )),
            "basel" => Ok(Hypersequence::new(
                Ordinal::omega(),
                SpaceTag::Scalar,
                |i: &Ordinal| {
                    let n = i.to_u64().expect("below w") as f64 + 1.0;
                    SpaceElement::Scalar(1.0 / (n * n))
                },
            )),
            other => Err(usage(format!(
                "unknown custom series {other:?}; available: harmonic, basel"
            ))),
        };
    }
    let fam = parse_family_spec(spec).map_err(usage)?;
    make_family(fam).map_err(usage)
}

fn build_budget(c: &Common) -> Result<EvalBudget, Failure> {
    Ok(EvalBudget::new(c.tol, c.limit_cap, c.term_cap)
        .map_err(usage)?
        .with_heuristic(c.uncertified))
}

/// The series positioned over the requested ordinal: untouched for the plain
/// canonical view of w, rearranged through the enumeration otherwise.
fn prepare(c: &Common) -> Result<(Hypersequence, EvalBudget), Failure> {
    let alpha = parse_ordinal(&c.ordinal)?;
    let h = build_series(&c.series)?;
    let budget = build_budget(c)?;
    if alpha == Ordinal::omega() && c.bijection == "canonical" {
        return Ok((h, budget));
    }
    let e = parse_bijection_spec(&c.bijection, &alpha).map_err(usage)?;
    let g = rearrange_from_omega(&h, &e).map_err(usage)?;
    Ok((g, budget))
}

fn cmd_ord(op: OrdOp) -> Result<(), Failure> {
    match op {
        OrdOp::Eval { expr } => {
            println!("{}", render(&parse_ordinal(&expr)?));
        }
        OrdOp::Cmp { left, right } => {
            let a = parse_ordinal(&left)?;
            let b = parse_ordinal(&right)?;
            let sign = match a.cmp(&b) {
                Ordering::Less => "<",
                Ordering::Equal => "=",
                Ordering::Greater => ">",
            };
            println!("{sign}");
        }
        OrdOp::Add { left, right } => {
            let a = parse_ordinal(&left)?;
            let b = parse_ordinal(&right)?;
            println!("{}", render(&a.add(&b)));
        }
        OrdOp::Mul { left, right } => {
            let a = parse_ordinal(&left)?;
            let b = parse_ordinal(&right)?;
            println!("{}", render(&a.mul(&b)));
        }
    }
    Ok(())
}

fn cmd_sum(c: Common, norms: bool) -> Result<(), Failure> {
    let (g, budget) = prepare(&c)?;
    let outcome = if norms {
        abs_converges(&g, &budget)
    } else {
        sum_series(&g, &budget)
    };
    match outcome {
        SumOutcome::Converged {
            sum,
            err,
            certified,
        } => {
            println!("{}", outcome_text(&sum, err, certified));
            Ok(())
        }
        SumOutcome::Unresolved { reached, reason } => Err(Failure {
            code: EXIT_UNRESOLVED,
            message: format!("unresolved at {reached}: {reason}"),
        }),
    }
}

fn cmd_partials(
    c: Common,
    limit: Option<String>,
    count: u64,
    csv: Option<PathBuf>,
) -> Result<(), Failure> {
    let (g, budget) = prepare(&c)?;
    let lambda = match &limit {
        Some(s) => parse_ordinal(s)?,
        None => g.domain().clone(),
    };
    let pts = partials_along(&g, &lambda, count, &budget).map_err(|e| match e {
        EngineError::PrefixUnresolved { at, reason } => Failure {
            code: EXIT_UNRESOLVED,
            message: format!("unresolved at {at}: {reason}"),
        },
        other => usage(other),
    })?;
    let mut out = String::from("index,value\n");
    for (idx, val) in &pts {
        out.push_str(&render(idx));
        out.push(',');
        out.push_str(&val.csv_field());
        out.push('\n');
    }
    emit(csv, out)
}

fn cmd_verify(
    c: Common,
    batch: Option<u64>,
    seed: u64,
    csv: Option<PathBuf>,
) -> Result<(), Failure> {
    let alpha = parse_ordinal(&c.ordinal)?;
    let h = build_series(&c.series)?;
    let budget = build_budget(&c)?;
    let Some(n) = batch else {
        let e = parse_bijection_spec(&c.bijection, &alpha).map_err(usage)?;
        let report = verify_invariance(&h, &e, &budget).map_err(usage)?;
        println!("{}", report.render());
        return match report.verdict {
            Verdict::Pass => Ok(()),
            Verdict::Fail => Err(Failure {
                code: EXIT_FAIL,
                message: "verification failed: the rearranged sum moved".into(),
            }),
            Verdict::Inconclusive => Err(Failure {
                code: EXIT_UNRESOLVED,
                message: "verification inconclusive: a sum did not resolve".into(),
            }),
        };
    };
    let base = canonical_enumeration(&alpha).map_err(usage)?;
    let ordinal_text = render(&alpha);
    let mut rows = String::from(VERIFY_CSV_HEADER);
    rows.push('\n');
    let (mut pass, mut fail, mut open) = (0u64, 0u64, 0u64);
    for i in 0..n {
        let s = seed + i;
        let e = perturb(&base, s, BATCH_WINDOW);
        let report = verify_invariance(&h, &e, &budget).map_err(usage)?;
        match report.verdict {
            Verdict::Pass => pass += 1,
            Verdict::Fail => fail += 1,
            Verdict::Inconclusive => open += 1,
        }
        rows.push_str(&report.csv_row(
            &c.series,
            &ordinal_text,
            &format!("perturb:{s}:{BATCH_WINDOW}"),
        ));
        rows.push('\n');
    }
    emit(csv, rows)?;
    eprintln!("batch: {pass} pass, {fail} fail, {open} inconclusive");
    if fail > 0 {
        Err(Failure {
            code: EXIT_FAIL,
            message: String::new(),
        })
    } else if open > 0 {
        Err(Failure {
            code: EXIT_UNRESOLVED,
            message: String::new(),
        })
    } else {
        Ok(())
    }
}

fn emit(path: Option<PathBuf>, content: String) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(&p, content).map_err(|e| Failure {
            code: EXIT_USAGE,
            message: format!("error: cannot write {}: {e}", p.display()),
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn outcome_text(sum: &SpaceElement, err: f64, certified: bool) -> String {
    let is_zero = match sum {
        SpaceElement::Scalar(x) => *x == 0.0,
        SpaceElement::Vector(xs) => xs.iter().all(|x| *x == 0.0),
    };
    let value = if is_zero && err == 0.0 {
        "0".to_string()
    } else {
        fixed_value(sum)
    };
    let tag = if certified { "" } else { " (heuristic)" };
    format!("{value} ± {}{tag}", format_err(err))
}

fn fixed_value(v: &SpaceElement) -> String {
    match v {
        SpaceElement::Scalar(x) => format!("{x:.9}"),
        SpaceElement::Vector(xs) => {
            let coords: Vec<String> = xs.iter().map(|x| format!("{x:.9}")).collect();
            format!("[{}]", coords.join("; "))
        }
    }
}

/// Error bounds are displayed to two significant digits, rounded up so the
/// printed figure never understates the computed bound.
fn format_err(e: f64) -> String {
    if e == 0.0 {
        return "0".to_string();
    }
    let s = format!("{e:e}");
    let (mant, exp) = s.split_once('e').expect("exponential form");
    let mut exp: i32 = exp.parse().expect("exponent");
    let digits: Vec<u32> = mant
        .chars()
        .filter(|c| c.is_ascii_digit())
        .map(|c| c.to_digit(10).expect("digit"))
        .collect();
    let mut two = digits[0] * 10 + digits.get(1).copied().unwrap_or(0);
    if digits.len() > 2 && digits[2..].iter().any(|&d| d > 0) {
        two += 1;
    }
    if two == 100 {
        two = 10;
        exp += 1;
    }
    if two % 10 == 0 {
        format!("{}e{}", two / 10, exp)
    } else {
        format!("{}.{}e{}", two / 10, two % 10, exp)
    }
}

#[cfg(test)]
mod tests {
    use super::format_err;

    #[test]
    fn error_display_rounds_up_to_two_digits() {
        assert_eq!(format_err(0.0), "0");
        assert_eq!(format_err(1e-9), "1e-9");
        assert_eq!(format_err(4.6566e-10), "4.7e-10");
        assert_eq!(format_err(9.99e-10), "1e-9");
        assert_eq!(format_err(2.0e-3), "2e-3");
        assert_eq!(format_err(0.5), "5e-1");
        assert_eq!(format_err(1.0), "1e0");
        assert_eq!(format_err(1234.0), "1.3e3");
        assert_eq!(format_err(1.01e-6), "1.1e-6");
    }
}
