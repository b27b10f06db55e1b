//! Command-line front end.
//!
//! ```text
//! qdelannoy compute {delannoy|qdelannoy|qbinom|cyclotomic|sigma-poly} [--h H] [--k K] [--n N] [--route R]
//! qdelannoy verify {lucas|dlucas|qlucas|thm1|thm2|interp} [--max-n ..] [--max-h ..] [--max-k ..] [--max-a ..] [--max-c ..]
//! qdelannoy orbits audit --h H --k K --n N
//! ```
//!
//! Every subcommand accepts `--json`, `--jobs J` and `--out PATH`. Exit
//! status is 0 when everything checked passes, 1 on any failed check and
//! 2 on a usage error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::congruence::{sweep, CheckKind, SweepConfig};
use crate::cyclotomic::cyclotomic;
use crate::orbits::{audit, CornerFrame};
use crate::paths::sigma_poly;
use crate::qcore::{delannoy, q_binomial};
use crate::qdelannoy::Route;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qdelannoy",
    version,
    about = "Exact q-Delannoy numbers and their cyclotomic congruences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a single value.
    Compute(ComputeArgs),
    /// Verify a family of congruences over a parameter grid.
    Verify(VerifyArgs),
    /// Group-action audits.
    Orbits {
        #[command(subcommand)]
        command: OrbitsCommand,
    },
}

#[derive(Debug, Subcommand)]
enum OrbitsCommand {
    /// Exhaustively audit the orbit decomposition of one frame.
    Audit(AuditArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ComputeTarget {
    Delannoy,
    Qdelannoy,
    Qbinom,
    Cyclotomic,
    SigmaPoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyTarget {
    Lucas,
    Dlucas,
    Qlucas,
    Thm1,
    Thm2,
    Interp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Def,
    Alt,
    Rec,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Route {
        match r {
            RouteArg::Def => Route::Def,
            RouteArg::Alt => Route::Alt,
            RouteArg::Rec => Route::Rec,
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    #[arg(value_enum)]
    target: ComputeTarget,
    #[arg(long, allow_negative_numbers = true)]
    h: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, value_enum, default_value = "rec")]
    route: RouteArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    target: VerifyTarget,
    #[arg(long, default_value_t = 5)]
    max_n: u64,
    #[arg(long, default_value_t = 5)]
    max_h: u64,
    #[arg(long, default_value_t = 5)]
    max_k: u64,
    #[arg(long, default_value_t = 2)]
    max_a: u64,
    #[arg(long, default_value_t = 2)]
    max_c: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct AuditArgs {
    #[arg(long)]
    h: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    n: u32,
    #[command(flatten)]
    output: OutputArgs,
}

/// A report ready to print, and whether everything in it passed.
struct Outcome {
    text: String,
    passed: bool,
}

struct UsageError(String);

fn require<T>(v: Option<T>, flag: &str, target: &str) -> Result<T, UsageError> {
    v.ok_or_else(|| UsageError(format!("`compute {target}` requires --{flag}")))
}

fn nonnegative(v: i64, flag: &str) -> Result<i64, UsageError> {
    if v < 0 {
        return Err(UsageError(format!("--{flag} must be nonnegative")));
    }
    Ok(v)
}

fn run_compute(args: &ComputeArgs) -> Result<Outcome, UsageError> {
    let name = args
        .target
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let json = args.output.json;
    let text = match args.target {
        ComputeTarget::Delannoy => {
            let h = require(args.h, "h", &name)?;
            let k = require(args.k, "k", &name)?;
            let v = delannoy(h, k);
            if json {
                json!({ "kind": name, "h": h, "k": k, "value": v.to_string() }).to_string()
            } else {
                v.to_string()
            }
        }
        ComputeTarget::Qdelannoy => {
            let h = require(args.h, "h", &name)?;
            let k = require(args.k, "k", &name)?;
            let route = Route::from(args.route);
            let p = route.compute(h, k);
            if json {
                json!({ "kind": name, "h": h, "k": k, "route": route.to_string(), "poly": p })
                    .to_string()
            } else {
                p.to_string()
            }
        }
        ComputeTarget::Qbinom => {
            let h = nonnegative(require(args.h, "h", &name)?, "h")?;
            let k = require(args.k, "k", &name)?;
            let p = q_binomial(h as usize, k);
            if json {
                json!({ "kind": name, "h": h, "k": k, "poly": p }).to_string()
            } else {
                p.to_string()
            }
        }
        ComputeTarget::Cyclotomic => {
            let n = require(args.n, "n", &name)?;
            let p = cyclotomic(n).map_err(|e| UsageError(e.to_string()))?;
            if json {
                json!({ "kind": name, "n": n, "poly": p }).to_string()
            } else {
                p.to_string()
            }
        }
        ComputeTarget::SigmaPoly => {
            let h = nonnegative(require(args.h, "h", &name)?, "h")?;
            let k = nonnegative(require(args.k, "k", &name)?, "k")?;
            let p = sigma_poly(h as u32, k as u32);
            if json {
                json!({ "kind": name, "h": h, "k": k, "poly": p }).to_string()
            } else {
                p.to_string()
            }
        }
    };
    Ok(Outcome { text, passed: true })
}

fn sweep_config(args: &VerifyArgs) -> SweepConfig {
    let checks = match args.target {
        VerifyTarget::Lucas => vec![CheckKind::Lucas],
        VerifyTarget::Dlucas => vec![CheckKind::DelannoyLucas],
        VerifyTarget::Qlucas => vec![CheckKind::QLucas],
        VerifyTarget::Thm1 => vec![CheckKind::Thm1, CheckKind::Induction],
        VerifyTarget::Thm2 => vec![CheckKind::Thm2],
        VerifyTarget::Interp => vec![CheckKind::Interp],
    };
    SweepConfig {
        checks,
        n: 1..=args.max_n,
        h: 0..=args.max_h,
        k: 0..=args.max_k,
        a: 0..=args.max_a,
        c: 0..=args.max_c,
    }
}

fn run_verify(args: &VerifyArgs) -> Result<Outcome, UsageError> {
    let summary = sweep(&sweep_config(args)).map_err(|e| UsageError(e.to_string()))?;
    let text = if args.output.json {
        serde_json::to_string_pretty(&summary).expect("summary serializes")
    } else {
        summary.to_string()
    };
    Ok(Outcome {
        text,
        passed: summary.all_passed(),
    })
}

fn run_audit(args: &AuditArgs) -> Result<Outcome, UsageError> {
    let frame = CornerFrame::new(args.h, args.k, args.n).map_err(|e| UsageError(e.to_string()))?;
    let report = audit(&frame).map_err(|e| UsageError(e.to_string()))?;
    let text = if args.output.json {
        serde_json::to_string_pretty(&report).expect("report serializes")
    } else {
        report.to_string()
    };
    Ok(Outcome {
        text,
        passed: report.passed(),
    })
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };

    let output = match &cli.command {
        Command::Compute(a) => &a.output,
        Command::Verify(a) => &a.output,
        Command::Orbits {
            command: OrbitsCommand::Audit(a),
        } => &a.output,
    };

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = output.jobs {
        pool = pool.num_threads(j as usize);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return EXIT_USAGE;
        }
    };

    let result = pool.install(|| match &cli.command {
        Command::Compute(a) => run_compute(a),
        Command::Verify(a) => run_verify(a),
        Command::Orbits {
            command: OrbitsCommand::Audit(a),
        } => run_audit(a),
    });

    let outcome = match result {
        Ok(o) => o,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nFor more information, try '--help'.");
            return EXIT_USAGE;
        }
    };

    let mut text = outcome.text;
    text.push('\n');
    let written = match &output.out {
        Some(path) => fs::write(path, text.as_bytes()),
        None => out.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    if outcome.passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("qdelannoy").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn compute_qdelannoy_text() {
        let (code, out, _) = call(&["compute", "qdelannoy", "--h", "2", "--k", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "1 + 2*q + 4*q^2 + 4*q^3 + 2*q^4\n");
        for route in ["def", "alt", "rec"] {
            let (_, o, _) = call(&[
                "compute",
                "qdelannoy",
                "--h",
                "2",
                "--k",
                "2",
                "--route",
                route,
            ]);
            assert_eq!(o, out);
        }
    }

    #[test]
    fn usage_errors_exit_2() {
        let (code, out, err) = call(&["compute", "qdelannoy", "--h", "2"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("--k"));
        assert_eq!(call(&["compute", "qdelannoy", "--h", "x", "--k", "1"]).0, 2);
        assert_eq!(call(&["verify", "thm2", "--bogus"]).0, 2);
        assert_eq!(call(&["verify", "thm2", "--jobs", "0"]).0, 2);
        assert_eq!(call(&["compute", "cyclotomic", "--n", "0"]).0, 2);
        assert_eq!(
            call(&["orbits", "audit", "--h", "1", "--k", "1", "--n", "0"]).0,
            2
        );
        assert_eq!(call(&[]).0, 2);
    }

    #[test]
    fn compute_other_targets() {
        assert_eq!(
            call(&["compute", "delannoy", "--h", "3", "--k", "3"]).1,
            "63\n"
        );
        assert_eq!(
            call(&["compute", "qbinom", "--h", "4", "--k", "2"]).1,
            "1 + q + 2*q^2 + q^3 + q^4\n"
        );
        assert_eq!(
            call(&["compute", "qbinom", "--h", "3", "--k", "-1"]).1,
            "0\n"
        );
        assert_eq!(
            call(&["compute", "cyclotomic", "--n", "6"]).1,
            "1 - q + q^2\n"
        );
        assert_eq!(
            call(&["compute", "sigma-poly", "--h", "1", "--k", "1"]).1,
            "1 + 2*q\n"
        );
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("compute"));
    }
}
