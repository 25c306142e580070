//! Command-line front end.
//!
//! Exit codes: 0 when every expectation holds, 1 when some check failed,
//! 2 on usage or configuration errors. Standard output carries only the
//! JSON document; progress and diagnostics go to standard error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::census::{
    dimension_formulas, expected_generic_fiber, family_check, fiber_census, witness_pipeline,
    Certificate, RunOptions, DEFAULT_FAMILY_TRIALS, DEFAULT_POINTS, DEFAULT_TRIALS,
};
use crate::error::Error;
use crate::field::{is_prime, Field, PrimeField, Rationals, DEFAULT_PRIME, DEFAULT_WINDOW, MIN_PRIME};
use crate::selftest::{run_selftest, Mutation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Dims,
    Census,
    Witness,
    Family,
    Selftest,
}

/// Coefficient field selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "rational" {
            return Ok(FieldSpec::Rational);
        }
        let p: u64 = s.parse().map_err(|_| format!("expected a prime or \"rational\", got {s:?}"))?;
        if !is_prime(p) {
            return Err(format!("{p} is not prime"));
        }
        if p < MIN_PRIME {
            return Err(format!("prime {p} is below the minimum {MIN_PRIME}"));
        }
        Ok(FieldSpec::Prime(p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub n_min: usize,
    pub n_max: usize,
    pub trials: usize,
    pub prime: FieldSpec,
    /// Integer sampling window for the rationals.
    pub window: u64,
    pub seed: u64,
    pub points: usize,
    /// `None` means standard output.
    pub out: Option<PathBuf>,
    pub record_timings: bool,
}

#[derive(Debug, Parser)]
#[command(name = "monad-slice", version, about = "Exact checks on Barth-slice fiber systems")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Dimension bookkeeping for each charge
    Dims {
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Kernel-dimension census of the fiber system
    Census(Common),
    /// Explicit witness: solve, then run every check on the solution
    Witness(Common),
    /// Large-charge check that the kernel is the four-dimensional family
    Family(Common),
    /// Run the invariant suite
    Selftest,
}

#[derive(Debug, Args)]
struct Common {
    /// Shorthand for --n-min N --n-max N
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    n: Option<usize>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    /// A prime >= 2^20, or "rational"
    #[arg(long, default_value_t = FieldSpec::Prime(DEFAULT_PRIME).to_string())]
    prime: String,
    /// Half-width M of the integer window [-M, M] used over the rationals
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    window: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    points: usize,
    #[arg(long, default_value = "-")]
    out: String,
    /// Record wall-clock stage timings (certificates stop being reproducible)
    #[arg(long)]
    timings: bool,
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "{p}"),
            FieldSpec::Rational => write!(f, "rational"),
        }
    }
}

fn out_path(s: String) -> Option<PathBuf> {
    (s != "-").then(|| PathBuf::from(s))
}

impl RunConfig {
    fn from_cli(cli: Cli) -> Result<Self, String> {
        let (command, common) = match cli.command {
            Sub::Dims { n_min, n_max, out } => {
                let cfg = RunConfig {
                    command: Command::Dims,
                    n_min,
                    n_max,
                    trials: 0,
                    prime: FieldSpec::Prime(DEFAULT_PRIME),
                    window: DEFAULT_WINDOW,
                    seed: 0,
                    points: 0,
                    out: out_path(out),
                    record_timings: false,
                };
                return cfg.validated();
            }
            Sub::Selftest => {
                return Ok(RunConfig {
                    command: Command::Selftest,
                    n_min: 1,
                    n_max: 1,
                    trials: 0,
                    prime: FieldSpec::Prime(DEFAULT_PRIME),
                    window: DEFAULT_WINDOW,
                    seed: 0,
                    points: 0,
                    out: None,
                    record_timings: false,
                })
            }
            Sub::Census(c) => (Command::Census, c),
            Sub::Witness(c) => (Command::Witness, c),
            Sub::Family(c) => (Command::Family, c),
        };
        let default_trials = match command {
            Command::Family => DEFAULT_FAMILY_TRIALS,
            Command::Witness => 1,
            _ => DEFAULT_TRIALS,
        };
        let (n_min, n_max) = match (common.n, common.n_min, common.n_max) {
            (Some(n), _, _) => (n, n),
            (None, Some(lo), Some(hi)) => (lo, hi),
            (None, Some(lo), None) => (lo, lo),
            (None, None, Some(hi)) => (hi, hi),
            (None, None, None) => return Err("one of --n or --n-min/--n-max is required".into()),
        };
        RunConfig {
            command,
            n_min,
            n_max,
            trials: common.trials.unwrap_or(default_trials),
            prime: common.prime.parse()?,
            window: common.window,
            seed: common.seed,
            points: common.points,
            out: out_path(common.out),
            record_timings: common.timings,
        }
        .validated()
    }

    fn validated(self) -> Result<Self, String> {
        if self.n_min == 0 {
            return Err("charges start at 1".into());
        }
        if self.n_min > self.n_max {
            return Err(format!("--n-min {} exceeds --n-max {}", self.n_min, self.n_max));
        }
        if matches!(self.command, Command::Census | Command::Family) && self.trials == 0 {
            return Err("--trials must be at least 1".into());
        }
        if self.command == Command::Family && self.n_min < 8 {
            return Err("family checks need n >= 8".into());
        }
        Ok(self)
    }
}

/// Parses arguments (including the program name) into a configuration.
/// `Err` carries the exit code and the text to print.
pub fn parse_args<I, T>(args: I) -> Result<RunConfig, (i32, String)>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Err((EXIT_OK, e.to_string()));
            }
            let first = e.to_string().lines().next().unwrap_or("error: invalid arguments").to_string();
            return Err((EXIT_USAGE, first));
        }
    };
    RunConfig::from_cli(cli).map_err(|msg| (EXIT_USAGE, format!("error: {msg}")))
}

fn run_certificates<F: Field>(field: &F, cfg: &RunConfig) -> Result<Vec<Certificate>, Error> {
    let opts = RunOptions { points: cfg.points, record_timings: cfg.record_timings };
    (cfg.n_min..=cfg.n_max)
        .map(|n| {
            let cert = match cfg.command {
                Command::Census => fiber_census(field, n, cfg.trials, cfg.seed, &opts),
                Command::Family => family_check(field, n, cfg.trials, cfg.seed, &opts),
                Command::Witness => {
                    if !(4..=7).contains(&n) {
                        eprintln!("warning: n = {n} is outside the range 4..=7 covered by the witness argument");
                    }
                    witness_pipeline(field, n, cfg.seed, &opts)
                }
                Command::Dims | Command::Selftest => unreachable!(),
            }?;
            report(&cert);
            Ok(cert)
        })
        .collect()
}

fn report(cert: &Certificate) {
    let status = if cert.expectations_met() { "ok" } else { "FAILED" };
    if let Some(w) = &cert.witness {
        eprintln!(
            "n={} witness fiber_dim={} residual_zero={} pencil={:?} monad_ok={} point_ranks_ok={} jacobian_rank={} [{}] {status}",
            cert.n, w.fiber_dim, w.residual_zero, w.pencil, w.monad_ok, w.point_ranks_ok, w.jacobian_rank, w.evidence
        );
        if w.all_ok() {
            eprintln!("  by semicontinuity, one point with these properties suffices for a generic half");
        }
    } else if let Some(fc) = cert.family_check {
        eprintln!("n={} family trials={} dims={:?} canonical={fc} {status}", cert.n, cert.trials, cert.fiber_dims);
    } else {
        eprintln!(
            "n={} census trials={} dims={:?} expected={} {status}",
            cert.n,
            cert.trials,
            cert.fiber_dims,
            expected_generic_fiber(cert.n)
        );
    }
}

fn emit(cfg: &RunConfig, json: &str) -> std::io::Result<()> {
    match &cfg.out {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(json.as_bytes())?;
            out.write_all(b"\n")?;
            out.flush()
        }
        Some(path) => fs::write(path, format!("{json}\n")),
    }
}

/// Executes a validated configuration and returns the process exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    match cfg.command {
        Command::Selftest => {
            let report = run_selftest(Mutation::None);
            for line in &report.lines {
                eprintln!("{line}");
            }
            if report.passed { EXIT_OK } else { EXIT_FAILED }
        }
        Command::Dims => {
            let records: Vec<_> = (cfg.n_min..=cfg.n_max)
                .map(|n| dimension_formulas(n).expect("n >= 1"))
                .collect();
            let json = serde_json::to_string(&records).expect("records serialize");
            match emit(cfg, &json) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    eprintln!("error: cannot write output: {e}");
                    EXIT_USAGE
                }
            }
        }
        _ => {
            let certs = match cfg.prime {
                FieldSpec::Prime(p) => match PrimeField::new(p) {
                    Ok(f) => run_certificates(&f, cfg),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return EXIT_USAGE;
                    }
                },
                FieldSpec::Rational => run_certificates(&Rationals::with_window(cfg.window), cfg),
            };
            let certs = match certs {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return match e {
                        Error::Domain(_) | Error::Parse(_) => EXIT_USAGE,
                        _ => EXIT_FAILED,
                    };
                }
            };
            let json = serde_json::to_string(&certs).expect("certificates serialize");
            if let Err(e) = emit(cfg, &json) {
                eprintln!("error: cannot write output: {e}");
                return EXIT_USAGE;
            }
            if certs.iter().all(Certificate::expectations_met) { EXIT_OK } else { EXIT_FAILED }
        }
    }
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_args(args) {
        Ok(cfg) => run(&cfg),
        Err((code, msg)) => {
            if code == EXIT_OK {
                print!("{msg}");
            } else {
                eprintln!("{msg}");
            }
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, (i32, String)> {
        parse_args(std::iter::once("monad-slice").chain(args.iter().copied()))
    }

    #[test]
    fn census_defaults() {
        let cfg = parse(&["census", "--n-min", "4", "--n-max", "7", "--seed", "1"]).unwrap();
        assert_eq!(cfg.trials, 100);
        assert_eq!(cfg.points, 32);
        assert_eq!(cfg.prime, FieldSpec::Prime(DEFAULT_PRIME));
        assert_eq!(cfg.out, None);
        assert_eq!((cfg.n_min, cfg.n_max), (4, 7));
    }

    #[test]
    fn family_defaults_to_twenty_trials() {
        let cfg = parse(&["family", "--n-min", "8", "--n-max", "9", "--seed", "1"]).unwrap();
        assert_eq!(cfg.trials, 20);
    }

    #[test]
    fn witness_accepts_rational() {
        let cfg = parse(&["witness", "--n", "4", "--prime", "rational", "--window", "5", "--seed", "7"]).unwrap();
        assert_eq!(cfg.prime, FieldSpec::Rational);
        assert_eq!((cfg.n_min, cfg.n_max, cfg.window), (4, 4, 5));
    }

    #[test]
    fn usage_errors_exit_two_with_one_line() {
        for args in [
            vec!["census", "--n-min", "4", "--n-max", "7"],
            vec!["census", "--n-min", "7", "--n-max", "4", "--seed", "1"],
            vec!["census", "--n", "4", "--seed", "1", "--prime", "1000"],
            vec!["census", "--n", "4", "--seed", "1", "--prime", "7"],
            vec!["census", "--n", "4", "--seed", "-3"],
            vec!["family", "--n", "7", "--seed", "1"],
            vec!["bogus"],
            vec!["census", "--n", "4", "--seed", "1", "--frobnicate"],
        ] {
            let (code, msg) = parse(&args).unwrap_err();
            assert_eq!(code, EXIT_USAGE, "{args:?}");
            assert_eq!(msg.lines().count(), 1, "{msg}");
        }
    }

    #[test]
    fn seed_is_required() {
        assert!(parse(&["witness", "--n", "4"]).is_err());
        assert!(parse(&["dims"]).is_ok());
        assert!(parse(&["selftest"]).is_ok());
    }
}
