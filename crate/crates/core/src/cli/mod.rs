//! Command-line front end: configuration loading, dispatch and report output.
//!
//! Exit codes: 0 on success, 2 when a verdict was computed with warnings,
//! 1 on any error or failed identity check.

pub mod config;
pub mod report;
pub mod run;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

pub use config::{load_config, parse_config, AnalysisConfig, Kind, Mode, SolverConfig};
pub use report::{Format, Report, Witness};
pub use run::{run, run_verify, validate, Task};

use crate::error::{Error, Result};

/// Environment variable that takes precedence over `--seed`.
pub const SEED_ENV: &str = "EINSTEIN_STABILITY_SEED";

#[derive(Debug, Parser)]
#[command(name = "einstein-stability", version, about = "Linear-stability verdicts for Einstein metrics of submersion type")]
pub struct Cli {
    /// JSON analysis configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Arithmetic mode; overrides the config file.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Einstein constant fixing the torus solver's scaling gauge.
    #[arg(long = "gauge-E", global = true)]
    pub gauge_e: Option<f64>,
    /// Number of solver starts.
    #[arg(long, global = true)]
    pub starts: Option<usize>,
    /// Seed for solver starts, bound sampling and `verify`. `EINSTEIN_STABILITY_SEED` wins if set.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a config and run the default analysis for its kind.
    Check,
    /// Second variation along g − ((n+r)/n)π*ǧ from submersion invariants.
    Theorem1,
    /// Canonical-variation criterion Ě < 2Ê.
    Canonical,
    /// Diagonal form and coindex bound over a product base.
    ProductBase,
    /// Torus bundles over products of Fano Kähler–Einstein factors.
    Torus {
        #[command(subcommand)]
        action: TorusAction,
    },
    /// Bundles over products of quaternionic Kähler factors.
    Qk {
        #[command(subcommand)]
        action: QkAction,
    },
    /// Normal homogeneous families.
    Homog {
        #[command(subcommand)]
        family: HomogFamily,
    },
    /// Einstein circle bundles.
    Circle {
        #[command(subcommand)]
        action: CircleAction,
    },
    /// Run every identity suite.
    Verify {
        /// Cases per suite; each suite has its own default.
        #[arg(long)]
        cases: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum TorusAction {
    /// Solve the Einstein system for x and ĝ.
    Solve,
    /// Coindex analysis; solves first if x and ĝ are not given.
    Analyze,
}

#[derive(Debug, Subcommand)]
pub enum QkAction {
    Analyze,
}

#[derive(Debug, Subcommand)]
pub enum HomogFamily {
    /// Sp(mq)/(Sp(q)×…×Sp(q)) over Sp(mq)/(Sp(kq)×Sp(q)×…×Sp(q)).
    Sp {
        /// Scan 3 ≤ m ≤ m-max, 1 ≤ q ≤ q-max, 1 < k < m.
        #[arg(long)]
        scan: bool,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = 12)]
        m_max: u32,
        #[arg(long, default_value_t = 8)]
        q_max: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum CircleAction {
    /// Grid maximum of f over the simplex.
    FScan {
        #[arg(long)]
        n: Option<usize>,
        /// Grid step is 1/denominator.
        #[arg(long)]
        denominator: Option<usize>,
    },
    /// Correction tensors for a pointwise (ω, ȟ) pair.
    Pointwise,
    /// Kähler–Einstein base bound.
    KahlerBound,
}

/// What a CLI invocation printed and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn require_config(cli: &Cli, task: Task) -> Result<AnalysisConfig> {
    match &cli.config {
        Some(path) => load_config(path),
        None => Err(Error::Parse {
            location: "--config".into(),
            message: format!("`{}` needs --config <path>", task.command()),
        }),
    }
}

fn seed_override(cli: &Cli, env_seed: Option<&str>) -> Result<Option<u64>> {
    match env_seed {
        Some(text) => text.trim().parse().map(Some).map_err(|_| Error::Parse {
            location: SEED_ENV.into(),
            message: format!("`{text}` is not a non-negative integer"),
        }),
        None => Ok(cli.seed),
    }
}

fn build(cli: &Cli, seed: Option<u64>) -> Result<(AnalysisConfig, Task)> {
    let (mut config, task) = match &cli.command {
        Command::Check => (require_config(cli, Task::Check)?, Task::Check),
        Command::Theorem1 => (require_config(cli, Task::Theorem1)?, Task::Theorem1),
        Command::Canonical => (require_config(cli, Task::Canonical)?, Task::Canonical),
        Command::ProductBase => (require_config(cli, Task::ProductBase)?, Task::ProductBase),
        Command::Torus { action: TorusAction::Solve } => (require_config(cli, Task::TorusSolve)?, Task::TorusSolve),
        Command::Torus { action: TorusAction::Analyze } => (require_config(cli, Task::TorusAnalyze)?, Task::TorusAnalyze),
        Command::Qk { action: QkAction::Analyze } => (require_config(cli, Task::QkAnalyze)?, Task::QkAnalyze),
        Command::Homog { family: HomogFamily::Sp { scan, m, q, k, m_max, q_max } } => {
            let from_flags = *scan || m.is_some() || q.is_some() || k.is_some();
            let config = match (&cli.config, from_flags) {
                (Some(_), false) => require_config(cli, Task::HomogSp)?,
                (_, true) if *scan => AnalysisConfig::new(Kind::HomogSp, json!({"m_max": m_max, "q_max": q_max})),
                (_, true) => {
                    let missing = |name: &str| Error::Parse { location: format!("--{name}"), message: "required without --scan".into() };
                    let (m, q, k) = (m.ok_or_else(|| missing("m"))?, q.ok_or_else(|| missing("q"))?, k.ok_or_else(|| missing("k"))?);
                    AnalysisConfig::new(Kind::HomogSp, json!({"m": m, "q": q, "k": k}))
                }
                (None, false) => require_config(cli, Task::HomogSp)?,
            };
            (config, Task::HomogSp)
        }
        Command::Circle { action: CircleAction::FScan { n, denominator } } => {
            let config = match (&cli.config, n) {
                (Some(_), None) => require_config(cli, Task::CircleFScan)?,
                (_, Some(n)) => AnalysisConfig::new(
                    Kind::Circle,
                    json!({"task": "f-scan", "n": n, "denominator": denominator.unwrap_or(100)}),
                ),
                (None, None) => {
                    return Err(Error::Parse { location: "--n".into(), message: "`circle f-scan` needs --n or --config".into() })
                }
            };
            (config, Task::CircleFScan)
        }
        Command::Circle { action: CircleAction::Pointwise } => (require_config(cli, Task::CirclePointwise)?, Task::CirclePointwise),
        Command::Circle { action: CircleAction::KahlerBound } => {
            (require_config(cli, Task::CircleKahlerBound)?, Task::CircleKahlerBound)
        }
        Command::Verify { .. } => unreachable!("verify has no config"),
    };
    if let Some(mode) = cli.mode {
        config.mode = mode;
    }
    if let Some(g) = cli.gauge_e {
        config.solver.gauge_einstein = g;
    }
    if let Some(s) = cli.starts {
        config.solver.starts = s;
    }
    if let Some(s) = seed {
        config.solver.seed = s;
    }
    Ok((config, task))
}

fn execute_parsed(cli: &Cli, env_seed: Option<&str>) -> Result<Report> {
    let seed = seed_override(cli, env_seed)?;
    if let Command::Verify { cases } = cli.command {
        return Ok(run_verify(seed.unwrap_or(0), cases));
    }
    let (config, task) = build(cli, seed)?;
    validate(&config, task)?;
    run(&config, task)
}

/// Runs one invocation. `env_seed` is the value of `EINSTEIN_STABILITY_SEED`, if set.
pub fn execute<I, T>(args: I, env_seed: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute_parsed(&cli, env_seed) {
        Ok(report) => Outcome { code: report.exit_code(), stdout: report.render(cli.format), stderr: String::new() },
        Err(err) => Outcome { code: 1, stdout: report::render_error(&err, cli.format), stderr: format!("error: {err}\n") },
    }
}

/// Entry point for the binary: reads the process arguments and environment.
pub fn main_with_env() -> i32 {
    let env_seed = std::env::var(SEED_ENV).ok();
    let out = execute(std::env::args_os(), env_seed.as_deref());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_format_is_a_usage_error() {
        let out = execute(["einstein-stability", "--format", "yaml", "verify"], None);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("yaml"));
    }

    #[test]
    fn sp_from_flags() {
        let out = execute(["einstein-stability", "homog", "sp", "--m", "3", "--q", "1", "--k", "2"], None);
        assert_eq!(out.code, 0, "{}", out.stdout);
        assert!(out.stdout.contains("\"r·š − 2n·ŝ\": \"-8\""));
    }

    #[test]
    fn missing_config_is_reported() {
        let out = execute(["einstein-stability", "theorem1"], None);
        assert_eq!(out.code, 1);
        assert!(out.stdout.contains("ParseError"));
    }

    #[test]
    fn environment_seed_wins() {
        let cli = Cli::try_parse_from(["einstein-stability", "--seed", "3", "verify"]).unwrap();
        assert_eq!(seed_override(&cli, Some("9")).unwrap(), Some(9));
        assert_eq!(seed_override(&cli, None).unwrap(), Some(3));
        assert!(seed_override(&cli, Some("x")).is_err());
    }

    #[test]
    fn markdown_has_verdict_heading() {
        let out = execute(["einstein-stability", "--format", "md", "circle", "f-scan", "--n", "3", "--denominator", "1"], None);
        assert!(out.stdout.contains("## Verdict"), "{}", out.stdout);
        assert!(out.stdout.contains("## Provenance"));
    }
}
