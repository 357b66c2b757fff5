//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use drbcheck_core::positivity::CASES;
use drbcheck_core::quatrep::DEFAULT_PARAMS;

use crate::commands::{self, CommandError, PositivityRun, Section};
use crate::io::{parse_gaussian_vector, parse_rational};
use crate::report::{assemble, Assembled, FixtureMode};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Fixtures shipped with the crate.
pub const DEFAULT_FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Debug, Parser)]
#[command(name = "drbcheck", version, about = "Exact case-analysis verifier")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Fixture directory.
    #[arg(long, global = true)]
    pub fixtures: Option<PathBuf>,
    /// Rewrite fixtures from this run and print a diff summary.
    #[arg(long, global = true)]
    pub bless: bool,
    /// Skip fixture comparison.
    #[arg(long, global = true, conflicts_with = "bless")]
    pub no_fixtures: bool,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Include runtime_ms in each record.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// One-dimensional quotient cases.
    SweepDim1,
    /// Cyclic groups of order four.
    SweepOrder4,
    /// Klein four-group cases.
    SweepKlein4,
    /// A₄ branches.
    SweepA4,
    /// CM types on the D₄ model.
    D4Cmtypes,
    /// Faithful irreducible 4-dimensional representations.
    RepClassify,
    /// Explicit invariant tensors.
    Invariants,
    /// The anti-Weil quaternion representation.
    AntiweilVerify {
        #[arg(long, allow_hyphen_values = true, default_value_t = DEFAULT_PARAMS.0)]
        dp: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = DEFAULT_PARAMS.1)]
        d: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = DEFAULT_PARAMS.2)]
        a: i64,
    },
    /// Polarization positivity cases; all of them when no case is named.
    Positivity {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(CASES))]
        case: Option<String>,
        /// λ as a rational, e.g. -2/3.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// x as comma-separated Gaussian rationals, e.g. 1,0,0,-1 or 1+i,0,i,2.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
    },
    /// Gross period matrices; 0 ≤ p ≤ n ≤ 4 when no degrees are given.
    GrossPeriods {
        #[arg(long, requires = "n")]
        p: Option<i64>,
        #[arg(long, requires = "p")]
        n: Option<i64>,
    },
    /// Every subcommand with default parameters.
    VerifyAll,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::SweepDim1 => "sweep-dim1",
            Command::SweepOrder4 => "sweep-order4",
            Command::SweepKlein4 => "sweep-klein4",
            Command::SweepA4 => "sweep-a4",
            Command::D4Cmtypes => "d4-cmtypes",
            Command::RepClassify => "rep-classify",
            Command::Invariants => "invariants",
            Command::AntiweilVerify { .. } => "antiweil-verify",
            Command::Positivity { .. } => "positivity",
            Command::GrossPeriods { .. } => "gross-periods",
            Command::VerifyAll => "verify-all",
        }
    }
}

/// A validated run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub fixtures: FixtureMode,
    pub jobs: usize,
    pub timings: bool,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> RunConfig {
        let dir = cli.fixtures.unwrap_or_else(|| PathBuf::from(DEFAULT_FIXTURES));
        let fixtures = if cli.no_fixtures {
            FixtureMode::Skip
        } else if cli.bless {
            FixtureMode::Bless(dir)
        } else {
            FixtureMode::Compare(dir)
        };
        RunConfig { command: cli.command, format: cli.format, fixtures, jobs: cli.jobs, timings: cli.timings }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Fixture(#[from] crate::report::FixtureError),
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<CommandError> for RunError {
    fn from(e: CommandError) -> Self {
        match e {
            CommandError::Usage(m) => RunError::Usage(m),
            CommandError::Internal(m) => RunError::Internal(m),
        }
    }
}

fn positivity_runs(case: &Option<String>, lambda: &Option<String>, x: &Option<String>) -> Result<Vec<PositivityRun>, RunError> {
    let lambda = match lambda {
        Some(s) => Some((s.clone(), parse_rational(s).map_err(|e| RunError::Usage(format!("--lambda: {e}")))?)),
        None => None,
    };
    let x = match x {
        Some(s) => {
            let v = parse_gaussian_vector(s).map_err(|e| RunError::Usage(format!("--x: {e}")))?;
            if v.len() != 4 {
                return Err(RunError::Usage(format!("--x needs 4 entries, got {}", v.len())));
            }
            Some((s.clone(), v))
        }
        None => None,
    };
    let Some(case) = case else {
        if lambda.is_some() || x.is_some() {
            return Err(RunError::Usage("--lambda and --x need a case name".to_string()));
        }
        return Ok(commands::default_positivity_runs());
    };
    Ok(vec![PositivityRun { case: case.clone(), lambda, x }])
}

fn sections(command: &Command) -> Result<Vec<Section>, RunError> {
    Ok(match command {
        Command::SweepDim1 | Command::SweepOrder4 | Command::SweepKlein4 | Command::SweepA4 => {
            vec![commands::sweep(command.name())]
        }
        Command::D4Cmtypes => vec![commands::d4_cmtypes()],
        Command::RepClassify => vec![commands::rep_classify()?],
        Command::Invariants => vec![commands::invariants()?],
        Command::AntiweilVerify { dp, d, a } => vec![commands::antiweil((*dp, *d, *a))?],
        Command::Positivity { case, lambda, x } => {
            let runs = positivity_runs(case, lambda, x)?;
            vec![commands::positivity(&runs, case.is_none())?]
        }
        Command::GrossPeriods { p, n } => match (p, n) {
            (Some(p), Some(n)) => vec![commands::gross(&[(*p, *n)], false)?],
            _ => vec![commands::gross(&commands::default_gross_degrees(), true)?],
        },
        Command::VerifyAll => {
            let mut out = Vec::new();
            for c in [
                Command::SweepDim1,
                Command::SweepOrder4,
                Command::SweepKlein4,
                Command::SweepA4,
                Command::D4Cmtypes,
                Command::RepClassify,
                Command::Invariants,
                Command::AntiweilVerify { dp: DEFAULT_PARAMS.0, d: DEFAULT_PARAMS.1, a: DEFAULT_PARAMS.2 },
                Command::Positivity { case: None, lambda: None, x: None },
                Command::GrossPeriods { p: None, n: None },
            ] {
                out.extend(sections(&c)?);
            }
            out
        }
    })
}

/// Runs the checks and assembles the report.
pub fn run(config: &RunConfig) -> Result<Assembled, RunError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| RunError::Internal(e.to_string()))?;
    let sections = pool.install(|| sections(&config.command))?;
    Ok(assemble(config.command.name(), sections, &config.fixtures, config.timings)?)
}

/// Parses `args`, runs, writes the report to `out` and notes to `err`, and
/// returns the exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let config = RunConfig::from_cli(cli);
    match run(&config) {
        Ok(a) => {
            for n in &a.notes {
                let _ = writeln!(err, "{n}");
            }
            let text = match config.format {
                Format::Json => a.report.to_json(),
                Format::Markdown => a.report.to_markdown(),
            };
            let _ = out.write_all(text.as_bytes());
            if a.report.ok() {
                EXIT_PASS
            } else {
                let _ = writeln!(err, "{} of {} records failed", a.report.summary.failed, a.report.records.len());
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(err, "drbcheck: {e}");
            match e {
                RunError::Usage(_) => EXIT_USAGE,
                _ => EXIT_FAIL,
            }
        }
    }
}
