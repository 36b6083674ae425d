//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qchsh_core::bounds::chsh_bounds;
use qchsh_core::correlation::correlation_matrix;
use qchsh_core::optimizer::{SeesawConfig, UpdateMode};
use qchsh_core::representation::build_gellmann_basis;
use qchsh_core::states::{ghz_state, random_two_qudit_state, TwoQuditState};

use crate::error::{CliError, Result};
use crate::format::{read_state_file, BasisExport};
use crate::parallel::{seesaw_parallel, threads_from_env};
use crate::report::{
    correlation_csv, ghz_row, ghz_table_csv, round_row, BoundsJson, CorrelationJson, GhzTableJson,
    OptimizeJson,
};
use crate::verify::{run_suites, VerifyOptions};

#[derive(Debug, Parser)]
#[command(
    name = "qchsh",
    version,
    about = "CHSH bounds and maximization for two-qudit states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Export the generalized Gell-Mann basis.
    Basis(BasisArgs),
    /// Correlation matrix of a state.
    Correlation(StateCommand),
    /// Spectral lower/upper bounds on the maximal CHSH value.
    Bounds(StateCommand),
    /// See-saw maximization of the CHSH expectation.
    Optimize(OptimizeArgs),
    /// GHZ values, certificates and bounds over a range of dimensions.
    #[command(name = "ghz-table")]
    GhzTable(GhzTableArgs),
    /// Run the self-verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Paper,
    Exact,
}

impl From<ModeArg> for UpdateMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Paper => UpdateMode::Paper,
            ModeArg::Exact => UpdateMode::Exact,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateSource {
    Ghz,
    Random(u64),
    File(PathBuf),
}

fn parse_state_source(s: &str) -> std::result::Result<StateSource, String> {
    if s == "ghz" {
        return Ok(StateSource::Ghz);
    }
    if let Some(seed) = s.strip_prefix("random:") {
        return seed
            .parse()
            .map(StateSource::Random)
            .map_err(|_| format!("invalid seed in {s:?}"));
    }
    if let Some(path) = s.strip_prefix("file:") {
        if path.is_empty() {
            return Err("file: needs a path".into());
        }
        return Ok(StateSource::File(PathBuf::from(path)));
    }
    Err(format!("expected ghz, random:SEED or file:PATH, got {s:?}"))
}

/// Inclusive range of qudit dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimRange(pub Vec<usize>);

/// Inclusive `a:b` range, or a single dimension.
pub fn parse_dims(s: &str) -> std::result::Result<DimRange, String> {
    let bad = || format!("expected a dimension range like 2:8, got {s:?}");
    let (lo, hi) = match s.split_once(':') {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let d: usize = s.trim().parse().map_err(|_| bad())?;
            (d, d)
        }
    };
    if lo < 2 || hi < lo {
        return Err(bad());
    }
    Ok(DimRange((lo..=hi).collect()))
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub output: OutputFormat,
    /// Write the report to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// ghz, random:SEED or file:PATH
    #[arg(long, value_parser = parse_state_source)]
    pub state: StateSource,
    /// Qudit dimension; taken from the file for file states.
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    #[arg(long)]
    pub dim: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct StateCommand {
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OptimizerArgs {
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long = "max-iter", default_value_t = 500)]
    pub max_iterations: usize,
}

impl OptimizerArgs {
    pub fn config(&self) -> Result<SeesawConfig> {
        let config = SeesawConfig {
            mode: self.mode.into(),
            restarts: self.restarts,
            max_iterations: self.max_iterations,
            tolerance: self.tol,
            seed: self.seed,
        };
        config.validate()?;
        Ok(config)
    }
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GhzTableArgs {
    #[arg(long, value_parser = parse_dims, default_value = "2:8")]
    pub dims: DimRange,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only this suite; repeat to select several.
    #[arg(long)]
    pub suite: Vec<String>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, value_parser = parse_dims, default_value = "2:6")]
    pub dims: DimRange,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

fn resolve_state(args: &StateArgs) -> Result<TwoQuditState> {
    let need_dim = || {
        args.dim
            .ok_or_else(|| CliError::Input("--dim is required for ghz and random states".into()))
    };
    match &args.state {
        StateSource::Ghz => Ok(ghz_state(need_dim()?)?),
        StateSource::Random(seed) => Ok(random_two_qudit_state(need_dim()?, *seed)?),
        StateSource::File(path) => {
            let state = read_state_file(path)?;
            match args.dim {
                Some(d) if d != state.dim() => Err(qchsh_core::Error::DimensionMismatch {
                    expected: d,
                    found: state.dim(),
                }
                .into()),
                _ => Ok(state),
            }
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn json_only(output: &OutputArgs, command: &str) -> Result<()> {
    if output.output == OutputFormat::Csv {
        return Err(CliError::Input(format!(
            "csv output is available for correlation and ghz-table, not {command}"
        )));
    }
    Ok(())
}

fn emit(output: &OutputArgs, body: &str, stdout: &mut dyn Write) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, body)?,
        None => stdout.write_all(body.as_bytes())?,
    }
    Ok(())
}

/// Executes a parsed command, writing reports to `stdout`.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Basis(args) => {
            json_only(&args.output, "basis")?;
            let basis = build_gellmann_basis(args.dim)?;
            emit(&args.output, &to_json(&BasisExport::new(&basis)), stdout)
        }
        Command::Correlation(args) => {
            let state = resolve_state(&args.state)?;
            let basis = build_gellmann_basis(state.dim())?;
            let t = correlation_matrix(&state, &basis)?;
            let body = match args.output.output {
                OutputFormat::Json => to_json(&CorrelationJson::from(&t)),
                OutputFormat::Csv => correlation_csv(&t)?,
            };
            emit(&args.output, &body, stdout)
        }
        Command::Bounds(args) => {
            json_only(&args.output, "bounds")?;
            let state = resolve_state(&args.state)?;
            let basis = build_gellmann_basis(state.dim())?;
            let report = chsh_bounds(&correlation_matrix(&state, &basis)?)?;
            emit(&args.output, &to_json(&BoundsJson::from(&report)), stdout)
        }
        Command::Optimize(args) => {
            json_only(&args.output, "optimize")?;
            let config = args.optimizer.config()?;
            let state = resolve_state(&args.state)?;
            let basis = build_gellmann_basis(state.dim())?;
            let result = seesaw_parallel(&state, &basis, config, threads_from_env()?)?;
            let bounds = chsh_bounds(&correlation_matrix(&state, &basis)?)?;
            emit(
                &args.output,
                &to_json(&OptimizeJson::new(&result, &bounds)),
                stdout,
            )
        }
        Command::GhzTable(args) => {
            let config = args.optimizer.config()?;
            let threads = threads_from_env()?;
            let rows = args
                .dims
                .0
                .iter()
                .map(|&d| ghz_row(d, config, threads).map(|r| round_row(&r)))
                .collect::<Result<Vec<_>>>()?;
            let body = match args.output.output {
                OutputFormat::Json => to_json(&GhzTableJson { rows }),
                OutputFormat::Csv => ghz_table_csv(&rows),
            };
            emit(&args.output, &body, stdout)
        }
        Command::Verify(args) => {
            let opts = VerifyOptions {
                suites: args.suite.clone(),
                dims: args.dims.0.clone(),
                trials: args.trials,
                seed: args.seed,
                inject_fault: args.inject_fault,
            };
            let outcomes = run_suites(&opts)?;
            for o in &outcomes {
                writeln!(stdout, "{o}")?;
            }
            match outcomes.iter().find(|o| !o.passed()) {
                Some(failed) => Err(CliError::Numerical(format!("suite {} failed", failed.name))),
                None => {
                    writeln!(stdout, "all {} suites passed", outcomes.len())?;
                    Ok(())
                }
            }
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
/// Diagnostics go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_sources() {
        assert_eq!(parse_state_source("ghz").unwrap(), StateSource::Ghz);
        assert_eq!(
            parse_state_source("random:7").unwrap(),
            StateSource::Random(7)
        );
        assert_eq!(
            parse_state_source("file:a.json").unwrap(),
            StateSource::File("a.json".into())
        );
        assert!(parse_state_source("random:x").is_err());
        assert!(parse_state_source("werner").is_err());
        assert!(parse_state_source("file:").is_err());
    }

    #[test]
    fn command_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn defaults_parse() {
        let cli = Cli::try_parse_from(["qchsh", "ghz-table"]).unwrap();
        match cli.command {
            Command::GhzTable(a) => {
                assert_eq!(a.dims.0, (2..=8).collect::<Vec<_>>());
                assert_eq!(a.optimizer.restarts, 32);
            }
            other => panic!("parsed {other:?}"),
        }
        let cli = Cli::try_parse_from(["qchsh", "verify"]).unwrap();
        match cli.command {
            Command::Verify(a) => assert_eq!(a.dims.0, (2..=6).collect::<Vec<_>>()),
            other => panic!("parsed {other:?}"),
        }
    }

    #[test]
    fn dim_ranges() {
        assert_eq!(parse_dims("2:5").unwrap().0, vec![2, 3, 4, 5]);
        assert_eq!(parse_dims("4").unwrap().0, vec![4]);
        assert!(parse_dims("5:2").is_err());
        assert!(parse_dims("1:3").is_err());
        assert!(parse_dims("a:b").is_err());
    }
}
