use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use fusionscale::fixtures::Fixture;
use fusionscale::fusion::is_dual;
use fusionscale::scaling::{run_check, solve_scaling, TheoremId};
use fusionscale::ToleranceConfig;

use crate::error::CliError;
use crate::examples;
use crate::file::{emit_frame_file, parse_frame_str, read_text};
use crate::format::to_json;
use crate::generate::generate;
use crate::report::{ExcessPayload, Report};

#[derive(Debug, Parser)]
#[command(name = "fusionscale", version, about = "Analyze and scale fusion frames")]
pub struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Frobenius residual tolerance for feasibility and duality
    /// (default 1e-9 times the ambient dimension).
    #[arg(long, global = true, env = "FF_TOL")]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frame bounds, classification and excess.
    Analyze { file: PathBuf },
    /// Solve for scaling weights; exits 1 unless strictly scalable.
    Scale {
        file: PathBuf,
        /// Smallest coefficient counted as strictly positive.
        #[arg(long)]
        min_weight: Option<f64>,
    },
    /// Excess and a basis of the synthesis kernel.
    Excess { file: PathBuf },
    /// Test whether the frame in `v` is an alternate dual of the frame in `w`.
    Dual { v: PathBuf, w: PathBuf },
    /// Evaluate the conditions of a scalability criterion; exits 1 when
    /// they contradict the solver.
    Check {
        file: PathBuf,
        #[arg(long)]
        theorem: String,
    },
    /// Write a named example frame. Parameters are given as `--param k=v`
    /// or `--k v`; `--list` shows names and defaults.
    Example {
        #[arg(allow_hyphen_values = true)]
        name: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Write a seeded random frame.
    Gen {
        #[arg(long)]
        dim: usize,
        /// Comma-separated subspace dimensions.
        #[arg(long, value_delimiter = ',', required = true)]
        subspace_dims: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Mutually orthogonal subspaces.
        #[arg(long, conflicts_with = "random")]
        orthogonal: bool,
        /// Independent random subspaces (the default).
        #[arg(long)]
        random: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Text for standard output (empty when written to a file) and the exit
/// status.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub stdout: String,
    pub exit_code: u8,
}

struct Input {
    fixture: Fixture,
    bytes: Vec<u8>,
}

fn tolerances(cli: &Cli, dim: usize) -> Result<ToleranceConfig, CliError> {
    let cfg = ToleranceConfig::for_dim(dim);
    match cli.tol {
        Some(tol) => cfg.with_residual_tol(tol).map_err(|e| CliError::InvalidSpec(e.to_string())),
        None => Ok(cfg),
    }
}

fn load(cli: &Cli, path: &Path) -> Result<(Input, ToleranceConfig), CliError> {
    let text = read_text(path)?;
    let dim = serde_json::from_str::<serde_json::Value>(&text)
        .ok()
        .and_then(|v| v.get("dim").and_then(|d| d.as_u64()))
        .unwrap_or(1) as usize;
    let cfg = tolerances(cli, dim)?;
    let fixture = parse_frame_str(&text, &cfg)?;
    Ok((Input { fixture, bytes: text.into_bytes() }, cfg))
}

fn report_output(cli: &Cli, mut report: Report, start: Instant, exit_code: u8) -> Output {
    report.wall_time_seconds = start.elapsed().as_secs_f64();
    Output { stdout: to_json(&report, cli.pretty) + "\n", exit_code }
}

fn write_fixture(cli: &Cli, fixture: &Fixture, output: Option<&Path>) -> Result<Output, CliError> {
    let text = to_json(&emit_frame_file(fixture)?, cli.pretty) + "\n";
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
            Ok(Output { stdout: String::new(), exit_code: 0 })
        }
        None => Ok(Output { stdout: text, exit_code: 0 }),
    }
}

/// Splits `example` arguments into parameters and the output path.
fn example_args(args: &[String]) -> Result<(BTreeMap<String, String>, Option<PathBuf>), CliError> {
    let mut params = BTreeMap::new();
    let mut output = None;
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let mut value = |flag: &str| {
            it.next().cloned().ok_or_else(|| CliError::InvalidSpec(format!("{flag} needs a value")))
        };
        if arg == "-o" || arg == "--output" {
            output = Some(PathBuf::from(value(arg)?));
        } else if arg == "--param" {
            let kv = value(arg)?;
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| CliError::InvalidSpec(format!("--param expects k=v, got `{kv}`")))?;
            params.insert(k.to_string(), v.to_string());
        } else if let Some(key) = arg.strip_prefix("--") {
            match key.split_once('=') {
                Some((k, v)) => params.insert(k.to_string(), v.to_string()),
                None => params.insert(key.to_string(), value(arg)?),
            };
        } else {
            return Err(CliError::InvalidSpec(format!("unexpected argument `{arg}`")));
        }
    }
    Ok((params, output))
}

fn example_list() -> String {
    let mut out = String::new();
    for (name, params, about) in examples::EXAMPLES {
        let params: Vec<String> =
            params.iter().map(|(k, v)| if v.is_empty() { k.to_string() } else { format!("{k}={v}") }).collect();
        out += &format!("{name:<18} {about}");
        if !params.is_empty() {
            out += &format!(" [{}]", params.join(", "));
        }
        out.push('\n');
    }
    out
}

/// Runs one command. `argv` is echoed into the report.
pub fn run(cli: &Cli, argv: Vec<String>) -> Result<Output, CliError> {
    let start = Instant::now();
    match &cli.command {
        Command::Analyze { file } => {
            let (input, cfg) = load(cli, file)?;
            let frame = &input.fixture.frame;
            let mut report = Report::new(argv, &[&input.bytes], cfg);
            report.analysis = Some(frame.classify(&cfg));
            report.excess = Some(ExcessPayload::from(&frame.excess(cfg.rank_tol)));
            Ok(report_output(cli, report, start, 0))
        }
        Command::Scale { file, min_weight } => {
            let (input, mut cfg) = load(cli, file)?;
            if let Some(eps) = min_weight {
                cfg = cfg.with_positivity_eps(*eps).map_err(|e| CliError::InvalidSpec(e.to_string()))?;
            }
            let solution = solve_scaling(&input.fixture.frame, &cfg)?;
            let code = if solution.status.is_strict() { 0 } else { 1 };
            let mut report = Report::new(argv, &[&input.bytes], cfg);
            report.scaling = Some(solution);
            Ok(report_output(cli, report, start, code))
        }
        Command::Excess { file } => {
            let (input, cfg) = load(cli, file)?;
            let mut report = Report::new(argv, &[&input.bytes], cfg);
            report.excess = Some(ExcessPayload::from(&input.fixture.frame.excess(cfg.rank_tol)));
            Ok(report_output(cli, report, start, 0))
        }
        Command::Dual { v, w } => {
            let (candidate, _) = load(cli, v)?;
            let (frame, cfg) = load(cli, w)?;
            let check = is_dual(&candidate.fixture.frame, &frame.fixture.frame, &cfg, cfg.residual_tol)?;
            let code = if check.is_dual { 0 } else { 1 };
            let mut report = Report::new(argv, &[&candidate.bytes, &frame.bytes], cfg);
            report.dual = Some(check);
            Ok(report_output(cli, report, start, code))
        }
        Command::Check { file, theorem } => {
            let id: TheoremId = theorem.parse().map_err(|_| CliError::UnknownTheoremId(theorem.clone()))?;
            let (input, cfg) = load(cli, file)?;
            let Fixture { frame, decomposition } = &input.fixture;
            if id.needs_decomposition() && decomposition.is_none() {
                return Err(CliError::BadDecomposition(format!("{} needs a decomposition block", id.as_str())));
            }
            let solution = solve_scaling(frame, &cfg)?;
            let theorem_report = run_check(id, frame, decomposition.as_ref(), &solution, &cfg)?;
            let code = if theorem_report.verdict_consistent_with_solver { 0 } else { 1 };
            let mut report = Report::new(argv, &[&input.bytes], cfg);
            report.scaling = Some(solution);
            report.theorem = Some(theorem_report);
            Ok(report_output(cli, report, start, code))
        }
        Command::Example { name, args } => {
            if name == "--list" || name == "list" {
                return Ok(Output { stdout: example_list(), exit_code: 0 });
            }
            let (params, output) = example_args(args)?;
            let fixture = examples::build(name, &params)?;
            write_fixture(cli, &fixture, output.as_deref())
        }
        Command::Gen { dim, subspace_dims, seed, orthogonal, output, .. } => {
            let fixture = generate(*dim, subspace_dims, *seed, *orthogonal)?;
            write_fixture(cli, &fixture, output.as_deref())
        }
    }
}
