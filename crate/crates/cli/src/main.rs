//! Batch front end: ingest densities, matrices, and step data; run any
//! operation or the acceptance battery; emit JSON and CSV reports.
//!
//! Exit codes: 0 success (mathematical "failures" such as non-membership are
//! results, reported in-band), 2 usage errors, 3 malformed input.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use orlicz_kit::boltzmann::{evolve_with_halving, functional_sweep, DiscreteKineticState, KineticModel};
use orlicz_kit::classical::{
    amemiya_norm, embedding_report, luxemburg_norm_opt, GaugeOptions, NormReport,
    StepRearrangement,
};
use orlicz_kit::entropy::{continuous_entropy_with, membership_check, DEFAULT_EPS_LADDER};
use orlicz_kit::error::Error;
use orlicz_kit::numerics::log_grid;
use orlicz_kit::quantum::{
    l1_subset_llog1_check, llogl_membership, llogl_membership_operator, moment_transform,
    regularity_probe, regularized_entropy, sequence_orlicz_norm, von_neumann_entropy,
};
use orlicz_kit::young::{catalog, check_delta2, check_dominance, check_equivalence, check_nabla2, x_log_x};
use orlicz_kit::{io as kit_io, ExtReal};

#[derive(Parser)]
#[command(name = "orlicz-kit", version, about = "Orlicz-space numerics: gauge norms, entropy functionals, singular-value data, kinetic diagnostics")]
struct Cli {
    /// TOML or JSON config file; command-line flags override its keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Young's function calculus: evaluation, conjugates, growth probes.
    Young(YoungArgs),
    /// Gauge norms of a sampled density (CSV: label,weight,value).
    Norm(NormArgs),
    /// Entropy functionals and the membership probe of a density.
    Entropy(EntropyArgs),
    /// Spectral operations on matrices and singular step data.
    Quantum(QuantumArgs),
    /// Kinetic trajectories and the functional diagnostics sweep.
    Boltzmann(BoltzmannArgs),
    /// Run the acceptance battery and print one line per criterion.
    Suite,
}

#[derive(Args)]
struct YoungArgs {
    /// Catalog name: cosh-1, arcsinh-int, xlogx1, llogl, phi-exp, exp-t-1,
    /// int-log1p, linf, power:p.
    #[arg(long)]
    psi: String,
    #[arg(long, value_enum, default_value = "eval")]
    check: YoungCheck,
    /// Evaluation point for eval/complementary.
    #[arg(long)]
    at: Option<f64>,
    /// Second function for dominance (catalog name or xlogx:k) or equivalence.
    #[arg(long)]
    other: Option<String>,
    /// Dominance scale.
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    /// Probe the condition from 0 instead of from a fitted threshold.
    #[arg(long)]
    global: bool,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = 0.01)]
    grid_min: f64,
    #[arg(long, default_value_t = 100.0)]
    grid_max: f64,
    #[arg(long, default_value_t = 120)]
    grid_points: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum YoungCheck {
    Eval,
    Complementary,
    Delta2,
    Nabla2,
    Dominance,
    Equivalence,
}

#[derive(Args)]
struct NormArgs {
    #[arg(long)]
    psi: String,
    /// Density CSV (label,weight,value).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "luxemburg")]
    form: NormForm,
    /// Also report the embedding chain (needs a probability space).
    #[arg(long)]
    embedding: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormForm {
    Luxemburg,
    Amemiya,
}

#[derive(Args)]
struct EntropyArgs {
    #[arg(long)]
    input: PathBuf,
    /// Epsilon ladder, comma separated.
    #[arg(long, value_delimiter = ',')]
    eps: Vec<f64>,
}

#[derive(Args)]
struct QuantumArgs {
    #[arg(long, value_enum)]
    op: QuantumOp,
    /// Matrix input: dense real CSV or {re, im} JSON.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Step data CSV (value,length with optional 0,inf tail).
    #[arg(long)]
    steps: Option<PathBuf>,
    /// Weight step data for the weighted operations.
    #[arg(long)]
    weight: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
    #[arg(long, default_value = "cosh-1")]
    psi: String,
    /// Open subinterval of (0,1) for the spectral criteria, as "a,b".
    #[arg(long, default_value = "0.25,0.75", value_delimiter = ',')]
    interval: Vec<f64>,
    #[arg(long, default_value_t = 0.5)]
    t: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantumOp {
    /// Von Neumann entropy of a density matrix.
    Entropy,
    /// Regularized entropy at --eps.
    Regularized,
    /// Singular values.
    Singular,
    /// Orlicz sequence norm of the singular values under --psi.
    SequenceNorm,
    /// Spectral trace criteria for the entropy integrand.
    Llogl,
    /// Per-term summable-spectrum inclusion check.
    Inclusion,
    /// Weighted moment transform of --steps against --weight at --t.
    Moment,
    /// Regularity probe of (--steps, --weight) at this truncation.
    Regularity,
}

#[derive(Args)]
struct BoltzmannArgs {
    /// carleman or broadwell; overrides the config key when given.
    #[arg(long)]
    model: Option<String>,
    #[arg(long, default_value_t = 1.5)]
    u0: f64,
    #[arg(long, default_value_t = 0.5)]
    v0: f64,
    /// Broadwell initial densities, comma separated.
    #[arg(long, value_delimiter = ',')]
    n0: Vec<f64>,
    #[arg(long, visible_alias = "T")]
    horizon: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    /// Run the functional diagnostics sweep over these density CSVs instead
    /// of integrating a trajectory.
    #[arg(long, num_args = 1.., value_delimiter = ' ')]
    sweep: Vec<PathBuf>,
}

/// Config keys mirrored by the flags.
#[derive(Debug, Default, Deserialize)]
#[serde(default)]
struct RunConfig {
    tolerance: Option<f64>,
    bracket_cap: Option<f64>,
    p_values: Option<Vec<f64>>,
    eps_ladder: Option<Vec<f64>>,
    model: Option<String>,
    dt: Option<f64>,
    horizon: Option<f64>,
    threads: Option<usize>,
}

fn load_config(path: Option<&Path>) -> Result<RunConfig, CliError> {
    let Some(path) = path else {
        return Ok(RunConfig::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| input_err(format!("{e}")))?;
    let by_ext = path.extension().and_then(|s| s.to_str()).unwrap_or("");
    let parsed = match by_ext {
        "json" => serde_json::from_str(&text).map_err(|e| input_err(format!("config: {e}"))),
        _ => toml::from_str(&text).map_err(|e| input_err(format!("config: {e}"))),
    }?;
    Ok(parsed)
}

struct CliError {
    code: u8,
    message: String,
}

fn input_err(message: String) -> CliError {
    CliError { code: 3, message }
}

fn internal_err(message: String) -> CliError {
    CliError { code: 1, message }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            // solver-state errors are internal; everything else traces back
            // to the supplied inputs
            Error::OutsideSpace { .. } | Error::StepSize(_) => internal_err(e.to_string()),
            other => input_err(other.to_string()),
        }
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| internal_err(e.to_string())),
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| internal_err(e.to_string()))
        }
    }
}

fn emit_json(output: Option<&Path>, value: &impl Serialize) -> Result<(), CliError> {
    let text = kit_io::to_json_string(value).map_err(CliError::from)?;
    emit(output, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let config = load_config(cli.config.as_deref())?;
    let output = cli.output.as_deref();
    match cli.command {
        Command::Young(args) => young(args, output),
        Command::Norm(args) => norm(args, &config, output),
        Command::Entropy(args) => entropy(args, &config, output),
        Command::Quantum(args) => quantum(args, output),
        Command::Boltzmann(args) => boltzmann(args, &config, output),
        Command::Suite => suite(&config, output),
    }
}

fn parse_grid(grid: &GridArgs) -> Result<Vec<f64>, CliError> {
    if !(grid.grid_min > 0.0 && grid.grid_max > grid.grid_min && grid.grid_points >= 2) {
        return Err(input_err("grid must satisfy 0 < min < max, points >= 2".into()));
    }
    Ok(log_grid(grid.grid_min, grid.grid_max, grid.grid_points))
}

fn young(args: YoungArgs, output: Option<&Path>) -> Result<ExitCode, CliError> {
    let psi = catalog::by_name(&args.psi)?;
    match args.check {
        YoungCheck::Eval => {
            let at = args.at.ok_or_else(|| input_err("eval needs --at".into()))?;
            let value = psi.eval(at)?;
            emit_json(
                output,
                &serde_json::json!({"psi": psi.name(), "at": at, "value": ExtReal(value)}),
            )?;
        }
        YoungCheck::Complementary => {
            let phi = psi.complementary();
            match args.at {
                Some(at) => emit_json(
                    output,
                    &serde_json::json!({
                        "psi": psi.name(), "conjugate": phi.name(),
                        "at": at, "value": ExtReal(phi.eval(at)?)
                    }),
                )?,
                None => {
                    let grid = parse_grid(&args.grid)?;
                    let samples: Vec<(f64, ExtReal)> =
                        grid.iter().map(|&x| (x, ExtReal(phi.value(x)))).collect();
                    emit_json(
                        output,
                        &serde_json::json!({
                            "psi": psi.name(), "conjugate": phi.name(), "samples": samples
                        }),
                    )?;
                }
            }
        }
        YoungCheck::Delta2 => {
            let report = check_delta2(&psi, &parse_grid(&args.grid)?, args.global)?;
            emit_json(output, &report)?;
        }
        YoungCheck::Nabla2 => {
            let report = check_nabla2(&psi, &parse_grid(&args.grid)?, args.global)?;
            emit_json(output, &report)?;
        }
        YoungCheck::Dominance => {
            let other = args
                .other
                .as_deref()
                .ok_or_else(|| input_err("dominance needs --other".into()))?;
            let grid = parse_grid(&args.grid)?;
            let report = match other.strip_prefix("xlogx:") {
                Some(k) => {
                    let k: f64 = k.parse().map_err(|_| input_err(format!("bad xlogx scale in {other:?}")))?;
                    check_dominance(&psi, &x_log_x(k), args.b, &grid)?
                }
                None => {
                    let f2 = catalog::by_name(other)?;
                    check_dominance(&psi, &move |x| f2.value(x), args.b, &grid)?
                }
            };
            emit_json(output, &report)?;
        }
        YoungCheck::Equivalence => {
            let other = args
                .other
                .as_deref()
                .ok_or_else(|| input_err("equivalence needs --other".into()))?;
            let f2 = catalog::by_name(other)?;
            let report = check_equivalence(&psi, &f2, &parse_grid(&args.grid)?)?;
            emit_json(output, &report)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// In-band wrapper for norm results: lying outside the space is a result.
#[derive(Serialize)]
#[serde(untagged)]
enum NormOutcome {
    Inside {
        psi: String,
        form: &'static str,
        report: NormReport,
    },
    Outside {
        psi: String,
        form: &'static str,
        outside_space: bool,
    },
}

fn norm(args: NormArgs, config: &RunConfig, output: Option<&Path>) -> Result<ExitCode, CliError> {
    let psi = catalog::by_name(&args.psi)?;
    let f = kit_io::read_sampled_density_path(&args.input)?;
    let opts = GaugeOptions {
        rel_tol: config.tolerance.unwrap_or(GaugeOptions::default().rel_tol),
        bracket_cap: config.bracket_cap.unwrap_or(GaugeOptions::default().bracket_cap),
    };
    let (form, result) = match args.form {
        NormForm::Luxemburg => ("luxemburg", luxemburg_norm_opt(&f, &psi, opts)),
        NormForm::Amemiya => ("amemiya", amemiya_norm(&f, &psi)),
    };
    let outcome = match result {
        Ok(report) => NormOutcome::Inside {
            psi: psi.name().into(),
            form,
            report,
        },
        Err(Error::OutsideSpace { .. }) => NormOutcome::Outside {
            psi: psi.name().into(),
            form,
            outside_space: true,
        },
        Err(e) => return Err(e.into()),
    };
    if args.embedding {
        let chain = embedding_report(&f, config.p_values.as_deref().unwrap_or(&[2.0]))?;
        emit_json(output, &serde_json::json!({"norm": outcome, "embedding": chain}))?;
    } else {
        emit_json(output, &outcome)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn entropy(args: EntropyArgs, config: &RunConfig, output: Option<&Path>) -> Result<ExitCode, CliError> {
    let f = kit_io::read_sampled_density_path(&args.input)?;
    let ladder = if !args.eps.is_empty() {
        args.eps.clone()
    } else {
        config
            .eps_ladder
            .clone()
            .unwrap_or_else(|| DEFAULT_EPS_LADDER.to_vec())
    };
    let report = continuous_entropy_with(&f, &ladder)?;
    let membership = membership_check(&f);
    emit_json(
        output,
        &serde_json::json!({"entropy": report, "membership": membership}),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn quantum(args: QuantumArgs, output: Option<&Path>) -> Result<ExitCode, CliError> {
    let matrix = || -> Result<_, CliError> {
        let path = args
            .matrix
            .as_deref()
            .ok_or_else(|| input_err("this op needs --matrix".into()))?;
        Ok(kit_io::read_hermitian_path(path)?)
    };
    let steps = |path: Option<&Path>, what: &str| -> Result<StepRearrangement, CliError> {
        let path = path.ok_or_else(|| input_err(format!("this op needs --{what}")))?;
        Ok(kit_io::read_step_rearrangement_path(path)?)
    };
    let interval = match args.interval.as_slice() {
        [a, b] => (*a, *b),
        _ => return Err(input_err("--interval must be a,b".into())),
    };
    match args.op {
        QuantumOp::Entropy => {
            let rho = matrix()?;
            let s = von_neumann_entropy(&rho)?;
            emit_json(output, &serde_json::json!({"von_neumann_entropy": s}))?;
        }
        QuantumOp::Regularized => {
            let rho = matrix()?;
            let s = regularized_entropy(&rho, args.eps)?;
            emit_json(
                output,
                &serde_json::json!({"regularized_entropy": s, "eps": args.eps}),
            )?;
        }
        QuantumOp::Singular => {
            let m = matrix()?;
            emit_json(
                output,
                &serde_json::json!({"singular_values": m.singular_values().values()}),
            )?;
        }
        QuantumOp::SequenceNorm => {
            let m = matrix()?;
            let psi = catalog::by_name(&args.psi)?;
            let report = sequence_orlicz_norm(&m.singular_values(), &psi)?;
            emit_json(output, &serde_json::json!({"psi": psi.name(), "report": report}))?;
        }
        QuantumOp::Llogl => {
            let report = match (&args.matrix, &args.steps) {
                (Some(_), _) => llogl_membership_operator(&matrix()?, interval)?,
                (None, Some(_)) => {
                    llogl_membership(&steps(args.steps.as_deref(), "steps")?, interval)?
                }
                (None, None) => return Err(input_err("llogl needs --matrix or --steps".into())),
            };
            emit_json(output, &report)?;
        }
        QuantumOp::Inclusion => {
            let m = matrix()?;
            let report = l1_subset_llog1_check(&m.singular_values());
            emit_json(output, &report)?;
        }
        QuantumOp::Moment => {
            let g = steps(args.steps.as_deref(), "steps")?;
            let w = steps(args.weight.as_deref(), "weight")?;
            let value = moment_transform(&g, &w, args.t);
            emit_json(
                output,
                &serde_json::json!({"t": args.t, "value": ExtReal(value)}),
            )?;
        }
        QuantumOp::Regularity => {
            let g = steps(args.steps.as_deref(), "steps")?;
            let w = steps(args.weight.as_deref(), "weight")?;
            let report = regularity_probe(&[(g, w)])?;
            emit_json(output, &report)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn boltzmann(args: BoltzmannArgs, config: &RunConfig, output: Option<&Path>) -> Result<ExitCode, CliError> {
    let eps_ladder = config
        .eps_ladder
        .clone()
        .unwrap_or_else(|| DEFAULT_EPS_LADDER.to_vec());
    if !args.sweep.is_empty() {
        let mut family = Vec::new();
        for path in &args.sweep {
            let name = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("density")
                .to_string();
            family.push((name, kit_io::read_sampled_density_path(path)?));
        }
        let rows = functional_sweep(&family, &eps_ladder)?;
        let mut buf = Vec::new();
        kit_io::write_sweep_csv(&mut buf, &rows, &eps_ladder)?;
        emit(output, &String::from_utf8_lossy(&buf))?;
        return Ok(ExitCode::SUCCESS);
    }
    let model_name = args
        .model
        .as_deref()
        .or(config.model.as_deref())
        .unwrap_or("carleman");
    let model = KineticModel::parse(model_name)?;
    let densities = match model {
        KineticModel::Carleman => vec![args.u0, args.v0],
        KineticModel::Broadwell => {
            if args.n0.len() != 4 {
                return Err(input_err("broadwell needs --n0 with four densities".into()));
            }
            args.n0.clone()
        }
    };
    let state = DiscreteKineticState::new(model, densities)?;
    let horizon = args.horizon.or(config.horizon).unwrap_or(20.0);
    let dt = args.dt.or(config.dt).unwrap_or(1e-3);
    let trajectory = evolve_with_halving(&state, horizon, dt, 16)?;
    let mut buf = Vec::new();
    kit_io::write_trajectory_csv(&mut buf, &trajectory)?;
    emit(output, &String::from_utf8_lossy(&buf))?;
    Ok(ExitCode::SUCCESS)
}

fn suite(config: &RunConfig, output: Option<&Path>) -> Result<ExitCode, CliError> {
    use rayon::prelude::*;
    let threads = std::env::var("ORLICZ_KIT_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .or(config.threads);
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = threads {
            builder = builder.num_threads(n.max(1));
        }
        builder.build().map_err(|e| internal_err(e.to_string()))?
    };
    let count = orlicz_kit::suite::count();
    let mut results: Vec<_> = pool.install(|| {
        (0..count)
            .into_par_iter()
            .map(|i| orlicz_kit::suite::run_one(i).expect("criterion index in range"))
            .collect()
    });
    results.sort_by_key(|r| r.id);
    let mut all_passed = true;
    for r in &results {
        println!("{}", r.line());
        all_passed &= r.passed;
    }
    println!(
        "{}/{} criteria passed",
        results.iter().filter(|r| r.passed).count(),
        results.len()
    );
    if let Some(path) = output {
        let text = kit_io::to_json_string(&results)?;
        std::fs::write(path, text).map_err(|e| internal_err(e.to_string()))?;
    }
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
