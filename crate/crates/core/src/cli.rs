//! The `qfourier` command line.
//!
//! Every subcommand writes one JSON document to stdout (or `--out`). Exit
//! codes: 0 on success, 1 on domain errors (bad input, degenerate functions),
//! 2 on usage errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::dense::apply_dense;
use crate::error::Error;
use crate::fft::{transform, Method, OpCountReport};
use crate::group::{AbelianGroup, Subgroup};
use crate::hsp::{find_period, simon_function, FunctionTable, FunctionTableJson, SampleMode, StabilizerResult};
use crate::qft::{compile_qft, ReorderMode};
use crate::qsim::{bitstring, parse_bitstring, Program, ProgramJson};
use crate::tolerance::FAST;
use crate::vector::ComplexVector;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 1998;

#[derive(Debug, Parser)]
#[command(name = "qfourier", version, about = "Fourier transforms on finite abelian groups, the QFT network and period finding")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// RNG seed.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Comparison tolerance for reported checks.
    #[arg(long, global = true, default_value_t = FAST)]
    pub tolerance: f64,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Pretty-print the JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fourier-transform a vector on a group.
    Fft {
        #[arg(long)]
        group: String,
        /// JSON array of [re, im] pairs.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "dense")]
        method: Method,
        #[arg(long)]
        emit_counts: bool,
    },
    /// Run a gate program and measure it.
    Simulate {
        #[arg(long)]
        program: PathBuf,
        #[arg(long, default_value_t = 1024)]
        shots: usize,
        /// A qubit index or "all".
        #[arg(long, default_value = "all")]
        measure: String,
    },
    /// Compile the QFT network on Z_(2^m).
    QftCompile {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "relabel")]
        reorder: ReorderMode,
        #[arg(long, default_value = "json")]
        emit: Emit,
    },
    /// Recover the stabiliser of a function table.
    PeriodFind {
        #[arg(long)]
        function: PathBuf,
        /// Maximum number of labels to sample.
        #[arg(long, default_value_t = 200)]
        shots: usize,
        #[arg(long, default_value = "exact")]
        mode: SampleMode,
    },
    /// Simon's problem on (Z_2)^n with a hidden mask.
    Simon {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        mask: String,
        #[arg(long, default_value_t = 200)]
        shots: usize,
        #[arg(long, default_value = "exact")]
        mode: SampleMode,
    },
    /// Operation counts of several transforms on one seeded random vector.
    Bench {
        #[arg(long)]
        group: String,
        #[arg(long, value_delimiter = ',', default_value = "dense,tower")]
        methods: Vec<Method>,
        /// Also report wall-clock milliseconds (not reproducible).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Emit {
    Json,
    Text,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input {
        path: path.to_owned(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Input {
        path: path.to_owned(),
        message: e.to_string(),
    })
}

fn rng_for(config: &RunConfig) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(config.seed)
}

fn subgroup_json(k: &Subgroup) -> Value {
    let g = k.parent();
    let coords = |i: usize| g.element(i).expect("member in range").coords().to_vec();
    json!({
        "order": k.order(),
        "generators": k.generators().into_iter().map(coords).collect::<Vec<_>>(),
        "members": k.members(),
    })
}

fn histogram(labels: &[usize]) -> BTreeMap<String, usize> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &l in labels {
        *counts.entry(l).or_default() += 1;
    }
    counts.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn stabilizer_json(f: &FunctionTable, r: &StabilizerResult) -> Value {
    json!({
        "group": f.group().to_string(),
        "subgroup": subgroup_json(&r.subgroup),
        "labels": histogram(&r.labels_seen),
        "samples_used": r.samples_used,
        "converged": r.converged,
    })
}

fn run_fft(
    group: &str,
    input: &Path,
    method: Method,
    emit_counts: bool,
) -> Result<Value, CliError> {
    let group: AbelianGroup = group.parse()?;
    let f: ComplexVector = read_json(input)?;
    let (spectrum, counts) = transform(&group, method, &f)?;
    let mut out = json!({
        "group": group.to_string(),
        "method": method,
        "spectrum": spectrum,
    });
    if emit_counts {
        out["counts"] = serde_json::to_value(counts).expect("plain struct");
    }
    Ok(out)
}

fn run_simulate(
    config: &RunConfig,
    program: &Path,
    shots: usize,
    measure: &str,
) -> Result<Value, CliError> {
    let parsed: ProgramJson = read_json(program)?;
    let program = Program::try_from(&parsed)?;
    let state = program.run()?;
    let n = program.n_qubits();
    let mut rng = rng_for(config);
    let (dist, width, label) = if measure == "all" {
        (state.distribution(), n, json!("all"))
    } else {
        let q: usize = measure
            .parse()
            .map_err(|_| Error::Invalid(format!("--measure expects a qubit index or \"all\", got {measure:?}")))?;
        (state.measure_qubit_distribution(q)?, 1, json!(q))
    };
    let probabilities: BTreeMap<String, f64> = dist
        .probabilities()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 1e-12)
        .map(|(i, &p)| (bitstring(i, width), p))
        .collect();
    let samples: BTreeMap<String, usize> = dist
        .sample(shots, &mut rng)
        .into_iter()
        .map(|(i, c)| (bitstring(i, width), c))
        .collect();
    Ok(json!({
        "n": n,
        "measure": label,
        "probabilities": probabilities,
        "shots": shots,
        "samples": samples,
        "seed": config.seed,
    }))
}

fn run_period_find(
    config: &RunConfig,
    function: &Path,
    shots: usize,
    mode: SampleMode,
) -> Result<Value, CliError> {
    let parsed: FunctionTableJson = read_json(function)?;
    let f = FunctionTable::try_from(&parsed)?;
    let r = find_period(&f, shots, mode, &mut rng_for(config))?;
    let mut out = stabilizer_json(&f, &r);
    out["mode"] = serde_json::to_value(mode).expect("unit enum");
    out["seed"] = json!(config.seed);
    Ok(out)
}

fn run_simon(
    config: &RunConfig,
    n: usize,
    mask: &str,
    shots: usize,
    mode: SampleMode,
) -> Result<Value, CliError> {
    if mask.len() != n {
        return Err(Error::Invalid(format!("mask {mask:?} must have exactly {n} bits")).into());
    }
    let mask_index = parse_bitstring(mask)?;
    let mut rng = rng_for(config);
    let f = simon_function(n, mask_index, &mut rng)?;
    let r = find_period(&f, shots, mode, &mut rng)?;
    let recovered = match r.subgroup.members() {
        [0] => Some(bitstring(0, n)),
        [0, xi] => Some(bitstring(*xi, n)),
        _ => None,
    };
    let mut out = stabilizer_json(&f, &r);
    out["n"] = json!(n);
    out["mask"] = json!(mask);
    out["recovered_mask"] = json!(recovered);
    out["mode"] = serde_json::to_value(mode).expect("unit enum");
    out["seed"] = json!(config.seed);
    Ok(out)
}

#[derive(Serialize)]
struct BenchRow {
    method: Method,
    counts: OpCountReport,
    max_abs_error_vs_dense: f64,
    within_tolerance: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<f64>,
}

fn run_bench(
    config: &RunConfig,
    group: &str,
    methods: &[Method],
    timing: bool,
) -> Result<Value, CliError> {
    let group: AbelianGroup = group.parse()?;
    let mut rng = rng_for(config);
    let f: ComplexVector = (0..group.order())
        .map(|_| crate::Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    let reference = apply_dense(&group, &f)?;
    let mut rows = Vec::new();
    for &method in methods {
        let start = std::time::Instant::now();
        let (out, counts) = transform(&group, method, &f)?;
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        let err = out.max_abs_diff(&reference);
        rows.push(BenchRow {
            method,
            counts,
            max_abs_error_vs_dense: err,
            within_tolerance: err <= config.tolerance,
            wall_ms: timing.then_some(elapsed),
        });
    }
    Ok(json!({
        "group": group.to_string(),
        "order": group.order(),
        "seed": config.seed,
        "tolerance": config.tolerance,
        "results": rows,
    }))
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let config = &cli.config;
    let value = match &cli.command {
        Command::Fft {
            group,
            input,
            method,
            emit_counts,
        } => run_fft(group, input, *method, *emit_counts)?,
        Command::Simulate {
            program,
            shots,
            measure,
        } => run_simulate(config, program, *shots, measure)?,
        Command::QftCompile { m, reorder, emit } => {
            let gl = compile_qft(*m, *reorder)?;
            if *emit == Emit::Text {
                return Ok(gl.to_text());
            }
            let mut v = serde_json::to_value(gl.to_json()).expect("plain struct");
            v["counts"] = serde_json::to_value(gl.count()).expect("plain struct");
            v
        }
        Command::PeriodFind {
            function,
            shots,
            mode,
        } => run_period_find(config, function, *shots, *mode)?,
        Command::Simon {
            n,
            mask,
            shots,
            mode,
        } => run_simon(config, *n, mask, *shots, *mode)?,
        Command::Bench {
            group,
            methods,
            timing,
        } => run_bench(config, group, methods, *timing)?,
    };
    let mut text = if config.pretty {
        serde_json::to_string_pretty(&value)
    } else {
        serde_json::to_string(&value)
    }
    .expect("json values serialise");
    text.push('\n');
    Ok(text)
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn main_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let result = execute(&cli).and_then(|text| match &cli.config.out {
        Some(path) => std::fs::write(path, text).map_err(CliError::from),
        None => stdout.write_all(text.as_bytes()).map_err(CliError::from),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}
