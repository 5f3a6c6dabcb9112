//! `csmm`: JSON front end for csmm-core.
//!
//! Exit status is 0 on success, 1 when a computation fails (a JSON error
//! object is printed), 2 on a usage error.

mod commands;
mod config;
mod human;
mod input;
mod selftest;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use config::RunConfig;
use input::DiagramArgs;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(csmm_core::Error),
    /// `selftest` ran and found a mismatch; the report is still printed.
    Check(Value),
}

impl From<csmm_core::Error> for Failure {
    fn from(e: csmm_core::Error) -> Self {
        Failure::Compute(e)
    }
}

#[derive(Parser, Debug)]
#[command(name = "csmm", version, about = "Exact Gaussian matrix-model and Seifert-sphere computations")]
struct Cli {
    /// Aligned `key  value` text instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    /// Worker threads for data-parallel loops.
    #[arg(long, global = true, env = "CSMM_THREADS")]
    threads: Option<usize>,
    /// Flat key=value file (order, tol, seed, samples, precision, threads, output).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MomentRoute {
    Wick,
    Surface,
    HarerZagier,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SchurMode {
    Expectation,
    Character,
    ToPowersum,
    FromPowersum,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum DedekindMethod {
    Reciprocity,
    Sawtooth,
    Cot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gaussian moment <p_λ> as a polynomial in N; repeat --partition for colors.
    Moment {
        #[arg(long, required = true)]
        partition: Vec<String>,
        #[arg(long, value_enum, default_value = "wick")]
        route: MomentRoute,
        /// Also evaluate at this N.
        #[arg(long)]
        n: Option<i64>,
    },
    /// Schur expectations and character tables.
    Schur {
        #[arg(long)]
        partition: String,
        #[arg(long, value_enum, default_value = "expectation")]
        mode: SchurMode,
        /// Cycle type for --mode character.
        #[arg(long)]
        class: Option<String>,
    },
    /// Surface pairing of a monomial (one --partition per color) or of Ψ(D).
    Pair {
        #[arg(long)]
        partition: Vec<String>,
        #[command(flatten)]
        diagram: DiagramArgs,
    },
    /// Ψ and Φ∘Ψ of a diagram, and the gl(N) contraction of a closed one.
    Weight {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long)]
        order: Option<i32>,
        /// Comma-separated N values for the brute-force contraction.
        #[arg(long)]
        gl_n: Option<String>,
    },
    /// Dedekind sum s(p, q).
    #[command(allow_negative_numbers = true)]
    Dedekind {
        p: i64,
        q: i64,
        #[arg(long, value_enum, default_value = "reciprocity")]
        method: DedekindMethod,
        #[arg(long)]
        precision: Option<usize>,
    },
    /// Rademacher function of [[p, r], [q, s]], or of the completion of (p, q).
    #[command(allow_negative_numbers = true)]
    Rademacher {
        #[arg(num_args = 2..=4, required = true)]
        entries: Vec<i64>,
    },
    /// P, H, e and φ of a Seifert sphere.
    SeifertData {
        #[arg(long)]
        pairs: String,
        /// Symmetric linking matrix `a,b;c,d` whose signature is reported.
        #[arg(long)]
        linking: Option<String>,
    },
    /// Exact perturbative partition function of a Seifert sphere.
    SeifertZ {
        #[arg(long)]
        pairs: String,
        #[arg(long)]
        order: Option<i32>,
        /// Quadrature cross-check, e.g. `N=2,hbar=0.02`.
        #[arg(long)]
        numeric: Option<String>,
    },
    /// Eigenvalue quadrature: the Seifert integral, or a GUE moment.
    NumericZ {
        #[arg(long)]
        pairs: Option<String>,
        #[arg(long)]
        moment: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        hbar: Option<f64>,
        /// Linear shift t, comma separated, one entry per eigenvalue.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Monte Carlo GUE estimate of <p_λ>.
    GueMc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        partition: String,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// SU(2) WRT invariant of a lens space or an SL(2,Z) surgery.
    #[command(allow_negative_numbers = true)]
    WrtSu2 {
        #[arg(long, num_args = 2, value_names = ["P", "Q"])]
        lens: Option<Vec<i64>>,
        #[arg(long, num_args = 4, value_names = ["P", "R", "Q", "S"])]
        surgery: Option<Vec<i64>>,
        #[arg(long)]
        sphere: bool,
        #[arg(long)]
        level: u32,
        #[arg(long)]
        precision: Option<usize>,
        /// Print the matrix 𝒰 instead of the invariant.
        #[arg(long)]
        u_matrix: bool,
    },
    /// Worked examples, dual-route checks and the grading audit.
    Selftest,
}

fn run(cli: &Cli, cfg: &RunConfig) -> Result<Value, Failure> {
    use commands::*;
    match &cli.command {
        Command::Moment { partition, route, n } => moment(partition, *route, *n),
        Command::Schur { partition, mode, class } => schur(partition, *mode, class.as_deref()),
        Command::Pair { partition, diagram } => pair(partition, diagram),
        Command::Weight { diagram, order, gl_n } => weight(diagram, *order, gl_n.as_deref()),
        Command::Dedekind { p, q, method, precision } => {
            dedekind(*p, *q, *method, precision.unwrap_or(cfg.precision))
        }
        Command::Rademacher { entries } => rademacher(entries),
        Command::SeifertData { pairs, linking } => seifert_data_cmd(pairs, linking.as_deref()),
        Command::SeifertZ { pairs, order, numeric } => {
            let order = order.unwrap_or(cfg.order);
            if order < 0 {
                return Err(Failure::Usage("--order must be >= 0".into()));
            }
            seifert_z(pairs, order, numeric.as_deref(), cfg)
        }
        Command::NumericZ { pairs, moment, n, hbar, shift, tol } => {
            let mut cfg = cfg.clone();
            cfg.tol = tol.unwrap_or(cfg.tol);
            let args = NumericArgs {
                pairs: pairs.as_deref(),
                moment: moment.as_deref(),
                n: *n,
                hbar: *hbar,
                shift: shift.as_deref(),
            };
            numeric_z(args, &cfg)
        }
        Command::GueMc { n, partition, samples, seed } => gue_mc(
            *n,
            partition,
            samples.unwrap_or(cfg.samples),
            seed.unwrap_or(cfg.seed),
        ),
        Command::WrtSu2 { lens, surgery, sphere, level, precision, u_matrix } => wrt_su2(WrtArgs {
            lens: lens.as_deref(),
            surgery: surgery.as_deref(),
            sphere: *sphere,
            level: *level,
            bits: precision.unwrap_or(cfg.precision),
            u_matrix: *u_matrix,
        }),
        Command::Selftest => match selftest::run() {
            (report, true) => Ok(report),
            (report, false) => Err(Failure::Check(report)),
        },
    }
}

fn configure(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if cli.threads.is_some() {
        cfg.threads = cli.threads;
    }
    if cli.output.is_some() {
        cfg.output = cli.output.clone();
    }
    if cfg.threads == Some(0) {
        return Err(Failure::Usage("--threads must be positive".into()));
    }
    #[cfg(feature = "parallel")]
    if let Some(t) = cfg.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    }
    Ok(cfg)
}

fn emit(v: &Value, human: bool, output: Option<&PathBuf>) -> std::io::Result<()> {
    let text = if human {
        human::render(v)
    } else {
        format!("{v}\n")
    };
    match output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure(&cli).and_then(|cfg| run(&cli, &cfg).map(|v| (v, cfg)));
    let (value, output, code) = match result {
        Ok((v, cfg)) => (v, cfg.output, 0),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Compute(e)) => (
            json!({"error": {"code": e.code(), "message": e.to_string()}}),
            None,
            1,
        ),
        Err(Failure::Check(report)) => (report, None, 1),
    };
    if let Err(e) = emit(&value, cli.human, output.as_ref()) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
