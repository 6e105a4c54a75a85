use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use mirror_stokes::braid::{search_equivalence, SearchLimits};
use mirror_stokes::euler::gram_matrix;
use mirror_stokes::gaussmanin::{cyclic_operator, gauge_compare, gm_connection, newton_slopes};
use mirror_stokes::geometry::{LaurentPoly, PiPhase};
use mirror_stokes::intmat::IntMatrix;
use mirror_stokes::pipeline::{read_manifest_inputs, run_stokes_pipeline, write_atomic, NumericSettings, RunInputs};
use mirror_stokes::quantum::quantum_connection;
use mirror_stokes::{figures, Error, Result};

#[derive(Parser)]
#[command(name = "mirror-stokes", version, about = "Stokes matrices of x^a + x^-b and the matching data of P(a,b)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Critical data, monodromy, quiver and Stokes matrices, as a JSON manifest.
    Stokes(StokesArgs),
    /// Three SVG figures of preimages and lifted paths.
    Figures(FigureArgs),
    /// Connection matrix of the transformed Gauss-Manin system.
    GaussManin(PolyArgs),
    /// Scalar operator from a cyclic vector.
    Operator(OperatorArgs),
    /// Newton polygon of the scalar operator.
    Newton(OperatorArgs),
    /// Quantum connection of P(a,b).
    Quantum(WeightArgs),
    /// Gram matrix of the Euler pairing on O, ..., O(a+b-1).
    Gram(WeightArgs),
    /// Braid word and signs carrying one unipotent matrix to another.
    BraidSearch(BraidArgs),
    /// Gauge comparison of the Gauss-Manin and quantum connections.
    GaugeCompare(GaugeArgs),
}

#[derive(Args)]
struct Numeric {
    /// Seed for the root finder (overrides MIRROR_STOKES_SEED).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    track_tol: Option<f64>,
    /// Scale factor applied to every step size.
    #[arg(long)]
    step_scale: Option<f64>,
}

impl Numeric {
    fn apply(&self, mut s: NumericSettings) -> Result<NumericSettings> {
        s = s.with_env_seed()?;
        if let Some(seed) = self.seed {
            s.seed = seed;
        }
        if let Some(t) = self.track_tol {
            s.track_tol = t;
        }
        if let Some(k) = self.step_scale {
            s.step_scale = k;
        }
        Ok(s)
    }
}

#[derive(Args)]
struct StokesArgs {
    /// Laurent polynomial in x, e.g. "x + x^-3".
    #[arg(long = "f", required_unless_present = "replay")]
    f: Option<String>,
    /// Direction α as a multiple of π, e.g. "pi/8".
    #[arg(long, default_value = "pi/8")]
    alpha_phase: String,
    /// Write the manifest here (atomically) as well as to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Take inputs and settings from an earlier manifest.
    #[arg(long, conflicts_with = "f")]
    replay: Option<PathBuf>,
    /// Leave stage timings out so that reruns are byte-identical.
    #[arg(long)]
    no_timings: bool,
    #[command(flatten)]
    numeric: Numeric,
}

#[derive(Args)]
struct FigureArgs {
    #[arg(long = "f")]
    f: String,
    #[arg(long, default_value = "pi/8")]
    alpha_phase: String,
    #[arg(long, default_value = "figures")]
    out_dir: PathBuf,
    #[command(flatten)]
    numeric: Numeric,
}

#[derive(Args)]
struct PolyArgs {
    #[arg(long = "f")]
    f: String,
}

#[derive(Args)]
struct OperatorArgs {
    #[arg(long = "f")]
    f: String,
    /// Index (from 0) of the basis vector tried first as cyclic vector.
    #[arg(long, default_value_t = 0)]
    seed_index: usize,
}

#[derive(Args)]
struct WeightArgs {
    #[arg(long)]
    a: u32,
    #[arg(long)]
    b: u32,
}

#[derive(Args)]
struct BraidArgs {
    /// Source matrix as JSON rows; defaults to the Gram matrix of P(a,b).
    #[arg(long)]
    source: Option<String>,
    #[arg(long, required_unless_present = "source")]
    a: Option<u32>,
    #[arg(long, required_unless_present = "source")]
    b: Option<u32>,
    /// Target matrix as JSON rows.
    #[arg(long)]
    target: String,
    #[arg(long, default_value_t = 6)]
    depth: usize,
    #[arg(long, default_value_t = 1_000_000)]
    max_nodes: usize,
}

#[derive(Args)]
struct GaugeArgs {
    #[arg(long)]
    a: u32,
    #[arg(long)]
    b: u32,
    /// Compare without the variable flip.
    #[arg(long)]
    no_flip: bool,
}

fn emit(text: &str) -> Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}").and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print<T: Serialize>(value: &T) -> Result<()> {
    emit(&serde_json::to_string_pretty(value)?)
}

fn phase(text: &str) -> Result<PiPhase> {
    Ok(text.parse()?)
}

fn matrix(text: &str) -> Result<IntMatrix> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(text)?;
    IntMatrix::from_rows(&rows).map_err(|e| Error::Input(e.to_string()))
}

fn stokes(args: StokesArgs) -> Result<()> {
    let mut inputs = match &args.replay {
        Some(path) => read_manifest_inputs(path)?,
        None => RunInputs {
            f: args.f.clone().unwrap_or_default(),
            alpha_phase: phase(&args.alpha_phase)?,
            settings: NumericSettings::default(),
        },
    };
    inputs.settings = args.numeric.apply(inputs.settings)?;
    let run = run_stokes_pipeline(&inputs)?;
    let text = run.manifest.to_json(!args.no_timings)?;
    if let Some(out) = &args.out {
        write_atomic(out, text.as_bytes())?;
    }
    emit(&text)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Stokes(args) => stokes(args),
        Command::Figures(args) => {
            let settings = args.numeric.apply(NumericSettings::default())?;
            let files = figures::emit_figures(&args.f, &phase(&args.alpha_phase)?, &settings, &args.out_dir)?;
            print(&json!({ "schema": 1, "files": files }))
        }
        Command::GaussManin(args) => {
            let conn = gm_connection(&LaurentPoly::parse(&args.f)?)?;
            print(&json!({
                "schema": 1,
                "f": args.f,
                "variable": "t",
                "basis": conn.basis_labels(),
                "matrix": conn.matrix.to_strings("t"),
            }))
        }
        Command::Operator(args) => {
            let op = cyclic_operator(&gm_connection(&LaurentPoly::parse(&args.f)?)?, args.seed_index)?;
            let coefficients: Vec<String> = op.descending().iter().map(|c| c.to_string_in("t")).collect();
            print(&json!({
                "schema": 1,
                "f": args.f,
                "order": op.order(),
                "coefficients": coefficients,
                "operator": op.to_string_in("t"),
            }))
        }
        Command::Newton(args) => {
            let op = cyclic_operator(&gm_connection(&LaurentPoly::parse(&args.f)?)?, args.seed_index)?;
            let mut v = serde_json::to_value(newton_slopes(&op).summary())?;
            v["schema"] = Value::from(1);
            v["operator"] = Value::from(op.to_string_in("t"));
            print(&v)
        }
        Command::Quantum(args) => {
            let mut v = serde_json::to_value(quantum_connection(args.a, args.b)?.summary())?;
            v["schema"] = Value::from(1);
            print(&v)
        }
        Command::Gram(args) => {
            if args.a == 0 || args.b == 0 {
                return Err(Error::Input("weights must be positive".into()));
            }
            print(&json!({ "schema": 1, "a": args.a, "b": args.b, "matrix": gram_matrix(args.a, args.b).matrix }))
        }
        Command::BraidSearch(args) => {
            let source = match (&args.source, args.a, args.b) {
                (Some(s), _, _) => matrix(s)?,
                (None, Some(a), Some(b)) if a > 0 && b > 0 => gram_matrix(a, b).matrix,
                _ => return Err(Error::Input("give --source or positive --a and --b".into())),
            };
            let limits = SearchLimits {
                max_depth: args.depth,
                max_nodes: args.max_nodes,
            };
            let cert = search_equivalence(&source, &matrix(&args.target)?, limits)?;
            let mut v = serde_json::to_value(&cert)?;
            v["schema"] = Value::from(1);
            v["nodes"] = Value::from(cert.nodes);
            print(&v)
        }
        Command::GaugeCompare(args) => {
            let f = LaurentPoly::mirror(args.a, args.b);
            let q = quantum_connection(args.a, args.b)?;
            let report = gauge_compare(&gm_connection(&f)?, &q, !args.no_flip)?;
            print(&json!({
                "schema": 1,
                "a": args.a,
                "b": args.b,
                "match": report.matches,
                "flipped": report.flipped,
                "residual": report.residual.to_strings("t"),
                "transformed": report.transformed.to_strings("t"),
            }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
