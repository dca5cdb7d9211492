use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polyindex::commands::{self, BoundArgs, ScalarChoice};
use polyindex::error::{CliError, CliResult};
use polyindex::text;
use polyindex_core::families::{FamilyKind, FamilySpec};
use polyindex_core::{rational_from_string, set_float_tolerance, Rational, SearchConfig, SubsetPolicy};
use serde_json::Value;

/// Numerical radius, operator norms and numerical-index brackets for
/// polyhedral normed spaces.
#[derive(Parser, Debug)]
#[command(name = "polyindex", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Float-backend tolerance.
    #[arg(long, env = "POLYINDEX_EPS", global = true)]
    eps: Option<f64>,
    /// Worker threads for per-vertex kappa; defaults to available parallelism.
    #[arg(long, env = "POLYINDEX_THREADS", global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Policy {
    /// Every facet incident to the vertex.
    All,
    /// The first linearly independent d of them.
    Subset,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ScalarArg {
    Auto,
    Rational,
    Float,
}

#[derive(clap::Args, Debug)]
struct InputArgs {
    /// Polytope document or bundle; `-` reads standard input.
    #[arg(default_value = "-")]
    input: PathBuf,
    /// Drop repeated and non-extreme input points instead of rejecting them.
    #[arg(long)]
    permissive: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Facets and vertex-facet incidence.
    Hull(InputArgs),
    /// Vertices of the dual unit ball.
    Dual {
        #[command(flatten)]
        input: InputArgs,
        /// Print a bare polytope document instead of a report.
        #[arg(long)]
        document: bool,
    },
    /// Norm of a point, e.g. `--point 2/3,1/3`.
    Norm {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Operator norm, numerical radius and per-vertex profile.
    Radius {
        #[command(flatten)]
        input: InputArgs,
        /// Operator document; defaults to the witness of a bundle input.
        #[arg(long)]
        operator: Option<PathBuf>,
    },
    /// Kappa table and the bracket on the numerical index.
    Bound {
        #[command(flatten)]
        input: InputArgs,
        /// Witness operator document (repeatable).
        #[arg(long = "witness")]
        witnesses: Vec<PathBuf>,
        /// Local search with this many objective evaluations.
        #[arg(long)]
        search: Option<usize>,
        /// Random starting matrices for the search.
        #[arg(long, default_value_t = 4)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Policy::All)]
        policy: Policy,
    },
    /// Generate a family member as a polytope document.
    Family {
        #[arg(value_parser = parse_kind)]
        kind: FamilyKind,
        #[arg(long)]
        n: Option<usize>,
        /// Shear of the oblique prism.
        #[arg(long, default_value = "0", value_parser = parse_rational, allow_hyphen_values = true)]
        l: Rational,
        /// Rescale the last coordinate of 3-dimensional members.
        #[arg(long, default_value = "1", value_parser = parse_rational, allow_hyphen_values = true)]
        height: Rational,
        #[arg(long, value_enum, default_value_t = ScalarArg::Auto)]
        scalar: ScalarArg,
        /// Emit `{"polytope": ..., "witness": ...}` with the known extremal operator.
        #[arg(long)]
        with_witness: bool,
    },
    /// Reproduce the reference table of known indices.
    Verify,
}

fn parse_kind(s: &str) -> Result<FamilyKind, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = FamilyKind::ALL.iter().map(|k| k.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational_from_string(s).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> CliResult<Value> {
    if let Some(eps) = cli.eps {
        if !set_float_tolerance(eps) {
            return Err(CliError::input("eps", format!("{eps} is not a positive finite tolerance")));
        }
    }
    match cli.command {
        Command::Hull(a) => commands::hull(&a.input, a.permissive),
        Command::Dual { input, document } => commands::dual(&input.input, input.permissive, document),
        Command::Norm { input, point } => commands::norm(&input.input, input.permissive, &point),
        Command::Radius { input, operator } => commands::radius(&input.input, input.permissive, operator.as_deref()),
        Command::Bound { input, witnesses, search, starts, seed, policy } => commands::bound(&BoundArgs {
            input: input.input,
            permissive: input.permissive,
            witnesses,
            policy: match policy {
                Policy::All => SubsetPolicy::AllIncident,
                Policy::Subset => SubsetPolicy::FirstIndependent,
            },
            search: search.map(|budget| SearchConfig { budget, random_starts: starts, seed }),
            threads: cli.threads,
        }),
        Command::Family { kind, n, l, height, scalar, with_witness } => {
            let n = match (kind, n) {
                (FamilyKind::BipyramidSquarePrism | FamilyKind::IrregularHexagon, _) => 0,
                (_, Some(n)) => n,
                (_, None) => return Err(CliError::input("n", format!("{kind} needs --n"))),
            };
            let spec = FamilySpec::new(kind, n).with_shear(l).with_height(height);
            let scalar = match scalar {
                ScalarArg::Auto => ScalarChoice::Auto,
                ScalarArg::Rational => ScalarChoice::Rational,
                ScalarArg::Float => ScalarChoice::Float,
            };
            commands::family(&spec, scalar, with_witness)
        }
        Command::Verify => {
            let (report, all) = commands::verify(cli.threads)?;
            if !all {
                emit(&report, cli.format);
                return Err(CliError::Failed("reproduction table has failing rows".into()));
            }
            Ok(report)
        }
    }
}

fn emit(value: &Value, format: Format) {
    let out = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
        Format::Text => text::render(value),
    };
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(value) => {
            emit(&value, format);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
