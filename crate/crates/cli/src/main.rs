//! Command-line front end: parse a group specification, run the terminality
//! pipeline, and print a deterministic text or JSON report.
//!
//! Exit codes: 0 success, 2 input error, 3 cap exceeded, 4 oracle failure or
//! disagreement.

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use reid_tai::report::{self, AnalysisRequest, GroupSource, OutputFormat, RunError};
use reid_tai::MultiplicationTable;

#[derive(Parser)]
#[command(
    name = "reid-tai",
    version,
    about = "Terminality of projective-space quotients by permutation groups, \
             via exact age computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the action of a finite permutation group on projective space.
    Analyze(AnalyzeArgs),
}

#[derive(Args)]
#[command(group = ArgGroup::new("source").required(true))]
struct AnalyzeArgs {
    /// Generators, either as JSON {"degree": n, "generators": ["(1 2 3)"]}
    /// or a bare list like "(1 2 3)(4 5), (1 4)" (degree = largest point)
    #[arg(long, group = "source", value_name = "SPEC")]
    generators: Option<String>,

    /// Path to a multiplication-table JSON file {"size": k, "table": [[...]]},
    /// analyzed through its regular representation
    #[arg(long, group = "source", value_name = "FILE")]
    table: Option<PathBuf>,

    /// Named family expression, e.g. "heisenberg:3" or "dihedral:4 x cyclic:2^6",
    /// analyzed through its regular representation
    #[arg(long, group = "source", value_name = "EXPR")]
    family: Option<String>,

    /// Embed the regular representation with an extra fixed coordinate
    #[arg(long, conflicts_with = "generators")]
    fixed_point: bool,

    /// Also certify the degree-d coordinate power map on the quotient
    #[arg(long = "endo-d", value_name = "D")]
    endo_d: Option<u64>,

    /// Maximum number of group elements to enumerate
    #[arg(long, default_value_t = report::DEFAULT_CAP)]
    cap: usize,

    /// Cross-check every exact chart age against the numeric eigenvalue oracle
    #[arg(long)]
    oracle: bool,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Include the full per-element dump in the report
    #[arg(long)]
    verbose: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() {
    let cli = Cli::parse();
    let Command::Analyze(args) = cli.command;
    std::process::exit(run_analyze(&args));
}

fn run_analyze(args: &AnalyzeArgs) -> i32 {
    let request = match build_request(args) {
        Ok(request) => request,
        Err(err) => {
            eprintln!("error: {err}");
            return err.exit_code();
        }
    };
    match report::run(&request) {
        Ok(report) => {
            match request.format {
                OutputFormat::Text => print!("{}", report::render_text(&report)),
                OutputFormat::Json => print!("{}", report::render_json(&report)),
            }
            // Timing goes to stderr so stdout stays byte-identical across runs.
            eprintln!("analysis time: {} ms", report.timing_ms);
            0
        }
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn build_request(args: &AnalyzeArgs) -> Result<AnalysisRequest, RunError> {
    let source = if let Some(spec) = &args.generators {
        let (degree, generators) = report::parse_generators_input(spec)?;
        GroupSource::Generators { degree, generators }
    } else if let Some(path) = &args.table {
        let contents = std::fs::read_to_string(path).map_err(|err| {
            RunError::BadRequest(format!("cannot read {}: {err}", path.display()))
        })?;
        let table: MultiplicationTable = serde_json::from_str(&contents)?;
        GroupSource::Table {
            table,
            add_fixed_point: args.fixed_point,
        }
    } else if let Some(expr) = &args.family {
        GroupSource::Family {
            family: report::parse_family_spec(expr)?,
            add_fixed_point: args.fixed_point,
        }
    } else {
        unreachable!("clap enforces exactly one source");
    };

    Ok(AnalysisRequest {
        source,
        endo_exponent: args.endo_d,
        cap: args.cap,
        run_oracle: args.oracle,
        format: match args.format {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
        },
        verbose: args.verbose,
    })
}
