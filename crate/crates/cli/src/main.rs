//! Command-line front end: load a problem file, run one of the ranking
//! methods or a parameter sweep, and emit reports as a structured-text
//! document or as CSV tables. Failures print a machine-readable error
//! record on stderr and exit nonzero.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ivif_mcdm::{load_problem, pipeline, LinguisticScale, MethodId, Problem, Report, SweepParam};

#[derive(Parser)]
#[command(
    name = "ivif-mcdm",
    about = "Multi-attribute group decision analysis over interval-valued intuitionistic fuzzy assessments",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// One TOML document on stdout (or --output).
    StructuredText,
    /// One CSV file per table under --out-dir.
    Csv,
}

#[derive(Args)]
struct CommonInputs {
    /// Problem file (TOML).
    problem: PathBuf,
    /// Optional linguistic-scale override file.
    #[arg(long)]
    scale: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the selected method and emit the report.
    Run {
        #[command(flatten)]
        inputs: CommonInputs,
        /// Override the problem file's method (ivifwa | topsis | taxonomy | todim | edas).
        #[arg(long)]
        method: Option<String>,
        /// Emit every intermediate table, not just scores and ranking.
        #[arg(long)]
        emit_intermediates: bool,
        #[arg(long, value_enum, default_value = "structured-text")]
        format: Format,
        /// Output file for structured-text (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
        /// Output directory for CSV tables.
        #[arg(long, default_value = "report")]
        out_dir: PathBuf,
    },
    /// Re-score the problem over a grid of one risk parameter
    /// (always uses the edas method, which owns the swept parameters).
    Sweep {
        #[command(flatten)]
        inputs: CommonInputs,
        /// Parameter to sweep: alpha | beta | gamma | delta | rho.
        #[arg(long)]
        param: String,
        /// Comma-separated grid values.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
        /// Output file (stdout when omitted). Sweeps always emit CSV.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Parse and validate a problem file without running anything.
    Validate {
        #[command(flatten)]
        inputs: CommonInputs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let record = serde_json::json!({
                "error": {
                    "message": err.to_string(),
                    "chain": error_chain(&err),
                }
            });
            eprintln!("{record}");
            ExitCode::FAILURE
        }
    }
}

fn error_chain(err: &ivif_mcdm::Error) -> Vec<String> {
    let mut chain = Vec::new();
    let mut source: Option<&dyn std::error::Error> = std::error::Error::source(err);
    while let Some(e) = source {
        chain.push(e.to_string());
        source = e.source();
    }
    chain
}

fn load(inputs: &CommonInputs) -> ivif_mcdm::Result<Problem> {
    let scale = match &inputs.scale {
        None => LinguisticScale::default(),
        Some(path) => LinguisticScale::from_toml(&std::fs::read_to_string(path)?)?,
    };
    load_problem(&inputs.problem, &scale)
}

fn dispatch(command: Command) -> ivif_mcdm::Result<()> {
    match command {
        Command::Run {
            inputs,
            method,
            emit_intermediates,
            format,
            output,
            out_dir,
        } => {
            let problem = load(&inputs)?;
            let method = match method {
                None => problem.method,
                Some(s) => s.parse::<MethodId>()?,
            };
            let report = pipeline::run_with_method(&problem, method)?;
            emit_report(&report, emit_intermediates, format, output, out_dir)
        }
        Command::Sweep {
            inputs,
            param,
            values,
            output,
        } => {
            let problem = load(&inputs)?;
            let param: SweepParam = param.parse()?;
            let points = pipeline::sweep(&problem, param, &values)?;
            let csv = pipeline::sweep_to_csv(param, &problem.alternatives, &points);
            match output {
                None => print!("{csv}"),
                Some(path) => std::fs::write(path, csv)?,
            }
            Ok(())
        }
        Command::Validate { inputs } => {
            let problem = load(&inputs)?;
            println!(
                "ok: {} alternatives, {} attributes, {} experts, method {}",
                problem.n_alternatives(),
                problem.n_attributes(),
                problem.n_experts(),
                problem.method.as_str()
            );
            Ok(())
        }
    }
}

fn emit_report(
    report: &Report,
    emit_intermediates: bool,
    format: Format,
    output: Option<PathBuf>,
    out_dir: PathBuf,
) -> ivif_mcdm::Result<()> {
    match format {
        Format::StructuredText => {
            let mut doc = report.clone();
            if !emit_intermediates {
                doc.tables.retain(|t| t.name == "scores");
            }
            let text = doc.to_structured_text()?;
            match output {
                None => print!("{text}"),
                Some(path) => std::fs::write(path, text)?,
            }
        }
        Format::Csv => {
            let written = report.write_csv_tables(&out_dir, emit_intermediates)?;
            for f in written {
                println!("{}", out_dir.join(f).display());
            }
        }
    }
    Ok(())
}
