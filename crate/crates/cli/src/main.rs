//! Batch front end: rank | spectrum | diagnose | validate over edge-list
//! files. Output is byte-deterministic for a given input and configuration.
//!
//! Exit codes: 0 success, 1 I/O, 2 input parse error, 3 validation error,
//! 4 non-convergence, 5 estimator/solve failure. `validate` exits 3 when the
//! graph is not matrix-ready (its report still prints).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use linkrank::graph::{LinkGraph, ParseError};
use linkrank::matrix::{ColumnStochasticMatrix, MatrixError};
use linkrank::power::{
    compare_inits, convergence_profile, pagerank_from_trace, power_iterate, InitialVector,
    PowerError,
};
use linkrank::ranking::{normalize_stochastic, rank_pages_exact, DEFAULT_TIE_TOL};
use linkrank::report::{
    to_json, DiagnoseDocument, RankDocument, SpectrumDocument, ValidateDocument,
};
use linkrank::spectral::{
    estimate_lambda2_deflation, estimate_lambda2_ratio, exact_stationary, spectrum_report,
    Lambda2Method, RatioFlag, SpectralError,
};

const EXIT_IO: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_NONCONVERGENCE: u8 = 4;
const EXIT_ESTIMATOR: u8 = 5;

#[derive(Parser)]
#[command(
    name = "linkrank",
    version,
    about = "Link-graph ranking and spectral diagnostics over edge-list files",
    long_about = "Link-graph ranking and spectral diagnostics over edge-list files.\n\
                  Nothing here is randomized: the same input and flags produce\n\
                  byte-identical output."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stationary ranking of the pages (power method, or exact with --exact)
    Rank(CommonArgs),
    /// Gerschgorin discs, characteristic polynomial, roots, realistic verdict
    Spectrum(CommonArgs),
    /// Convergence profile, lambda2 estimates, and the e1-vs-uniform comparison
    Diagnose(CommonArgs),
    /// Parse a graph and report dangling/unreachable pages
    Validate(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Edge-list file: one `source target` pair per line, `#` comments
    input: PathBuf,
    /// L1 convergence tolerance
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Iteration budget
    #[arg(long, default_value_t = 10_000)]
    max_iters: usize,
    /// Initial vector: e1 | uniform | file:PATH (whitespace-separated
    /// nonnegative entries, normalized to sum 1)
    #[arg(long, default_value = "uniform")]
    init: String,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Score difference treated as a tie when grouping ranks
    #[arg(long, default_value_t = DEFAULT_TIE_TOL)]
    tie_tol: f64,
    /// Exact mode: rational stationary solve in `rank`; force the
    /// characteristic polynomial past the dimension cap in `spectrum`
    #[arg(long)]
    exact: bool,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::new(EXIT_PARSE, e.to_string())
    }
}

impl From<MatrixError> for CliError {
    fn from(e: MatrixError) -> Self {
        CliError::new(EXIT_VALIDATION, e.to_string())
    }
}

impl From<PowerError> for CliError {
    fn from(e: PowerError) -> Self {
        let code = match &e {
            PowerError::NotConverged { .. } => EXIT_NONCONVERGENCE,
            PowerError::InitDimension { .. } | PowerError::Ranking(_) | PowerError::Matrix(_) => {
                EXIT_VALIDATION
            }
            _ => EXIT_ESTIMATOR,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::Matrix(m) => m.into(),
            SpectralError::Power(p) => (*p).into(),
            other => CliError::new(EXIT_ESTIMATOR, other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let args = match &cli.command {
        Command::Rank(a) | Command::Spectrum(a) | Command::Diagnose(a) | Command::Validate(a) => a,
    };
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(CliError::new(EXIT_PARSE, "--tol must be positive and finite"));
    }
    if args.max_iters == 0 {
        return Err(CliError::new(EXIT_PARSE, "--max-iters must be at least 1"));
    }
    if !(args.tie_tol >= 0.0 && args.tie_tol.is_finite()) {
        return Err(CliError::new(EXIT_PARSE, "--tie-tol must be nonnegative and finite"));
    }
    match cli.command {
        Command::Rank(args) => cmd_rank(&args),
        Command::Spectrum(args) => cmd_spectrum(&args),
        Command::Diagnose(args) => cmd_diagnose(&args),
        Command::Validate(args) => cmd_validate(&args),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

fn load_graph(path: &Path) -> Result<(String, LinkGraph), CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(EXIT_IO, format!("{shown}: {e}")))?;
    let graph =
        LinkGraph::parse_edge_list(&text).map_err(|e| CliError::new(EXIT_PARSE, format!("{shown}: {e}")))?;
    Ok((shown, graph))
}

fn build_matrix(graph: &LinkGraph) -> Result<ColumnStochasticMatrix, CliError> {
    Ok(ColumnStochasticMatrix::build(graph)?)
}

fn resolve_init(spec: &str) -> Result<InitialVector, CliError> {
    match spec {
        "e1" => Ok(InitialVector::E1),
        "uniform" => Ok(InitialVector::Uniform),
        other => {
            let Some(path) = other.strip_prefix("file:") else {
                return Err(CliError::new(
                    EXIT_PARSE,
                    format!("--init must be e1, uniform, or file:PATH (got {other:?})"),
                ));
            };
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::new(EXIT_IO, format!("{path}: {e}")))?;
            let entries: Vec<f64> = text
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>().map_err(|_| {
                        CliError::new(EXIT_PARSE, format!("{path}: bad vector entry {tok:?}"))
                    })
                })
                .collect::<Result<_, _>>()?;
            let vector = normalize_stochastic(&entries)
                .map_err(|e| CliError::new(EXIT_VALIDATION, format!("{path}: {e}")))?;
            Ok(InitialVector::Custom(vector))
        }
    }
}

fn cmd_rank(args: &CommonArgs) -> Result<u8, CliError> {
    let (input, graph) = load_graph(&args.input)?;
    let m = build_matrix(&graph)?;

    let (doc, table) = if args.exact {
        let exact = exact_stationary(&m)?;
        let table = rank_pages_exact(m.labels(), &exact)
            .map_err(|e| CliError::new(EXIT_VALIDATION, e.to_string()))?;
        (RankDocument::from_exact(&input, &table, &exact), table)
    } else {
        let init = resolve_init(&args.init)?;
        let trace = power_iterate(&m, &init, args.tol, args.max_iters)?;
        let steps = trace.steps();
        let table = pagerank_from_trace(&m, &trace, args.tie_tol)?;
        (RankDocument::from_power(&input, &table, steps), table)
    };

    match args.format {
        Format::Text => print!("{}", doc.to_text(&table)),
        Format::Json => print!("{}", to_json(&doc)),
        Format::Tsv => print!("{}", table.to_tsv()),
    }
    Ok(0)
}

fn cmd_spectrum(args: &CommonArgs) -> Result<u8, CliError> {
    let (input, graph) = load_graph(&args.input)?;
    let m = build_matrix(&graph)?;
    let report = spectrum_report(&m, args.exact)?;
    let doc = SpectrumDocument::new(&input, m.dim(), &report);
    match args.format {
        Format::Text => print!("{}", doc.to_text()),
        Format::Json => print!("{}", to_json(&doc)),
        Format::Tsv => print!("{}", doc.to_tsv()),
    }
    Ok(0)
}

fn cmd_diagnose(args: &CommonArgs) -> Result<u8, CliError> {
    let (input, graph) = load_graph(&args.input)?;
    let m = build_matrix(&graph)?;
    let init = resolve_init(&args.init)?;

    let trace = power_iterate(&m, &init, args.tol, args.max_iters)?;

    // high-accuracy reference for the error column
    let ref_trace = power_iterate(
        &m,
        &InitialVector::Uniform,
        args.tol.min(1e-10),
        args.max_iters.max(10_000),
    )?;
    if !ref_trace.verdict().is_converged() {
        return Err(CliError::new(
            EXIT_NONCONVERGENCE,
            format!(
                "no reference ranking: power iteration from uniform {}",
                ref_trace.verdict()
            ),
        ));
    }
    let reference = ref_trace.final_iterate().clone();

    let ratio = estimate_lambda2_ratio(&trace);
    let deflation = estimate_lambda2_deflation(&m, &reference, 1e-6, 500);

    // power-column base: |λ2| to two decimals, the display convention of the
    // worked examples (prefer a clean ratio estimate, else deflation)
    let magnitude = match (&ratio, &deflation) {
        (Ok(r), _) if r.flag == RatioFlag::Clean => r.magnitude,
        (_, Ok(d)) => d.magnitude(),
        (Ok(r), _) => r.magnitude,
        _ => 0.0,
    };
    let base = (magnitude * 100.0).round() / 100.0;

    let profile = convergence_profile(&trace, &reference, base)?;
    let compare = compare_inits(
        &m,
        &[InitialVector::E1, InitialVector::Uniform],
        args.tol,
        args.max_iters,
    )?;

    let doc = DiagnoseDocument::new(
        &input,
        init.kind(),
        args.tol,
        args.max_iters,
        trace.verdict(),
        trace.steps(),
        ratio.as_ref().map_err(ToString::to_string),
        deflation
            .as_ref()
            .map(|est| (est, Lambda2Method::Deflation))
            .map_err(ToString::to_string),
        base,
        &profile,
        compare,
    );
    match args.format {
        Format::Text => print!("{}", doc.to_text()),
        Format::Json => print!("{}", to_json(&doc)),
        Format::Tsv => print!("{}", doc.to_tsv()),
    }
    Ok(0)
}

fn cmd_validate(args: &CommonArgs) -> Result<u8, CliError> {
    let (input, graph) = load_graph(&args.input)?;
    let report = graph.validate();
    let doc = ValidateDocument::new(&input, &report);
    match args.format {
        Format::Text => print!("{}", doc.to_text()),
        Format::Json => print!("{}", to_json(&doc)),
        Format::Tsv => print!("{}", doc.to_tsv()),
    }
    Ok(if report.matrix_ready() { 0 } else { EXIT_VALIDATION })
}
