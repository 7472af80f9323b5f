//! `cliquescope` command line: one analysis per invocation over an
//! edge-list file, with raw logs and optional layout SVGs.

mod config;
mod runner;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use config::{parse_config_file, resolve, Analysis, RawOptions};
use runner::CliError;

/// Weighted-graph analytics: maximal cliques, centrality measures and the
/// average-rank key-figure score, Louvain communities, spectral clustering,
/// and spring-layout SVG export.
#[derive(Parser, Debug)]
#[command(name = "cliquescope", version)]
struct Cli {
    /// Analysis: cliques | centrality:<degree|clique|closeness|betweenness|katz> | average-rank | louvain | spectral
    analysis: String,

    /// Edge-list input file, one `<node><delim><node><delim>[weight]` per line
    input: PathBuf,

    /// Directory for result files (created if missing)
    #[arg(short = 'o', long)]
    output_dir: Option<PathBuf>,

    /// Config file of key=value lines; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,

    /// Field delimiter in the edge list
    #[arg(long)]
    delimiter: Option<char>,

    /// Cluster count (required for spectral)
    #[arg(long)]
    k: Option<usize>,

    /// Spectral label assignment: kmeans | discretize
    #[arg(long)]
    mode: Option<String>,

    /// Seed for layout and k-means
    #[arg(long)]
    seed: Option<u64>,

    /// Measures combined by average-rank, comma-separated
    #[arg(long)]
    measures: Option<String>,

    /// Join previously written score CSVs instead of recomputing
    #[arg(long)]
    from_logs: Option<String>,

    /// Keep zero-weight edges where the analysis permits it
    #[arg(long)]
    keep_zero_edges: bool,

    /// Also write a spring-layout SVG
    #[arg(long)]
    svg: bool,

    /// Spring layout iterations
    #[arg(long)]
    iterations: Option<usize>,

    /// Rows in the printed ranking table
    #[arg(long)]
    top: Option<usize>,

    /// Katz attenuation factor
    #[arg(long)]
    alpha: Option<f64>,

    /// Katz base score
    #[arg(long)]
    beta: Option<f64>,

    /// Katz convergence tolerance
    #[arg(long)]
    tol: Option<f64>,

    /// Katz iteration cap
    #[arg(long)]
    max_iter: Option<usize>,

    /// Louvain sweep gain threshold
    #[arg(long)]
    min_gain: Option<f64>,

    /// Louvain aggregation level cap
    #[arg(long)]
    max_levels: Option<usize>,

    /// Also dump the spectral embedding as TSV
    #[arg(long)]
    dump_embedding: bool,
}

fn main() -> ExitCode {
    // die quietly instead of panicking when stdout is a closed pipe
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(3);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let analysis: Analysis = cli.analysis.parse().map_err(CliError::Config)?;
    let file_map = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Config(format!("cannot read config {}: {e}", path.display()))
            })?;
            parse_config_file(&text).map_err(CliError::Config)?
        }
        None => BTreeMap::new(),
    };
    let raw = RawOptions {
        output_dir: cli.output_dir,
        delimiter: cli.delimiter,
        keep_zero_edges: cli.keep_zero_edges,
        svg: cli.svg,
        seed: cli.seed,
        layout_iterations: cli.iterations,
        top: cli.top,
        k: cli.k,
        mode: cli.mode,
        dump_embedding: cli.dump_embedding,
        measures: cli.measures,
        from_logs: cli.from_logs,
        katz_alpha: cli.alpha,
        katz_beta: cli.beta,
        katz_tol: cli.tol,
        katz_max_iter: cli.max_iter,
        louvain_min_gain: cli.min_gain,
        louvain_max_levels: cli.max_levels,
    };
    let config = resolve(analysis, cli.input, &raw, &file_map).map_err(CliError::Config)?;
    runner::run(&config)
}
