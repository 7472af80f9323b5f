//! Orchestration: parse, transform, run one analysis, log artifacts.
//!
//! The runner is a thin composition over the library; no algorithmic logic
//! lives here.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use cliquescope_core::centrality::{
    average_rank, betweenness_centrality, clique_centrality, closeness_centrality,
    degree_centrality, katz_centrality, rank_scores, top_k_report, Direction, Ranking, ScoreVector,
};
use cliquescope_core::cliques::{bron_kerbosch, clique_membership_counts};
use cliquescope_core::community::louvain;
use cliquescope_core::export::{
    embedding_tsv, export_svg, parse_label_value_csv, partition_csv, partition_summary,
    partition_tsv, ranking_report, scores_csv, SvgColoring,
};
use cliquescope_core::fmt::format_score;
use cliquescope_core::graph::parse_edge_list;
use cliquescope_core::layout::spring_layout;
use cliquescope_core::spectral::{
    discretize_labels, kmeans_labels, laplacian, smallest_eigenpairs, LabelMode, DESK_SCALE_NODES,
};
use cliquescope_core::{Error as CoreError, WeightedGraph};

use crate::config::{analysis_token, Analysis, Measure, RunConfig};

/// Failure categories, one per exit code.
#[derive(Debug)]
pub enum CliError {
    /// Exit 2: unreadable/unparseable input or unwritable output.
    Input(String),
    /// Exit 3: invalid configuration.
    Config(String),
    /// Exit 4: an algorithm failed to converge.
    Algorithm(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Config(_) => 3,
            CliError::Algorithm(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Config(m) | CliError::Algorithm(m) => m,
        }
    }
}

fn from_core(e: CoreError) -> CliError {
    match e {
        CoreError::NonConvergence(_) => CliError::Algorithm(e.to_string()),
        CoreError::InvalidK { .. } => CliError::Config(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

/// Executes one configured analysis run.
pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let started = Instant::now();
    let text = fs::read_to_string(&config.input)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", config.input.display())))?;
    let parsed = parse_edge_list(&text, config.delimiter).map_err(from_core)?;
    println!("{}", parsed.summary());

    // zero-weight edges are structural noise for the unweighted measures
    let forced_drop = matches!(
        config.analysis,
        Analysis::Cliques | Analysis::Centrality(Measure::Degree | Measure::Clique)
    );
    let graph = if forced_drop {
        if config.keep_zero_edges {
            eprintln!(
                "note: zero-weight edges are always dropped for {}",
                config.analysis
            );
        }
        parsed.drop_zero_edges()
    } else if config.keep_zero_edges {
        parsed
    } else {
        parsed.drop_zero_edges()
    };

    fs::create_dir_all(&config.output_dir).map_err(|e| {
        CliError::Input(format!(
            "cannot create output directory {}: {e}",
            config.output_dir.display()
        ))
    })?;

    let stem = config
        .input
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "input".to_string());
    let token = analysis_token(config.analysis);
    let mut artifacts: Vec<PathBuf> = Vec::new();
    let write = |name: String, content: &str| -> Result<PathBuf, CliError> {
        let path = config.output_dir.join(name);
        fs::write(&path, content)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
        Ok(path)
    };

    // coloring input for the optional SVG
    enum Colors {
        Scores(ScoreVector),
        Communities(cliquescope_core::community::Partition),
    }

    let colors = match config.analysis {
        Analysis::Cliques => {
            let cs = bron_kerbosch(&graph, true);
            artifacts.push(write(format!("{stem}.{token}.txt"), &cs.to_text(&graph))?);
            println!("cliques={}", cs.len());
            let counts = clique_membership_counts(&cs, &graph).map_err(from_core)?;
            Colors::Scores(counts)
        }
        Analysis::Centrality(measure) => {
            let scores = compute_measure(&graph, measure, config)?;
            artifacts.push(write(
                format!("{stem}.{token}.csv"),
                &scores_csv(&graph, &scores),
            )?);
            let mut report = ranking_report(&graph, &scores);
            if measure == Measure::Closeness {
                append_component_footnote(&graph, &mut report);
            }
            artifacts.push(write(format!("{stem}.{token}.report.tsv"), &report)?);
            print_top_table(&graph, &scores, config.top);
            Colors::Scores(scores)
        }
        Analysis::AverageRank => {
            let rankings = match &config.from_logs {
                Some(paths) => rankings_from_logs(&graph, paths)?,
                None => config
                    .measures
                    .iter()
                    .map(|&m| compute_measure(&graph, m, config).map(|s| rank_scores(&s)))
                    .collect::<Result<Vec<_>, _>>()?,
            };
            let avg = average_rank(&rankings).map_err(from_core)?;
            artifacts.push(write(
                format!("{stem}.{token}.csv"),
                &scores_csv(&graph, &avg),
            )?);
            artifacts.push(write(
                format!("{stem}.{token}.report.tsv"),
                &ranking_report(&graph, &avg),
            )?);
            print_top_table(&graph, &avg, config.top);
            Colors::Scores(avg)
        }
        Analysis::Louvain => {
            let result = louvain(&graph, config.louvain_min_gain, config.louvain_max_levels)
                .map_err(from_core)?;
            artifacts.push(write(
                format!("{stem}.{token}.csv"),
                &partition_csv(&graph, &result.final_partition),
            )?);
            artifacts.push(write(
                format!("{stem}.{token}.partition.tsv"),
                &partition_tsv(&graph, &result.final_partition),
            )?);
            println!(
                "{}",
                partition_summary(
                    result.levels.len(),
                    result.final_partition.community_count,
                    result.modularity
                )
            );
            Colors::Communities(result.final_partition)
        }
        Analysis::Spectral => {
            let k = config.k.expect("validated when resolving the config");
            if graph.node_count() > DESK_SCALE_NODES {
                eprintln!(
                    "warning: {} nodes exceeds the desk-scale target of {DESK_SCALE_NODES}; \
                     the dense eigensolve will be slow",
                    graph.node_count()
                );
            }
            let l = laplacian(&graph).map_err(from_core)?;
            let embedding = smallest_eigenpairs(&l, k).map_err(from_core)?;
            let partition = match config.mode {
                LabelMode::Kmeans => {
                    kmeans_labels(&embedding, k, config.seed).map_err(from_core)?
                }
                LabelMode::Discretize => {
                    let outcome = discretize_labels(&embedding);
                    if outcome.fell_back {
                        eprintln!(
                            "note: degenerate embedding; discretization fell back to k-means"
                        );
                    }
                    outcome.partition
                }
            };
            artifacts.push(write(
                format!("{stem}.{token}.csv"),
                &partition_csv(&graph, &partition),
            )?);
            artifacts.push(write(
                format!("{stem}.{token}.partition.tsv"),
                &partition_tsv(&graph, &partition),
            )?);
            if config.dump_embedding {
                artifacts.push(write(
                    format!("{stem}.{token}.embedding.tsv"),
                    &embedding_tsv(&graph, &embedding),
                )?);
            }
            println!("communities={}", partition.community_count);
            Colors::Communities(partition)
        }
    };

    if config.svg {
        let layout = spring_layout(&graph, config.seed, config.layout_iterations);
        let coloring = match &colors {
            Colors::Scores(s) => SvgColoring::ByScore(s),
            Colors::Communities(p) => SvgColoring::ByPartition(p),
        };
        let svg = export_svg(&graph, &layout, coloring);
        artifacts.push(write(format!("{stem}.{token}.svg"), &svg)?);
    }

    let meta = run_meta(config, &artifacts, started.elapsed().as_millis());
    let meta_path = config.output_dir.join("run.meta");
    fs::write(&meta_path, meta)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", meta_path.display())))?;

    for path in &artifacts {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn compute_measure(
    g: &WeightedGraph,
    measure: Measure,
    config: &RunConfig,
) -> Result<ScoreVector, CliError> {
    match measure {
        Measure::Degree => Ok(degree_centrality(g)),
        Measure::Clique => Ok(clique_centrality(g)),
        Measure::Closeness => Ok(closeness_centrality(g)),
        Measure::Betweenness => Ok(betweenness_centrality(g)),
        Measure::Katz => katz_centrality(
            g,
            config.katz_alpha,
            config.katz_beta,
            config.katz_tol,
            config.katz_max_iter,
        )
        .map_err(from_core),
    }
}

/// Joins previously written `label,value` score logs into rankings. The
/// measure (and thus its direction) is inferred from the
/// `<stem>.<measure>.csv` naming scheme.
fn rankings_from_logs(g: &WeightedGraph, paths: &[PathBuf]) -> Result<Vec<Ranking>, CliError> {
    if paths.len() < 2 {
        return Err(CliError::Config(
            "average-rank --from-logs requires at least two log files".to_string(),
        ));
    }
    let mut rankings = Vec::with_capacity(paths.len());
    for path in paths {
        let name = path
            .file_name()
            .map(|s| s.to_string_lossy().to_string())
            .unwrap_or_default();
        let parts: Vec<&str> = name.split('.').collect();
        let measure: Measure = parts
            .len()
            .checked_sub(2)
            .and_then(|idx| parts.get(idx))
            .and_then(|token| token.parse().ok())
            .ok_or_else(|| {
                CliError::Config(format!(
                    "cannot infer measure from log file name {name:?} (expected <stem>.<measure>.csv)"
                ))
            })?;
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        let rows = parse_label_value_csv(&text).map_err(from_core)?;
        if rows.len() != g.node_count() {
            return Err(CliError::Input(format!(
                "{}: covers {} nodes, graph has {}",
                path.display(),
                rows.len(),
                g.node_count()
            )));
        }
        let mut scores = vec![f64::NAN; g.node_count()];
        for (label, value) in rows {
            let Some(node) = g.node_id(&label) else {
                return Err(CliError::Input(format!(
                    "{}: label {label:?} not present in the input graph",
                    path.display()
                )));
            };
            scores[node] = value.parse::<f64>().map_err(|_| {
                CliError::Input(format!(
                    "{}: value {value:?} for {label:?} is not a number",
                    path.display()
                ))
            })?;
        }
        let direction = match measure {
            Measure::Closeness => Direction::LowerIsCentral,
            _ => Direction::HigherIsCentral,
        };
        rankings.push(rank_scores(&ScoreVector {
            measure: measure.name().to_string(),
            direction,
            scores,
        }));
    }
    Ok(rankings)
}

/// Console table in the `node (score)` style.
fn print_top_table(g: &WeightedGraph, s: &ScoreVector, top: usize) {
    println!("rank\tnode (score)\t[{}]", s.measure);
    for (position, (label, score)) in top_k_report(g, s, top).iter().enumerate() {
        println!("{}\t{} ({})", position + 1, label, format_score(*score));
    }
}

/// Closeness sums span only each node's reachable component; the report
/// footnotes the component sizes.
fn append_component_footnote(g: &WeightedGraph, report: &mut String) {
    let sizes = g.component_sizes();
    let mut order: Vec<usize> = (0..g.node_count()).collect();
    order.sort_by(|&a, &b| g.label(a).cmp(g.label(b)));
    let _ = writeln!(report, "# reachable component size per node:");
    for i in order {
        let _ = writeln!(report, "# {}\t{}", g.label(i), sizes[i]);
    }
}

fn run_meta(config: &RunConfig, artifacts: &[PathBuf], wall_ms: u128) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "tool=cliquescope {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "analysis={}", config.analysis);
    let _ = writeln!(out, "input={}", config.input.display());
    let _ = writeln!(out, "output_dir={}", config.output_dir.display());
    let _ = writeln!(out, "delimiter={}", config.delimiter);
    let _ = writeln!(out, "keep_zero_edges={}", config.keep_zero_edges);
    let _ = writeln!(out, "svg={}", config.svg);
    let _ = writeln!(out, "seed={}", config.seed);
    let _ = writeln!(out, "layout_iterations={}", config.layout_iterations);
    let _ = writeln!(out, "top={}", config.top);
    let _ = writeln!(
        out,
        "k={}",
        config.k.map(|k| k.to_string()).unwrap_or_default()
    );
    let mode = match config.mode {
        LabelMode::Kmeans => "kmeans",
        LabelMode::Discretize => "discretize",
    };
    let _ = writeln!(out, "mode={mode}");
    let _ = writeln!(out, "dump_embedding={}", config.dump_embedding);
    let measures: Vec<&str> = config.measures.iter().map(|m| m.name()).collect();
    let _ = writeln!(out, "measures={}", measures.join(","));
    let from_logs: Vec<String> = config
        .from_logs
        .iter()
        .flatten()
        .map(|p| p.display().to_string())
        .collect();
    let _ = writeln!(out, "from_logs={}", from_logs.join(","));
    let _ = writeln!(out, "katz_alpha={}", config.katz_alpha);
    let _ = writeln!(out, "katz_beta={}", config.katz_beta);
    let _ = writeln!(out, "katz_tol={}", config.katz_tol);
    let _ = writeln!(out, "katz_max_iter={}", config.katz_max_iter);
    let _ = writeln!(out, "louvain_min_gain={}", config.louvain_min_gain);
    let _ = writeln!(out, "louvain_max_levels={}", config.louvain_max_levels);
    let names: Vec<String> = artifacts
        .iter()
        .filter_map(|p| p.file_name().map(|n| n.to_string_lossy().to_string()))
        .collect();
    let _ = writeln!(out, "artifacts={}", names.join(","));
    let _ = writeln!(out, "wall_time_ms={wall_ms}");
    out
}
