//! Run configuration: CLI flags merged over a key=value config file over
//! built-in defaults.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use cliquescope_core::spectral::LabelMode;

/// One analysis per invocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Analysis {
    Cliques,
    Centrality(Measure),
    AverageRank,
    Louvain,
    Spectral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Degree,
    Clique,
    Closeness,
    Betweenness,
    Katz,
}

impl Measure {
    pub fn name(self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::Clique => "clique",
            Measure::Closeness => "closeness",
            Measure::Betweenness => "betweenness",
            Measure::Katz => "katz",
        }
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "degree" => Ok(Measure::Degree),
            "clique" => Ok(Measure::Clique),
            "closeness" => Ok(Measure::Closeness),
            "betweenness" => Ok(Measure::Betweenness),
            "katz" => Ok(Measure::Katz),
            other => Err(format!(
                "unknown measure {other:?} (expected degree, clique, closeness, betweenness, or katz)"
            )),
        }
    }
}

impl FromStr for Analysis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cliques" => Ok(Analysis::Cliques),
            "average-rank" => Ok(Analysis::AverageRank),
            "louvain" => Ok(Analysis::Louvain),
            "spectral" => Ok(Analysis::Spectral),
            other => match other.strip_prefix("centrality:") {
                Some(measure) => Ok(Analysis::Centrality(measure.parse()?)),
                None => Err(format!(
                    "unknown analysis {other:?} (expected cliques, centrality:<measure>, average-rank, louvain, or spectral)"
                )),
            },
        }
    }
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Analysis::Cliques => write!(f, "cliques"),
            Analysis::Centrality(m) => write!(f, "centrality:{}", m.name()),
            Analysis::AverageRank => write!(f, "average-rank"),
            Analysis::Louvain => write!(f, "louvain"),
            Analysis::Spectral => write!(f, "spectral"),
        }
    }
}

/// Short token used in output file names.
pub fn analysis_token(analysis: Analysis) -> &'static str {
    match analysis {
        Analysis::Cliques => "cliques",
        Analysis::Centrality(m) => m.name(),
        Analysis::AverageRank => "average-rank",
        Analysis::Louvain => "louvain",
        Analysis::Spectral => "spectral",
    }
}

/// Fully resolved configuration for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub analysis: Analysis,
    pub input: PathBuf,
    pub output_dir: PathBuf,
    pub delimiter: char,
    pub keep_zero_edges: bool,
    pub svg: bool,
    pub seed: u64,
    pub layout_iterations: usize,
    pub top: usize,
    pub k: Option<usize>,
    pub mode: LabelMode,
    pub dump_embedding: bool,
    pub measures: Vec<Measure>,
    pub from_logs: Option<Vec<PathBuf>>,
    pub katz_alpha: f64,
    pub katz_beta: f64,
    pub katz_tol: f64,
    pub katz_max_iter: usize,
    pub louvain_min_gain: f64,
    pub louvain_max_levels: usize,
}

/// Raw optional values straight from clap, before merging.
#[derive(Debug, Default, Clone)]
pub struct RawOptions {
    pub output_dir: Option<PathBuf>,
    pub delimiter: Option<char>,
    pub keep_zero_edges: bool,
    pub svg: bool,
    pub seed: Option<u64>,
    pub layout_iterations: Option<usize>,
    pub top: Option<usize>,
    pub k: Option<usize>,
    pub mode: Option<String>,
    pub dump_embedding: bool,
    pub measures: Option<String>,
    pub from_logs: Option<String>,
    pub katz_alpha: Option<f64>,
    pub katz_beta: Option<f64>,
    pub katz_tol: Option<f64>,
    pub katz_max_iter: Option<usize>,
    pub louvain_min_gain: Option<f64>,
    pub louvain_max_levels: Option<usize>,
}

/// Plain `key=value` lines; `#` starts a comment.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("config line {}: expected key=value", idx + 1));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn lookup<T: FromStr>(file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, String> {
    match file.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|_| format!("config key {key}: cannot parse {raw:?}")),
    }
}

fn parse_measures(raw: &str) -> Result<Vec<Measure>, String> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(Measure::from_str)
        .collect()
}

/// Flags > config file > defaults. Validates the per-analysis invariants:
/// spectral requires k, average-rank requires at least two measures.
pub fn resolve(
    analysis: Analysis,
    input: PathBuf,
    raw: &RawOptions,
    file: &BTreeMap<String, String>,
) -> Result<RunConfig, String> {
    let mode = match raw
        .mode
        .clone()
        .or_else(|| file.get("mode").cloned())
        .as_deref()
    {
        None => LabelMode::Discretize,
        Some("kmeans") => LabelMode::Kmeans,
        Some("discretize") => LabelMode::Discretize,
        Some(other) => return Err(format!("unknown mode {other:?} (kmeans or discretize)")),
    };
    let measures = match raw
        .measures
        .clone()
        .or_else(|| file.get("measures").cloned())
    {
        None => vec![Measure::Degree, Measure::Clique],
        Some(raw) => parse_measures(&raw)?,
    };
    let from_logs = raw
        .from_logs
        .clone()
        .or_else(|| file.get("from-logs").cloned())
        .map(|raw| {
            raw.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(PathBuf::from)
                .collect::<Vec<_>>()
        });

    let config = RunConfig {
        analysis,
        input,
        output_dir: raw
            .output_dir
            .clone()
            .or_else(|| file.get("output-dir").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(".")),
        delimiter: raw.delimiter.or(lookup(file, "delimiter")?).unwrap_or(','),
        keep_zero_edges: raw.keep_zero_edges
            || lookup::<bool>(file, "keep-zero-edges")?.unwrap_or(false),
        svg: raw.svg || lookup::<bool>(file, "svg")?.unwrap_or(false),
        seed: raw.seed.or(lookup(file, "seed")?).unwrap_or(0),
        layout_iterations: raw
            .layout_iterations
            .or(lookup(file, "iterations")?)
            .unwrap_or(50),
        top: raw.top.or(lookup(file, "top")?).unwrap_or(10),
        k: raw.k.or(lookup(file, "k")?),
        mode,
        dump_embedding: raw.dump_embedding
            || lookup::<bool>(file, "dump-embedding")?.unwrap_or(false),
        measures,
        from_logs,
        katz_alpha: raw.katz_alpha.or(lookup(file, "alpha")?).unwrap_or(0.005),
        katz_beta: raw.katz_beta.or(lookup(file, "beta")?).unwrap_or(1.0),
        katz_tol: raw.katz_tol.or(lookup(file, "tol")?).unwrap_or(1e-9),
        katz_max_iter: raw
            .katz_max_iter
            .or(lookup(file, "max-iter")?)
            .unwrap_or(1000),
        louvain_min_gain: raw
            .louvain_min_gain
            .or(lookup(file, "min-gain")?)
            .unwrap_or(1e-7),
        louvain_max_levels: raw
            .louvain_max_levels
            .or(lookup(file, "max-levels")?)
            .unwrap_or(50),
    };

    if config.analysis == Analysis::Spectral && config.k.is_none() {
        return Err("spectral requires --k <count>".to_string());
    }
    if config.analysis == Analysis::AverageRank
        && config.from_logs.is_none()
        && config.measures.len() < 2
    {
        return Err("average-rank requires at least two measures".to_string());
    }
    if config.layout_iterations == 0 {
        return Err("--iterations must be at least 1".to_string());
    }
    Ok(config)
}
