//! Serialization of analysis results: CSV logs, tab-separated reports and
//! partition files, and standalone SVG renderings.

use crate::centrality::{top_k_report, ScoreVector};
use crate::community::Partition;
use crate::error::{Error, Result};
use crate::fmt::format_score;
use crate::graph::WeightedGraph;
use crate::layout::LayoutCoordinates;
use crate::spectral::SpectralEmbedding;

/// Node fill selection for SVG output.
pub enum SvgColoring<'a> {
    /// One default color everywhere.
    Uniform,
    /// Categorical palette keyed by community id.
    ByPartition(&'a Partition),
    /// Sequential light-to-dark ramp over the score range.
    ByScore(&'a ScoreVector),
}

const CATEGORICAL_PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
];
const DEFAULT_FILL: &str = "#4878a8";
const RAMP_LIGHT: (u8, u8, u8) = (0xde, 0xeb, 0xf7);
const RAMP_DARK: (u8, u8, u8) = (0x08, 0x30, 0x6b);

/// `label,value` CSV rows in ascending label order, LF endings.
fn label_value_csv<V: Fn(usize) -> String>(g: &WeightedGraph, value: V) -> String {
    let mut order: Vec<usize> = (0..g.node_count()).collect();
    order.sort_by(|&a, &b| g.label(a).cmp(g.label(b)));
    let mut out = String::from("label,value\n");
    for i in order {
        out.push_str(g.label(i));
        out.push(',');
        out.push_str(&value(i));
        out.push('\n');
    }
    out
}

/// Community assignments as `label,value` CSV.
pub fn partition_csv(g: &WeightedGraph, p: &Partition) -> String {
    label_value_csv(g, |i| p.assignment[i].to_string())
}

/// Scores as `label,value` CSV, values in 6-significant-digit form.
pub fn scores_csv(g: &WeightedGraph, s: &ScoreVector) -> String {
    label_value_csv(g, |i| format_score(s.scores[i]))
}

/// Parses a `label,value` CSV back into its rows.
pub fn parse_label_value_csv(text: &str) -> Result<Vec<(String, String)>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "label,value" => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                issue: crate::error::ParseIssue::Malformed("expected header `label,value`".into()),
            })
        }
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let Some((label, value)) = line.split_once(',') else {
            return Err(Error::Parse {
                line: idx + 1,
                issue: crate::error::ParseIssue::Malformed("expected `label,value`".into()),
            });
        };
        rows.push((label.to_string(), value.to_string()));
    }
    Ok(rows)
}

/// Partition file: `label<TAB>community_id`, ascending label order.
pub fn partition_tsv(g: &WeightedGraph, p: &Partition) -> String {
    let mut order: Vec<usize> = (0..g.node_count()).collect();
    order.sort_by(|&a, &b| g.label(a).cmp(g.label(b)));
    let mut out = String::new();
    for i in order {
        out.push_str(&format!("{}\t{}\n", g.label(i), p.assignment[i]));
    }
    out
}

/// Summary line for a community detection run, Q to 6 decimal places.
pub fn partition_summary(levels: usize, communities: usize, modularity: f64) -> String {
    format!("levels={levels} communities={communities} modularity={modularity:.6}")
}

/// Ranked report: `rank<TAB>label<TAB>score` per line, most central first.
pub fn ranking_report(g: &WeightedGraph, s: &ScoreVector) -> String {
    let mut out = String::new();
    for (position, (label, score)) in top_k_report(g, s, g.node_count()).iter().enumerate() {
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            position + 1,
            label,
            format_score(*score)
        ));
    }
    out
}

/// Embedding dump: `label<TAB>v1<TAB>...<TAB>vk`, ascending label order.
pub fn embedding_tsv(g: &WeightedGraph, e: &SpectralEmbedding) -> String {
    let mut order: Vec<usize> = (0..g.node_count()).collect();
    order.sort_by(|&a, &b| g.label(a).cmp(g.label(b)));
    let mut out = String::new();
    for i in order {
        out.push_str(g.label(i));
        for v in e.row(i) {
            out.push('\t');
            out.push_str(&format_score(*v));
        }
        out.push('\n');
    }
    out
}

fn ramp_color(t: f64) -> String {
    let mix = |a: u8, b: u8| (a as f64 + (b as f64 - a as f64) * t).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        mix(RAMP_LIGHT.0, RAMP_DARK.0),
        mix(RAMP_LIGHT.1, RAMP_DARK.1),
        mix(RAMP_LIGHT.2, RAMP_DARK.2)
    )
}

fn node_fill(coloring: &SvgColoring, node: usize, n: usize) -> String {
    match coloring {
        SvgColoring::Uniform => DEFAULT_FILL.to_string(),
        SvgColoring::ByPartition(p) => {
            if p.assignment.len() != n {
                return DEFAULT_FILL.to_string();
            }
            CATEGORICAL_PALETTE[p.assignment[node] % CATEGORICAL_PALETTE.len()].to_string()
        }
        SvgColoring::ByScore(s) => {
            if s.scores.len() != n {
                return DEFAULT_FILL.to_string();
            }
            let min = s.scores.iter().cloned().fold(f64::INFINITY, f64::min);
            let max = s.scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let t = if max > min {
                (s.scores[node] - min) / (max - min)
            } else {
                0.5
            };
            ramp_color(t)
        }
    }
}

/// Standalone SVG: one line per edge, one colored circle per node. The
/// node coloring carries the meaning; positions are arbitrary.
pub fn export_svg(g: &WeightedGraph, coords: &LayoutCoordinates, coloring: SvgColoring) -> String {
    const SIZE: f64 = 800.0;
    const MARGIN: f64 = 40.0;
    let n = g.node_count();
    assert_eq!(
        coords.positions.len(),
        n,
        "coordinates must cover the graph"
    );
    let place = |v: f64| MARGIN + v * (SIZE - 2.0 * MARGIN);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    ));
    out.push_str(&format!(
        "<rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>\n"
    ));
    for (a, b, _) in g.edges() {
        let (xa, ya) = coords.positions[a];
        let (xb, yb) = coords.positions[b];
        out.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#999999\" stroke-width=\"1\"/>\n",
            place(xa),
            place(ya),
            place(xb),
            place(yb)
        ));
    }
    for i in 0..n {
        let (x, y) = coords.positions[i];
        out.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"5\" fill=\"{}\"><title>{}</title></circle>\n",
            place(x),
            place(y),
            node_fill(&coloring, i, n),
            g.label(i)
        ));
    }
    out.push_str("</svg>\n");
    out
}
