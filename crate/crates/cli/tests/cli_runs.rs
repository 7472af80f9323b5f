//! End-to-end CLI behavior: artifacts, exit codes, config precedence.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn cliquescope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliquescope"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> Output {
    let out = cliquescope(args);
    assert!(
        out.status.success(),
        "expected success, got {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

#[test]
fn degree_run_ranks_star_center_first() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap().to_string();
    run_ok(&[
        "centrality:degree",
        fixture("star.csv").to_str().unwrap(),
        "-o",
        &out_dir,
    ]);
    let report = fs::read_to_string(dir.path().join("star.degree.report.tsv")).unwrap();
    assert!(report.starts_with("1\tc\t4\n"), "report: {report}");
    let csv = fs::read_to_string(dir.path().join("star.degree.csv")).unwrap();
    assert!(csv.contains("c,4\n"));
    assert!(dir.path().join("run.meta").exists());
}

#[test]
fn average_rank_puts_bowtie_hub_first() {
    // hand ranks on the bowtie: degree rank 1 and clique rank 1 -> average 1
    let dir = tempfile::tempdir().unwrap();
    run_ok(&[
        "average-rank",
        "--measures",
        "degree,clique",
        fixture("bowtie.csv").to_str().unwrap(),
        "-o",
        dir.path().to_str().unwrap(),
    ]);
    let report = fs::read_to_string(dir.path().join("bowtie.average-rank.report.tsv")).unwrap();
    assert!(report.starts_with("1\tm\t1\n"), "report: {report}");
}

#[test]
fn spectral_partition_matches_components() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&[
        "spectral",
        "--k",
        "2",
        fixture("two-triangles.csv").to_str().unwrap(),
        "-o",
        dir.path().to_str().unwrap(),
    ]);
    let tsv = fs::read_to_string(dir.path().join("two-triangles.spectral.partition.tsv")).unwrap();
    let mut communities = std::collections::BTreeMap::new();
    for line in tsv.lines() {
        let (label, community) = line.split_once('\t').unwrap();
        communities
            .entry(community.to_string())
            .or_insert_with(Vec::new)
            .push(label.to_string());
    }
    let mut groups: Vec<Vec<String>> = communities.into_values().collect();
    for g in &mut groups {
        g.sort();
    }
    groups.sort();
    assert_eq!(groups, vec![vec!["a1", "a2", "a3"], vec!["b1", "b2", "b3"]]);
}

#[test]
fn louvain_prints_summary_line() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_ok(&[
        "louvain",
        fixture("two-triangles.csv").to_str().unwrap(),
        "-o",
        dir.path().to_str().unwrap(),
    ]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(
        stdout.contains("levels=2 communities=2 modularity=0.500000"),
        "stdout: {stdout}"
    );
    assert!(dir.path().join("two-triangles.louvain.csv").exists());
    assert!(dir
        .path()
        .join("two-triangles.louvain.partition.tsv")
        .exists());
}

#[test]
fn cliques_drop_zero_edges_automatically() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&[
        "cliques",
        fixture("zero-edge.csv").to_str().unwrap(),
        "-o",
        dir.path().to_str().unwrap(),
    ]);
    let text = fs::read_to_string(dir.path().join("zero-edge.cliques.txt")).unwrap();
    assert_eq!(text, "a b\nc d\n");

    // the keep flag is overridden for clique runs, with a note
    let out = run_ok(&[
        "cliques",
        "--keep-zero-edges",
        fixture("zero-edge.csv").to_str().unwrap(),
        "-o",
        dir.path().to_str().unwrap(),
    ]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("always dropped"));
    let text = fs::read_to_string(dir.path().join("zero-edge.cliques.txt")).unwrap();
    assert_eq!(text, "a b\nc d\n");
}

#[test]
fn exit_codes_by_failure_class() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();

    let missing = cliquescope(&["centrality:degree", "no-such-file.csv", "-o", out_dir]);
    assert_eq!(missing.status.code(), Some(2));

    let self_loop = dir.path().join("selfloop.csv");
    fs::write(&self_loop, "a,a,1\n").unwrap();
    let parse = cliquescope(&["cliques", self_loop.to_str().unwrap(), "-o", out_dir]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("line 1"));

    let bad_analysis = cliquescope(&["centrality:pagerank", fixture("star.csv").to_str().unwrap()]);
    assert_eq!(bad_analysis.status.code(), Some(3));

    let no_k = cliquescope(&["spectral", fixture("star.csv").to_str().unwrap()]);
    assert_eq!(no_k.status.code(), Some(3));

    let divergent = cliquescope(&[
        "centrality:katz",
        "--alpha",
        "0.9",
        fixture("two-triangles.csv").to_str().unwrap(),
        "-o",
        out_dir,
    ]);
    assert_eq!(divergent.status.code(), Some(4));

    let blocker = dir.path().join("blocker");
    fs::write(&blocker, "file, not a directory").unwrap();
    let unwritable = cliquescope(&[
        "louvain",
        fixture("star.csv").to_str().unwrap(),
        "-o",
        blocker.join("sub").to_str().unwrap(),
    ]);
    assert_eq!(unwritable.status.code(), Some(2));
}

#[test]
fn config_file_fills_gaps_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.conf");
    fs::write(&config, "k=2\nmode=kmeans\n").unwrap();

    // config file supplies k
    run_ok(&[
        "spectral",
        "--config",
        config.to_str().unwrap(),
        fixture("two-triangles.csv").to_str().unwrap(),
        "-o",
        dir.path().to_str().unwrap(),
    ]);

    // a k=99 config would fail; the flag overrides it
    fs::write(&config, "k=99\n").unwrap();
    run_ok(&[
        "spectral",
        "--config",
        config.to_str().unwrap(),
        "--k",
        "2",
        fixture("two-triangles.csv").to_str().unwrap(),
        "-o",
        dir.path().to_str().unwrap(),
    ]);
    let without_flag = cliquescope(&[
        "spectral",
        "--config",
        config.to_str().unwrap(),
        fixture("two-triangles.csv").to_str().unwrap(),
        "-o",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(without_flag.status.code(), Some(3)); // k=99 > n
}

#[test]
fn from_logs_reproduces_in_process_average_rank() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap().to_string();
    let input = fixture("bowtie.csv");
    run_ok(&["centrality:degree", input.to_str().unwrap(), "-o", &out_dir]);
    run_ok(&["centrality:clique", input.to_str().unwrap(), "-o", &out_dir]);

    let logs = format!(
        "{},{}",
        dir.path().join("bowtie.degree.csv").display(),
        dir.path().join("bowtie.clique.csv").display()
    );
    let joined = dir.path().join("joined");
    run_ok(&[
        "average-rank",
        "--from-logs",
        &logs,
        input.to_str().unwrap(),
        "-o",
        joined.to_str().unwrap(),
    ]);

    let recomputed = dir.path().join("recomputed");
    run_ok(&[
        "average-rank",
        "--measures",
        "degree,clique",
        input.to_str().unwrap(),
        "-o",
        recomputed.to_str().unwrap(),
    ]);

    let a = fs::read(joined.join("bowtie.average-rank.csv")).unwrap();
    let b = fs::read(recomputed.join("bowtie.average-rank.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn rerun_overwrites_previous_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap().to_string();
    let input = fixture("path3.csv");
    run_ok(&["centrality:degree", input.to_str().unwrap(), "-o", &out_dir]);
    let path = dir.path().join("path3.degree.csv");
    let original = fs::read(&path).unwrap();
    fs::write(&path, "tampered").unwrap();
    run_ok(&["centrality:degree", input.to_str().unwrap(), "-o", &out_dir]);
    assert_eq!(fs::read(&path).unwrap(), original);
}

#[test]
fn thread_cap_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("bowtie.csv");
    let single = dir.path().join("single");
    let many = dir.path().join("many");
    for (threads, out) in [("1", &single), ("8", &many)] {
        let status = Command::new(env!("CARGO_BIN_EXE_cliquescope"))
            .args([
                "centrality:betweenness",
                input.to_str().unwrap(),
                "-o",
                out.to_str().unwrap(),
            ])
            .env("CLIQUESCOPE_THREADS", threads)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = fs::read(single.join("bowtie.betweenness.csv")).unwrap();
    let b = fs::read(many.join("bowtie.betweenness.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn closeness_report_footnotes_component_sizes() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&[
        "centrality:closeness",
        fixture("two-triangles.csv").to_str().unwrap(),
        "-o",
        dir.path().to_str().unwrap(),
    ]);
    let report = fs::read_to_string(dir.path().join("two-triangles.closeness.report.tsv")).unwrap();
    assert!(report.contains("# reachable component size per node:"));
    assert!(report.contains("# a1\t3"));
}

#[test]
fn spectral_embedding_dump_is_written() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&[
        "spectral",
        "--k",
        "2",
        "--dump-embedding",
        fixture("two-triangles.csv").to_str().unwrap(),
        "-o",
        dir.path().to_str().unwrap(),
    ]);
    let dump = fs::read_to_string(dir.path().join("two-triangles.spectral.embedding.tsv")).unwrap();
    assert_eq!(dump.lines().count(), 6);
    assert!(dump.lines().all(|l| l.split('\t').count() == 3));
}
