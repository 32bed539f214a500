//! End-to-end tests driving the compiled binary: exit codes, report
//! invariants, determinism, and the oracle-generated golden file.

use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::Command;

use tempomine::canon;
use tempomine::cig::construct_cig;
use tempomine::miner::{transform_labels, IsoKind, IsoMode};
use tempomine::report::RunReport;
use tempomine::temporal::{parse_edge_list, TemporalNetwork};
use tempomine::vocab::Vocab;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tempomine"))
}

fn toy_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/toy")
}

fn read_report(path: &Path) -> RunReport {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn mine_toy(out: &Path, extra: &[&str]) -> RunReport {
    let status = bin()
        .args([
            "mine",
            "--data",
            toy_dir().to_str().unwrap(),
            "--min-supp",
            "3",
            "--iso",
            "e",
            "--out",
            out.to_str().unwrap(),
        ])
        .args(extra)
        .status()
        .unwrap();
    assert!(status.success());
    read_report(out)
}

#[test]
fn usage_error_before_data_load() {
    // duration-bin with mode e must fail with the usage exit code even
    // though the data directory does not exist.
    let out = tempfile::tempdir().unwrap();
    let status = bin()
        .args([
            "mine",
            "--data",
            "/nonexistent-dataset-dir",
            "--min-supp",
            "2",
            "--iso",
            "e",
            "--duration-bin",
            "5",
            "--out",
        ])
        .arg(out.path().join("r.json"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
}

#[test]
fn missing_data_dir_is_a_data_error() {
    let out = tempfile::tempdir().unwrap();
    let status = bin()
        .args([
            "mine",
            "--data",
            "/nonexistent-dataset-dir",
            "--min-supp",
            "2",
            "--iso",
            "e",
            "--out",
        ])
        .arg(out.path().join("r.json"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn threshold_above_network_count_yields_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let status = bin()
        .args([
            "mine",
            "--data",
            toy_dir().to_str().unwrap(),
            "--min-supp",
            "4",
            "--iso",
            "e",
            "--out",
            out.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let report = read_report(&out);
    assert!(report.patterns.is_empty());
    assert!(report.histogram.is_empty());
}

#[test]
fn mine_matches_oracle_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let report = mine_toy(&out, &[]);
    let golden: RunReport = serde_json::from_str(
        &std::fs::read_to_string(
            Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/toy_golden.json"),
        )
        .unwrap(),
    )
    .unwrap();
    assert_eq!(report.patterns, golden.patterns);
    assert_eq!(report.histogram, golden.histogram);
}

#[test]
fn oracle_command_agrees_with_mine() {
    let dir = tempfile::tempdir().unwrap();
    let mine_out = dir.path().join("m.json");
    let oracle_out = dir.path().join("o.json");
    let mined = mine_toy(&mine_out, &[]);
    let status = bin()
        .args([
            "oracle",
            "--data",
            toy_dir().to_str().unwrap(),
            "--min-supp",
            "3",
            "--iso",
            "e",
            "--out",
            oracle_out.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let oracle = read_report(&oracle_out);
    let key = |r: &RunReport| -> Vec<(String, usize, usize)> {
        r.patterns
            .iter()
            .map(|p| (p.canonical_label.clone(), p.support, p.temporal_edges))
            .collect()
    };
    assert_eq!(key(&mined), key(&oracle));
}

#[test]
fn worker_counts_give_byte_identical_pattern_sections() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("w1.json");
    let b = dir.path().join("w8.json");
    let r1 = mine_toy(&a, &["--workers", "1"]);
    let r8 = mine_toy(&b, &["--workers", "8"]);
    assert_eq!(
        serde_json::to_string(&r1.patterns).unwrap(),
        serde_json::to_string(&r8.patterns).unwrap()
    );
    assert_eq!(r1.histogram, r8.histogram);
}

#[test]
fn report_edge_lists_reproduce_the_recorded_labels() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let report = mine_toy(&out, &[]);
    assert!(!report.patterns.is_empty());
    for p in &report.patterns {
        // Re-parse the reconstructed edge list, rebuild the CIG, apply
        // the run's (identity) transform, and canonicalize.
        let text: String = p
            .edge_list
            .iter()
            .map(|r| {
                format!(
                    "{} {} {} {} {} {} {}\n",
                    r.u, r.v, r.attr_u, r.attr_e, r.attr_v, r.start, r.duration
                )
            })
            .collect();
        let mut vocab = Vocab::new();
        let network: TemporalNetwork =
            parse_edge_list(BufReader::new(text.as_bytes()), "rt", &mut vocab, 0.0).unwrap();
        let cigs = transform_labels(
            &[construct_cig(&network)],
            &IsoMode {
                kind: IsoKind::Exact,
                duration_bin: None,
            },
            None,
        );
        let label = canon::canonical_label(&cigs[0]).unwrap().serialize(&vocab);
        assert_eq!(label, p.canonical_label, "pattern {}", p.canonical_label);
    }
}

#[test]
fn convert_roundtrip_on_edgelist() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("converted");
    let input = toy_dir().join("net1.edges");
    let status = bin()
        .args([
            "convert",
            input.to_str().unwrap(),
            "--format",
            "edgelist",
            "--out",
            out.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let written = out.join("net1.edges");
    let mut va = Vocab::new();
    let mut vb = Vocab::new();
    let a = parse_edge_list(
        BufReader::new(std::fs::File::open(&input).unwrap()),
        "a",
        &mut va,
        0.0,
    )
    .unwrap();
    let b = parse_edge_list(
        BufReader::new(std::fs::File::open(&written).unwrap()),
        "b",
        &mut vb,
        0.0,
    )
    .unwrap();
    assert_eq!(a.edges.len(), b.edges.len());
}

#[test]
fn convert_sociopatterns_merges_consecutive_contacts() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("contacts.txt");
    // Three consecutive 20s samples for one pair -> one edge.
    std::fs::write(&input, "20 7 9 NUR PAT\n40 7 9 NUR PAT\n60 7 9 NUR PAT\n").unwrap();
    let out = dir.path().join("converted");
    let output = bin()
        .args([
            "convert",
            input.to_str().unwrap(),
            "--format",
            "sociopatterns",
            "--resolution",
            "20",
            "--out",
            out.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("1 edges"), "stdout: {stdout}");
}
