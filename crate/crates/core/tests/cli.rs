use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use d2ptas::experiment::{
    generate_planted, ingest_csv, run_experiment, write_csv, Command as Cmd, ExperimentSpec,
    PlantedParams, RunReport,
};
use d2ptas::{Error, RngStream};

fn d2ptas(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_d2ptas"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn report(path: &Path) -> RunReport {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn oracle_on_the_four_point_fixture() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("tiny.csv"), "x\n0\n1\n4\n5\n").unwrap();
    let out = d2ptas(
        &[
            "oracle", "--k", "2", "--input", "tiny.csv", "--output", "r.json",
        ],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = report(&dir.path().join("r.json"));
    assert_eq!(r.results["oracle"].cost, 1.0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("oracle"));
}

#[test]
fn cluster_report_schema() {
    let dir = tempfile::tempdir().unwrap();
    let gen = d2ptas(
        &[
            "generate",
            "--seed",
            "1",
            "--per-cluster",
            "30",
            "--output",
            "blobs.csv",
        ],
        dir.path(),
    );
    assert_eq!(gen.status.code(), Some(0));
    let args = [
        "cluster",
        "--k",
        "3",
        "--epsilon",
        "0.5",
        "--preset",
        "desk",
        "--seed",
        "42",
        "--input",
        "blobs.csv",
    ];
    let out = d2ptas(&[&args[..], &["--output", "r.json"]].concat(), dir.path());
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let raw: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    for key in ["spec", "results", "properties", "seed", "version"] {
        assert!(raw.get(key).is_some(), "missing {key}");
    }
    let results = raw["results"].as_object().unwrap();
    assert!(results.contains_key("ptas") && results.contains_key("kmeans++/lloyd"));
    for r in results.values() {
        assert!(r["ratio"].as_f64().unwrap() >= 1.0);
        for key in ["cost", "ratio", "seconds"] {
            assert!(r.get(key).is_some());
        }
    }
    // Without --output the JSON goes to stdout.
    let out = d2ptas(&args, dir.path());
    let parsed: RunReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        parsed.without_timing().results,
        report(&dir.path().join("r.json")).without_timing().results
    );
}

#[test]
fn kl_property_suite() {
    let dir = tempfile::tempdir().unwrap();
    let out = d2ptas(
        &[
            "properties",
            "--measure",
            "kl",
            "--domain",
            "0.1:0.9",
            "--trials",
            "100000",
            "--output",
            "p.json",
        ],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = report(&dir.path().join("p.json"));
    assert_eq!(r.properties.len(), 4);
    for p in &r.properties {
        assert!(p.passed(), "{p:?}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    for usage in [
        vec!["cluster", "--bogus"],
        vec!["cluster", "--strategy", "greedy"],
        vec!["cluster", "--measure", "euclid"],
        vec!["cluster", "--domain", "0.9:0.1"],
        vec!["frobnicate"],
    ] {
        assert_eq!(
            d2ptas(&usage, dir.path()).status.code(),
            Some(2),
            "{usage:?}"
        );
    }
    let missing = d2ptas(&["oracle", "--input", "nope.csv"], dir.path());
    assert_eq!(missing.status.code(), Some(1));
    assert!(!missing.stderr.is_empty());

    let paper = d2ptas(
        &["cluster", "--preset", "paper", "--per-cluster", "5"],
        dir.path(),
    );
    assert_eq!(paper.status.code(), Some(1));
    let msg = String::from_utf8_lossy(&paper.stderr);
    assert!(
        msg.contains("N = 1228800") && msg.contains("M = 200") && msg.contains("C(N, M)"),
        "{msg}"
    );

    fs::write(dir.path().join("a.csv"), "1,2\n2,1\n").unwrap();
    fs::write(dir.path().join("pts.csv"), "0,0\n1,1\n5,5\n6,6\n").unwrap();
    let bad_matrix = d2ptas(
        &[
            "oracle",
            "--k",
            "2",
            "--input",
            "pts.csv",
            "--measure",
            "mahalanobis:a.csv",
        ],
        dir.path(),
    );
    assert_eq!(bad_matrix.status.code(), Some(1));

    fs::write(dir.path().join("ragged.csv"), "1,2\n3\n").unwrap();
    let ragged = d2ptas(&["oracle", "--input", "ragged.csv"], dir.path());
    assert_eq!(ragged.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&ragged.stderr).contains("line 2"));
}

#[test]
fn mahalanobis_from_a_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("a.csv"), "2,0.5\n0.5,1\n").unwrap();
    fs::write(dir.path().join("pts.csv"), "0,0\n1,1\n5,5\n6,6\n").unwrap();
    let out = d2ptas(
        &[
            "oracle",
            "--k",
            "2",
            "--input",
            "pts.csv",
            "--measure",
            "mahalanobis:a.csv",
            "--output",
            "r.json",
        ],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    // Each pair costs D_A((0,0),(1,1)) / 2 = 4 / 2.
    assert_eq!(
        report(&dir.path().join("r.json")).results["oracle"].cost,
        4.0
    );
}

#[test]
fn log_variable_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_d2ptas"))
        .args([
            "cluster",
            "--per-cluster",
            "5",
            "--epsilon",
            "0.9",
            "--output",
            "r.json",
        ])
        .env("D2PTAS_LOG", "warn")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("clamping"));
}

#[test]
fn generated_csv_is_byte_identical_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.csv", "b.csv"] {
        let out = d2ptas(
            &[
                "generate",
                "--seed",
                "9",
                "--output",
                name,
                "--labels",
                "labels.txt",
            ],
            dir.path(),
        );
        assert_eq!(out.status.code(), Some(0));
    }
    let a = fs::read(dir.path().join("a.csv")).unwrap();
    assert_eq!(a, fs::read(dir.path().join("b.csv")).unwrap());

    let planted =
        generate_planted(&PlantedParams::default(), &RngStream::new(9).substream(1)).unwrap();
    let back = ingest_csv(dir.path().join("a.csv")).unwrap();
    assert_eq!(back.points(), planted.dataset.points());
    let labels = fs::read_to_string(dir.path().join("labels.txt")).unwrap();
    assert_eq!(labels.lines().count(), 300);

    let mut buf = Vec::new();
    write_csv(&planted.dataset, &mut buf).unwrap();
    assert_eq!(buf, a);
}

#[test]
fn extreme_values_round_trip() {
    let rows = [
        [f64::MIN_POSITIVE, -0.1],
        [1e300, 1.0 / 3.0],
        [-0.0, 5e-324],
    ];
    let data = d2ptas::Dataset::from_rows(&rows).unwrap();
    let mut buf = Vec::new();
    write_csv(&data, &mut buf).unwrap();
    let back = d2ptas::experiment::parse_csv(&buf[..], d2ptas::Domain::Unrestricted).unwrap();
    for (a, b) in data.points().iter().zip(back.points()) {
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }
}

#[test]
fn library_runs_are_reproducible() {
    let spec = ExperimentSpec {
        command: Cmd::Seedbench,
        seed: 5,
        trials: 4,
        generator: PlantedParams {
            per_cluster: 20,
            ..PlantedParams::default()
        },
        ..ExperimentSpec::default()
    };
    let a = run_experiment(&spec).unwrap().without_timing();
    let b = run_experiment(&spec).unwrap().without_timing();
    assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    let other = run_experiment(&ExperimentSpec {
        seed: 6,
        ..spec.clone()
    })
    .unwrap()
    .without_timing();
    assert_ne!(a.to_json().unwrap(), other.to_json().unwrap());
}

#[test]
fn generate_without_output_is_a_config_error() {
    let spec = ExperimentSpec {
        command: Cmd::Generate,
        ..ExperimentSpec::default()
    };
    assert!(matches!(run_experiment(&spec), Err(Error::Config(_))));
}
