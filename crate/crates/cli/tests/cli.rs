use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

const ONE_QUBIT: &str = r#"{"kind":"pauli","p":2,"n":1,"flavor":"complex_qubit"}"#;
const TWO_QUBITS: &str = r#"{"kind":"pauli","p":2,"n":2,"flavor":"complex_qubit"}"#;
const REAL_QUBIT: &str = r#"{"kind":"pauli","p":2,"n":1,"flavor":"real_qubit"}"#;
const QUTRITS: &str = r#"{"kind":"pauli","p":3,"n":2,"flavor":"qudit_odd"}"#;

fn fgpolar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fgpolar"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = fgpolar(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    fs::read_to_string(path).unwrap()
}

#[test]
fn golden_outputs() {
    let cases: [(&str, Vec<&str>); 5] = [
        (
            "example1_k_report.txt",
            vec!["--n-select", "auto_K", "analyze", ONE_QUBIT],
        ),
        ("doily.dot", vec!["--format", "dot", "polar", TWO_QUBITS]),
        (
            "real1_conditions.json",
            vec!["--format", "json", "conditions", REAL_QUBIT],
        ),
        ("gq_u5.txt", vec!["gq", "--u", "5", QUTRITS]),
        ("summary.txt", vec!["reproduce-paper"]),
    ];
    for (name, args) in cases {
        let first = stdout(&args);
        assert_eq!(first, golden(name), "{name}");
        assert_eq!(first, stdout(&args), "{name} differs between runs");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(
        fgpolar(&["analyze", r#"{"kind":"pauli""#]).status.code(),
        Some(2)
    );
    assert_eq!(
        fgpolar(&[
            "analyze",
            r#"{"kind":"pauli","p":4,"n":1,"flavor":"qudit_odd"}"#
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        fgpolar(&["export", ONE_QUBIT, "--what", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        fgpolar(&["--format", "yaml", "analyze", ONE_QUBIT])
            .status
            .code(),
        Some(2)
    );
    // {±I, ±Z} is normal but not central
    let non_central = ["--n-select", "0,1,8,9", "analyze", ONE_QUBIT];
    assert_eq!(fgpolar(&non_central).status.code(), Some(0));
    let mut strict = vec!["--strict"];
    strict.extend(non_central);
    let out = fgpolar(&strict);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stdout)
        .contains("condition 3: Z in N does not commute with X"));
    // Z(G) has no quadratic form for complex qubits, which only matters at the quadratic level
    assert_eq!(
        fgpolar(&["--strict", "analyze", TWO_QUBITS]).status.code(),
        Some(3)
    );
    assert_eq!(
        fgpolar(&["--strict", "--level", "bilinear", "analyze", TWO_QUBITS])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        fgpolar(&["--strict", "analyze", QUTRITS]).status.code(),
        Some(0)
    );
}

#[test]
fn reproduce_paper_writes_every_document() {
    let dir = std::env::temp_dir().join(format!("fgpolar-golden-{}", std::process::id()));
    let out = fgpolar(&["reproduce-paper", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    let doily = fs::read_to_string(dir.join("example2_center.polar.txt")).unwrap();
    assert_eq!(doily.lines().filter(|l| l.starts_with("line ")).count(), 15);
    let gq = fs::read_to_string(dir.join("example5_gq.txt")).unwrap();
    assert!(gq.starts_with("# GQ(2,4): 27 points, 45 lines\n"));
    assert_eq!(
        fs::read_to_string(dir.join("summary.txt")).unwrap(),
        golden("summary.txt")
    );
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn table_export_round_trips_through_the_cli() {
    let table = stdout(&["export", REAL_QUBIT, "--what", "table", "--format", "json"]);
    let again = stdout(&["export", &table, "--what", "table", "--format", "json"]);
    assert_eq!(table, again);
    let report = stdout(&["--n-select", "auto_K", "analyze", &table]);
    assert!(report.contains("quadric Q+_1(2) (hyperbolic): 2 points"));
}

#[test]
fn commutation_graph_and_spec_files() {
    let dir = std::env::temp_dir().join(format!("fgpolar-spec-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("two_qubits.json");
    fs::write(&spec, TWO_QUBITS).unwrap();
    let graph = stdout(&[
        "export",
        spec.to_str().unwrap(),
        "--what",
        "commutation_graph",
    ]);
    assert!(graph.starts_with("# commutation graph: 15 vertices, 45 edges\n"));
    let out_file = dir.join("graph.dot");
    let out = fgpolar(&[
        "--format",
        "dot",
        "--out",
        out_file.to_str().unwrap(),
        "export",
        spec.to_str().unwrap(),
        "--what",
        "commutation_graph",
    ]);
    assert!(out.status.success() && out.stdout.is_empty());
    assert_eq!(
        fs::read_to_string(&out_file)
            .unwrap()
            .matches(" -- ")
            .count(),
        45
    );
    fs::remove_dir_all(dir).unwrap();
}
