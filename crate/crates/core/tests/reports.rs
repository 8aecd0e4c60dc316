mod common;

use fgpolar::report::{
    analyze, export, reproduce_paper, AnalyzeOptions, Artifact, DocFormat, LoadedGroup, NSelect,
};
use fgpolar::{Error, PauliSpec};

fn loaded(spec: PauliSpec) -> LoadedGroup {
    LoadedGroup::pauli(spec).unwrap()
}

#[test]
fn single_qubit_fine_structure() {
    let l = loaded(PauliSpec::complex_qubits(1));
    let a = analyze(&l, &AnalyzeOptions::with(NSelect::AutoK)).unwrap();
    let s = a.report.shading.as_ref().unwrap();
    assert_eq!((s.dark, s.light, s.nucleus), (3, 3, 1));
    assert_eq!(
        a.report.quadric.as_ref().unwrap().nucleus.as_deref(),
        Some("iI")
    );
    let fine = a.fine_structure().unwrap();
    assert_eq!((fine.points().len(), fine.lines().len()), (7, 7));
}

#[test]
fn single_qubit_center_has_no_quadratic_form() {
    let l = loaded(PauliSpec::complex_qubits(1));
    let a = analyze(&l, &AnalyzeOptions::with(NSelect::AutoCenter)).unwrap();
    assert_eq!(a.report.polar.as_ref().unwrap().name, "W_1(2)");
    assert!(a
        .report
        .notices
        .iter()
        .any(|n| n.starts_with("no quadratic form on V (condition 5")));
    assert!(a.report.quadric.is_none());
}

#[test]
fn auto_k_falls_back_for_odd_p() {
    let l = loaded(PauliSpec::qudits(3, 2));
    let a = analyze(&l, &AnalyzeOptions::with(NSelect::AutoK)).unwrap();
    assert!(a.report.notices[0].contains("falling back to auto_center"));
    let w = a.report.polar.as_ref().unwrap();
    assert_eq!((w.name.as_str(), w.points, w.lines), ("W_3(3)", 40, 40));
}

#[test]
fn violations_are_reported_not_raised() {
    let l = loaded(PauliSpec::complex_qubits(1));
    // N = {I, -I, Z, -Z} is normal but not central
    let g = &l.group;
    let ids: Vec<usize> = g
        .elements()
        .filter(|&x| ["I", "-I", "Z", "-Z"].contains(&g.label(x)))
        .map(|x| x.index())
        .collect();
    let a = analyze(&l, &AnalyzeOptions::with(NSelect::Explicit(ids))).unwrap();
    assert!(a
        .report
        .violations
        .iter()
        .any(|v| v.starts_with("condition 3:")));
    assert!(a.report.form.is_none());
    // non-subgroups are validation errors
    assert!(analyze(&l, &AnalyzeOptions::with(NSelect::Explicit(vec![0, 1, 2]))).is_err());
}

#[test]
fn commutation_graph_matches_group_commutation() {
    let l = loaded(PauliSpec::complex_qubits(2));
    let g = &l.group;
    let a = analyze(&l, &AnalyzeOptions::with(NSelect::AutoCenter)).unwrap();
    let cg = a.commutation_graph().unwrap();
    let polar = a.polar.as_ref().unwrap();
    let reps = polar.point_reps();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            assert_eq!(cg.edges.contains(&(i, j)), g.commutes(reps[i], reps[j]));
        }
    }
    // each doily point is collinear with 6 others
    assert_eq!(cg.edges.len(), 15 * 6 / 2);
}

#[test]
fn exports_and_selectors() {
    let l = loaded(PauliSpec::complex_qubits(2));
    let a = analyze(&l, &AnalyzeOptions::with(NSelect::AutoCenter)).unwrap();
    let dot = export(&a, Artifact::Incidence, DocFormat::Dot, 0).unwrap();
    assert!(dot.starts_with("graph \"W_3(2)\" {"));
    assert_eq!(dot.matches(" -- p").count(), 45);
    let json = export(&a, Artifact::Report, DocFormat::Json, 0).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["polar"]["points"], 15);
    assert!(matches!(
        export(&a, Artifact::Quadric, DocFormat::Text, 0),
        Err(Error::NotApplicable(_))
    ));
    assert!(export(&a, Artifact::Gq, DocFormat::Text, 0).is_err());
    assert!(export(&a, Artifact::Report, DocFormat::Dot, 0).is_err());
    let table = export(&a, Artifact::Table, DocFormat::Json, 0).unwrap();
    assert_eq!(fgpolar::report::load_spec(&table).unwrap().group, l.group);
}

#[test]
fn reproduction_is_deterministic_and_complete() {
    let first = reproduce_paper().unwrap();
    assert_eq!(first, reproduce_paper().unwrap());
    let doc = |name: &str| &first.iter().find(|d| d.name == name).unwrap().content;

    let doily = doc("example2_center.polar.txt");
    let lines: Vec<&str> = doily.lines().filter(|l| l.starts_with("line ")).collect();
    assert_eq!(lines.len(), 15);
    assert!(lines.iter().all(|l| l.split(' ').count() == 2 + 3));
    let labels: Vec<&str> = doily
        .lines()
        .filter(|l| l.starts_with("point "))
        .map(|l| l.split(' ').nth(2).unwrap())
        .collect();
    assert_eq!(labels.len(), 15);
    assert!(labels
        .iter()
        .all(|l| l.len() == 2 && !l.contains('I') || l.contains('I')));

    let quadric = doc("example4_center.quadric.txt");
    let spec = PauliSpec::real_qubits(2);
    let g = spec.build_group().unwrap();
    let qpoints: Vec<&str> = quadric
        .lines()
        .filter(|l| l.starts_with("point "))
        .map(|l| l.split(' ').nth(2).unwrap())
        .collect();
    assert_eq!(qpoints.len(), 9);
    for label in qpoints {
        let x = g.elements().find(|&x| g.label(x) == label).unwrap();
        let m = spec.to_matrix(&spec.decode(x.index()));
        assert!(
            (0..4).all(|i| (0..4).all(|j| m.get(i, j) == m.get(j, i))),
            "{label} not symmetric"
        );
    }

    let gq: serde_json::Value = serde_json::from_str(doc("example5_gq.json")).unwrap();
    assert_eq!(gq["structure"]["points"].as_array().unwrap().len(), 27);
    assert_eq!(gq["structure"]["lines"].as_array().unwrap().len(), 45);
    assert_eq!(gq["line_labels"][0].as_array().unwrap().len(), 3);
    assert!(doc("summary.txt").contains("example5 GQ: 27 points, 45 lines (36+9), order (2,4)"));
}
