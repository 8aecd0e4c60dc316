mod common;

use fgpolar::report::{load_spec, GroupSpecDocument};
use fgpolar::{AxiomViolation, Elem, Error};

#[test]
fn quaternion_table_matches_quaternion_arithmetic() {
    let loaded = load_spec(common::QUATERNION_DOC).unwrap();
    let g = &loaded.group;
    let units = common::quaternion_units();
    for a in 0..8 {
        for b in 0..8 {
            let prod = common::quaternion_mul(units[a], units[b]);
            let c = units.iter().position(|&u| u == prod).unwrap();
            assert_eq!(g.mul(Elem(a as u32), Elem(b as u32)), Elem(c as u32));
        }
    }
}

#[test]
fn quaternion_derived_and_center() {
    let g = load_spec(common::QUATERNION_DOC).unwrap().group;
    // brute force: commutators and central elements straight from the table
    let mut commutators: Vec<u32> = Vec::new();
    let mut central: Vec<u32> = Vec::new();
    for x in g.elements() {
        if g.elements().all(|y| g.mul(x, y) == g.mul(y, x)) {
            central.push(x.0);
        }
        for y in g.elements() {
            let c = g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y)));
            if !commutators.contains(&c.0) {
                commutators.push(c.0);
            }
        }
    }
    commutators.sort_unstable();
    assert_eq!(commutators, vec![0, 1]);
    assert_eq!(central, vec![0, 1]);
    assert_eq!(g.derived_subgroup().ids(), vec![0, 1]);
    assert_eq!(g.center().ids(), vec![0, 1]);
    assert_eq!(g.label(Elem(1)), "-1");
}

#[test]
fn pauli_document_loads() {
    let loaded = load_spec(r#"{"kind":"pauli","p":2,"n":1,"flavor":"complex_qubit"}"#).unwrap();
    assert_eq!(loaded.group.order(), 16);
    let qutrits = load_spec(r#"{"kind":"pauli","p":3,"n":2,"flavor":"qudit_odd"}"#).unwrap();
    assert_eq!(qutrits.group.order(), 243);
}

#[test]
fn broken_associativity_is_rejected_with_witness() {
    // Latin square with identity 0 that is not associative
    let table = vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 3, 4, 2],
        vec![2, 4, 0, 1, 3],
        vec![3, 2, 4, 0, 1],
        vec![4, 3, 1, 2, 0],
    ];
    let doc = GroupSpecDocument::CayleyTable {
        order: 5,
        table: table.clone(),
        labels: None,
    };
    match load_spec(&doc.to_json()) {
        Err(Error::Axiom(AxiomViolation::Associativity { x, y, z })) => {
            assert_ne!(table[table[x][y]][z], table[x][table[y][z]]);
        }
        other => panic!("expected an associativity witness, got {other:?}"),
    }
}

#[test]
fn malformed_documents_report_positions() {
    let err = load_spec(
        "{\n  \"kind\": \"cayley_table\",\n  \"order\": 2,\n  \"table\": [[0, 1], [1, 0]\n}",
    )
    .unwrap_err();
    match err {
        Error::Parse { line, column, .. } => assert_eq!((line, column), (5, 1)),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        load_spec(r#"{"kind":"pauli","p":4,"n":1,"flavor":"qudit_odd"}"#),
        Err(Error::PauliSpec(_)) | Err(Error::NotPrime(_))
    ));
    assert!(matches!(
        load_spec(r#"{"kind":"cayley_table","order":2,"table":[[0,1],[1,1]]}"#),
        Err(Error::Axiom(_))
    ));
}

#[test]
fn exported_tables_round_trip() {
    for spec in common::example_specs() {
        let g = spec.build_group().unwrap();
        let text = GroupSpecDocument::cayley_table_of(&g).to_json();
        let back = load_spec(&text).unwrap().group;
        assert_eq!(back.table_rows(), g.table_rows());
        assert_eq!(back.labels(), g.labels());
    }
}
