mod common;

use std::collections::BTreeSet;

use fgpolar::forms::{self, AlternatingForm};
use fgpolar::geometry::{self, normalize, projective_points, Flat, PolarSpace};
use fgpolar::gfp::{gaussian_binomial, subspaces_of_dim, Subspace};
use fgpolar::{Elem, FiniteGroup, PauliSpec};
use proptest::prelude::*;

fn spec_strategy() -> impl Strategy<Value = PauliSpec> {
    prop_oneof![
        (1u32..=3).prop_map(PauliSpec::complex_qubits),
        (1u32..=3).prop_map(PauliSpec::real_qubits),
        (1u32..=2).prop_map(|n| PauliSpec::qudits(3, n)),
        Just(PauliSpec::qudits(5, 1)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pauli_multiplication_is_associative(spec in spec_strategy(), seed in any::<[u64; 3]>()) {
        let n = spec.order() as u64;
        let [a, b, c] = seed.map(|s| spec.decode((s % n) as usize));
        let left = spec.multiply(&spec.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = spec.multiply(&a, &spec.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn pauli_commutator_is_central_of_order_p(spec in spec_strategy(), seed in any::<[u64; 2]>()) {
        let g = spec.build_group().unwrap();
        let n = g.order() as u64;
        let [x, y] = seed.map(|s| Elem((s % n) as u32));
        let c = g.commutator(x, y).unwrap();
        prop_assert!(g.center().contains(c));
        prop_assert!(g.pow(c, spec.p as i64).is_identity());
    }

    #[test]
    fn normalization_is_idempotent(v in prop::collection::vec(0u32..5, 1..6)) {
        let once = normalize(&v, 5);
        prop_assert_eq!(normalize(&once, 5), once.clone());
        if v.iter().any(|&c| c != 0) {
            prop_assert_eq!(once.iter().find(|&&c| c != 0), Some(&1));
        }
    }

    #[test]
    fn span_contains_generators(rows in prop::collection::vec(prop::collection::vec(0u32..3, 4), 0..4)) {
        let s = Subspace::span(3, 4, &rows);
        for r in &rows {
            prop_assert!(s.contains(r));
        }
        prop_assert_eq!(s.vectors().len(), 3usize.pow(s.dim() as u32));
    }

    #[test]
    fn perp_is_an_involution(rows in prop::collection::vec(prop::collection::vec(0u32..3, 4), 0..4)) {
        let form = standard(3, 2);
        let s = Subspace::span(3, 4, &rows);
        let perp = form.perp(&s);
        prop_assert_eq!(perp.dim() + s.dim(), 4);
        prop_assert_eq!(form.perp(&perp), s);
    }
}

fn standard(p: u32, r: usize) -> AlternatingForm {
    let d = 2 * r;
    let mut gram = vec![vec![0u32; d]; d];
    for i in 0..r {
        gram[i][r + i] = 1;
        gram[r + i][i] = p - 1;
    }
    AlternatingForm::new(p, gram).unwrap()
}

#[test]
fn flat_counts_follow_gaussian_binomials() {
    for (p, d) in [(2u32, 4usize), (3, 3), (2, 5)] {
        for k in 0..=d {
            assert_eq!(
                subspaces_of_dim(p, d, k).len() as u128,
                gaussian_binomial(d as u32, k as u32, p)
            );
        }
        assert_eq!(
            projective_points(p, d).len() as u128,
            gaussian_binomial(d as u32, 1, p)
        );
    }
}

#[test]
fn conjugate_points_span_isotropic_lines() {
    for p in [2u32, 3] {
        let w = PolarSpace::new(standard(p, 2)).unwrap();
        let lines: BTreeSet<&Flat> = w.lines().iter().collect();
        for a in w.points() {
            for b in w.points() {
                if a == b {
                    continue;
                }
                let l = Flat::new(a.subspace().join(&b.subspace()));
                assert_eq!(w.conjugate(a, b), lines.contains(&l));
            }
        }
    }
}

#[test]
fn commutation_transfers_to_conjugacy() {
    for (spec, g) in common::example_groups() {
        let w = geometry::symplectic_polar_space(&g, spec.p, None).unwrap();
        let z = g.center();
        let pts = w.quotient.polar.points();
        for x in g.elements().filter(|&x| !z.contains(x)) {
            for y in g.elements().filter(|&y| !z.contains(y)) {
                let (a, b) = (
                    w.point_of_element(x).unwrap(),
                    w.point_of_element(y).unwrap(),
                );
                assert_eq!(
                    g.commutes(x, y),
                    w.quotient.polar.conjugate(&pts[a], &pts[b])
                );
            }
        }
    }
}

#[test]
fn nucleus_join_on_subgroups() {
    for n in 1..=2 {
        let g = PauliSpec::complex_qubits(n).build_group().unwrap();
        let pairs = geometry::nucleus_join_subgroups(&g).unwrap();
        for (t, c) in &pairs {
            assert!(g.exponent_divides(t, 2));
            assert!(g.is_commutative_subgroup(c));
            assert!(g.center().is_subgroup_of(c));
        }
        // 1 (K itself) + 15 points + 15 lines for two qubits
        assert_eq!(pairs.len(), if n == 1 { 1 + 3 } else { 1 + 15 + 15 });
    }
}

#[test]
fn singular_flats_are_totally_isotropic_for_the_group_form() {
    for (spec, g) in common::example_groups()
        .into_iter()
        .filter(|(s, _)| s.p == 2)
    {
        let gq = geometry::quadric_of_group(&g).unwrap();
        let gc = forms::choose_generator(&g, 2, None).unwrap();
        let form = forms::bilinear_form(&gq.space, &gc).unwrap();
        assert_eq!(&form, gq.quadric.polar(), "{spec:?}");
        for k in 0..=gq.quadric.max_singular_dim().max(0) as usize {
            for f in gq.quadric.singular_flats(k) {
                assert!(form.is_totally_isotropic(f.subspace()));
                let sub = gq.space.subgroup_of_subspace(f.subspace());
                assert!(g.exponent_divides(&sub, 2));
            }
        }
    }
}

#[test]
fn vector_space_laws_on_factor_groups() {
    for (spec, g) in common::example_groups() {
        let z = g.center();
        let space = fgpolar::VectorSpace::new(g.factor_group(&z).unwrap(), spec.p).unwrap();
        for x in g.elements() {
            for y in g.elements() {
                let sum = space.vector_of(x).add(&space.vector_of(y));
                assert_eq!(space.vector_of(g.mul(x, y)), sum);
            }
            assert!(space.vector_of(g.pow(x, spec.p as i64)).is_zero());
        }
    }
}

#[test]
fn degenerate_groups_need_the_quotient() {
    let g: FiniteGroup = PauliSpec::complex_qubits(1).build_group().unwrap();
    let k = g.torsion_center();
    assert!(geometry::symplectic_polar_space_for(&g, &k, 2).is_err());
    let q = geometry::quotient_polar_space(&g, &k, 2, None).unwrap();
    for pt in q.quotient.polar.points() {
        assert_eq!(q.quotient.flat_dims(&Flat::from(pt)), (1, 0));
        assert_eq!(q.condensation(pt).len(), 4);
    }
}
