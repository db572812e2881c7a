use proptest::prelude::*;
use stabkit::grouphom::{Budget, FiniteGroup};
use stabkit::homology::AbelianGroup;
use stabkit::simplicial::{named, Simplex, SimplicialComplex};
use stabkit::specseq::{run_to_limit, vertical_E1, Filtration};
use stabkit::stability::{
    demo_annulus, equivariant_double_complex, shapiro_E1, vanishing_check, Action, EquivariantMap, GroupAction,
    OrbitComplex, ShapiroStatus, StabilityError,
};

/// `Z/n` permuting `n` isolated points.
fn points(n: usize) -> GroupAction {
    GroupAction::rotation(n, named::points(n)).unwrap()
}

/// Transitive finite actions whose stabilizers fix simplices pointwise in
/// every dimension, paired with that dimension.
fn transitive_presets() -> Vec<(GroupAction, isize)> {
    let mut out = vec![(GroupAction::triangle_rotation(), 1), (GroupAction::pentagon_rotation(), 1)];
    out.extend((3..=6).map(|n| (GroupAction::rotation(n, named::cycle(n)).unwrap(), 1)));
    out.extend((1..=4).map(|n| (points(n), 0)));
    out
}

#[test]
fn shapiro_holds_on_transitive_actions() {
    let b = Budget::default();
    for (act, dim) in transitive_presets() {
        for p in -1..=dim {
            let r = shapiro_E1(&act, p, 2, &b).unwrap();
            assert_eq!(r.status, ShapiroStatus::Match, "{} p={p}: {r:?}", act.group().name());
        }
    }
    // S3 on the triangle: vertex stabilizers are generated by a transposition
    // fixing the vertex; edge stabilizers flip the edge
    let d3 = GroupAction::triangle_dihedral();
    let v = shapiro_E1(&d3, 0, 2, &b).unwrap();
    assert!(v.holds());
    assert_eq!(v.rows[1].stabilizer.torsion, vec![2.into()]);
    assert_eq!(shapiro_E1(&d3, 1, 2, &b).unwrap().status, ShapiroStatus::RotationPresent);
}

#[test]
fn shapiro_for_the_orbit_presented_action() {
    let oc = OrbitComplex::from_annulus(&stabkit::arccomplexes::annulus_model(5).unwrap()).unwrap();
    let act = Action::InfiniteCyclic(oc);
    assert!(act.check_transitivity(0) && act.check_transitivity(1));
    for p in 0..=1 {
        let r = act.shapiro_E1(p, 2, &Budget::default()).unwrap();
        assert!(r.holds());
        assert_eq!(r.rows[0].direct.free_rank, 1);
    }
}

#[test]
fn annulus_demo() {
    let d = demo_annulus().unwrap();
    assert_eq!(d.homology(), vec![AbelianGroup::free(1), AbelianGroup::free(1), AbelianGroup::zero()]);
    assert!(d.rows.rows_vanish);
    assert_eq!(d.transitive, vec![true, true]);
    assert!(d.columns.limit.terms.iter().all(|t| t.free_rank == 0 && t.torsion.is_empty()));
}

#[test]
fn points_into_a_circle_do_not_vanish() {
    // X = the three vertices, Y = the triangle, f the inclusion: Y is not
    // contractible, so the row spectral sequence keeps a class
    let x = GroupAction::rotation(3, named::points(3)).unwrap();
    let y = GroupAction::triangle_rotation();
    let f = EquivariantMap { phi: vec![0, 1, 2], vertices: vec![0, 1, 2] };
    let dc = equivariant_double_complex(&x, &y, &f, 1, &Budget::default()).unwrap();
    let rows = run_to_limit(&dc, Filtration::Row, None).unwrap();
    assert!(!vanishing_check(&rows, 1));
    assert!(rows.vanishing_frontier < 1);
    // the contractible case vanishes everywhere below the truncation
    let cone = GroupAction::trivial(named::simplex(1));
    let pt = GroupAction::trivial(named::simplex(0));
    let g = EquivariantMap { phi: vec![0], vertices: vec![0] };
    let dc = equivariant_double_complex(&pt, &cone, &g, 1, &Budget::default()).unwrap();
    assert!(vanishing_check(&run_to_limit(&dc, Filtration::Row, None).unwrap(), 1));
}

#[test]
fn errors() {
    let t = GroupAction::triangle_rotation();
    let sq = GroupAction::square_antipodal();
    let bad = EquivariantMap { phi: vec![0, 0, 0], vertices: vec![0, 1, 1] };
    assert!(matches!(
        equivariant_double_complex(&t, &sq, &bad, 1, &Budget::default()),
        Err(StabilityError::NotEquivariant(_))
    ));
    assert!(matches!(
        shapiro_E1(&sq, 1, 2, &Budget::default()),
        Err(StabilityError::NotTransitive { p: 1, orbits: 2 })
    ));
    let big = GroupAction::rotation(12, named::cycle(12)).unwrap();
    assert!(matches!(shapiro_E1(&big, 0, 6, &Budget::default()), Err(StabilityError::Group(_))));
    let weird = SimplicialComplex::from_index_sets(vec!["a".into(), "b".into()], vec![vec![0]]).unwrap();
    assert!(GroupAction::new(FiniteGroup::cyclic(2), weird, vec![vec![0, 1], vec![1, 0]]).is_err());
    assert!(t.stabilizer(&Simplex::new(vec![0, 1])).pointwise.len() == 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Rotating maps between cycles: `v ↦ v + s mod n` from the `kn`-cycle
    /// with `Z/n` acting by `v ↦ v + k·g`, and `φ(g) = k·g`.
    #[test]
    fn cone_columns(n in 3usize..=5, k in 1usize..=2, s in 0usize..5, q_max in 1usize..=2) {
        let x = GroupAction::rotation(n, named::cycle(k * n)).unwrap();
        let y = GroupAction::rotation(n, named::cycle(n)).unwrap();
        let phi: Vec<usize> = (0..n).map(|g| g * k % n).collect();
        let f = EquivariantMap { phi, vertices: (0..k * n).map(|v| ((v + s) % n) as u32).collect() };
        let dc = equivariant_double_complex(&x, &y, &f, q_max, &Budget::default()).unwrap();
        prop_assert!(dc.total_complex().is_ok());
        if k == 1 {
            // a rotation of the cycle is an isomorphism, so every column is a
            // cone of an isomorphism
            let e1 = vertical_E1(&dc).unwrap();
            for (p, q) in dc.bidegrees().filter(|&(_, q)| q <= q_max as isize) {
                prop_assert!(e1.term(p, q).is_trivial());
            }
        }
    }

    #[test]
    fn identity_cones_are_column_exact(which in 0usize..4) {
        let act = match which {
            0 => GroupAction::triangle_rotation(),
            1 => GroupAction::triangle_dihedral(),
            2 => GroupAction::square_antipodal(),
            _ => GroupAction::edge_swap(),
        };
        let dc = equivariant_double_complex(&act, &act, &EquivariantMap::identity(&act), 1, &Budget::default()).unwrap();
        let e1 = vertical_E1(&dc).unwrap();
        for (p, q) in dc.bidegrees().filter(|&(_, q)| q <= 1) {
            prop_assert!(e1.term(p, q).is_trivial());
        }
    }
}
