use stabkit::arccomplexes::{build_arc_complex, DiscModel};
use stabkit::reference::realizable;
use stabkit::surfaces::Family;

#[test]
fn compatible_matches_refined_circle_on_all_pairs() {
    for q in 3..=6 {
        let m = DiscModel::unlabeled(q).unwrap();
        let arcs = m.arcs(true);
        for (i, a) in arcs.iter().enumerate() {
            for b in &arcs[i + 1..] {
                let c = m.compatible(a, b);
                assert_eq!(c, m.compatible(b, a), "asymmetric on {a} {b}");
                assert_eq!(c, realizable(&m, &[*a, *b]), "q={q}: {a} vs {b}");
            }
            assert!(!m.compatible(a, a));
        }
    }
}

#[test]
fn arc_complexes_are_flag_on_triangles() {
    for q in 3..=5 {
        let m = DiscModel::unlabeled(q).unwrap();
        let cx = build_arc_complex(&m, Family::A, Some(2)).unwrap();
        for t in cx.complex.simplices_of_dim(2) {
            assert!(realizable(&m, &cx.arcs_of(t)), "q={q}: {:?}", cx.arcs_of(t));
        }
    }
}
