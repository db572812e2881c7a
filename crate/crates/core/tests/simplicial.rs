use num_bigint::BigInt;
use proptest::prelude::*;
use stabkit::homology::{chain_complex, homological_connectivity, join_connectivity_bound};
use stabkit::reference::dense_homology;
use stabkit::simplicial::{join, Simplex, SimplicialComplex};

/// Complexes on up to six vertices from a handful of random faces.
fn complex() -> impl Strategy<Value = SimplicialComplex> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec(1u32..(1 << n), 1..=4).prop_map(move |masks| {
            let sets: Vec<Vec<u32>> = masks.iter().map(|m| (0..n as u32).filter(|i| m >> i & 1 == 1).collect()).collect();
            let mut used: Vec<u32> = sets.iter().flatten().copied().collect();
            used.sort_unstable();
            used.dedup();
            let sets = sets.iter().map(|s| s.iter().map(|v| used.binary_search(v).unwrap() as u32).collect()).collect();
            SimplicialComplex::from_index_sets((0..used.len()).map(|i| format!("x{i}")).collect(), sets).unwrap()
        })
    })
}

fn named_simplices(x: &SimplicialComplex) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = x
        .faces_by_dim()
        .iter()
        .flatten()
        .map(|s| {
            let mut n = x.names_of(s);
            n.sort();
            n
        })
        .collect();
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundaries_square_to_zero(x in complex()) {
        let c = chain_complex::<i64>(&x, true);
        prop_assert!(c.check_square_zero().is_ok());
        prop_assert_eq!(chain_complex::<i64>(&x, false).euler_characteristic(), x.euler_characteristic());
    }

    /// Reduced Euler characteristics multiply with a sign under joins.
    #[test]
    fn join_euler_characteristic(x in complex(), y in complex()) {
        let red = |c: &SimplicialComplex| c.euler_characteristic() - 1;
        let j = join(&x, &y);
        prop_assert_eq!(red(&j), -red(&x) * red(&y));
        prop_assert_eq!(j.dim(), x.dim() + y.dim() + 1);
    }

    #[test]
    fn join_raises_connectivity(x in complex(), y in complex()) {
        let (cx, cy) = (homological_connectivity(&x, x.dim()), homological_connectivity(&y, y.dim()));
        let j = join(&x, &y);
        let b = join_connectivity_bound(&[cx, cy]).unwrap();
        prop_assert!(homological_connectivity(&j, j.dim()) >= b.min(j.dim()));
    }

    #[test]
    fn star_is_closure_join_link(x in complex(), pick in any::<prop::sample::Index>()) {
        let faces: Vec<&Simplex> = x.faces_by_dim().iter().flatten().collect();
        let sigma = faces[pick.index(faces.len())];
        let star = x.star(sigma).unwrap();
        let joined = join(&x.closure(sigma).unwrap(), &x.link(sigma).unwrap());
        prop_assert_eq!(named_simplices(&star), named_simplices(&joined));
    }

    #[test]
    fn homology_matches_dense_oracle(x in complex()) {
        let c = chain_complex::<BigInt>(&x, false);
        for (k, h) in c.homology_all() {
            let (free, torsion) = dense_homology(c.rank(k), &c.boundary(k).to_dense(), &c.boundary(k + 1).to_dense());
            prop_assert_eq!((h.free_rank, h.torsion), (free, torsion));
        }
    }
}
