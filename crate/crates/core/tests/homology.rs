use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use stabkit::homology::{mapping_cone, smith_normal_form, sparse_invariant_factors, ChainComplex, ChainMap, SparseMatrix};
use stabkit::reference::dense_invariant_factors;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=9, 1usize..=9).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -6i64..=6], c), r)
    })
}

fn big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_normal_form_is_certified(m in matrix()) {
        let dense = big(&m);
        let a = SparseMatrix::from_dense(&dense);
        let s = smith_normal_form(&a);
        let d = s.left_transform.mul(&a).unwrap().mul(&s.right_transform).unwrap();
        prop_assert_eq!(d, s.diagonal(a.rows(), a.cols()));
        prop_assert!(s.left_transform.determinant().unwrap().abs().is_one());
        prop_assert!(s.right_transform.determinant().unwrap().abs().is_one());
        let f: Vec<BigInt> = s.invariant_factors.iter().filter(|x| !x.is_zero()).cloned().collect();
        prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        prop_assert_eq!(&f, &dense_invariant_factors(&dense));
        prop_assert_eq!(f.len(), s.rank);
    }

    /// The machine-word elimination agrees with the arbitrary-precision one.
    #[test]
    fn word_and_bigint_factors_agree(m in matrix()) {
        let small = SparseMatrix::from_dense(&m);
        let a = sparse_invariant_factors(&small);
        let b = sparse_invariant_factors(&small.to_bigint());
        prop_assert!(a.is_none() || a == b);
    }

    /// The cone of the identity on a two-term complex is acyclic.
    #[test]
    fn cone_of_identity_is_acyclic(m in matrix()) {
        let d = SparseMatrix::from_dense(&big(&m));
        let c = ChainComplex::new(0, vec![d.rows(), d.cols()], vec![SparseMatrix::zeros(0, d.rows()), d], false).unwrap();
        let cone = mapping_cone(&ChainMap::identity(&c)).unwrap();
        prop_assert!(cone.check_square_zero().is_ok());
        prop_assert!(cone.homology_all().iter().all(|(_, h)| h.is_trivial()));
    }
}
