use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{DoubleComplex, SpecSeqError};
use crate::homology::{ChainComplex, ChainMap, SparseMatrix};

/// Finite levels `X_0..X_N` with face maps `d_i: X_p → X_{p−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiSimplicialSet {
    levels: Vec<usize>,
    /// `faces[p − 1][i][x] = d_i(x)` for `x ∈ X_p`.
    faces: Vec<Vec<Vec<usize>>>,
}

impl SemiSimplicialSet {
    /// Checks ranges and `d_i d_j = d_{j−1} d_i` for `i < j`.
    pub fn new(levels: Vec<usize>, faces: Vec<Vec<Vec<usize>>>) -> Result<Self, SpecSeqError> {
        if faces.len() + 1 != levels.len().max(1) {
            return Err(SpecSeqError::BadFace { level: faces.len(), reason: "one face family per positive level".into() });
        }
        for (k, fam) in faces.iter().enumerate() {
            let p = k + 1;
            if fam.len() != p + 1 {
                return Err(SpecSeqError::BadFace { level: p, reason: format!("{} face maps, expected {}", fam.len(), p + 1) });
            }
            for d in fam {
                if d.len() != levels[p] || d.iter().any(|&y| y >= levels[p - 1]) {
                    return Err(SpecSeqError::BadFace { level: p, reason: "face map has the wrong domain or codomain".into() });
                }
            }
        }
        let x = SemiSimplicialSet { levels, faces };
        for p in 2..x.levels.len() {
            for j in 1..=p {
                for i in 0..j {
                    for s in 0..x.levels[p] {
                        if x.face(p - 1, i, x.face(p, j, s)) != x.face(p - 1, j - 1, x.face(p, i, s)) {
                            return Err(SpecSeqError::SimplicialIdentity { level: p, i, j, element: s });
                        }
                    }
                }
            }
        }
        Ok(x)
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    /// `d_i(x)` for `x ∈ X_p`.
    pub fn face(&self, p: usize, i: usize, x: usize) -> usize {
        self.faces[p - 1][i][x]
    }

    /// One point in each level `0..=top`.
    pub fn point(top: usize) -> Self {
        let faces = (1..=top).map(|p| vec![vec![0]; p + 1]).collect();
        Self::new(vec![1; top + 1], faces).expect("constant faces")
    }

    /// Two vertices `a, b` and two edges `a → b`, `b → a`.
    pub fn circle() -> Self {
        // d_0 drops the first vertex, d_1 the last
        Self::new(vec![2, 2], vec![vec![vec![1, 0], vec![0, 1]]]).expect("circle")
    }

    /// Nonempty faces of the `n`-simplex, ordered as increasing vertex lists.
    pub fn simplex(n: usize) -> Self {
        let levels: Vec<Vec<Vec<usize>>> = (0..=n)
            .map(|p| {
                (0u32..1 << (n + 1))
                    .filter(|m| m.count_ones() as usize == p + 1)
                    .map(|m| (0..=n).filter(|&v| m >> v & 1 == 1).collect())
                    .collect()
            })
            .collect();
        let faces = (1..=n)
            .map(|p| {
                (0..=p)
                    .map(|i| {
                        levels[p]
                            .iter()
                            .map(|s| {
                                let mut t = s.clone();
                                t.remove(i);
                                levels[p - 1].iter().position(|u| *u == t).expect("face present")
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self::new(levels.iter().map(Vec::len).collect(), faces).expect("simplex faces")
    }
}

/// Double complex `C_{p,q} = C_q(X_p)` of a levelwise discrete semi-simplicial
/// set: row `q = 0` only, `d^H = Σ (−1)^i d_i`, `d^V = 0`.
pub fn semisimplicial_realization(x: &SemiSimplicialSet) -> DoubleComplex {
    let ranks: Vec<Vec<usize>> = x.levels.iter().map(|&n| vec![n]).collect();
    let horizontal = (1..x.levels.len())
        .map(|p| {
            let trip = (0..=p).flat_map(|i| {
                (0..x.levels[p]).map(move |s| (x.face(p, i, s), s, BigInt::from(if i % 2 == 0 { 1 } else { -1 })))
            });
            let m = SparseMatrix::from_triplets(x.levels[p - 1], x.levels[p], trip).expect("faces in range");
            ((p as isize, 0), m)
        })
        .collect();
    DoubleComplex::new(0, 0, ranks, horizontal, vec![]).expect("simplicial identities give d∘d = 0")
}

/// Double complex of a semi-simplicial object whose levels are chain
/// complexes: `C_{p,q} = (X_p)_q`, `d^V` the level boundary and
/// `d^H = Σ (−1)^i (d_i)_q`. `faces[p − 1][i]` maps level `p` to level `p − 1`.
pub fn realization_of_complexes(
    levels: &[ChainComplex<BigInt>],
    faces: &[Vec<ChainMap<BigInt>>],
) -> Result<DoubleComplex, SpecSeqError> {
    if levels.is_empty() || faces.len() + 1 != levels.len() {
        return Err(SpecSeqError::BadFace { level: faces.len(), reason: "one face family per positive level".into() });
    }
    let q_min = levels.iter().map(ChainComplex::min_degree).min().expect("nonempty");
    let q_max = levels.iter().map(ChainComplex::max_degree).max().expect("nonempty");
    let qs = q_min..=q_max;
    for (k, fam) in faces.iter().enumerate() {
        let p = k + 1;
        if fam.len() != p + 1 {
            return Err(SpecSeqError::BadFace { level: p, reason: format!("{} face maps, expected {}", fam.len(), p + 1) });
        }
        for q in qs.clone() {
            for d in fam {
                let c = d.component(q);
                if (c.rows(), c.cols()) != (levels[p - 1].rank(q), levels[p].rank(q)) {
                    return Err(SpecSeqError::BadFace { level: p, reason: format!("face map has the wrong shape in degree {q}") });
                }
            }
        }
    }
    for p in 2..levels.len() {
        for j in 1..=p {
            for i in 0..j {
                for q in qs.clone() {
                    let lhs = faces[p - 2][i].component(q).mul(&faces[p - 1][j].component(q))?;
                    let rhs = faces[p - 2][j - 1].component(q).mul(&faces[p - 1][i].component(q))?;
                    if lhs != rhs {
                        return Err(SpecSeqError::SimplicialIdentity { level: p, i, j, element: 0 });
                    }
                }
            }
        }
    }
    let ranks = levels.iter().map(|l| qs.clone().map(|q| l.rank(q)).collect()).collect();
    let mut horizontal = Vec::new();
    for (k, fam) in faces.iter().enumerate() {
        let p = k + 1;
        for q in qs.clone() {
            let mut sum = SparseMatrix::zeros(levels[p - 1].rank(q), levels[p].rank(q));
            for (i, d) in fam.iter().enumerate() {
                let c = d.component(q);
                sum = sum.add(&if i % 2 == 0 { c } else { c.neg() })?;
            }
            horizontal.push(((p as isize, q), sum));
        }
    }
    let vertical = levels
        .iter()
        .enumerate()
        .flat_map(|(p, l)| qs.clone().skip(1).map(move |q| ((p as isize, q), l.boundary(q))))
        .collect();
    DoubleComplex::new(0, q_min, ranks, horizontal, vertical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::AbelianGroup;

    #[test]
    fn circle_and_simplex() {
        let t = semisimplicial_realization(&SemiSimplicialSet::circle()).total_complex().unwrap();
        assert_eq!(t.homology(0).unwrap(), AbelianGroup::free(1));
        assert_eq!(t.homology(1).unwrap(), AbelianGroup::free(1));
        let t = semisimplicial_realization(&SemiSimplicialSet::simplex(2)).total_complex().unwrap();
        assert_eq!(t.ranks(), &[3, 3, 1]);
        assert!((0..=2).all(|k| t.homology(k).unwrap() == if k == 0 { AbelianGroup::free(1) } else { AbelianGroup::zero() }));
    }

    #[test]
    fn rejects_bad_faces() {
        // d_0 d_1 ≠ d_0 d_0 on the single 2-simplex
        let bad = SemiSimplicialSet::new(
            vec![2, 2, 1],
            vec![vec![vec![0, 0], vec![1, 1]], vec![vec![0], vec![1], vec![0]]],
        );
        assert!(matches!(bad, Err(SpecSeqError::SimplicialIdentity { level: 2, .. })));
        assert!(SemiSimplicialSet::new(vec![1, 1], vec![vec![vec![0]]]).is_err());
    }

    #[test]
    fn levels_as_complexes() {
        // X_0 = X_1 = an interval, both faces the identity: realization is
        // the interval times the semi-simplicial point truncated at level 1
        let interval = crate::homology::chain_complex::<BigInt>(&crate::simplicial::named::simplex(1), false);
        let id = ChainMap::identity(&interval);
        let d = realization_of_complexes(&[interval.clone(), interval], &[vec![id.clone(), id]]).unwrap();
        let t = d.total_complex().unwrap();
        // d^H = id − id = 0, so the total homology is two copies of H(interval)
        assert_eq!(t.homology(0).unwrap(), AbelianGroup::free(1));
        assert_eq!(t.homology(1).unwrap(), AbelianGroup::free(1));
        assert_eq!(t.homology(2).unwrap(), AbelianGroup::zero());
    }
}
