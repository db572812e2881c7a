use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::matrix::SparseMatrix;
use super::scalar::Scalar;
use super::snf::sparse_invariant_factors;
use super::HomologyError;
use crate::simplicial::{Simplex, SimplicialComplex};

/// Finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/torsion[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(with = "super::bigint_list")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::zero(),
            _ => AbelianGroup { free_rank: 0, torsion: vec![BigInt::from(n)] },
        }
    }

    /// Builds from arbitrary cyclic orders (entries ≤ 1 dropped) and
    /// normalizes to an invariant-factor chain.
    pub fn from_cyclic_orders(free_rank: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let diag: Vec<BigInt> = orders.into_iter().filter(|d| d.abs() > BigInt::one()).map(|d| d.abs()).collect();
        if diag.is_empty() {
            return Self::free(free_rank);
        }
        let m = SparseMatrix::from_triplets(diag.len(), diag.len(), diag.into_iter().enumerate().map(|(i, d)| (i, i, d)))
            .expect("diagonal");
        let torsion = super::snf::smith_normal_form(&m)
            .invariant_factors
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        AbelianGroup { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_cyclic_orders(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// JSON record for one homology group.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HomologyReport {
    pub degree: isize,
    pub free_rank: usize,
    #[serde(with = "super::bigint_list")]
    pub torsion: Vec<BigInt>,
}

impl HomologyReport {
    pub fn new(degree: isize, g: &AbelianGroup) -> Self {
        HomologyReport {
            degree,
            free_rank: g.free_rank,
            torsion: g.torsion.clone(),
        }
    }
}

/// Bounded-below chain complex over a finite degree window.
///
/// Groups below `min_degree` are zero. Above the window they are zero too,
/// unless `truncated_above` is set, in which case the top degree's homology
/// is unknown.
#[derive(Debug, Clone)]
pub struct ChainComplex<T> {
    min_degree: isize,
    ranks: Vec<usize>,
    /// `boundaries[i]` is d at degree `min_degree + i`.
    boundaries: Vec<SparseMatrix<T>>,
    truncated_above: bool,
    factors: Vec<OnceLock<Vec<BigInt>>>,
}

impl<T: Scalar> ChainComplex<T> {
    /// `boundaries[i]` must map degree `min_degree + i` to the degree below;
    /// the lowest boundary must have zero rows. d∘d = 0 is verified.
    pub fn new(
        min_degree: isize,
        ranks: Vec<usize>,
        boundaries: Vec<SparseMatrix<T>>,
        truncated_above: bool,
    ) -> Result<Self, HomologyError> {
        if boundaries.len() != ranks.len() {
            return Err(HomologyError::ShapeMismatch { left: (ranks.len(), 0), right: (boundaries.len(), 0) });
        }
        for (i, d) in boundaries.iter().enumerate() {
            let below = if i == 0 { 0 } else { ranks[i - 1] };
            if d.rows() != below || d.cols() != ranks[i] {
                return Err(HomologyError::ShapeMismatch { left: (below, ranks[i]), right: (d.rows(), d.cols()) });
            }
        }
        let c = Self::new_unchecked(min_degree, ranks, boundaries, truncated_above);
        c.check_square_zero()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(
        min_degree: isize,
        ranks: Vec<usize>,
        boundaries: Vec<SparseMatrix<T>>,
        truncated_above: bool,
    ) -> Self {
        let factors = (0..ranks.len()).map(|_| OnceLock::new()).collect();
        ChainComplex { min_degree, ranks, boundaries, truncated_above, factors }
    }

    pub fn check_square_zero(&self) -> Result<(), HomologyError> {
        for i in 1..self.boundaries.len() {
            let dd = self.boundaries[i - 1].to_bigint().mul(&self.boundaries[i].to_bigint())?;
            if !dd.is_zero() {
                return Err(HomologyError::DSquaredNonzero { degree: self.min_degree + i as isize });
            }
        }
        Ok(())
    }

    pub fn min_degree(&self) -> isize {
        self.min_degree
    }

    pub fn max_degree(&self) -> isize {
        self.min_degree + self.ranks.len() as isize - 1
    }

    pub fn is_truncated_above(&self) -> bool {
        self.truncated_above
    }

    pub fn rank(&self, k: isize) -> usize {
        self.slot(k).map_or(0, |i| self.ranks[i])
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    fn slot(&self, k: isize) -> Option<usize> {
        let i = k - self.min_degree;
        (i >= 0 && (i as usize) < self.ranks.len()).then_some(i as usize)
    }

    /// d_k : C_k → C_{k-1}; a zero matrix of the right shape outside the window.
    pub fn boundary(&self, k: isize) -> SparseMatrix<T> {
        match self.slot(k) {
            Some(i) => self.boundaries[i].clone(),
            None => SparseMatrix::zeros(self.rank(k - 1), self.rank(k)),
        }
    }

    pub fn boundary_ref(&self, k: isize) -> Option<&SparseMatrix<T>> {
        self.slot(k).map(|i| &self.boundaries[i])
    }

    /// Invariant factors of d_k (units included), cached.
    pub fn boundary_factors(&self, k: isize) -> &[BigInt] {
        match self.slot(k) {
            None => &[],
            Some(i) => self.factors[i].get_or_init(|| {
                let d = &self.boundaries[i];
                sparse_invariant_factors(d)
                    .or_else(|| sparse_invariant_factors(&d.to_bigint()))
                    .expect("BigInt elimination cannot overflow")
            }),
        }
    }

    /// H_k = ker d_k / im d_{k+1}.
    pub fn homology(&self, k: isize) -> Result<AbelianGroup, HomologyError> {
        if self.truncated_above && k >= self.max_degree() {
            return Err(HomologyError::WindowTooSmall { degree: k, top: self.max_degree() });
        }
        let n = self.rank(k);
        if n == 0 {
            return Ok(AbelianGroup::zero());
        }
        let out_rank = self.boundary_factors(k).len();
        let inc = self.boundary_factors(k + 1);
        Ok(AbelianGroup {
            free_rank: n - out_rank - inc.len(),
            torsion: inc.iter().filter(|d| !d.is_one()).cloned().collect(),
        })
    }

    /// Homology in every degree of the window where it is defined; boundary
    /// factors are computed in parallel.
    pub fn homology_all(&self) -> Vec<(isize, AbelianGroup)> {
        let top = if self.truncated_above { self.max_degree() - 1 } else { self.max_degree() };
        (0..self.ranks.len()).into_par_iter().for_each(|i| {
            self.boundary_factors(self.min_degree + i as isize);
        });
        (self.min_degree..=top).map(|k| (k, self.homology(k).expect("inside window"))).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if (self.min_degree + i as isize).rem_euclid(2) == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    pub fn to_bigint(&self) -> ChainComplex<BigInt> {
        ChainComplex::new_unchecked(
            self.min_degree,
            self.ranks.clone(),
            self.boundaries.iter().map(SparseMatrix::to_bigint).collect(),
            self.truncated_above,
        )
    }

    /// Reindexes the window to start at `min_degree`, padding with zero groups.
    pub fn extended_to(&self, min_degree: isize, max_degree: isize) -> Self {
        let lo = min_degree.min(self.min_degree);
        let hi = max_degree.max(self.max_degree());
        let ranks: Vec<usize> = (lo..=hi).map(|k| self.rank(k)).collect();
        let boundaries = (lo..=hi).map(|k| self.boundary(k)).collect();
        ChainComplex::new_unchecked(lo, ranks, boundaries, self.truncated_above)
    }
}

/// Degreewise matrices `C_k(source) → C_k(target)`.
#[derive(Debug, Clone)]
pub struct ChainMap<T> {
    pub source: ChainComplex<T>,
    pub target: ChainComplex<T>,
    /// Keyed by degree; missing degrees are zero maps.
    pub components: Vec<(isize, SparseMatrix<T>)>,
}

impl<T: Scalar> ChainMap<T> {
    pub fn new(
        source: ChainComplex<T>,
        target: ChainComplex<T>,
        components: Vec<(isize, SparseMatrix<T>)>,
    ) -> Result<Self, HomologyError> {
        for (k, m) in &components {
            if m.rows() != target.rank(*k) || m.cols() != source.rank(*k) {
                return Err(HomologyError::ShapeMismatch {
                    left: (target.rank(*k), source.rank(*k)),
                    right: (m.rows(), m.cols()),
                });
            }
        }
        let f = ChainMap { source, target, components };
        f.check_commutes()?;
        Ok(f)
    }

    pub fn identity(c: &ChainComplex<T>) -> Self {
        let components = (c.min_degree()..=c.max_degree()).map(|k| (k, SparseMatrix::identity(c.rank(k)))).collect();
        ChainMap { source: c.clone(), target: c.clone(), components }
    }

    pub fn component(&self, k: isize) -> SparseMatrix<T> {
        self.components
            .iter()
            .find(|(d, _)| *d == k)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| SparseMatrix::zeros(self.target.rank(k), self.source.rank(k)))
    }

    fn degrees(&self) -> std::ops::RangeInclusive<isize> {
        self.source.min_degree().min(self.target.min_degree())..=self.source.max_degree().max(self.target.max_degree())
    }

    pub fn check_commutes(&self) -> Result<(), HomologyError> {
        for k in self.degrees() {
            let lhs = self.target.boundary(k).to_bigint().mul(&self.component(k).to_bigint())?;
            let rhs = self.component(k - 1).to_bigint().mul(&self.source.boundary(k).to_bigint())?;
            if lhs != rhs {
                return Err(HomologyError::NotAChainMap { degree: k });
            }
        }
        Ok(())
    }
}

/// Mapping cone: `cone_k = target_k ⊕ source_{k-1}` with
/// `d(y, x) = (d y + f x, -d x)`.
pub fn mapping_cone<T: Scalar>(f: &ChainMap<T>) -> Result<ChainComplex<T>, HomologyError> {
    f.check_commutes()?;
    let (s, t) = (&f.source, &f.target);
    let lo = t.min_degree().min(s.min_degree() + 1);
    let hi = t.max_degree().max(s.max_degree() + 1);
    let mut ranks = Vec::new();
    let mut boundaries = Vec::new();
    for k in lo..=hi {
        ranks.push(t.rank(k) + s.rank(k - 1));
        let rows = [t.rank(k - 1), s.rank(k - 2)];
        let cols = [t.rank(k), s.rank(k - 1)];
        let dt = t.boundary(k);
        let fk = f.component(k - 1);
        let ds = s.boundary(k - 1).neg();
        let d = if k == lo {
            SparseMatrix::zeros(0, cols.iter().sum())
        } else {
            SparseMatrix::block(&rows, &cols, &[vec![Some(&dt), Some(&fk)], vec![None, Some(&ds)]])
        };
        boundaries.push(d);
    }
    ChainComplex::new(lo, ranks, boundaries, s.is_truncated_above() || t.is_truncated_above())
}

/// Simplicial chains with the alternating face-map boundary. When `reduced`
/// the augmentation `C_0 → C_{-1} = Z` is the all-ones row.
pub fn chain_complex<T: Scalar>(x: &SimplicialComplex, reduced: bool) -> ChainComplex<T> {
    let top = x.dim().max(0) as usize;
    chain_complex_through(x, reduced, top, false)
}

/// Chains of simplices of dimension ≤ `top`; marked as truncated when the
/// complex has simplices above `top` (or `truncated` is forced).
pub fn chain_complex_through<T: Scalar>(
    x: &SimplicialComplex,
    reduced: bool,
    top: usize,
    truncated: bool,
) -> ChainComplex<T> {
    let levels = x.faces_by_dim();
    let level = |d: usize| -> &[Simplex] { levels.get(d).map(Vec::as_slice).unwrap_or(&[]) };
    let mut ranks = Vec::new();
    let mut boundaries = Vec::new();
    if reduced {
        ranks.push(1);
        boundaries.push(SparseMatrix::zeros(0, 1));
    }
    for d in 0..=top {
        let cells = level(d);
        ranks.push(cells.len());
        let m = if d == 0 {
            if reduced {
                SparseMatrix::from_columns(1, (0..cells.len()).map(|_| vec![(0, T::one())]).collect())
            } else {
                SparseMatrix::zeros(0, cells.len())
            }
        } else {
            let below = level(d - 1);
            let columns: Vec<Vec<(usize, T)>> = cells
                .par_iter()
                .map(|s| {
                    let mut col: Vec<(usize, T)> = s
                        .boundary_faces()
                        .enumerate()
                        .map(|(i, f)| {
                            let row = below.binary_search(&f).expect("downward closed");
                            (row, if i % 2 == 0 { T::one() } else { -T::one() })
                        })
                        .collect();
                    col.sort_by_key(|e| e.0);
                    col
                })
                .collect();
            SparseMatrix::from_columns(below.len(), columns)
        };
        boundaries.push(m);
    }
    let truncated = truncated || (x.dim() > top as isize);
    ChainComplex::new_unchecked(if reduced { -1 } else { 0 }, ranks, boundaries, truncated)
}

/// −2 for the empty complex, otherwise the largest `d ≤ d_max` with
/// vanishing reduced homology through degree `d` (−1 if H̃_0 ≠ 0).
pub fn homological_connectivity(x: &SimplicialComplex, d_max: isize) -> isize {
    if x.is_empty() {
        return -2;
    }
    if d_max < 0 {
        return -1;
    }
    let c: ChainComplex<i64> = chain_complex_through(x, true, (d_max + 1) as usize, true);
    let degrees: Vec<isize> = (0..=d_max + 1).collect();
    degrees.par_iter().for_each(|&k| {
        c.boundary_factors(k);
    });
    for i in 0..=d_max {
        if !c.homology(i).expect("inside window").is_trivial() {
            return i - 1;
        }
    }
    d_max
}

/// Connectivity guaranteed for a join of complexes with the given
/// connectivities: Σ (n_i + 2) − 2.
pub fn join_connectivity_bound(conns: &[isize]) -> Result<isize, HomologyError> {
    if conns.is_empty() {
        return Err(HomologyError::EmptyList);
    }
    Ok(conns.iter().map(|n| n + 2).sum::<isize>() - 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::named::*;
    use crate::simplicial::{build_complex, join};

    fn reduced(x: &SimplicialComplex) -> ChainComplex<BigInt> {
        chain_complex(x, true)
    }

    fn h(x: &SimplicialComplex, k: isize) -> AbelianGroup {
        reduced(x).homology(k).unwrap()
    }

    #[test]
    fn hollow_triangle_chains() {
        let c = reduced(&hollow_triangle());
        assert_eq!(c.ranks(), &[1, 3, 3]);
        c.check_square_zero().unwrap();
        assert_eq!(c.homology(1).unwrap(), AbelianGroup::free(1));
        assert_eq!(c.homology(0).unwrap(), AbelianGroup::zero());
    }

    #[test]
    fn empty_complex() {
        let c = reduced(&SimplicialComplex::empty());
        assert_eq!(c.ranks(), &[1, 0]);
        assert_eq!(c.homology(-1).unwrap(), AbelianGroup::free(1));
        assert_eq!(homological_connectivity(&SimplicialComplex::empty(), 3), -2);
    }

    #[test]
    fn solid_simplex_acyclic() {
        let c = reduced(&simplex(2));
        for (_, g) in c.homology_all() {
            assert!(g.is_trivial());
        }
    }

    #[test]
    fn named_surfaces() {
        assert_eq!(h(&projective_plane(), 1), AbelianGroup::cyclic(2));
        assert_eq!(h(&projective_plane(), 2), AbelianGroup::zero());
        assert_eq!(h(&torus(), 1), AbelianGroup::free(2));
        assert_eq!(h(&torus(), 2), AbelianGroup::free(1));
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(homological_connectivity(&points(2), 3), -1);
        assert_eq!(homological_connectivity(&octahedron(), 2), 1);
        assert_eq!(homological_connectivity(&simplex(3), 2), 2);
    }

    #[test]
    fn truncated_window_rejected() {
        let c: ChainComplex<BigInt> = chain_complex_through(&octahedron(), true, 1, false);
        assert!(c.is_truncated_above());
        assert!(matches!(c.homology(1), Err(HomologyError::WindowTooSmall { .. })));
        assert!(c.homology(0).is_ok());
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = reduced(&torus());
        let cone = mapping_cone(&ChainMap::identity(&c)).unwrap();
        for (_, g) in cone.homology_all() {
            assert!(g.is_trivial());
        }
    }

    #[test]
    fn cone_of_zero_map() {
        // unreduced chains of a circle mapped to a point by zero
        let s1: ChainComplex<BigInt> = chain_complex(&hollow_triangle(), false);
        let pt: ChainComplex<BigInt> = chain_complex(&points(1), false);
        let f = ChainMap::new(s1, pt, vec![]).unwrap();
        let cone = mapping_cone(&f).unwrap();
        let hs: Vec<AbelianGroup> = (0..=2).map(|k| cone.homology(k).unwrap()).collect();
        assert_eq!(hs, vec![AbelianGroup::free(1), AbelianGroup::free(1), AbelianGroup::free(1)]);
    }

    #[test]
    fn cone_of_triangle_inclusion() {
        let hollow: ChainComplex<BigInt> = chain_complex(&hollow_triangle(), false);
        let solid: ChainComplex<BigInt> = chain_complex(&simplex(2), false);
        // both list vertices and edges in the same sorted order
        let f = ChainMap::new(
            hollow,
            solid,
            vec![(0, SparseMatrix::identity(3)), (1, SparseMatrix::identity(3))],
        )
        .unwrap();
        let cone = mapping_cone(&f).unwrap();
        assert_eq!(cone.homology(2).unwrap(), AbelianGroup::free(1));
        assert_eq!(cone.homology(1).unwrap(), AbelianGroup::zero());
        assert_eq!(cone.homology(0).unwrap(), AbelianGroup::zero());
    }

    #[test]
    fn non_chain_map_rejected() {
        let s1: ChainComplex<BigInt> = chain_complex(&hollow_triangle(), false);
        let pt: ChainComplex<BigInt> = chain_complex(&points(1), false);
        // one vertex to the point, the others to zero: fails on edge boundaries
        let f0 = SparseMatrix::from_triplets(1, 3, vec![(0, 0, BigInt::one())]).unwrap();
        assert!(matches!(ChainMap::new(s1, pt, vec![(0, f0)]), Err(HomologyError::NotAChainMap { .. })));
    }

    #[test]
    fn join_bound_examples() {
        assert_eq!(join_connectivity_bound(&[0, 0]).unwrap(), 2);
        assert_eq!(join_connectivity_bound(&[-1, -1]).unwrap(), 0);
        assert_eq!(join_connectivity_bound(&[4]).unwrap(), 4);
        assert!(join_connectivity_bound(&[]).is_err());
    }

    #[test]
    fn join_examples() {
        let s1 = join(&points(2), &points(2));
        assert_eq!(h(&s1, 1), AbelianGroup::free(1));
        let s3 = join(&hollow_triangle(), &hollow_triangle());
        assert_eq!(h(&s3, 3), AbelianGroup::free(1));
        for k in 0..3 {
            assert!(h(&s3, k).is_trivial());
        }
        let cone = join(&points(1), &torus());
        assert_eq!(homological_connectivity(&cone, 3), 3);
        let two = build_complex(&[vec!["x", "y"]]).unwrap();
        assert_eq!(homological_connectivity(&two, 1), 1);
    }

    #[test]
    fn abelian_group_normalizes() {
        let g = AbelianGroup::from_cyclic_orders(1, [2, 3].map(BigInt::from));
        assert_eq!(g.torsion, vec![BigInt::from(6)]);
        assert_eq!(g.to_string(), "Z + Z/6");
        assert_eq!(AbelianGroup::cyclic(2).direct_sum(&AbelianGroup::cyclic(4)).torsion, vec![BigInt::from(2), BigInt::from(4)]);
    }
}
