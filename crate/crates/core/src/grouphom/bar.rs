use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GroupError};
use crate::homology::{mapping_cone, sparse_invariant_factors, AbelianGroup, ChainComplex, ChainMap, SparseMatrix};

/// Size limits for bar constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub degree_cap: usize,
    /// Largest admissible `|G|^(n+1)` for a construction through degree `n`.
    pub max_cells: u64,
}

/// Bytes assumed per bar cell when converting a memory budget.
const BYTES_PER_CELL: u64 = 64;

impl Default for Budget {
    /// Degree cap 4; admits |G| ≤ 12 at degree 4 and |G| ≤ 24 at degree 3.
    fn default() -> Self {
        Budget { degree_cap: 4, max_cells: 24u64.pow(4) }
    }
}

impl Budget {
    pub fn from_megabytes(mb: u64) -> Self {
        Budget { max_cells: mb.saturating_mul(1 << 20) / BYTES_PER_CELL, ..Self::default() }
    }

    pub fn with_degree_cap(self, degree_cap: usize) -> Self {
        Budget { degree_cap, ..self }
    }

    pub fn check(&self, order: usize, degree: usize) -> Result<(), GroupError> {
        if degree > self.degree_cap {
            return Err(GroupError::DegreeCapExceeded { degree, cap: self.degree_cap });
        }
        let cells = (order as u64).checked_pow(degree as u32 + 1).unwrap_or(u64::MAX);
        if cells > self.max_cells {
            return Err(GroupError::BudgetExceeded { order, degree, cells, limit: self.max_cells });
        }
        Ok(())
    }
}

/// Index of a tuple of group elements in base `|G|`, first entry most
/// significant.
pub(crate) fn tuple_index(n: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &g| acc * n + g)
}

pub(crate) fn tuple_at(n: usize, k: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0; k];
    for slot in t.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    t
}

/// Faces of a bar cell `[g1|…|gk]`: `(sign, left factor, remaining tuple)`.
/// The left factor is `g1` for the first face and the identity otherwise.
pub(crate) fn bar_faces(g: &FiniteGroup, t: &[usize]) -> Vec<(i64, usize, Vec<usize>)> {
    let k = t.len();
    let mut out = Vec::with_capacity(k + 1);
    out.push((1, t[0], t[1..].to_vec()));
    for i in 1..k {
        let mut s = t[..i - 1].to_vec();
        s.push(g.mul(t[i - 1], t[i]));
        s.extend_from_slice(&t[i + 1..]);
        out.push((if i % 2 == 0 { 1 } else { -1 }, g.identity(), s));
    }
    out.push((if k % 2 == 0 { 1 } else { -1 }, g.identity(), t[..k - 1].to_vec()));
    out
}

/// Inhomogeneous bar complex `Z ⊗_G B_*` with trivial coefficients, degrees
/// `0..=top`, truncated above.
pub fn bar_complex(g: &FiniteGroup, top: usize, budget: &Budget) -> Result<ChainComplex<i64>, GroupError> {
    budget.check(g.order(), top)?;
    let all: Vec<usize> = (0..g.order()).collect();
    Ok(subgroup_bar_complex(g, &all, top))
}

/// Bar complex of the subgroup `h` (sorted elements of `g`), cells indexed
/// by tuples over positions in `h`.
pub(crate) fn subgroup_bar_complex(g: &FiniteGroup, h: &[usize], top: usize) -> ChainComplex<i64> {
    let m = h.len();
    let pos = |x: usize| h.binary_search(&x).expect("closed under multiplication");
    let mut ranks = Vec::with_capacity(top + 1);
    let mut boundaries = Vec::with_capacity(top + 1);
    for k in 0..=top {
        ranks.push(m.pow(k as u32));
        if k == 0 {
            boundaries.push(SparseMatrix::zeros(0, 1));
            continue;
        }
        let columns = (0..m.pow(k as u32))
            .map(|c| {
                let t: Vec<usize> = tuple_at(m, k, c).into_iter().map(|i| h[i]).collect();
                let mut col: Vec<(usize, i64)> = Vec::new();
                for (sign, _, face) in bar_faces(g, &t) {
                    let local: Vec<usize> = face.iter().map(|&x| pos(x)).collect();
                    col.push((tuple_index(m, &local), sign));
                }
                merge_column(col)
            })
            .collect();
        boundaries.push(SparseMatrix::from_columns(m.pow(k as u32 - 1), columns));
    }
    ChainComplex::new_unchecked(0, ranks, boundaries, true)
}

fn merge_column(mut col: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    col.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some((lr, lv)) if *lr == r => *lv += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

/// `H_k(G; Z)` from the bar complex.
pub fn group_homology(g: &FiniteGroup, k: usize, budget: &Budget) -> Result<AbelianGroup, GroupError> {
    Ok(bar_complex(g, k + 1, budget)?.homology(k as isize)?)
}

/// `H_k(G, H; Z)`: homology of the mapping cone of the inclusion of bar
/// complexes.
pub fn relative_group_homology(
    g: &FiniteGroup,
    h: &[usize],
    k: usize,
    budget: &Budget,
) -> Result<AbelianGroup, GroupError> {
    let h = g.subgroup(h)?;
    let top = k + 1;
    budget.check(g.order(), top)?;
    let big = subgroup_bar_complex(g, &(0..g.order()).collect::<Vec<_>>(), top);
    let small = subgroup_bar_complex(g, &h, top);
    let (n, m) = (g.order(), h.len());
    let components = (0..=top)
        .map(|d| {
            let cols = (0..m.pow(d as u32))
                .map(|c| {
                    let t: Vec<usize> = tuple_at(m, d, c).into_iter().map(|i| h[i]).collect();
                    vec![(tuple_index(n, &t), 1i64)]
                })
                .collect();
            (d as isize, SparseMatrix::from_columns(n.pow(d as u32), cols))
        })
        .collect();
    let f = ChainMap::new(small, big, components)?;
    Ok(mapping_cone(&f)?.homology(k as isize)?)
}

/// Element of the integral group ring: `(group element code, coefficient)`
/// pairs. Codes are element indices for finite groups and exponents of the
/// generator for the infinite cyclic group.
pub type RingElement = Vec<(i64, i64)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ResolutionGroup {
    Finite { order: usize },
    InfiniteCyclic,
}

/// Free resolution of the trivial module: `module_ranks[k]` is the rank of
/// `F_k` over the group ring, `differentials[k-1]` holds `d_k` as
/// `(row, column, entry)` triples.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Resolution {
    pub group: ResolutionGroup,
    pub module_ranks: Vec<usize>,
    pub differentials: Vec<Vec<(usize, usize, RingElement)>>,
    /// The resolution stops here only because of the degree cap.
    pub truncated: bool,
    /// Exactness of the augmented complex verified at `F_0..=F_j`.
    pub exact_through: Option<usize>,
}

impl Resolution {
    /// `Z ⊗_G F_*`: every ring entry replaced by its augmentation.
    pub fn coinvariants(&self) -> ChainComplex<i64> {
        let mut boundaries = vec![SparseMatrix::zeros(0, self.module_ranks[0])];
        for (k, d) in self.differentials.iter().enumerate() {
            let triplets = d.iter().map(|(r, c, e)| (*r, *c, e.iter().map(|x| x.1).sum::<i64>()));
            boundaries.push(
                SparseMatrix::from_triplets(self.module_ranks[k], self.module_ranks[k + 1], triplets)
                    .expect("entries in range"),
            );
        }
        ChainComplex::new(0, self.module_ranks.clone(), boundaries, self.truncated).expect("d∘d = 0")
    }

    /// Derived group homology `H_k(G; Z)`.
    pub fn homology(&self, k: usize) -> Result<AbelianGroup, GroupError> {
        Ok(self.coinvariants().homology(k as isize)?)
    }
}

/// Bar resolution through degree `n`, with exactness checked through the
/// regular representation.
pub fn bar_resolution(g: &FiniteGroup, n: usize, budget: &Budget) -> Result<Resolution, GroupError> {
    budget.check(g.order(), n)?;
    let q = g.order();
    let module_ranks: Vec<usize> = (0..=n).map(|k| q.pow(k as u32)).collect();
    let mut differentials = Vec::with_capacity(n);
    for k in 1..=n {
        let mut entries = Vec::new();
        for c in 0..q.pow(k as u32) {
            let t = tuple_at(q, k, c);
            for (sign, left, face) in bar_faces(g, &t) {
                entries.push((tuple_index(q, &face), c, vec![(left as i64, sign)]));
            }
        }
        differentials.push(entries);
    }
    let mut res = Resolution {
        group: ResolutionGroup::Finite { order: q },
        module_ranks,
        differentials,
        truncated: true,
        exact_through: None,
    };
    res.exact_through = verify_exactness(g, &res)?;
    Ok(res)
}

/// Flattens `d_k` to an integer matrix on the basis `g·e_i`, indexed
/// `i·|G| + g`.
fn regular_matrix(g: &FiniteGroup, res: &Resolution, k: usize) -> SparseMatrix<i64> {
    let q = g.order();
    let (rows, cols) = (res.module_ranks[k - 1] * q, res.module_ranks[k] * q);
    let mut triplets = Vec::new();
    for (r, c, e) in &res.differentials[k - 1] {
        for &(h, coeff) in e {
            for x in 0..q {
                triplets.push((r * q + g.mul(x, h as usize), c * q + x, coeff));
            }
        }
    }
    SparseMatrix::from_triplets(rows, cols, triplets).expect("entries in range")
}

/// Exact at `F_j` iff `rank F_j = rank d_j + rank d_{j+1}` (with `d_0` the
/// augmentation) and the image of `d_{j+1}` is saturated; returns the
/// highest `j` verified.
fn verify_exactness(g: &FiniteGroup, res: &Resolution) -> Result<Option<usize>, GroupError> {
    let q = g.order();
    let n = res.module_ranks.len() - 1;
    let mut ranks = vec![1usize]; // augmentation onto Z
    let mut saturated = vec![true];
    for k in 1..=n {
        let m = regular_matrix(g, res, k);
        let f = sparse_invariant_factors(&m)
            .or_else(|| sparse_invariant_factors(&m.to_bigint()))
            .expect("BigInt fallback");
        saturated.push(f.iter().all(BigInt::is_one));
        ranks.push(f.len());
    }
    let mut through = None;
    for j in 0..n {
        let dim = res.module_ranks[j] * q;
        if ranks[j] + ranks[j + 1] != dim || !saturated[j + 1] {
            return Err(GroupError::NotExact { degree: j });
        }
        through = Some(j);
    }
    Ok(through)
}

/// Resolution `0 → Z[t,t⁻¹] --(t−1)--> Z[t,t⁻¹] → Z` of the infinite cyclic
/// group, listed through degree `n`.
pub fn small_resolution_z(n: usize) -> Resolution {
    let module_ranks: Vec<usize> = (0..=n).map(|k| usize::from(k <= 1)).collect();
    let differentials = (1..=n)
        .map(|k| if k == 1 { vec![(0, 0, vec![(1, 1), (0, -1)])] } else { Vec::new() })
        .collect();
    let mut res = Resolution {
        group: ResolutionGroup::InfiniteCyclic,
        module_ranks,
        differentials,
        truncated: false,
        exact_through: None,
    };
    res.exact_through = Some(n);
    debug_assert!(laurent_window_exact(&res, 16));
    res
}

/// Exactness of `Z[t^±] --(t−1)--> Z[t^±] → Z` on Laurent polynomials with
/// exponents in `-w..=w`: `t−1` is injective there and its image is a
/// saturated corank-one sublattice killed by the augmentation.
pub fn laurent_window_exact(res: &Resolution, w: i64) -> bool {
    let Some(d1) = res.differentials.first().and_then(|d| d.first()) else {
        return false;
    };
    let poly = &d1.2;
    let lo = poly.iter().map(|x| x.0).min().unwrap_or(0);
    let hi = poly.iter().map(|x| x.0).max().unwrap_or(0);
    let cols = (2 * w + 1) as usize;
    let rows = (2 * w + 1 + hi - lo) as usize;
    let triplets: Vec<(usize, usize, i64)> = (0..cols)
        .flat_map(|c| poly.iter().map(move |&(e, v)| ((c as i64 + e - lo) as usize, c, v)))
        .collect();
    let m = SparseMatrix::from_triplets(rows, cols, triplets).expect("in range");
    let f = sparse_invariant_factors(&m).expect("small entries");
    let augmented_zero = poly.iter().map(|x| x.1).sum::<i64>() == 0;
    augmented_zero && f.len() == cols && f.iter().all(BigInt::is_one) && rows == cols + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn cyclic_homology_small() {
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(group_homology(&z2, 0, &b()).unwrap(), AbelianGroup::free(1));
        assert_eq!(group_homology(&z2, 1, &b()).unwrap(), AbelianGroup::cyclic(2));
        assert_eq!(group_homology(&z2, 2, &b()).unwrap(), AbelianGroup::zero());
        assert_eq!(group_homology(&z2, 3, &b()).unwrap(), AbelianGroup::cyclic(2));
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(group_homology(&s3, 1, &b()).unwrap(), AbelianGroup::cyclic(2));
        assert_eq!(group_homology(&FiniteGroup::trivial(), 2, &b()).unwrap(), AbelianGroup::zero());
    }

    #[test]
    fn budget_table() {
        let budget = b();
        assert!(budget.check(12, 4).is_ok());
        assert!(budget.check(13, 4).is_err());
        assert!(budget.check(24, 3).is_ok());
        assert!(budget.check(25, 3).is_err());
        assert!(matches!(budget.check(2, 5), Err(GroupError::DegreeCapExceeded { .. })));
    }

    #[test]
    fn resolutions() {
        let z2 = FiniteGroup::cyclic(2);
        let r = bar_resolution(&z2, 3, &b()).unwrap();
        assert_eq!(r.module_ranks, vec![1, 2, 4, 8]);
        assert_eq!(r.exact_through, Some(2));
        assert_eq!(r.homology(0).unwrap(), AbelianGroup::free(1));
        assert_eq!(r.homology(1).unwrap(), AbelianGroup::cyclic(2));
        let z3 = bar_resolution(&FiniteGroup::cyclic(3), 3, &b()).unwrap();
        assert_eq!(z3.exact_through, Some(2));
        let triv = bar_resolution(&FiniteGroup::trivial(), 2, &b()).unwrap();
        assert_eq!(triv.module_ranks, vec![1, 1, 1]);
        assert_eq!(triv.homology(1).unwrap(), AbelianGroup::zero());
    }

    #[test]
    fn infinite_cyclic() {
        let r = small_resolution_z(3);
        assert_eq!(r.module_ranks, vec![1, 1, 0, 0]);
        assert!(laurent_window_exact(&r, 8));
        let h: Vec<_> = (0..4).map(|k| r.homology(k).unwrap()).collect();
        assert_eq!(h, vec![AbelianGroup::free(1), AbelianGroup::free(1), AbelianGroup::zero(), AbelianGroup::zero()]);
        assert!(r.coinvariants().boundary(1).is_zero());
    }

    #[test]
    fn relative() {
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(relative_group_homology(&z4, &[0, 2], 1, &b()).unwrap(), AbelianGroup::cyclic(2));
        assert_eq!(relative_group_homology(&z4, &[0], 1, &b()).unwrap(), AbelianGroup::cyclic(4));
        for k in 0..3 {
            assert!(relative_group_homology(&z4, &[0, 1, 2, 3], k, &b()).unwrap().is_trivial());
        }
        assert!(matches!(relative_group_homology(&z4, &[0, 1], 1, &b()), Err(GroupError::NotASubgroup(_))));
    }
}
