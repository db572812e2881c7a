use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::equivariant::{rows_of, ShapiroReport, ShapiroStatus};
use super::StabilityError;
use crate::arccomplexes::AnnulusModel;
use crate::grouphom::{group_homology, small_resolution_z, Budget, FiniteGroup, RingElement};
use crate::homology::{sparse_invariant_factors, AbelianGroup, ChainComplex, SparseMatrix};

/// Orbit of simplices under the infinite cyclic group `⟨t⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicOrbit {
    /// Vertex positions of the representative, based at 0.
    pub representative: Vec<i64>,
    /// `k` when the stabilizer is `kZ`; 0 for a free orbit.
    pub period: u64,
}

impl CyclicOrbit {
    pub fn is_free(&self) -> bool {
        self.period == 0
    }
}

/// Chain complex of an infinite cyclic action, given by orbits and Laurent
/// boundary entries: `∂ e_c = Σ entry(r, c)(t) · e_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitComplex {
    pub name: String,
    pub orbits: Vec<Vec<CyclicOrbit>>,
    /// `boundary[p − 1]`: `(row orbit, column orbit, entry)` for `p ≥ 1`.
    pub boundary: Vec<Vec<(usize, usize, RingElement)>>,
}

fn merge(entries: BTreeMap<(usize, usize), BTreeMap<i64, i64>>) -> Vec<(usize, usize, RingElement)> {
    entries
        .into_iter()
        .map(|(k, poly)| (k.0, k.1, poly.into_iter().filter(|e| e.1 != 0).collect::<RingElement>()))
        .filter(|e| !e.2.is_empty())
        .collect()
}

impl OrbitComplex {
    /// Translation action on the arc line of the annulus.
    pub fn from_annulus(model: &AnnulusModel) -> Result<Self, StabilityError> {
        let orbits: Vec<Vec<CyclicOrbit>> = model
            .orbit_representatives
            .iter()
            .zip(&model.stabilizer_orders)
            .map(|(reps, orders)| {
                reps.iter()
                    .zip(orders)
                    .map(|(r, &o)| CyclicOrbit { representative: r.clone(), period: if o == 1 { 0 } else { o } })
                    .collect()
            })
            .collect();
        if orbits.iter().flatten().any(|o| !o.is_free()) {
            return Err(StabilityError::NotFree("translations act freely on the arc line".into()));
        }
        let mut boundary = Vec::new();
        for p in 1..orbits.len() {
            let mut entries: BTreeMap<(usize, usize), BTreeMap<i64, i64>> = BTreeMap::new();
            for (c, o) in orbits[p].iter().enumerate() {
                for i in 0..o.representative.len() {
                    let mut face = o.representative.clone();
                    face.remove(i);
                    let shift = face[0];
                    let based: Vec<i64> = face.iter().map(|x| x - shift).collect();
                    let r = orbits[p - 1]
                        .iter()
                        .position(|f| f.representative == based)
                        .ok_or_else(|| StabilityError::NotFree(format!("face {based:?} has no orbit")))?;
                    *entries.entry((r, c)).or_default().entry(shift).or_default() += if i % 2 == 0 { 1 } else { -1 };
                }
            }
            boundary.push(merge(entries));
        }
        Ok(OrbitComplex { name: format!("annulus line (N = {})", model.n), orbits, boundary })
    }

    /// `t` rotating a `k`-cycle: one vertex orbit and one edge orbit, both
    /// with stabilizer `kZ`, and `∂ e = (t − 1) v`.
    pub fn rotated_cycle(k: u64) -> Self {
        OrbitComplex {
            name: format!("{k}-cycle"),
            orbits: vec![
                vec![CyclicOrbit { representative: vec![0], period: k }],
                vec![CyclicOrbit { representative: vec![0, 1], period: k }],
            ],
            boundary: vec![vec![(0, 0, vec![(0, -1), (1, 1)])]],
        }
    }

    pub fn dim(&self) -> isize {
        self.orbits.len() as isize - 1
    }

    pub fn check_transitivity(&self, p: usize) -> bool {
        self.orbits.get(p).is_some_and(|o| o.len() == 1)
    }

    /// Boundary entries evaluated at `t = 1`.
    pub fn augmented_boundary(&self, p: usize) -> SparseMatrix<BigInt> {
        let (rows, cols) = (self.orbits[p - 1].len(), self.orbits[p].len());
        let trip = self.boundary[p - 1].iter().map(|(r, c, e)| (*r, *c, BigInt::from(e.iter().map(|x| x.1).sum::<i64>())));
        SparseMatrix::from_triplets(rows, cols, trip).expect("in range")
    }

    /// Exactness of the augmented complex `Z[t^±]^{r_1} → Z[t^±]^{r_0} → Z`
    /// on exponents `−w..=w`: `∂` injective with saturated image, corank
    /// one, and the augmentation vanishing on it. Needs free orbits and
    /// dimension at most one.
    pub fn window_exact(&self, w: i64) -> Result<bool, StabilityError> {
        if self.orbits.iter().flatten().any(|o| !o.is_free()) || self.dim() > 1 {
            return Err(StabilityError::NotFree("window check needs a free action of dimension ≤ 1".into()));
        }
        let (r0, r1) = (self.orbits[0].len(), self.orbits.get(1).map_or(0, Vec::len));
        let entries = self.boundary.first().cloned().unwrap_or_default();
        let exps = entries.iter().flat_map(|e| e.2.iter().map(|x| x.0));
        let (lo, hi) = exps.fold((0i64, 0i64), |(a, b), e| (a.min(e), b.max(e)));
        let span = (2 * w + 1 + hi - lo) as usize;
        let width = (2 * w + 1) as usize;
        let mut trip = Vec::new();
        for (r, c, poly) in &entries {
            for k in 0..width {
                for &(e, v) in poly {
                    trip.push((r * span + (k as i64 + e - lo) as usize, c * width + k, v));
                }
            }
        }
        let m = SparseMatrix::from_triplets(r0 * span, r1 * width, trip).expect("in range");
        let factors = sparse_invariant_factors(&m).ok_or(StabilityError::Overflow)?;
        let saturated = factors.iter().all(|f| *f == BigInt::from(1));
        let augmented_zero = self.augmented_boundary(1).is_zero() || r1 == 0;
        Ok(factors.len() == r1 * width && saturated && r0 * span == r1 * width + 1 && augmented_zero)
    }

    /// `H_q(Z; Z[Z/St])` for the orbits of dimension `p`, from `t − 1`
    /// acting on `Z^k` for stabilizer `kZ` and on a Laurent window for free
    /// orbits.
    pub fn column_homology(&self, p: usize, q_max: usize, w: i64) -> Result<Vec<AbelianGroup>, StabilityError> {
        let mut out = vec![AbelianGroup::zero(); q_max + 1];
        for o in &self.orbits[p] {
            let (rows, cols, trip): (usize, usize, Vec<(usize, usize, i64)>) = if o.is_free() {
                let width = (2 * w + 1) as usize;
                let t = (0..width).flat_map(|k| [(k, k, -1), (k + 1, k, 1)]).collect();
                (width + 1, width, t)
            } else {
                let k = o.period as usize;
                let mut t: Vec<(usize, usize, i64)> = (0..k).map(|i| (i, i, -1)).collect();
                t.extend((0..k).map(|i| ((i + 1) % k, i, 1)));
                (k, k, t)
            };
            let d = SparseMatrix::from_triplets(rows, cols, trip).expect("in range");
            let mut ranks = vec![rows, cols];
            let mut boundaries = vec![SparseMatrix::zeros(0, rows), d];
            for _ in 2..=q_max {
                boundaries.push(SparseMatrix::zeros(*ranks.last().expect("nonempty"), 0));
                ranks.push(0);
            }
            let c = ChainComplex::new(0, ranks, boundaries, false)?;
            for (q, slot) in out.iter_mut().enumerate() {
                *slot = slot.direct_sum(&c.homology(q as isize)?);
            }
        }
        Ok(out)
    }

    /// Shapiro comparison for the infinite cyclic action in dimension `p`;
    /// the stabilizer `kZ ≅ Z` uses the two-term resolution and the trivial
    /// stabilizer the bar complex.
    #[allow(non_snake_case)]
    pub fn shapiro_E1(&self, p: usize, q_max: usize, w: i64) -> Result<ShapiroReport, StabilityError> {
        let Some(level) = self.orbits.get(p).filter(|l| !l.is_empty()) else {
            return Err(StabilityError::NoSimplices { p: p as isize });
        };
        if level.len() != 1 {
            return Err(StabilityError::NotTransitive { p: p as isize, orbits: level.len() });
        }
        let o = &level[0];
        let direct = self.column_homology(p, q_max, w)?;
        let stabilizer = if o.is_free() {
            let g = FiniteGroup::trivial();
            (0..=q_max).map(|q| group_homology(&g, q, &Budget::default())).collect::<Result<Vec<_>, _>>()?
        } else {
            let res = small_resolution_z(q_max + 1);
            (0..=q_max).map(|q| res.homology(q)).collect::<Result<Vec<_>, _>>()?
        };
        let rows = rows_of(&direct, &stabilizer);
        let status = if rows.iter().all(|r| r.agree) { ShapiroStatus::Match } else { ShapiroStatus::Mismatch };
        Ok(ShapiroReport {
            group: "Z".into(),
            p: p as isize,
            representative: o.representative.iter().map(|x| format!("t^{x}")).collect(),
            stabilizer_order: if o.is_free() { Some(1) } else { None },
            stabilizer: if o.is_free() { "trivial".into() } else { format!("{}Z", o.period) },
            status,
            rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arccomplexes::annulus_model;

    #[test]
    fn annulus_orbits() {
        let oc = OrbitComplex::from_annulus(&annulus_model(4).unwrap()).unwrap();
        assert!(oc.check_transitivity(0) && oc.check_transitivity(1));
        assert_eq!(oc.boundary, vec![vec![(0, 0, vec![(0, -1), (1, 1)])]]);
        assert!(oc.window_exact(6).unwrap());
        assert!(!OrbitComplex { boundary: vec![vec![(0, 0, vec![(0, -2), (1, 2)])]], ..oc.clone() }.window_exact(6).unwrap());
    }

    #[test]
    fn shapiro_for_the_infinite_cyclic_group() {
        let oc = OrbitComplex::from_annulus(&annulus_model(3).unwrap()).unwrap();
        for p in 0..=1 {
            let r = oc.shapiro_E1(p, 2, 5).unwrap();
            assert!(r.holds());
            assert_eq!(r.rows[0].direct.free_rank, 1);
            assert!(r.rows[1..].iter().all(|row| row.direct.free_rank == 0 && row.direct.torsion.is_empty()));
        }
        let r = OrbitComplex::rotated_cycle(4).shapiro_E1(0, 2, 5).unwrap();
        assert!(r.holds());
        assert_eq!(r.rows.iter().map(|row| row.direct.free_rank).collect::<Vec<_>>(), vec![1, 1, 0]);
    }
}
