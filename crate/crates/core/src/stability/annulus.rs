use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{OrbitComplex, ShapiroReport, StabilityError};
use crate::arccomplexes::annulus_model;
use crate::grouphom::small_resolution_z;
use crate::homology::{chain_complex, AbelianGroup, HomologyReport, SparseMatrix};
use crate::simplicial::named;
use crate::specseq::{run_to_limit, spectral_page, turn_page, vertical_E1, DoubleComplex, Filtration, SpectralReport};

/// Finite model of `C̃_p(X) ⊗_Z E_q Z` for a free orbit complex. Columns
/// `p ≥ 0` are contracted onto their coinvariants `Z^{r_p}` in row 0; the
/// augmentation column `p = −1` keeps the two-term resolution. The
/// contraction leaves `d^H = ∂(1)` and a component `(1,0) → (−1,1)`
/// recording `Σ_v ∂'_{v,e}(1)`.
pub fn transferred_double_complex(oc: &OrbitComplex, q_max: usize) -> Result<DoubleComplex, StabilityError> {
    if oc.orbits.iter().flatten().any(|o| !o.is_free()) {
        return Err(StabilityError::NotFree("contraction onto coinvariants needs free orbits".into()));
    }
    let res = small_resolution_z(q_max + 1).coinvariants().to_bigint();
    let top = oc.dim().max(0);
    let q_top = q_max as isize + 1;
    let ranks: Vec<Vec<usize>> = (-1..=top)
        .map(|p| {
            (0..=q_top)
                .map(|q| match p {
                    -1 => res.rank(q),
                    p if q == 0 => oc.orbits[p as usize].len(),
                    _ => 0,
                })
                .collect()
        })
        .collect();
    let mut hor = Vec::new();
    if top >= 0 {
        hor.push(((0, 0), SparseMatrix::from_triplets(1, ranks[1][0], (0..ranks[1][0]).map(|c| (0, c, BigInt::from(1)))).expect("row")));
    }
    for p in 1..=top {
        hor.push(((p, 0), oc.augmented_boundary(p as usize)));
    }
    let ver = (1..=q_top).map(|q| ((-1, q), res.boundary(q))).collect();
    let dc = DoubleComplex::new(-1, 0, ranks, hor, ver)?;
    if top < 1 {
        return Ok(dc);
    }
    let twist = oc.boundary[0].iter().fold(vec![BigInt::from(0); oc.orbits[1].len()], |mut acc, (_, c, poly)| {
        acc[*c] += poly.iter().map(|&(e, v)| e * v).sum::<i64>();
        acc
    });
    let m = SparseMatrix::from_triplets(1, twist.len(), twist.into_iter().enumerate().map(|(c, v)| (0, c, v))).expect("row");
    Ok(dc.with_twists(vec![((1, 0), 2, m)])?)
}

/// A term of the augmentation column that dies on page `page + 1`,
/// together with the differential that kills it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kill {
    pub q: isize,
    pub page: usize,
    pub source: (isize, isize),
}

/// Row side: each row of the double complex is the augmented chain complex
/// of the line, so its horizontal homology vanishes when the line is
/// acyclic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowSide {
    /// Largest truncation checked to be acyclic, from 1 up.
    pub truncations_acyclic_through: i64,
    pub window: i64,
    pub window_exact: bool,
    pub rows_vanish: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnnulusDemo {
    pub n: i64,
    pub q_max: usize,
    pub transitive: Vec<bool>,
    pub rows: RowSide,
    pub twist_coefficient: i64,
    pub columns: SpectralReport,
    /// `E^1_{−1,q}` read off the column spectral sequence.
    pub recovered: Vec<HomologyReport>,
    pub killed_by: Vec<Kill>,
    /// `H_*(Z)` from the two-term resolution.
    pub resolution_oracle: Vec<HomologyReport>,
    /// `H_*(S^1)`, the classifying space of `Z`.
    pub circle_oracle: Vec<HomologyReport>,
    pub shapiro: Vec<ShapiroReport>,
    pub vanishing_frontier: isize,
}

impl AnnulusDemo {
    pub fn homology(&self) -> Vec<AbelianGroup> {
        self.recovered.iter().map(|r| AbelianGroup::from_cyclic_orders(r.free_rank, r.torsion.clone())).collect()
    }
}

fn mismatch(what: impl Into<String>) -> StabilityError {
    StabilityError::Mismatch(what.into())
}

/// Runs both spectral sequences of the infinite cyclic action on the arc
/// line of the annulus and recovers `H_*(Z)` from the augmentation column.
pub fn demo_annulus() -> Result<AnnulusDemo, StabilityError> {
    demo_annulus_with(8, 2, 16)
}

pub fn demo_annulus_with(n: i64, q_max: usize, window: i64) -> Result<AnnulusDemo, StabilityError> {
    let model = annulus_model(n)?;
    let oc = OrbitComplex::from_annulus(&model)?;
    let transitive: Vec<bool> = (0..oc.orbits.len()).map(|p| oc.check_transitivity(p)).collect();

    let mut acyclic_through = 0;
    for k in 1..=n {
        let c = chain_complex::<BigInt>(&annulus_model(k)?.complex, true);
        if c.homology_all().iter().any(|(_, g)| !g.is_trivial()) {
            break;
        }
        acyclic_through = k;
    }
    let window_exact = oc.window_exact(window)?;
    let rows = RowSide {
        truncations_acyclic_through: acyclic_through,
        window,
        window_exact,
        rows_vanish: window_exact && acyclic_through == n,
    };
    if !rows.rows_vanish {
        return Err(mismatch("the augmented orbit complex of the line is not exact"));
    }

    let dc = transferred_double_complex(&oc, q_max)?;
    let twist_coefficient = oc.boundary[0]
        .iter()
        .map(|(_, _, poly)| poly.iter().map(|&(e, v)| e * v).sum::<i64>())
        .sum::<i64>();
    // the row spectral sequence vanishes from E^1 on, so the total complex
    // must be acyclic through the rows below the truncation
    let total = dc.total_complex()?;
    for k in -1..=q_max as isize - 1 {
        if !total.homology(k)?.is_trivial() {
            return Err(mismatch(format!("total homology is nonzero in degree {k}")));
        }
    }
    let columns = run_to_limit(&dc, Filtration::Column, Some(q_max as isize - 1))?;

    let e1 = vertical_E1(&dc)?;
    let recovered: Vec<HomologyReport> =
        (0..=q_max as isize).map(|q| HomologyReport::new(q, &e1.term(-1, q))).collect();
    let res = small_resolution_z(q_max + 1);
    let resolution_oracle =
        (0..=q_max).map(|q| res.homology(q).map(|g| HomologyReport::new(q as isize, &g))).collect::<Result<Vec<_>, _>>()?;
    let circle = chain_complex::<BigInt>(&named::cycle(3), false);
    let circle_oracle = (0..=q_max as isize)
        .map(|q| circle.homology(q).map(|g| HomologyReport::new(q, &g)))
        .collect::<Result<Vec<_>, _>>()?;
    if recovered != resolution_oracle || recovered != circle_oracle {
        return Err(mismatch("augmentation column differs from H_*(Z)"));
    }

    let mut killed_by = Vec::new();
    let mut page = spectral_page(&dc, Filtration::Column, 1)?;
    for r in 1..=columns.limit_page {
        let next = turn_page(&page)?;
        for q in 0..=q_max as isize {
            if !page.term(-1, q).is_trivial() && next.term(-1, q).is_trivial() {
                let source = (-1 + r as isize, q - r as isize + 1);
                if page.term(source.0, source.1).is_trivial() || !next.term(source.0, source.1).is_trivial() {
                    return Err(mismatch(format!("E^{r}(−1, {q}) dies without a matching source")));
                }
                killed_by.push(Kill { q, page: r, source });
            }
        }
        page = next;
    }

    let shapiro = (0..oc.orbits.len()).map(|p| oc.shapiro_E1(p, q_max, window)).collect::<Result<Vec<_>, _>>()?;
    for (p, s) in shapiro.iter().enumerate() {
        let e1_col: Vec<HomologyReport> =
            (0..=q_max as isize).map(|q| HomologyReport::new(q, &e1.term(p as isize, q))).collect();
        let direct: Vec<HomologyReport> = s.rows.iter().map(|r| r.direct.clone()).collect();
        if !s.holds() || e1_col != direct {
            return Err(mismatch(format!("column {p} differs from the stabilizer homology")));
        }
    }
    let vanishing_frontier = columns.vanishing_frontier;
    Ok(AnnulusDemo {
        n,
        q_max,
        transitive,
        rows,
        twist_coefficient,
        columns,
        recovered,
        killed_by,
        resolution_oracle,
        circle_oracle,
        shapiro,
        vanishing_frontier,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demo_recovers_the_infinite_cyclic_group() {
        let d = demo_annulus().unwrap();
        assert_eq!(d.homology(), vec![AbelianGroup::free(1), AbelianGroup::free(1), AbelianGroup::zero()]);
        assert_eq!(d.twist_coefficient, 1);
        assert_eq!(
            d.killed_by,
            vec![Kill { q: 0, page: 1, source: (0, 0) }, Kill { q: 1, page: 2, source: (1, 0) }]
        );
        assert!(d.columns.vanishes_through(d.q_max as isize - 1));
    }

    #[test]
    fn twisted_model_is_acyclic_and_a_doubled_boundary_is_not() {
        let oc = OrbitComplex::from_annulus(&annulus_model(2).unwrap()).unwrap();
        let dc = transferred_double_complex(&oc, 2).unwrap();
        assert!(dc.is_twisted());
        assert!(dc.total_complex().unwrap().homology_all().iter().all(|(_, g)| g.is_trivial()));
        // ∂e = 2(t − 1)v: the line is replaced by a non-acyclic complex and
        // E^∞(−1, 1) = Z/2 is the witness
        let doubled = OrbitComplex { boundary: vec![vec![(0, 0, vec![(0, -2), (1, 2)])]], ..oc };
        let rep = run_to_limit(&transferred_double_complex(&doubled, 2).unwrap(), Filtration::Column, None).unwrap();
        assert!(!super::super::vanishing_check(&rep, 0));
        assert_eq!(rep.limit_term(-1, 1), AbelianGroup::cyclic(2));
    }
}
