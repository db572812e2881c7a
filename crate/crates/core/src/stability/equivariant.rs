use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{GroupAction, StabilityError};
use crate::grouphom::bar::{bar_faces, subgroup_bar_complex, tuple_at, tuple_index};
use crate::grouphom::Budget;
use crate::homology::{AbelianGroup, ChainComplex, HomologyReport, SparseMatrix};
use crate::simplicial::Simplex;
use crate::specseq::DoubleComplex;

type Matrix = SparseMatrix<BigInt>;

/// Group homomorphism `φ: G → H` with a `φ`-equivariant simplicial map
/// `X → Y` on vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivariantMap {
    pub phi: Vec<usize>,
    pub vertices: Vec<u32>,
}

impl EquivariantMap {
    pub fn identity(act: &GroupAction) -> Self {
        EquivariantMap {
            phi: (0..act.group().order()).collect(),
            vertices: (0..act.complex().vertex_names().len() as u32).collect(),
        }
    }

    /// Checks `φ` is a homomorphism, the vertex map is simplicial and
    /// `f(g·v) = φ(g)·f(v)`.
    pub fn validate(&self, x: &GroupAction, y: &GroupAction) -> Result<(), StabilityError> {
        let (g, h) = (x.group(), y.group());
        let nv = x.complex().vertex_names().len();
        if self.phi.len() != g.order() || self.phi.iter().any(|&a| a >= h.order()) {
            return Err(StabilityError::NotEquivariant("φ has the wrong domain or codomain".into()));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if self.phi[g.mul(a, b)] != h.mul(self.phi[a], self.phi[b]) {
                    return Err(StabilityError::NotEquivariant(format!("φ is not multiplicative at ({a}, {b})")));
                }
            }
        }
        let ny = y.complex().vertex_names().len() as u32;
        if self.vertices.len() != nv || self.vertices.iter().any(|&w| w >= ny) {
            return Err(StabilityError::NotEquivariant("vertex map has the wrong domain or codomain".into()));
        }
        for m in x.complex().maximal_simplices() {
            let image = Simplex::new(m.vertices().iter().map(|&v| self.vertices[v as usize]).collect());
            if !y.complex().contains(&image) {
                return Err(StabilityError::NotSimplicial(format!("f sends {:?} to a non-simplex", m.vertices())));
            }
        }
        for a in 0..g.order() {
            for v in 0..nv as u32 {
                if self.vertices[x.vertex_image(a, v) as usize] != y.vertex_image(self.phi[a], self.vertices[v as usize]) {
                    return Err(StabilityError::NotEquivariant(format!("f(g·v) ≠ φ(g)·f(v) for g = {a}, v = {v}")));
                }
            }
        }
        Ok(())
    }
}

/// Number of `p`-simplices, with a single empty simplex at `p = −1`.
fn cells(act: &GroupAction, p: isize) -> usize {
    match p {
        -1 => 1,
        p if p < -1 => 0,
        p => act.complex().simplices_of_dim(p as usize).len(),
    }
}

/// `C̃_p ⊗_G E_q` of the bar resolution; basis `(σ, [g1|…|gq])` indexed
/// `σ·|G|^q + tuple`.
fn rank(act: &GroupAction, p: isize, q: isize) -> usize {
    if q < 0 {
        return 0;
    }
    cells(act, p) * act.group().order().pow(q as u32)
}

/// `∂ ⊗ 1`, with the augmentation out of `p = 0`.
fn horizontal(act: &GroupAction, p: isize, q: isize) -> Matrix {
    let (rows, cols) = (rank(act, p - 1, q), rank(act, p, q));
    if rows == 0 || cols == 0 {
        return SparseMatrix::zeros(rows, cols);
    }
    let width = act.group().order().pow(q as u32);
    let mut trip = Vec::new();
    if p == 0 {
        for i in 0..cells(act, 0) {
            trip.extend((0..width).map(|t| (t, i * width + t, BigInt::from(1))));
        }
    } else {
        let below = act.complex().simplices_of_dim(p as usize - 1);
        for (i, s) in act.complex().simplices_of_dim(p as usize).iter().enumerate() {
            for (k, face) in s.boundary_faces().enumerate() {
                let j = below.binary_search(&face).expect("downward closed");
                let sign = if k % 2 == 0 { 1 } else { -1 };
                trip.extend((0..width).map(|t| (j * width + t, i * width + t, BigInt::from(sign))));
            }
        }
    }
    SparseMatrix::from_triplets(rows, cols, trip).expect("in range")
}

/// `1 ⊗ d`: `σ ⊗ g·[face] = (g⁻¹σ) ⊗ [face]`.
fn vertical(act: &GroupAction, p: isize, q: isize) -> Matrix {
    let (rows, cols) = (rank(act, p, q - 1), rank(act, p, q));
    if q < 1 || rows == 0 || cols == 0 {
        return SparseMatrix::zeros(rows, cols);
    }
    let g = act.group();
    let n = g.order();
    let width = n.pow(q as u32);
    let below = n.pow(q as u32 - 1);
    let mut trip = Vec::new();
    for c in 0..width {
        let t = tuple_at(n, q as usize, c);
        for (sign, left, face) in bar_faces(g, &t) {
            let f = tuple_index(n, &face);
            for i in 0..cells(act, p) {
                let (j, orient) = if p < 0 { (0, 1) } else { act.act(g.inv(left), p as usize, i) };
                trip.push((j * below + f, i * width + c, BigInt::from(sign * orient)));
            }
        }
    }
    SparseMatrix::from_triplets(rows, cols, trip).expect("in range")
}

/// `σ ⊗ [t] ↦ f(σ) ⊗ [φ t]`, zero on collapsed simplices.
fn induced(x: &GroupAction, y: &GroupAction, f: &EquivariantMap, p: isize, q: isize) -> Matrix {
    let (rows, cols) = (rank(y, p, q), rank(x, p, q));
    if rows == 0 || cols == 0 {
        return SparseMatrix::zeros(rows, cols);
    }
    let (n, m) = (x.group().order(), y.group().order());
    let (wx, wy) = (n.pow(q as u32), m.pow(q as u32));
    let image: Vec<Option<(usize, i64)>> = if p < 0 {
        vec![Some((0, 1))]
    } else {
        x.complex()
            .simplices_of_dim(p as usize)
            .iter()
            .map(|s| {
                super::action::oriented(s.vertices().iter().map(|&v| f.vertices[v as usize]).collect())
                    .map(|(t, sign)| (y.simplex_index(&t).expect("validated simplicial"), sign))
            })
            .collect()
    };
    let mut trip = Vec::new();
    for (i, img) in image.iter().enumerate() {
        let Some((j, sign)) = *img else { continue };
        for c in 0..wx {
            let t: Vec<usize> = tuple_at(n, q as usize, c).into_iter().map(|a| f.phi[a]).collect();
            trip.push((j * wy + tuple_index(m, &t), i * wx + c, BigInt::from(sign)));
        }
    }
    SparseMatrix::from_triplets(rows, cols, trip).expect("in range")
}

/// Augmented mapping-cone double complex
/// `C_{p,q} = (C̃_p(X) ⊗_G E_{q−1}G) ⊕ (C̃_p(Y) ⊗_H E_qH)` over
/// `−1 ≤ p ≤ dim`, `0 ≤ q ≤ q_max + 1`, with `d^H = ∂ ⊗ 1` and
/// `d^V(a, b) = (−d a, d b + F a)`. The top row is a truncation.
pub fn equivariant_double_complex(
    x: &GroupAction,
    y: &GroupAction,
    f: &EquivariantMap,
    q_max: usize,
    budget: &Budget,
) -> Result<DoubleComplex, StabilityError> {
    f.validate(x, y)?;
    budget.check(x.group().order(), q_max)?;
    budget.check(y.group().order(), q_max + 1)?;
    let top = x.complex().dim().max(y.complex().dim()).max(0);
    let q_top = q_max as isize + 1;
    let a = |p: isize, q: isize| rank(x, p, q - 1);
    let b = |p: isize, q: isize| rank(y, p, q);
    let ranks = (-1..=top).map(|p| (0..=q_top).map(|q| a(p, q) + b(p, q)).collect()).collect();
    let mut hor = Vec::new();
    let mut ver = Vec::new();
    for p in -1..=top {
        for q in 0..=q_top {
            if p > -1 {
                let (hx, hy) = (horizontal(x, p, q - 1), horizontal(y, p, q));
                let m = SparseMatrix::block(
                    &[a(p - 1, q), b(p - 1, q)],
                    &[a(p, q), b(p, q)],
                    &[vec![Some(&hx), None], vec![None, Some(&hy)]],
                );
                hor.push(((p, q), m));
            }
            if q > 0 {
                let vx = vertical(x, p, q - 1).neg();
                let fx = induced(x, y, f, p, q - 1);
                let vy = vertical(y, p, q);
                let m = SparseMatrix::block(
                    &[a(p, q - 1), b(p, q - 1)],
                    &[a(p, q), b(p, q)],
                    &[vec![Some(&vx), None], vec![Some(&fx), Some(&vy)]],
                );
                ver.push(((p, q), m));
            }
        }
    }
    Ok(DoubleComplex::new(-1, 0, ranks, hor, ver)?)
}

/// `C̃_p ⊗_G E_*G` in degrees `0..=top`, truncated above.
pub fn column_complex(act: &GroupAction, p: isize, top: usize) -> ChainComplex<BigInt> {
    let ranks = (0..=top as isize).map(|q| rank(act, p, q)).collect();
    let boundaries = (0..=top as isize)
        .map(|q| if q == 0 { SparseMatrix::zeros(0, rank(act, p, 0)) } else { vertical(act, p, q) })
        .collect();
    ChainComplex::new(0, ranks, boundaries, true).expect("bar differential squares to zero")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapiroStatus {
    Match,
    Mismatch,
    /// The stabilizer moves vertices of the simplex; the comparison with
    /// trivial coefficients does not apply.
    RotationPresent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapiroRow {
    pub q: usize,
    pub direct: HomologyReport,
    pub stabilizer: HomologyReport,
    pub agree: bool,
}

/// `H_q(G; C̃_p)` computed on the column against `H_q(St(σ_p))` computed
/// from the bar complex of the stabilizer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapiroReport {
    pub group: String,
    pub p: isize,
    pub representative: Vec<String>,
    /// `None` for an infinite stabilizer.
    pub stabilizer_order: Option<usize>,
    pub stabilizer: String,
    pub status: ShapiroStatus,
    pub rows: Vec<ShapiroRow>,
}

impl ShapiroReport {
    pub fn holds(&self) -> bool {
        self.status == ShapiroStatus::Match
    }
}

pub(crate) fn rows_of(direct: &[AbelianGroup], stab: &[AbelianGroup]) -> Vec<ShapiroRow> {
    direct
        .iter()
        .zip(stab)
        .enumerate()
        .map(|(q, (d, s))| ShapiroRow {
            q,
            direct: HomologyReport::new(q as isize, d),
            stabilizer: HomologyReport::new(q as isize, s),
            agree: d == s,
        })
        .collect()
}

/// Shapiro comparison in dimension `p` (`p = −1` is the augmentation, with
/// stabilizer the whole group) for `q ≤ q_max`.
#[allow(non_snake_case)]
pub fn shapiro_E1(act: &GroupAction, p: isize, q_max: usize, budget: &Budget) -> Result<ShapiroReport, StabilityError> {
    if cells(act, p) == 0 {
        return Err(StabilityError::NoSimplices { p });
    }
    let g = act.group();
    budget.check(g.order(), q_max + 1)?;
    let (rep, stab) = if p < 0 {
        let all: Vec<usize> = (0..g.order()).collect();
        (Vec::new(), super::Stabilizer { setwise: all.clone(), pointwise: all })
    } else {
        let orbits = act.orbits(p as usize);
        if orbits.len() != 1 {
            return Err(StabilityError::NotTransitive { p, orbits: orbits.len() });
        }
        let s = act.complex().simplices_of_dim(p as usize)[0].clone();
        (act.complex().names_of(&s), act.stabilizer(&s))
    };
    let col = column_complex(act, p, q_max + 1);
    let direct = (0..=q_max).map(|q| col.homology(q as isize)).collect::<Result<Vec<_>, _>>()?;
    let bar = subgroup_bar_complex(g, &stab.setwise, q_max + 1);
    let stabilizer = (0..=q_max).map(|q| bar.homology(q as isize)).collect::<Result<Vec<_>, _>>()?;
    let rows = rows_of(&direct, &stabilizer);
    let status = if stab.rotates() {
        ShapiroStatus::RotationPresent
    } else if rows.iter().all(|r| r.agree) {
        ShapiroStatus::Match
    } else {
        ShapiroStatus::Mismatch
    };
    Ok(ShapiroReport {
        group: g.name().to_string(),
        p,
        representative: rep,
        stabilizer_order: Some(stab.setwise.len()),
        stabilizer: format!("setwise {:?}, pointwise {:?}", stab.setwise, stab.pointwise),
        status,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::named;
    use crate::specseq::vertical_E1;

    #[test]
    fn identity_cone_has_trivial_columns() {
        let t = GroupAction::triangle_rotation();
        let d = equivariant_double_complex(&t, &t, &EquivariantMap::identity(&t), 2, &Budget::default()).unwrap();
        let e1 = vertical_E1(&d).unwrap();
        // the top row is a truncation artifact
        assert!(d.bidegrees().filter(|&(_, q)| q <= 2).all(|(p, q)| e1.term(p, q).is_trivial()));
    }

    #[test]
    fn trivial_groups_give_the_cone_of_f() {
        // a point into an edge: each column is the cone of C̃_p(point) → C̃_p(edge)
        let pt = GroupAction::trivial(named::simplex(0));
        let edge = GroupAction::trivial(named::simplex(1));
        let f = EquivariantMap { phi: vec![0], vertices: vec![1] };
        let d = equivariant_double_complex(&pt, &edge, &f, 1, &Budget::default()).unwrap();
        let t = d.total_complex().unwrap();
        // both complexes are contractible and E_* of the trivial group is Z
        // in degree 0, so the total complex is acyclic below the truncation
        assert!((-1..=1).all(|n| t.homology(n).unwrap().is_trivial()));
    }

    #[test]
    fn non_equivariant_maps_are_rejected() {
        let t = GroupAction::triangle_rotation();
        let f = EquivariantMap { phi: vec![0, 2, 1], vertices: vec![0, 1, 2] };
        assert!(matches!(
            equivariant_double_complex(&t, &t, &f, 1, &Budget::default()),
            Err(StabilityError::NotEquivariant(_))
        ));
    }

    #[test]
    fn shapiro_on_presets() {
        let b = Budget::default();
        for act in [GroupAction::triangle_rotation(), GroupAction::pentagon_rotation()] {
            for p in -1..=1 {
                let r = shapiro_E1(&act, p, 2, &b).unwrap();
                assert!(r.holds(), "{r:?}");
            }
        }
        let z3 = shapiro_E1(&GroupAction::triangle_rotation(), -1, 2, &b).unwrap();
        assert_eq!(z3.rows[1].direct, HomologyReport::new(1, &AbelianGroup::cyclic(3)));
        let d3 = shapiro_E1(&GroupAction::triangle_dihedral(), 1, 2, &b).unwrap();
        assert_eq!(d3.status, ShapiroStatus::RotationPresent);
        assert!(matches!(
            shapiro_E1(&GroupAction::edge_swap(), 0, 2, &b),
            Err(StabilityError::NotTransitive { p: 0, orbits: 2 })
        ));
    }
}
