use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::StabilityError;
use crate::grouphom::FiniteGroup;
use crate::simplicial::{named, Simplex, SimplicialComplex};

/// Sorts a vertex list, returning the simplex and the sign of the sorting
/// permutation, or `None` when a vertex repeats.
pub(crate) fn oriented(mut vs: Vec<u32>) -> Option<(Simplex, i64)> {
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..vs.len() {
        let mut j = i;
        while j > 0 && vs[j - 1] > vs[j] {
            vs.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if vs.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((Simplex::from_sorted(vs), sign))
}

/// Finite group acting simplicially on a complex through a vertex action.
#[derive(Debug, Clone)]
pub struct GroupAction {
    group: FiniteGroup,
    complex: SimplicialComplex,
    /// `action[g][v]` is the image of vertex `v` under `g`.
    action: Vec<Vec<u32>>,
    index: Vec<HashMap<Simplex, usize>>,
}

/// Setwise and vertexwise stabilizers of one simplex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilizer {
    pub setwise: Vec<usize>,
    pub pointwise: Vec<usize>,
}

impl Stabilizer {
    /// Some element preserves the simplex but moves its vertices.
    pub fn rotates(&self) -> bool {
        self.setwise.len() != self.pointwise.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub representative: Vec<u32>,
    /// Indices into the level's sorted simplex list.
    pub members: Vec<usize>,
    pub stabilizer: Stabilizer,
}

/// Orbits of simplices, one list per dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPresentation {
    pub levels: Vec<Vec<Orbit>>,
}

impl GroupAction {
    /// Validates that each row is a permutation, the identity acts
    /// trivially, `g·(h·v) = (gh)·v`, and simplices go to simplices.
    pub fn new(group: FiniteGroup, complex: SimplicialComplex, action: Vec<Vec<u32>>) -> Result<Self, StabilityError> {
        let n = complex.vertex_names().len();
        if action.len() != group.order() {
            return Err(StabilityError::NotAnAction(format!("{} rows for a group of order {}", action.len(), group.order())));
        }
        for (g, row) in action.iter().enumerate() {
            let mut seen = vec![false; n];
            if row.len() != n || row.iter().any(|&v| v as usize >= n || std::mem::replace(&mut seen[v as usize], true)) {
                return Err(StabilityError::NotAnAction(format!("element {g} does not permute the vertices")));
            }
        }
        if action[group.identity()].iter().enumerate().any(|(v, &w)| v as u32 != w) {
            return Err(StabilityError::NotAnAction("identity moves a vertex".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                if (0..n).any(|v| action[g][action[h][v] as usize] != action[gh][v]) {
                    return Err(StabilityError::NotAnAction(format!("g·(h·v) ≠ (gh)·v for g = {g}, h = {h}")));
                }
            }
        }
        for m in complex.maximal_simplices() {
            for row in &action {
                let image = Simplex::new(m.vertices().iter().map(|&v| row[v as usize]).collect());
                if !complex.contains(&image) {
                    return Err(StabilityError::NotSimplicial(format!("{:?} is sent to a non-simplex", m.vertices())));
                }
            }
        }
        let index = complex
            .faces_by_dim()
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Ok(GroupAction { group, complex, action, index })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn vertex_image(&self, g: usize, v: u32) -> u32 {
        self.action[g][v as usize]
    }

    /// `g·σ` for the `i`-th `p`-simplex: its index and orientation sign.
    pub fn act(&self, g: usize, p: usize, i: usize) -> (usize, i64) {
        let s = &self.complex.simplices_of_dim(p)[i];
        let (t, sign) = oriented(s.vertices().iter().map(|&v| self.vertex_image(g, v)).collect()).expect("bijective");
        (self.index[p][&t], sign)
    }

    pub fn simplex_index(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim().max(0) as usize).and_then(|m| m.get(s).copied()).filter(|_| !s.is_empty())
    }

    pub fn stabilizer(&self, s: &Simplex) -> Stabilizer {
        let moved = |g: usize| Simplex::new(s.vertices().iter().map(|&v| self.vertex_image(g, v)).collect());
        let setwise = (0..self.group.order()).filter(|&g| moved(g) == *s).collect::<Vec<_>>();
        let pointwise =
            setwise.iter().copied().filter(|&g| s.vertices().iter().all(|&v| self.vertex_image(g, v) == v)).collect();
        Stabilizer { setwise, pointwise }
    }

    /// Orbits of `p`-simplices as index lists, ordered by least member.
    pub fn orbits(&self, p: usize) -> Vec<Vec<usize>> {
        let count = self.complex.simplices_of_dim(p).len();
        let mut seen = vec![false; count];
        let mut out = Vec::new();
        for i in 0..count {
            if seen[i] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..self.group.order()).map(|g| self.act(g, p, i).0).collect();
            orbit.sort_unstable();
            orbit.dedup();
            orbit.iter().for_each(|&j| seen[j] = true);
            out.push(orbit);
        }
        out
    }

    pub fn check_transitivity(&self, p: usize) -> bool {
        self.orbits(p).len() == 1
    }

    pub fn orbit_presentation(&self) -> OrbitPresentation {
        let levels = (0..self.complex.faces_by_dim().len())
            .map(|p| {
                self.orbits(p)
                    .into_iter()
                    .map(|members| {
                        let rep = &self.complex.simplices_of_dim(p)[members[0]];
                        Orbit { representative: rep.vertices().to_vec(), stabilizer: self.stabilizer(rep), members }
                    })
                    .collect()
            })
            .collect();
        OrbitPresentation { levels }
    }

    /// `Z/n` acting on a complex with `k·n` vertices by `v ↦ v + k` mod `kn`.
    pub fn rotation(n: usize, complex: SimplicialComplex) -> Result<Self, StabilityError> {
        let v = complex.vertex_names().len();
        if n == 0 || v % n != 0 {
            return Err(StabilityError::NotAnAction(format!("Z/{n} cannot rotate {v} vertices")));
        }
        let step = v / n;
        let action = (0..n).map(|g| (0..v).map(|x| ((x + g * step) % v) as u32).collect()).collect();
        Self::new(FiniteGroup::cyclic(n), complex, action)
    }

    /// `Z/3` rotating the hollow triangle.
    pub fn triangle_rotation() -> Self {
        Self::rotation(3, named::hollow_triangle()).expect("rotation of the triangle")
    }

    /// `Z/5` rotating the boundary of the pentagon.
    pub fn pentagon_rotation() -> Self {
        Self::rotation(5, named::cycle(5)).expect("rotation of the pentagon")
    }

    /// `Z/2` acting on the 4-cycle by the antipodal map.
    pub fn square_antipodal() -> Self {
        Self::rotation(2, named::cycle(4)).expect("antipodal square")
    }

    /// `S3` permuting the vertices of the hollow triangle.
    pub fn triangle_dihedral() -> Self {
        let g = FiniteGroup::symmetric3();
        // elements are the permutations of (0,1,2) in lexicographic order
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let action = perms.iter().map(|p| p.to_vec()).collect();
        Self::new(g, named::hollow_triangle(), action).expect("S3 on the triangle")
    }

    /// `Z/2` swapping the edges `{0,1}` and `{2,3}`.
    pub fn edge_swap() -> Self {
        let x = SimplicialComplex::from_index_sets((0..4).map(|i| i.to_string()).collect(), vec![vec![0, 1], vec![2, 3]])
            .expect("two edges");
        Self::new(FiniteGroup::cyclic(2), x, vec![vec![0, 1, 2, 3], vec![2, 3, 0, 1]]).expect("edge swap")
    }

    /// The trivial group acting on `complex`.
    pub fn trivial(complex: SimplicialComplex) -> Self {
        let n = complex.vertex_names().len() as u32;
        Self::new(FiniteGroup::trivial(), complex, vec![(0..n).collect()]).expect("trivial action")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_signs() {
        assert_eq!(oriented(vec![2, 0, 1]), Some((Simplex::new(vec![0, 1, 2]), 1)));
        assert_eq!(oriented(vec![1, 0]), Some((Simplex::new(vec![0, 1]), -1)));
        assert_eq!(oriented(vec![1, 1]), None);
    }

    #[test]
    fn presets_and_stabilizers() {
        let t = GroupAction::triangle_rotation();
        assert!(t.check_transitivity(0) && t.check_transitivity(1));
        assert_eq!(t.stabilizer(&Simplex::new(vec![0])).setwise, vec![0]);

        let sq = GroupAction::square_antipodal();
        assert_eq!(sq.stabilizer(&Simplex::new(vec![0])).setwise.len(), 1);
        assert_eq!(sq.stabilizer(&Simplex::new(vec![0, 1])).setwise.len(), 1);
        assert_eq!((sq.orbits(0).len(), sq.orbits(1).len()), (2, 2));

        let d = GroupAction::triangle_dihedral();
        let st = d.stabilizer(&Simplex::new(vec![0, 1]));
        assert_eq!(st.setwise.len(), 2);
        assert_eq!(st.pointwise.len(), 1);
        assert!(st.rotates());

        let e = GroupAction::edge_swap();
        assert!(e.check_transitivity(1));
        assert!(!e.check_transitivity(0));
        let pres = e.orbit_presentation();
        assert_eq!(pres.levels[0].len(), 2);
        assert_eq!(pres.levels[1][0].members, vec![0, 1]);
    }

    #[test]
    fn rejects_bad_actions() {
        let x = named::cycle(4);
        // a reflection that is not a homomorphic image of Z/3
        let bad = GroupAction::new(FiniteGroup::cyclic(3), x.clone(), vec![vec![0, 1, 2, 3], vec![1, 2, 3, 0], vec![1, 2, 3, 0]]);
        assert!(matches!(bad, Err(StabilityError::NotAnAction(_))));
        // swapping two adjacent vertices of a square breaks edges
        let bad = GroupAction::new(FiniteGroup::cyclic(2), x, vec![vec![0, 1, 2, 3], vec![1, 0, 2, 3]]);
        assert!(matches!(bad, Err(StabilityError::NotSimplicial(_))));
        assert!(GroupAction::rotation(3, named::cycle(4)).is_err());
    }
}
