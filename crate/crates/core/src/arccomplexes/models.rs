use std::collections::{HashMap, VecDeque};

use num_integer::Integer;

use super::ArcError;
use crate::simplicial::{flag_complex, Simplex, SimplicialComplex};

/// Truncated line of arcs crossing an annulus, indexed by twist
/// `-n..=n`, with the translation action `t ↦ t + 1` recorded as orbit data.
#[derive(Debug, Clone)]
pub struct AnnulusModel {
    pub n: i64,
    pub complex: SimplicialComplex,
    /// Orbit representatives per dimension, as twist tuples based at 0.
    pub orbit_representatives: Vec<Vec<Vec<i64>>>,
    /// Order of the stabilizer of each representative.
    pub stabilizer_orders: Vec<Vec<u64>>,
}

impl AnnulusModel {
    pub fn orbit_counts(&self) -> Vec<usize> {
        self.orbit_representatives.iter().map(Vec::len).collect()
    }
}

fn twist_name(t: i64) -> String {
    format!("t{t}")
}

pub fn annulus_model(n: i64) -> Result<AnnulusModel, ArcError> {
    if n < 1 {
        return Err(ArcError::BadModel(format!("truncation {n} must be at least 1")));
    }
    let twists: Vec<i64> = (-n..=n).collect();
    let names = twists.iter().map(|&t| twist_name(t)).collect();
    let maximal = (0..twists.len() as u32 - 1).map(|i| Simplex::from_sorted(vec![i, i + 1])).collect();
    let complex = SimplicialComplex::from_maximal_unchecked(names, maximal);

    let mut reps: Vec<Vec<Vec<i64>>> = Vec::new();
    let mut stabs: Vec<Vec<u64>> = Vec::new();
    for (d, level) in complex.faces_by_dim().iter().enumerate() {
        let mut seen: Vec<Vec<i64>> = Vec::new();
        for s in level {
            let t: Vec<i64> = s.vertices().iter().map(|&v| twists[v as usize]).collect();
            let base: Vec<i64> = t.iter().map(|x| x - t[0]).collect();
            if !seen.contains(&base) {
                seen.push(base);
            }
        }
        // a translation fixing a finite set setwise fixes its minimum
        let orders = seen
            .iter()
            .map(|r| (-2 * n..=2 * n).filter(|&k| r.iter().map(|x| x + k).eq(r.iter().copied())).count() as u64)
            .collect();
        debug_assert_eq!(reps.len(), d);
        reps.push(seen);
        stabs.push(orders);
    }
    Ok(AnnulusModel { n, complex, orbit_representatives: reps, stabilizer_orders: stabs })
}

/// Primitive integer pair up to sign, normalized so that the first nonzero
/// coordinate is positive.
pub type FareyVertex = (i64, i64);

fn normalize(v: FareyVertex) -> Result<FareyVertex, ArcError> {
    if v.0.gcd(&v.1) != 1 {
        return Err(ArcError::NotPrimitive(v));
    }
    Ok(if v.0 < 0 || (v.0 == 0 && v.1 < 0) { (-v.0, -v.1) } else { v })
}

fn height(v: FareyVertex) -> i64 {
    v.0.abs().max(v.1.abs())
}

fn unimodular(u: FareyVertex, v: FareyVertex) -> bool {
    (u.0 * v.1 - u.1 * v.0).abs() == 1
}

/// All normalized primitive pairs with both coordinates at most `h` in
/// absolute value.
pub fn primitive_pairs(h: i64) -> Vec<FareyVertex> {
    let mut out = Vec::new();
    for a in 0..=h {
        for b in -h..=h {
            if let Ok(v) = normalize((a, b)) {
                if v == (a, b) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Unimodular graph on primitive pairs of bounded height.
#[derive(Debug, Clone)]
pub struct FareyModel {
    pub h: i64,
    pub vertices: Vec<FareyVertex>,
    index: HashMap<FareyVertex, usize>,
    neighbours: Vec<Vec<usize>>,
}

impl FareyModel {
    pub fn new(h: i64) -> Self {
        let vertices = primitive_pairs(h);
        let index: HashMap<_, _> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let neighbours = vertices
            .iter()
            .map(|&u| (0..vertices.len()).filter(|&j| unimodular(u, vertices[j])).collect())
            .collect();
        FareyModel { h, vertices, index, neighbours }
    }

    pub fn edge_count(&self) -> usize {
        self.neighbours.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Flag complex of the graph; its triangles are the pairwise unimodular
    /// triples.
    pub fn complex(&self) -> SimplicialComplex {
        let names = self.vertices.iter().map(|(a, b)| format!("({a},{b})")).collect();
        flag_complex(names, |i, j| unimodular(self.vertices[i], self.vertices[j]), None).0
    }

    /// Shortest path by breadth-first search, if any.
    pub fn bfs_path(&self, u: FareyVertex, v: FareyVertex) -> Result<Option<Vec<FareyVertex>>, ArcError> {
        let (u, v) = (normalize(u)?, normalize(v)?);
        let (Some(&s), Some(&t)) = (self.index.get(&u), self.index.get(&v)) else {
            return Ok(None);
        };
        let mut prev = vec![usize::MAX; self.vertices.len()];
        prev[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                let mut path = vec![self.vertices[t]];
                let mut y = t;
                while y != s {
                    y = prev[y];
                    path.push(self.vertices[y]);
                }
                path.reverse();
                return Ok(Some(path));
            }
            for &y in &self.neighbours[x] {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        Ok(None)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &y in &self.neighbours[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// The Farey parent of smaller height: one of the two unimodular neighbours
/// whose sum is `v` up to sign.
fn descend(v: FareyVertex) -> FareyVertex {
    let (a, b) = v;
    debug_assert!(a >= 1 && b != 0 && height(v) > 1);
    // a·y − b·x = 1 with 0 ≤ x < a
    let e = a.extended_gcd(&b);
    let (mut x, mut y) = (-e.y, e.x);
    let k = Integer::div_floor(&x, &a);
    x -= k * a;
    y -= k * b;
    let p1 = normalize((x, y)).expect("unimodular neighbour is primitive");
    let p2 = normalize((a - x, b - y)).expect("unimodular neighbour is primitive");
    let p = if height(p1) <= height(p2) { p1 } else { p2 };
    assert!(height(p) < height(v) && unimodular(p, v));
    p
}

/// Path in the unimodular graph found by repeatedly replacing the endpoint
/// of larger height with its lower Farey parent until the ends meet or are
/// adjacent. Consecutive entries are unimodular.
pub fn farey_path(u: FareyVertex, v: FareyVertex) -> Result<Vec<FareyVertex>, ArcError> {
    let (u, v) = (normalize(u)?, normalize(v)?);
    let mut left = vec![u];
    let mut right = vec![v];
    loop {
        let (x, y) = (*left.last().unwrap(), *right.last().unwrap());
        if x == y {
            right.pop();
            break;
        }
        if unimodular(x, y) {
            break;
        }
        match (height(x), height(y)) {
            (1, 1) => {
                // (1,1) and (1,-1) meet through (1,0)
                left.push((1, 0));
            }
            (hx, hy) if hx >= hy => left.push(descend(x)),
            _ => right.push(descend(y)),
        }
    }
    left.extend(right.into_iter().rev());
    // cut out any revisited stretch
    let mut path: Vec<FareyVertex> = Vec::new();
    for w in left {
        if let Some(k) = path.iter().position(|&z| z == w) {
            path.truncate(k);
        }
        path.push(w);
    }
    debug_assert!(path.windows(2).all(|w| unimodular(w[0], w[1])));
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homological_connectivity;

    #[test]
    fn annulus_is_a_contractible_line() {
        for n in [1, 2, 5] {
            let m = annulus_model(n).unwrap();
            assert_eq!(m.complex.f_vector(), vec![(2 * n + 1) as usize, (2 * n) as usize]);
            assert_eq!(homological_connectivity(&m.complex, 1), 1);
            assert_eq!(m.orbit_counts(), vec![1, 1]);
            assert_eq!(m.stabilizer_orders, vec![vec![1], vec![1]]);
        }
        assert!(annulus_model(0).is_err());
    }

    #[test]
    fn farey_paths() {
        assert_eq!(farey_path((0, 1), (1, 0)).unwrap(), vec![(0, 1), (1, 0)]);
        let p = farey_path((1, 0), (5, 7)).unwrap();
        assert_eq!(p.first(), Some(&(1, 0)));
        assert_eq!(p.last(), Some(&(5, 7)));
        assert!(p.windows(2).all(|w| unimodular(w[0], w[1])));
        assert_eq!(farey_path((1, 1), (-1, 1)).unwrap(), vec![(1, 1), (1, 0), (1, -1)]);
        assert_eq!(farey_path((2, 3), (-2, -3)).unwrap(), vec![(2, 3)]);
        assert!(farey_path((2, 4), (1, 0)).is_err());
        let m = FareyModel::new(10);
        assert!(m.is_connected());
        assert!(m.bfs_path((1, 0), (5, 7)).unwrap().is_some());
    }

    #[test]
    fn descent_strictly_lowers_height() {
        for v in primitive_pairs(30) {
            if height(v) > 1 {
                descend(v);
            }
        }
    }

    #[test]
    fn farey_complex_small() {
        let m = FareyModel::new(1);
        // (0,1), (1,-1), (1,0), (1,1)
        assert_eq!(m.vertices.len(), 4);
        let x = m.complex();
        assert_eq!(x.f_vector(), vec![4, 5, 2]);
        assert_eq!(homological_connectivity(&x, 1), 1);
    }
}
