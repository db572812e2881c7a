//! Finite abstract simplicial complexes stored by their maximal simplices.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("simplex {0} of the input is empty")]
    EmptySimplex(usize),
    #[error("vertex index {index} out of range ({count} vertices)")]
    VertexOutOfRange { index: usize, count: usize },
    #[error("duplicate vertex identifier {0:?}")]
    DuplicateVertex(String),
    #[error("{0:?} is not a simplex of the complex")]
    NotASimplex(Vec<String>),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
}

/// Sorted, duplicate-free list of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    pub fn new(mut vertices: Vec<u32>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    /// Caller guarantees the input is strictly increasing.
    pub fn from_sorted(vertices: Vec<u32>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    /// Dimension; the empty simplex has dimension -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    /// Codimension-one faces in the order of the removed vertex.
    pub fn boundary_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.0.len()).map(move |i| {
            let mut f = self.0.clone();
            f.remove(i);
            Simplex(f)
        })
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Simplex::new(v)
    }

    pub fn difference(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    /// All non-empty faces of dimension `d`.
    pub fn faces_of_dim(&self, d: usize) -> Vec<Simplex> {
        let k = d + 1;
        let n = self.0.len();
        if k > n {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(Simplex(idx.iter().map(|&i| self.0[i]).collect()));
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
        out
    }
}

impl From<Vec<u32>> for Simplex {
    fn from(v: Vec<u32>) -> Self {
        Simplex::new(v)
    }
}

/// Immutable finite simplicial complex. Faces are materialized lazily from
/// the maximal simplices and cached.
#[derive(Debug)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    maximal: Vec<Simplex>,
    faces: OnceLock<Vec<Vec<Simplex>>>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        let faces = OnceLock::new();
        if let Some(f) = self.faces.get() {
            let _ = faces.set(f.clone());
        }
        SimplicialComplex { vertices: self.vertices.clone(), maximal: self.maximal.clone(), faces }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.maximal == other.maximal
    }
}

/// Keeps only the inclusion-maximal members, sorted and deduplicated.
fn maximal_members(mut family: Vec<Simplex>) -> Vec<Simplex> {
    family.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    family.dedup();
    let mut kept: Vec<Simplex> = Vec::new();
    for s in family {
        if !kept.iter().any(|m| s.is_face_of(m)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::from_maximal_unchecked(Vec::new(), Vec::new())
    }

    /// Builds from vertex names and arbitrary index sets; non-maximal members
    /// are absorbed.
    pub fn from_index_sets(
        vertices: Vec<String>,
        sets: Vec<Vec<u32>>,
    ) -> Result<Self, SimplicialError> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(SimplicialError::DuplicateVertex(v.clone()));
            }
        }
        let mut family = Vec::with_capacity(sets.len());
        for (i, s) in sets.into_iter().enumerate() {
            if s.is_empty() {
                return Err(SimplicialError::EmptySimplex(i));
            }
            if let Some(&bad) = s.iter().find(|&&v| v as usize >= vertices.len()) {
                return Err(SimplicialError::VertexOutOfRange {
                    index: bad as usize,
                    count: vertices.len(),
                });
            }
            family.push(Simplex::new(s));
        }
        Ok(Self::from_maximal_unchecked(vertices, maximal_members(family)))
    }

    /// Caller guarantees `maximal` is an antichain of valid simplices.
    pub fn from_maximal_unchecked(vertices: Vec<String>, maximal: Vec<Simplex>) -> Self {
        SimplicialComplex { vertices, maximal, faces: OnceLock::new() }
    }

    /// Builds from an already downward-closed family listed by dimension,
    /// together with its maximal simplices. Avoids recomputing faces for
    /// large enumerated complexes.
    pub fn from_closed_family(
        vertices: Vec<String>,
        maximal: Vec<Simplex>,
        mut by_dim: Vec<Vec<Simplex>>,
    ) -> Self {
        for level in &mut by_dim {
            level.sort();
        }
        while by_dim.last().is_some_and(|l| l.is_empty()) {
            by_dim.pop();
        }
        let faces = OnceLock::new();
        let _ = faces.set(by_dim);
        let mut maximal = maximal;
        maximal.sort();
        SimplicialComplex { vertices, maximal, faces }
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<u32> {
        self.vertices.iter().position(|v| v == name).map(|i| i as u32)
    }

    pub fn maximal_simplices(&self) -> &[Simplex] {
        &self.maximal
    }

    pub fn is_empty(&self) -> bool {
        self.maximal.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.maximal.iter().map(Simplex::dim).max().unwrap_or(-1)
    }

    /// All simplices grouped by dimension, each level sorted.
    pub fn faces_by_dim(&self) -> &[Vec<Simplex>] {
        self.faces.get_or_init(|| {
            let top = self.dim();
            if top < 0 {
                return Vec::new();
            }
            let mut levels: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); top as usize + 1];
            for m in &self.maximal {
                for d in 0..m.len() {
                    levels[d].extend(m.faces_of_dim(d));
                }
            }
            levels.into_iter().map(|l| l.into_iter().collect()).collect()
        })
    }

    pub fn simplices_of_dim(&self, d: usize) -> &[Simplex] {
        self.faces_by_dim().get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dim().iter().map(Vec::len).collect()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        if s.is_empty() {
            return true;
        }
        match self.faces.get() {
            Some(levels) => levels
                .get(s.len() - 1)
                .is_some_and(|l| l.binary_search(s).is_ok()),
            None => self.maximal.iter().any(|m| s.is_face_of(m)),
        }
    }

    pub fn simplex_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Simplex, SimplicialError> {
        names
            .iter()
            .map(|n| {
                self.vertex_index(n.as_ref())
                    .ok_or_else(|| SimplicialError::UnknownVertex(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Simplex::new)
    }

    pub fn names_of(&self, s: &Simplex) -> Vec<String> {
        s.vertices().iter().map(|&v| self.vertices[v as usize].clone()).collect()
    }

    /// Complex generated by a subfamily of simplices, keeping this complex's
    /// vertex names but dropping unused vertices.
    fn restricted_to(&self, family: Vec<Simplex>) -> SimplicialComplex {
        let family = maximal_members(family);
        let used: BTreeSet<u32> = family.iter().flat_map(|s| s.vertices().iter().copied()).collect();
        let remap: HashMap<u32, u32> = used.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let vertices = used.iter().map(|&v| self.vertices[v as usize].clone()).collect();
        let maximal = family
            .into_iter()
            .map(|s| Simplex::new(s.vertices().iter().map(|v| remap[v]).collect()))
            .collect();
        SimplicialComplex::from_maximal_unchecked(vertices, maximal)
    }

    fn check_member(&self, s: &Simplex) -> Result<(), SimplicialError> {
        if s.is_empty() || !self.contains(s) {
            return Err(SimplicialError::NotASimplex(self.names_of(s)));
        }
        Ok(())
    }

    /// Simplices τ disjoint from σ with τ ∪ σ a simplex.
    pub fn link(&self, sigma: &Simplex) -> Result<SimplicialComplex, SimplicialError> {
        self.check_member(sigma)?;
        let family = self
            .maximal
            .iter()
            .filter(|m| sigma.is_face_of(m))
            .map(|m| m.difference(sigma))
            .filter(|s| !s.is_empty())
            .collect();
        Ok(self.restricted_to(family))
    }

    /// Closure of the simplices containing σ.
    pub fn star(&self, sigma: &Simplex) -> Result<SimplicialComplex, SimplicialError> {
        self.check_member(sigma)?;
        let family = self.maximal.iter().filter(|m| sigma.is_face_of(m)).cloned().collect();
        Ok(self.restricted_to(family))
    }

    /// The complex consisting of σ and all its faces.
    pub fn closure(&self, sigma: &Simplex) -> Result<SimplicialComplex, SimplicialError> {
        self.check_member(sigma)?;
        Ok(self.restricted_to(vec![sigma.clone()]))
    }

    pub fn skeleton(&self, d: usize) -> SimplicialComplex {
        let mut family = Vec::new();
        for m in &self.maximal {
            if m.len() <= d + 1 {
                family.push(m.clone());
            } else {
                family.extend(m.faces_of_dim(d));
            }
        }
        let mut family: Vec<Simplex> = family.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        family.sort();
        SimplicialComplex::from_maximal_unchecked(self.vertices.clone(), maximal_members(family))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces_by_dim()
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Graphviz rendering of the 1-skeleton.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph complex {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{}\";", v.replace('"', "\\\""));
        }
        for e in self.simplices_of_dim(1) {
            let n = self.names_of(e);
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\";",
                n[0].replace('"', "\\\""),
                n[1].replace('"', "\\\"")
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            vertices: self.vertices.clone(),
            maximal_simplices: self.maximal.iter().map(|s| s.vertices().to_vec()).collect(),
        }
    }

    pub fn from_json(json: ComplexJson) -> Result<Self, SimplicialError> {
        Self::from_index_sets(json.vertices, json.maximal_simplices)
    }
}

/// Wire format: vertex identifiers plus maximal simplices as index lists.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub maximal_simplices: Vec<Vec<u32>>,
}

/// Builds a complex from named vertex sets; vertices are ordered by first
/// appearance.
pub fn build_complex<S: AsRef<str>>(maximal: &[Vec<S>]) -> Result<SimplicialComplex, SimplicialError> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, u32> = HashMap::new();
    let mut sets = Vec::with_capacity(maximal.len());
    for (i, set) in maximal.iter().enumerate() {
        if set.is_empty() {
            return Err(SimplicialError::EmptySimplex(i));
        }
        let mut ids = Vec::with_capacity(set.len());
        for name in set {
            let name = name.as_ref();
            let id = *index.entry(name.to_string()).or_insert_with(|| {
                names.push(name.to_string());
                (names.len() - 1) as u32
            });
            ids.push(id);
        }
        sets.push(ids);
    }
    SimplicialComplex::from_index_sets(names, sets)
}

/// Join X * Y. Vertices of Y whose names collide with X (or with earlier
/// renamed vertices) receive the first free suffix `#1`, `#2`, ...
pub fn join(x: &SimplicialComplex, y: &SimplicialComplex) -> SimplicialComplex {
    let mut taken: HashSet<String> = x.vertices.iter().cloned().collect();
    let mut vertices = x.vertices.clone();
    for v in &y.vertices {
        let mut name = v.clone();
        let mut k = 1;
        while taken.contains(&name) {
            name = format!("{v}#{k}");
            k += 1;
        }
        taken.insert(name.clone());
        vertices.push(name);
    }
    let shift = x.vertices.len() as u32;
    let shifted: Vec<Simplex> = y
        .maximal
        .iter()
        .map(|s| Simplex::from_sorted(s.vertices().iter().map(|v| v + shift).collect()))
        .collect();
    let maximal = if x.is_empty() {
        shifted
    } else if y.is_empty() {
        x.maximal.clone()
    } else {
        let mut out = Vec::with_capacity(x.maximal.len() * shifted.len());
        for a in &x.maximal {
            for b in &shifted {
                let mut v = a.vertices().to_vec();
                v.extend_from_slice(b.vertices());
                out.push(Simplex::from_sorted(v));
            }
        }
        out.sort();
        out
    };
    SimplicialComplex::from_maximal_unchecked(vertices, maximal)
}

/// Clique (flag) complex of a graph on `vertices`, enumerated through
/// dimension `dim_cap` when given. The flag is true when some clique of
/// dimension `dim_cap` extends further, i.e. the result is a proper skeleton.
pub fn flag_complex<F>(vertices: Vec<String>, adjacent: F, dim_cap: Option<usize>) -> (SimplicialComplex, bool)
where
    F: Fn(usize, usize) -> bool + Sync,
{
    let n = vertices.len();
    let words = n.div_ceil(64);
    let adj: Vec<Vec<u64>> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut row = vec![0u64; words];
            for w in (0..n).filter(|&w| w != v && adjacent(v, w)) {
                row[w / 64] |= 1 << (w % 64);
            }
            row
        })
        .collect();
    for v in 0..n {
        for w in 0..v {
            assert_eq!(adj[v][w / 64] >> (w % 64) & 1, adj[w][v / 64] >> (v % 64) & 1, "asymmetric adjacency");
        }
    }

    struct Acc {
        by_dim: Vec<Vec<Simplex>>,
        maximal: Vec<Simplex>,
        truncated: bool,
    }
    fn extend(adj: &[Vec<u64>], clique: &mut Vec<u32>, cand: Vec<u64>, common: Vec<u64>, cap: usize, acc: &mut Acc) {
        let d = clique.len() - 1;
        if acc.by_dim.len() <= d {
            acc.by_dim.resize_with(d + 1, Vec::new);
        }
        let s = Simplex::from_sorted(clique.clone());
        acc.by_dim[d].push(s.clone());
        let extendable = common.iter().any(|&w| w != 0);
        if !extendable || d == cap {
            acc.truncated |= extendable;
            acc.maximal.push(s);
            return;
        }
        for (wi, &word) in cand.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let w = wi * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let mut next = cand.clone();
                for x in next.iter_mut().take(wi) {
                    *x = 0;
                }
                next[wi] &= u64::MAX.checked_shl(w as u32 % 64 + 1).unwrap_or(0);
                for (x, y) in next.iter_mut().zip(&adj[w]) {
                    *x &= y;
                }
                let next_common: Vec<u64> = common.iter().zip(&adj[w]).map(|(x, y)| x & y).collect();
                clique.push(w as u32);
                extend(adj, clique, next, next_common, cap, acc);
                clique.pop();
            }
        }
    }

    let cap = dim_cap.unwrap_or(usize::MAX);
    let parts: Vec<Acc> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut acc = Acc { by_dim: Vec::new(), maximal: Vec::new(), truncated: false };
            let mut cand = adj[v].clone();
            for (i, x) in cand.iter_mut().enumerate() {
                for b in 0..64 {
                    if i * 64 + b <= v {
                        *x &= !(1u64 << b);
                    }
                }
            }
            extend(&adj, &mut vec![v as u32], cand, adj[v].clone(), cap, &mut acc);
            acc
        })
        .collect();
    let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
    let mut maximal = Vec::new();
    let mut truncated = false;
    for p in parts {
        if by_dim.len() < p.by_dim.len() {
            by_dim.resize_with(p.by_dim.len(), Vec::new);
        }
        for (d, l) in p.by_dim.into_iter().enumerate() {
            by_dim[d].extend(l);
        }
        maximal.extend(p.maximal);
        truncated |= p.truncated;
    }
    (SimplicialComplex::from_closed_family(vertices, maximal, by_dim), truncated)
}

/// Reference complexes used throughout tests and demos.
pub mod named {
    use super::*;

    fn numbered(n: usize, sets: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_index_sets(
            (0..n).map(|i| i.to_string()).collect(),
            sets.iter().map(|s| s.to_vec()).collect(),
        )
        .expect("static complex")
    }

    /// Boundary of the n-gon, vertices 0..n-1.
    pub fn cycle(n: usize) -> SimplicialComplex {
        let sets: Vec<Vec<u32>> = (0..n as u32).map(|i| vec![i, (i + 1) % n as u32]).collect();
        SimplicialComplex::from_index_sets((0..n).map(|i| i.to_string()).collect(), sets)
            .expect("cycle")
    }

    pub fn hollow_triangle() -> SimplicialComplex {
        cycle(3)
    }

    pub fn simplex(d: usize) -> SimplicialComplex {
        numbered(d + 1, &[&(0..=d as u32).collect::<Vec<_>>()])
    }

    /// Boundary of the (d+1)-simplex.
    pub fn sphere(d: usize) -> SimplicialComplex {
        let full: Vec<u32> = (0..=d as u32 + 1).collect();
        let sets: Vec<Vec<u32>> = (0..full.len())
            .map(|i| full.iter().copied().filter(|&v| v != i as u32).collect())
            .collect();
        SimplicialComplex::from_index_sets((0..full.len()).map(|i| i.to_string()).collect(), sets)
            .expect("sphere")
    }

    pub fn points(n: usize) -> SimplicialComplex {
        let sets: Vec<Vec<u32>> = (0..n as u32).map(|i| vec![i]).collect();
        SimplicialComplex::from_index_sets((0..n).map(|i| i.to_string()).collect(), sets)
            .expect("points")
    }

    pub fn octahedron() -> SimplicialComplex {
        // antipodal pairs (0,1), (2,3), (4,5)
        let mut sets = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    sets.push(vec![a, b, c]);
                }
            }
        }
        SimplicialComplex::from_index_sets((0..6).map(|i| i.to_string()).collect(), sets)
            .expect("octahedron")
    }

    /// Minimal 6-vertex triangulation of the real projective plane.
    pub fn projective_plane() -> SimplicialComplex {
        numbered(
            6,
            &[
                &[0, 1, 2],
                &[0, 2, 3],
                &[0, 3, 4],
                &[0, 4, 5],
                &[0, 1, 5],
                &[1, 2, 4],
                &[2, 3, 5],
                &[1, 3, 4],
                &[2, 4, 5],
                &[1, 3, 5],
            ],
        )
    }

    /// Möbius's 7-vertex torus.
    pub fn torus() -> SimplicialComplex {
        let sets: Vec<Vec<u32>> = (0..7u32)
            .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
            .collect();
        SimplicialComplex::from_index_sets((0..7).map(|i| i.to_string()).collect(), sets)
            .expect("torus")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn build_examples() {
        let t = build_complex(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).unwrap();
        assert_eq!(t.f_vector(), vec![3, 3]);
        let s = build_complex(&[vec!["a", "b", "c"]]).unwrap();
        assert_eq!(s.f_vector().iter().sum::<usize>(), 7);
        let p = build_complex(&[vec!["a"], vec!["b"]]).unwrap();
        assert_eq!(p.f_vector(), vec![2]);
        assert_eq!(
            build_complex::<&str>(&[vec!["a"], vec![]]).unwrap_err(),
            SimplicialError::EmptySimplex(1)
        );
    }

    #[test]
    fn redundant_faces_absorbed() {
        let c = build_complex(&[vec!["a", "b"], vec!["a", "b", "c"], vec!["c", "b", "a"]]).unwrap();
        assert_eq!(c.maximal_simplices().len(), 1);
    }

    #[test]
    fn euler_examples() {
        assert_eq!(hollow_triangle().euler_characteristic(), 0);
        assert_eq!(simplex(2).euler_characteristic(), 1);
        assert_eq!(octahedron().f_vector(), vec![6, 12, 8]);
        assert_eq!(octahedron().euler_characteristic(), 2);
        assert_eq!(projective_plane().euler_characteristic(), 1);
        assert_eq!(torus().f_vector(), vec![7, 21, 14]);
    }

    #[test]
    fn links() {
        let c4 = cycle(4);
        let v = c4.simplex_from_names(&["0"]).unwrap();
        assert_eq!(c4.link(&v).unwrap().f_vector(), vec![2]);
        let s = simplex(2);
        let e = s.simplex_from_names(&["0", "1"]).unwrap();
        assert_eq!(s.link(&e).unwrap().f_vector(), vec![1]);
        let o = octahedron();
        let l = o.link(&o.simplex_from_names(&["0"]).unwrap()).unwrap();
        assert_eq!(l.f_vector(), vec![4, 4]);
        assert_eq!(l.euler_characteristic(), 0);
        assert!(o.link(&Simplex::new(vec![0, 1])).is_err());
    }

    #[test]
    fn star_is_join_of_link_and_closure() {
        let o = octahedron();
        for d in 0..3 {
            for s in o.simplices_of_dim(d).to_vec() {
                let star = o.star(&s).unwrap();
                let j = join(&o.link(&s).unwrap(), &o.closure(&s).unwrap());
                let mut a: Vec<_> = star.maximal_simplices().iter().map(|m| star.names_of(m)).collect();
                let mut b: Vec<_> = j.maximal_simplices().iter().map(|m| j.names_of(m)).collect();
                for x in a.iter_mut().chain(b.iter_mut()) {
                    x.sort();
                }
                a.sort();
                b.sort();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn join_renames_deterministically() {
        let j = join(&points(2), &points(2));
        assert_eq!(j.vertex_names(), &["0", "1", "0#1", "1#1"]);
        assert_eq!(j.f_vector(), vec![4, 4]);
        let cone = join(&points(1), &hollow_triangle());
        assert_eq!(cone.euler_characteristic(), 1);
    }

    #[test]
    fn skeleta() {
        assert_eq!(simplex(2).skeleton(1).f_vector(), vec![3, 3]);
        let o = octahedron();
        assert_eq!(o.skeleton(2), o);
        assert_eq!(cycle(4).skeleton(0).f_vector(), vec![4]);
    }

    #[test]
    fn json_roundtrip_and_dot() {
        let t = torus();
        let back = SimplicialComplex::from_json(t.to_json()).unwrap();
        assert_eq!(back, t);
        let dot = cycle(3).to_dot();
        assert_eq!(dot.matches("--").count(), 3);
    }

    #[test]
    fn subsets_enumerated() {
        let s = Simplex::new(vec![4, 1, 7, 3]);
        assert_eq!(s.faces_of_dim(1).len(), 6);
        assert_eq!(s.faces_of_dim(3), vec![s.clone()]);
        assert!(s.faces_of_dim(4).is_empty());
    }

    #[test]
    fn flag_complex_of_octahedron_graph() {
        let names: Vec<String> = (0..6).map(|i| i.to_string()).collect();
        let adj = |a: usize, b: usize| a / 2 != b / 2;
        let (x, truncated) = flag_complex(names.clone(), adj, None);
        assert!(!truncated);
        assert_eq!(x, octahedron());
        assert_eq!(x.f_vector(), vec![6, 12, 8]);
        let (y, truncated) = flag_complex(names, adj, Some(1));
        assert!(truncated);
        assert_eq!(y.f_vector(), vec![6, 12]);
        assert_eq!(y.maximal_simplices().len(), 12);
        let (z, _) = flag_complex((0..70).map(|i| i.to_string()).collect(), |a, b| (a + 1) % 70 == b || (b + 1) % 70 == a, None);
        assert_eq!(z.f_vector(), vec![70, 70]);
    }
}
