use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::SpecSeqError;
use crate::homology::{ChainComplex, MatrixJson, SparseMatrix};

type Matrix = SparseMatrix<BigInt>;

/// Bigraded free abelian groups over a finite `(p, q)` window with
/// commuting differentials `d^H: (p,q) → (p−1,q)` and `d^V: (p,q) → (p,q−1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleComplex {
    p_min: isize,
    q_min: isize,
    /// `ranks[i][j]` is the rank at `(p_min + i, q_min + j)`.
    ranks: Vec<Vec<usize>>,
    /// Keyed by source bidegree; absent entries are zero.
    horizontal: BTreeMap<(isize, isize), Matrix>,
    vertical: BTreeMap<(isize, isize), Matrix>,
    /// Components `(p,q) → (p−r, q+r−1)` with `r ≥ 2`, entered into the
    /// total differential as they are. Only the column filtration remains a
    /// filtration when any is present.
    twisted: BTreeMap<(isize, isize, usize), Matrix>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwistJson {
    pub p: isize,
    pub q: isize,
    pub r: usize,
    pub matrix: MatrixJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockJson {
    pub p: isize,
    pub q: isize,
    pub matrix: MatrixJson,
}

/// `{"p_min", "q_min", "ranks": [[..] per p], "horizontal": [blocks], "vertical": [blocks]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DoubleComplexJson {
    pub p_min: isize,
    pub q_min: isize,
    pub ranks: Vec<Vec<usize>>,
    #[serde(default)]
    pub horizontal: Vec<BlockJson>,
    #[serde(default)]
    pub vertical: Vec<BlockJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub twisted: Vec<TwistJson>,
}

impl DoubleComplex {
    /// Rows of `ranks` are indexed by `p`, columns by `q`; ragged rows are
    /// padded with zeros. Shapes and the three identities are verified.
    pub fn new(
        p_min: isize,
        q_min: isize,
        mut ranks: Vec<Vec<usize>>,
        horizontal: Vec<((isize, isize), Matrix)>,
        vertical: Vec<((isize, isize), Matrix)>,
    ) -> Result<Self, SpecSeqError> {
        let width = ranks.iter().map(Vec::len).max().unwrap_or(0);
        ranks.iter_mut().for_each(|r| r.resize(width, 0));
        let mut d = DoubleComplex {
            p_min,
            q_min,
            ranks,
            horizontal: BTreeMap::new(),
            vertical: BTreeMap::new(),
            twisted: BTreeMap::new(),
        };
        for ((p, q), m) in horizontal {
            d.check_block(p, q, (p - 1, q), &m)?;
            if !m.is_zero() {
                d.horizontal.insert((p, q), m);
            }
        }
        for ((p, q), m) in vertical {
            d.check_block(p, q, (p, q - 1), &m)?;
            if !m.is_zero() {
                d.vertical.insert((p, q), m);
            }
        }
        d.check_identities()?;
        Ok(d)
    }

    /// Adds twisted components `((p, q), r, matrix)`; the total differential
    /// must still square to zero.
    pub fn with_twists(mut self, twists: Vec<((isize, isize), usize, Matrix)>) -> Result<Self, SpecSeqError> {
        for ((p, q), r, m) in twists {
            if r < 2 {
                return Err(SpecSeqError::BadTwist { p, q, r });
            }
            self.check_block(p, q, (p - r as isize, q + r as isize - 1), &m)?;
            if !m.is_zero() {
                self.twisted.insert((p, q, r), m);
            }
        }
        self.total_complex()?;
        Ok(self)
    }

    pub fn is_twisted(&self) -> bool {
        !self.twisted.is_empty()
    }

    fn check_block(&self, p: isize, q: isize, target: (isize, isize), m: &Matrix) -> Result<(), SpecSeqError> {
        if !self.in_window(p, q) {
            return Err(SpecSeqError::OutsideWindow { p, q });
        }
        let expected = (self.rank(target.0, target.1), self.rank(p, q));
        if (m.rows(), m.cols()) != expected {
            return Err(SpecSeqError::BlockShape { p, q, expected, found: (m.rows(), m.cols()) });
        }
        Ok(())
    }

    fn check_identities(&self) -> Result<(), SpecSeqError> {
        for (p, q) in self.bidegrees() {
            let hh = self.dh(p - 1, q).mul(&self.dh(p, q))?;
            if !hh.is_zero() {
                return Err(SpecSeqError::HorizontalSquare { p, q });
            }
            let vv = self.dv(p, q - 1).mul(&self.dv(p, q))?;
            if !vv.is_zero() {
                return Err(SpecSeqError::VerticalSquare { p, q });
            }
            let hv = self.dh(p, q - 1).mul(&self.dv(p, q))?;
            let vh = self.dv(p - 1, q).mul(&self.dh(p, q))?;
            if hv != vh {
                return Err(SpecSeqError::NotCommuting { p, q });
            }
        }
        Ok(())
    }

    pub fn from_json_str(s: &str) -> Result<Self, SpecSeqError> {
        let j: DoubleComplexJson = serde_json::from_str(s).map_err(|e| SpecSeqError::Json(e.to_string()))?;
        Self::from_json(&j)
    }

    pub fn from_json(j: &DoubleComplexJson) -> Result<Self, SpecSeqError> {
        let blocks = |bs: &[BlockJson]| -> Result<Vec<_>, SpecSeqError> {
            bs.iter().map(|b| Ok(((b.p, b.q), SparseMatrix::from_json(&b.matrix)?))).collect()
        };
        let d = Self::new(j.p_min, j.q_min, j.ranks.clone(), blocks(&j.horizontal)?, blocks(&j.vertical)?)?;
        if j.twisted.is_empty() {
            return Ok(d);
        }
        let twists = j
            .twisted
            .iter()
            .map(|t| Ok(((t.p, t.q), t.r, SparseMatrix::from_json(&t.matrix)?)))
            .collect::<Result<Vec<_>, SpecSeqError>>()?;
        d.with_twists(twists)
    }

    pub fn to_json(&self) -> DoubleComplexJson {
        let blocks = |m: &BTreeMap<(isize, isize), Matrix>| {
            m.iter().map(|(&(p, q), x)| BlockJson { p, q, matrix: x.to_json() }).collect()
        };
        DoubleComplexJson {
            p_min: self.p_min,
            q_min: self.q_min,
            ranks: self.ranks.clone(),
            horizontal: blocks(&self.horizontal),
            vertical: blocks(&self.vertical),
            twisted: self
                .twisted
                .iter()
                .map(|(&(p, q, r), x)| TwistJson { p, q, r, matrix: x.to_json() })
                .collect(),
        }
    }

    pub fn p_range(&self) -> std::ops::RangeInclusive<isize> {
        self.p_min..=self.p_min + self.ranks.len() as isize - 1
    }

    pub fn q_range(&self) -> std::ops::RangeInclusive<isize> {
        let w = self.ranks.first().map_or(0, Vec::len);
        self.q_min..=self.q_min + w as isize - 1
    }

    pub fn in_window(&self, p: isize, q: isize) -> bool {
        self.p_range().contains(&p) && self.q_range().contains(&q)
    }

    pub fn bidegrees(&self) -> impl Iterator<Item = (isize, isize)> + '_ {
        self.p_range().flat_map(move |p| self.q_range().map(move |q| (p, q)))
    }

    pub fn rank(&self, p: isize, q: isize) -> usize {
        if self.in_window(p, q) {
            self.ranks[(p - self.p_min) as usize][(q - self.q_min) as usize]
        } else {
            0
        }
    }

    pub fn dh(&self, p: isize, q: isize) -> Matrix {
        self.horizontal
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.rank(p - 1, q), self.rank(p, q)))
    }

    pub fn dv(&self, p: isize, q: isize) -> Matrix {
        self.vertical
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.rank(p, q - 1), self.rank(p, q)))
    }

    /// Total degrees met by the window.
    pub fn total_range(&self) -> std::ops::RangeInclusive<isize> {
        self.p_min + self.q_min..=*self.p_range().end() + *self.q_range().end()
    }

    /// Bidegrees of total degree `n` in basis order (ascending `p`), with
    /// their offsets.
    pub fn layout(&self, n: isize) -> (Vec<(isize, isize, usize)>, usize) {
        let mut out = Vec::new();
        let mut offset = 0;
        for p in self.p_range() {
            let q = n - p;
            if self.q_range().contains(&q) {
                out.push((p, q, offset));
                offset += self.rank(p, q);
            }
        }
        (out, offset)
    }

    /// Total differential `d^H + (−1)^p d^V` (plus any twisted components)
    /// in degree `n`.
    pub fn total_boundary(&self, n: isize) -> Matrix {
        let (src, cols) = self.layout(n);
        let (tgt, rows) = self.layout(n - 1);
        let offset_of = |p: isize| tgt.iter().find(|t| t.0 == p).map(|t| t.2);
        let mut trip = Vec::new();
        for &(p, q, co) in &src {
            if let Some(ro) = offset_of(p - 1) {
                trip.extend(self.dh(p, q).entries().map(|(i, j, v)| (ro + i, co + j, v.clone())));
            }
            if let Some(ro) = offset_of(p) {
                let odd = p.rem_euclid(2) == 1;
                trip.extend(self.dv(p, q).entries().map(|(i, j, v)| (ro + i, co + j, if odd { -v } else { v.clone() })));
            }
        }
        for (&(p, q, r), m) in &self.twisted {
            let Some(&(_, _, co)) = src.iter().find(|s| (s.0, s.1) == (p, q)) else { continue };
            if let Some(ro) = offset_of(p - r as isize) {
                trip.extend(m.entries().map(|(i, j, v)| (ro + i, co + j, v.clone())));
            }
        }
        SparseMatrix::from_triplets(rows, cols, trip).expect("blocks fit the layout")
    }

    pub fn total_complex(&self) -> Result<ChainComplex<BigInt>, SpecSeqError> {
        let range = self.total_range();
        let ranks: Vec<usize> = range.clone().map(|n| self.layout(n).1).collect();
        let boundaries = range
            .clone()
            .map(|n| if n == *range.start() { SparseMatrix::zeros(0, self.layout(n).1) } else { self.total_boundary(n) })
            .collect();
        ChainComplex::new(*range.start(), ranks, boundaries, false).map_err(|_| SpecSeqError::TotalSquare)
    }
}

/// Bidegree-preserving map of double complexes commuting with both
/// differentials.
#[derive(Debug, Clone)]
pub struct DoubleMap {
    pub source: DoubleComplex,
    pub target: DoubleComplex,
    components: BTreeMap<(isize, isize), Matrix>,
}

impl DoubleMap {
    pub fn new(
        source: DoubleComplex,
        target: DoubleComplex,
        components: Vec<((isize, isize), Matrix)>,
    ) -> Result<Self, SpecSeqError> {
        let mut map = BTreeMap::new();
        for ((p, q), m) in components {
            let expected = (target.rank(p, q), source.rank(p, q));
            if (m.rows(), m.cols()) != expected {
                return Err(SpecSeqError::BlockShape { p, q, expected, found: (m.rows(), m.cols()) });
            }
            map.insert((p, q), m);
        }
        let f = DoubleMap { source, target, components: map };
        for (p, q) in f.source.bidegrees() {
            let h = f.target.dh(p, q).mul(&f.component(p, q))? == f.component(p - 1, q).mul(&f.source.dh(p, q))?;
            let v = f.target.dv(p, q).mul(&f.component(p, q))? == f.component(p, q - 1).mul(&f.source.dv(p, q))?;
            if !(h && v) {
                return Err(SpecSeqError::NotAMorphism { p, q });
            }
        }
        if f.source.is_twisted() || f.target.is_twisted() {
            for n in f.source.total_range() {
                let lhs = f.target.total_boundary(n).mul(&f.total(n))?;
                let rhs = f.total(n - 1).mul(&f.source.total_boundary(n))?;
                if lhs != rhs {
                    return Err(SpecSeqError::NotAMorphism { p: n, q: 0 });
                }
            }
        }
        Ok(f)
    }

    pub fn identity(d: &DoubleComplex) -> Self {
        let components = d.bidegrees().map(|(p, q)| ((p, q), SparseMatrix::identity(d.rank(p, q)))).collect();
        DoubleMap { source: d.clone(), target: d.clone(), components }
    }

    pub fn zero(source: &DoubleComplex, target: &DoubleComplex) -> Self {
        DoubleMap { source: source.clone(), target: target.clone(), components: BTreeMap::new() }
    }

    pub fn component(&self, p: isize, q: isize) -> Matrix {
        self.components
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.target.rank(p, q), self.source.rank(p, q)))
    }

    /// Block-diagonal map on total degree `n`.
    pub fn total(&self, n: isize) -> Matrix {
        let (src, cols) = self.source.layout(n);
        let (tgt, rows) = self.target.layout(n);
        let mut trip = Vec::new();
        for &(p, q, co) in &src {
            if let Some(&(_, _, ro)) = tgt.iter().find(|t| t.0 == p) {
                trip.extend(self.component(p, q).entries().map(|(i, j, v)| (ro + i, co + j, v.clone())));
            }
        }
        SparseMatrix::from_triplets(rows, cols, trip).expect("blocks fit the layout")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        let dense: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        SparseMatrix::from_dense(&dense)
    }

    /// Z at (0,0), (1,0), (0,1), (1,1) with identity maps: a square.
    fn square() -> DoubleComplex {
        DoubleComplex::new(
            0,
            0,
            vec![vec![1, 1], vec![1, 1]],
            vec![((1, 0), m(&[&[1]])), ((1, 1), m(&[&[1]]))],
            vec![((0, 1), m(&[&[1]])), ((1, 1), m(&[&[1]]))],
        )
        .unwrap()
    }

    #[test]
    fn totalization_sign() {
        let d = square();
        let t = d.total_complex().unwrap();
        assert_eq!(t.ranks(), &[1, 2, 1]);
        assert!(t.homology_all().iter().all(|(_, g)| g.is_trivial()));
        // a square whose sides anticommute is rejected
        let bad = DoubleComplex::new(
            0,
            0,
            vec![vec![1, 1], vec![1, 1]],
            vec![((1, 0), m(&[&[1]])), ((1, 1), m(&[&[-1]]))],
            vec![((0, 1), m(&[&[1]])), ((1, 1), m(&[&[1]]))],
        );
        assert_eq!(bad, Err(SpecSeqError::NotCommuting { p: 1, q: 1 }));
    }

    #[test]
    fn json_round_trip_and_errors() {
        let d = square();
        let s = serde_json::to_string(&d.to_json()).unwrap();
        assert_eq!(DoubleComplex::from_json_str(&s).unwrap(), d);
        assert!(matches!(DoubleComplex::from_json_str("{"), Err(SpecSeqError::Json(_))));
        let outside = DoubleComplex::new(0, 0, vec![vec![1]], vec![((3, 0), m(&[&[1]]))], vec![]);
        assert_eq!(outside, Err(SpecSeqError::OutsideWindow { p: 3, q: 0 }));
    }

    #[test]
    fn maps() {
        let d = square();
        let id = DoubleMap::identity(&d);
        assert_eq!(id.total(1), SparseMatrix::identity(2));
        let bad = DoubleMap::new(d.clone(), d.clone(), vec![((0, 0), m(&[&[1]]))]);
        assert!(matches!(bad, Err(SpecSeqError::NotAMorphism { .. })));
    }

    /// Acyclic: `d^1` kills `(0,0)` against `(1,0)`, a length-two twist
    /// kills `(0,1)` against `(2,0)`.
    fn twisted() -> DoubleComplex {
        DoubleComplex::new(0, 0, vec![vec![1, 1], vec![1], vec![1]], vec![((1, 0), m(&[&[1]]))], vec![])
            .unwrap()
            .with_twists(vec![((2, 0), 2, m(&[&[1]]))])
            .unwrap()
    }

    #[test]
    fn twists() {
        use crate::specseq::{run_to_limit, Filtration};
        let d = twisted();
        assert!(d.total_complex().unwrap().homology_all().iter().all(|(_, g)| g.is_trivial()));
        let rep = run_to_limit(&d, Filtration::Column, Some(2)).unwrap();
        assert_eq!(rep.limit_page, 3);
        assert!(matches!(run_to_limit(&d, Filtration::Row, None), Err(SpecSeqError::RowOfTwisted)));
        let s = serde_json::to_string(&d.to_json()).unwrap();
        assert_eq!(DoubleComplex::from_json_str(&s).unwrap(), d);
        let plain = DoubleComplex::new(0, 0, vec![vec![1, 1], vec![1], vec![1]], vec![], vec![]).unwrap();
        assert_eq!(plain.clone().with_twists(vec![((2, 0), 1, m(&[&[1]]))]), Err(SpecSeqError::BadTwist { p: 2, q: 0, r: 1 }));
        // a twist into the non-cycle at (0,0) breaks d∘d = 0
        let broken = DoubleComplex::new(0, 0, vec![vec![1, 1], vec![0, 1], vec![1]], vec![], vec![((0, 1), m(&[&[1]]))]).unwrap();
        assert_eq!(broken.with_twists(vec![((2, 0), 2, m(&[&[1]]))]), Err(SpecSeqError::TotalSquare));
    }
}
