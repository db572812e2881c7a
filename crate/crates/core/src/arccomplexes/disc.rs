use std::fmt;

use serde::{Deserialize, Serialize};

use super::ArcError;
use crate::surfaces::{Label, MarkedSurface};

/// Disc with `q` cyclically ordered marked boundary points `0..q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiscModel {
    pub q: u32,
    /// One label per point; empty means every point is labeled `D0`.
    #[serde(default)]
    pub labels: Vec<Label>,
}

pub const MAX_POINTS: u32 = 64;

impl DiscModel {
    pub fn new(q: u32, labels: Vec<Label>) -> Result<Self, ArcError> {
        let m = DiscModel { q, labels };
        m.validate()?;
        Ok(m)
    }

    /// Unlabeled disc, all points in `D0`.
    pub fn unlabeled(q: u32) -> Result<Self, ArcError> {
        Self::new(q, Vec::new())
    }

    pub fn validate(&self) -> Result<(), ArcError> {
        if self.q < 2 || self.q > MAX_POINTS {
            return Err(ArcError::BadModel(format!("q = {} outside 2..={MAX_POINTS}", self.q)));
        }
        if !self.labels.is_empty() && self.labels.len() != self.q as usize {
            return Err(ArcError::BadModel(format!(
                "{} labels for {} points",
                self.labels.len(),
                self.q
            )));
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self, ArcError> {
        let m: DiscModel = serde_json::from_str(s).map_err(|e| ArcError::Json(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn label(&self, i: u32) -> Label {
        self.labels.get(i as usize).copied().unwrap_or(Label::D0)
    }

    pub fn labels_or_default(&self) -> Vec<Label> {
        (0..self.q).map(|i| self.label(i)).collect()
    }

    pub fn surface(&self) -> MarkedSurface {
        MarkedSurface::disc(self.labels_or_default())
    }

    /// Point `i + k` in the cyclic order.
    pub fn shift(&self, i: u32, k: u32) -> u32 {
        (i + k) % self.q
    }

    fn adjacent(&self, i: u32, j: u32) -> bool {
        self.shift(i, 1) == j || self.shift(j, 1) == i
    }

    /// Model with a new point inserted right after `after`.
    pub fn insert_point(&self, after: u32, label: Label) -> Result<DiscModel, ArcError> {
        if after >= self.q {
            return Err(ArcError::BadArc(format!("point {after} out of range")));
        }
        let mut labels = self.labels_or_default();
        labels.insert(after as usize + 1, label);
        DiscModel::new(self.q + 1, labels)
    }

    /// Bitmask of a loop's enclosed points.
    fn mask(&self, a: &DiscArc) -> u64 {
        match *a {
            DiscArc::Chord { .. } => 0,
            DiscArc::Loop { base, first, last } => {
                let lo = (first + self.q - base) % self.q;
                let hi = (last + self.q - base) % self.q;
                (lo..=hi).fold(0u64, |m, k| m | 1 << self.shift(base, k))
            }
        }
    }

    pub fn check_arc(&self, a: &DiscArc) -> Result<(), ArcError> {
        let q = self.q;
        match *a {
            DiscArc::Chord { i, j } => {
                if i >= j || j >= q {
                    return Err(ArcError::BadArc(format!("{a}: need i < j < {q}")));
                }
            }
            DiscArc::Loop { base, first, last } => {
                if base >= q || first >= q || last >= q || first == base || last == base {
                    return Err(ArcError::BadArc(format!("{a}: endpoints out of range")));
                }
                let lo = (first + q - base) % q;
                let hi = (last + q - base) % q;
                if lo > hi {
                    return Err(ArcError::BadArc(format!("{a}: interval passes the base")));
                }
            }
        }
        Ok(())
    }

    pub fn is_trivial(&self, a: &DiscArc) -> bool {
        match *a {
            DiscArc::Chord { i, j } => self.adjacent(i, j),
            DiscArc::Loop { base, first, last } => {
                first == self.shift(base, 1) && last == self.shift(base, self.q - 1)
            }
        }
    }

    pub fn is_impure(&self, a: &DiscArc) -> bool {
        match *a {
            DiscArc::Chord { i, j } => self.label(i) != self.label(j),
            DiscArc::Loop { .. } => false,
        }
    }

    /// Whether two distinct arcs can be drawn with disjoint interiors.
    /// Identical arcs are reported incompatible.
    pub fn compatible(&self, a: &DiscArc, b: &DiscArc) -> bool {
        if a == b {
            return false;
        }
        use DiscArc::*;
        match (*a, *b) {
            (Chord { i, j }, Chord { i: k, j: l }) => !interleave(i, j, k, l),
            (Chord { i, j }, lp @ Loop { base, .. }) | (lp @ Loop { base, .. }, Chord { i, j }) => {
                if i == base || j == base {
                    return true;
                }
                let m = self.mask(&lp);
                (m >> i & 1) == (m >> j & 1)
            }
            (Loop { base: p, .. }, Loop { base: pp, .. }) => {
                let (i, j) = (self.mask(a), self.mask(b));
                if p == pp {
                    i & j == 0 || i & j == i || i & j == j
                } else {
                    let pp_in_i = i >> pp & 1 == 1;
                    let p_in_j = j >> p & 1 == 1;
                    let all = u64::MAX >> (64 - self.q);
                    match (pp_in_i, p_in_j) {
                        // each loop runs inside the other's disc: the two
                        // discs must cover every point
                        (true, true) => i | j == all,
                        (true, false) => j & !i == 0,
                        (false, true) => i & !j == 0,
                        (false, false) => i & j == 0,
                    }
                }
            }
        }
    }

    /// All non-trivial arcs: chords first in lexicographic order, then loops
    /// by base and enclosed interval.
    pub fn arcs(&self, with_loops: bool) -> Vec<DiscArc> {
        let q = self.q;
        let mut out = Vec::new();
        for i in 0..q {
            for j in i + 1..q {
                let c = DiscArc::Chord { i, j };
                if !self.is_trivial(&c) {
                    out.push(c);
                }
            }
        }
        if with_loops {
            for base in 0..q {
                for lo in 1..q {
                    for hi in lo..q {
                        let l = DiscArc::Loop { base, first: self.shift(base, lo), last: self.shift(base, hi) };
                        if !self.is_trivial(&l) {
                            out.push(l);
                        }
                    }
                }
            }
        }
        out
    }

    /// Points enclosed by a loop, in cyclic order from its first point.
    pub fn enclosed(&self, a: &DiscArc) -> Vec<u32> {
        match *a {
            DiscArc::Chord { .. } => Vec::new(),
            DiscArc::Loop { base, first, last } => {
                let lo = (first + self.q - base) % self.q;
                let hi = (last + self.q - base) % self.q;
                (lo..=hi).map(|k| self.shift(base, k)).collect()
            }
        }
    }

    /// Loop based at `base` around the cyclic interval `first..=last`.
    pub fn make_loop(&self, base: u32, enclosed: &[u32]) -> Result<DiscArc, ArcError> {
        let (&first, &last) = enclosed
            .first()
            .zip(enclosed.last())
            .ok_or_else(|| ArcError::BadArc("loop must enclose a point".into()))?;
        let a = DiscArc::Loop { base, first, last };
        self.check_arc(&a)?;
        if self.enclosed(&a) != enclosed {
            return Err(ArcError::BadArc(format!("{enclosed:?} is not a cyclic interval avoiding {base}")));
        }
        Ok(a)
    }
}

/// Chords `{i,j}` and `{k,l}` cross iff their endpoints strictly interleave.
pub fn interleave(i: u32, j: u32, k: u32, l: u32) -> bool {
    let (i, j) = (i.min(j), i.max(j));
    let inside = |x: u32| i < x && x < j;
    let on = |x: u32| x == i || x == j;
    !on(k) && !on(l) && inside(k) != inside(l)
}

/// Isotopy class of an arc in the disc model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiscArc {
    /// Arc between two distinct points, `i < j`.
    Chord { i: u32, j: u32 },
    /// Arc from `base` to itself enclosing the cyclic interval `first..=last`.
    Loop { base: u32, first: u32, last: u32 },
}

impl DiscArc {
    pub fn chord(a: u32, b: u32) -> DiscArc {
        DiscArc::Chord { i: a.min(b), j: a.max(b) }
    }

    pub fn is_loop(&self) -> bool {
        matches!(self, DiscArc::Loop { .. })
    }

    pub fn endpoints(&self) -> (u32, u32) {
        match *self {
            DiscArc::Chord { i, j } => (i, j),
            DiscArc::Loop { base, .. } => (base, base),
        }
    }

    /// Parses `c(i,j)` or `l(base;first..last)`.
    pub fn parse(s: &str) -> Result<DiscArc, ArcError> {
        let bad = || ArcError::BadArc(format!("cannot parse arc {s:?}"));
        let s = s.trim();
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
        if let Some(body) = s.strip_prefix("c(").and_then(|t| t.strip_suffix(')')) {
            let (a, b) = body.split_once(',').ok_or_else(bad)?;
            let (a, b) = (num(a)?, num(b)?);
            if a == b {
                return Err(bad());
            }
            Ok(DiscArc::chord(a, b))
        } else if let Some(body) = s.strip_prefix("l(").and_then(|t| t.strip_suffix(')')) {
            let (base, iv) = body.split_once(';').ok_or_else(bad)?;
            let (f, l) = iv.split_once("..").ok_or_else(bad)?;
            Ok(DiscArc::Loop { base: num(base)?, first: num(f)?, last: num(l)? })
        } else {
            Err(bad())
        }
    }
}

impl fmt::Display for DiscArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiscArc::Chord { i, j } => write!(f, "c({i},{j})"),
            DiscArc::Loop { base, first, last } => write!(f, "l({base};{first}..{last})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triviality() {
        let m = DiscModel::unlabeled(4).unwrap();
        assert!(m.is_trivial(&DiscArc::chord(0, 1)));
        assert!(m.is_trivial(&DiscArc::chord(3, 0)));
        assert!(!m.is_trivial(&DiscArc::chord(0, 2)));
        assert!(m.is_trivial(&m.make_loop(0, &[1, 2, 3]).unwrap()));
        assert!(!m.is_trivial(&m.make_loop(0, &[1, 2]).unwrap()));
        assert!(!m.is_trivial(&m.make_loop(2, &[3, 0]).unwrap()));
    }

    #[test]
    fn counts() {
        for q in 3..10u32 {
            let m = DiscModel::unlabeled(q).unwrap();
            let arcs = m.arcs(true);
            let chords = (q * (q - 3) / 2) as usize;
            let loops = (q * (q * (q - 1) / 2 - 1)) as usize;
            assert_eq!(arcs.len(), chords + loops);
            assert!(arcs[..chords].iter().all(|a| !a.is_loop()));
            for a in &arcs {
                m.check_arc(a).unwrap();
            }
        }
        assert_eq!(DiscModel::unlabeled(4).unwrap().arcs(true).len(), 22);
    }

    #[test]
    fn compatibility_examples() {
        let m = DiscModel::unlabeled(4).unwrap();
        assert!(!m.compatible(&DiscArc::chord(0, 2), &DiscArc::chord(1, 3)));
        assert!(m.compatible(&DiscArc::chord(0, 2), &DiscArc::chord(0, 3)));
        let m5 = DiscModel::unlabeled(5).unwrap();
        let l = m5.make_loop(0, &[1]).unwrap();
        assert!(!m5.compatible(&l, &DiscArc::chord(1, 3)));
        assert!(m5.compatible(&l, &DiscArc::chord(0, 3)));
        assert!(!m5.compatible(&l, &l));
        let m4 = DiscModel::unlabeled(4).unwrap();
        let l0 = DiscArc::Loop { base: 0, first: 1, last: 2 };
        assert!(m4.compatible(&l0, &DiscArc::Loop { base: 1, first: 3, last: 0 }));
        assert!(!m5.compatible(&DiscArc::Loop { base: 0, first: 1, last: 1 }, &DiscArc::Loop { base: 1, first: 3, last: 0 }));
    }

    #[test]
    fn parse_roundtrip() {
        let m = DiscModel::unlabeled(6).unwrap();
        for a in m.arcs(true) {
            assert_eq!(DiscArc::parse(&a.to_string()).unwrap(), a);
        }
        assert!(DiscArc::parse("x(1,2)").is_err());
        let j = r#"{"q": 4, "labels": ["D0","D1","D0","D1"]}"#;
        assert_eq!(DiscModel::from_json(j).unwrap().label(1), Label::D1);
        assert!(DiscModel::from_json(r#"{"q": 3, "labels": ["D0"]}"#).is_err());
    }
}
