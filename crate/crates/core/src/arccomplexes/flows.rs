use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{interleave, ArcError, DiscArc, DiscModel};
use crate::surfaces::{Label, MarkedSurface, SurfaceStats};

fn check_chord_simplex(model: &DiscModel, sigma: &[DiscArc]) -> Result<(), ArcError> {
    for a in sigma {
        model.check_arc(a)?;
        if a.is_loop() {
            return Err(ArcError::LoopUnsupported);
        }
        if model.is_trivial(a) {
            return Err(ArcError::TrivialArc(a.to_string()));
        }
    }
    for (i, a) in sigma.iter().enumerate() {
        for b in &sigma[i + 1..] {
            if !model.compatible(a, b) {
                return Err(ArcError::NotASimplex(a.to_string(), b.to_string()));
            }
        }
    }
    Ok(())
}

/// Retraction of a chord simplex onto the star of `a`, one crossing at a
/// time starting from the crossing nearest to `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryFlow {
    pub a: DiscArc,
    pub p: u32,
    /// Arcs of σ crossing `a`, nearest to `p` first.
    pub crossings: Vec<DiscArc>,
    /// `r_i`: σ with the first `i-1` crossings replaced by their offspring,
    /// together with the offspring of the `i`-th.
    pub steps: Vec<Vec<DiscArc>>,
    pub final_simplex: Vec<DiscArc>,
    pub steps_valid: Vec<bool>,
    pub final_in_star: bool,
}

impl SurgeryFlow {
    pub fn valid(&self) -> bool {
        self.steps_valid.iter().all(|&v| v) && self.final_in_star && self.steps.len() == self.crossings.len()
    }
}

pub fn surgery_flow(
    model: &DiscModel,
    sigma: &[DiscArc],
    a: DiscArc,
    p: u32,
) -> Result<SurgeryFlow, ArcError> {
    check_chord_simplex(model, sigma)?;
    model.check_arc(&a)?;
    let DiscArc::Chord { i, j } = a else {
        return Err(ArcError::LoopUnsupported);
    };
    if model.is_trivial(&a) {
        return Err(ArcError::TrivialArc(a.to_string()));
    }
    if p != i && p != j {
        return Err(ArcError::BadArc(format!("{p} is not an endpoint of {a}")));
    }
    let q = model.q;
    // Points strictly between u and v on the side containing p.
    let near_side = |u: u32, v: u32| -> u32 {
        let fwd = |x: u32, y: u32| (y + q - x) % q;
        if fwd(u, p) < fwd(u, v) {
            fwd(u, v) - 1
        } else {
            fwd(v, u) - 1
        }
    };
    let mut crossings: Vec<DiscArc> = sigma
        .iter()
        .copied()
        .filter(|b| {
            let (u, v) = b.endpoints();
            interleave(i, j, u, v)
        })
        .collect();
    crossings.sort_by_key(|b| {
        let (u, v) = b.endpoints();
        near_side(u, v)
    });
    let offspring = |b: &DiscArc| -> Vec<DiscArc> {
        let (u, v) = b.endpoints();
        [DiscArc::chord(p, u), DiscArc::chord(p, v)]
            .into_iter()
            .filter(|c| !model.is_trivial(c))
            .collect()
    };
    let is_simplex = |s: &BTreeSet<DiscArc>| {
        let v: Vec<_> = s.iter().collect();
        v.iter().enumerate().all(|(k, x)| v[k + 1..].iter().all(|y| model.compatible(x, y)))
    };
    let mut current: BTreeSet<DiscArc> = sigma.iter().copied().collect();
    let mut steps = Vec::new();
    let mut steps_valid = Vec::new();
    for b in &crossings {
        current.extend(offspring(b));
        steps_valid.push(is_simplex(&current));
        steps.push(current.iter().copied().collect());
        current.remove(b);
    }
    let final_in_star = current.iter().all(|x| *x == a || model.compatible(x, &a));
    Ok(SurgeryFlow {
        a,
        p,
        crossings,
        steps,
        final_simplex: current.into_iter().collect(),
        steps_valid,
        final_in_star,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentKind {
    /// Carries points of both labels.
    X,
    /// Carries points of one label only.
    Y,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutComponent {
    pub kind: ComponentKind,
    /// Corners of the component polygon in boundary order.
    pub points: Vec<u32>,
    pub stats: SurfaceStats,
}

/// The polygon cut along a chord simplex, with the bookkeeping sums of the
/// Euler-characteristic and edge-count identities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutDecomposition {
    pub components: Vec<CutComponent>,
    pub c: i64,
    pub d: i64,
    /// Number of arcs minus one.
    pub p_prime: i64,
    pub pure_arcs: i64,
    pub impure_arcs: i64,
    /// Σ (2g_i + r_i) over X components and 2g + r − p′ + 2c + d − 3.
    pub euler: (i64, i64),
    /// Σ m_i + Σ q_j and m + 2·#pure arcs.
    pub pure_edges: (i64, i64),
    /// Σ l_i and l + #impure arcs.
    pub impure_edges: (i64, i64),
}

impl CutDecomposition {
    pub fn euler_identity(&self) -> bool {
        self.euler.0 == self.euler.1
    }

    pub fn pure_edge_identity(&self) -> bool {
        self.pure_edges.0 == self.pure_edges.1
    }

    pub fn impure_edge_identity(&self) -> bool {
        self.impure_edges.0 == self.impure_edges.1
    }

    /// The count Σ m_i + Σ q_j = 2p′ + 2, valid when all arcs are pure and
    /// the boundary has no pure edge.
    pub fn pure_arc_count_identity(&self) -> bool {
        self.pure_edges.0 == 2 * self.p_prime + 2
    }
}

pub fn cut_decomposition(model: &DiscModel, sigma: &[DiscArc]) -> Result<CutDecomposition, ArcError> {
    if sigma.is_empty() {
        return Err(ArcError::EmptySimplex);
    }
    check_chord_simplex(model, sigma)?;
    let distinct: BTreeSet<DiscArc> = sigma.iter().copied().collect();
    let mut faces: Vec<Vec<u32>> = vec![(0..model.q).collect()];
    for arc in &distinct {
        let (u, v) = arc.endpoints();
        let k = faces
            .iter()
            .position(|f| f.contains(&u) && f.contains(&v))
            .expect("non-crossing chords split a single face");
        let f = faces.swap_remove(k);
        let s = f.iter().position(|&x| x == u).expect("u in face");
        let rot: Vec<u32> = f[s..].iter().chain(&f[..s]).copied().collect();
        let t = rot.iter().position(|&x| x == v).expect("v in face");
        let mut back = rot[t..].to_vec();
        back.push(u);
        faces.push(rot[..=t].to_vec());
        faces.push(back);
    }
    faces.sort();
    let components: Vec<CutComponent> = faces
        .into_iter()
        .map(|points| {
            let labels: Vec<Label> = points.iter().map(|&x| model.label(x)).collect();
            let kind = if labels.iter().all(|&l| l == labels[0]) { ComponentKind::Y } else { ComponentKind::X };
            CutComponent { kind, stats: MarkedSurface::disc(labels).stats(), points }
        })
        .collect();
    let st = model.surface().stats();
    let (xs, ys): (Vec<_>, Vec<_>) = components.iter().partition(|c| c.kind == ComponentKind::X);
    let c = xs.len() as i64;
    let d = ys.len() as i64;
    let p_prime = distinct.len() as i64 - 1;
    let impure_arcs = distinct.iter().filter(|a| model.is_impure(a)).count() as i64;
    let pure_arcs = distinct.len() as i64 - impure_arcs;
    let dec = CutDecomposition {
        euler: (
            xs.iter().map(|x| 2 * x.stats.g + x.stats.r).sum(),
            2 * st.g + st.r - p_prime + 2 * c + d - 3,
        ),
        pure_edges: (
            xs.iter().map(|x| x.stats.m).sum::<i64>() + ys.iter().map(|y| y.stats.q).sum::<i64>(),
            st.m + 2 * pure_arcs,
        ),
        impure_edges: (xs.iter().map(|x| x.stats.l).sum(), st.l + impure_arcs),
        components,
        c,
        d,
        p_prime,
        pure_arcs,
        impure_arcs,
    };
    if !(dec.euler_identity() && dec.pure_edge_identity() && dec.impure_edge_identity()) {
        return Err(ArcError::IdentityViolation(format!("{dec:?}")));
    }
    Ok(dec)
}

/// Orders of the arcs of a simplex around the two distinguished points:
/// anticlockwise at `b0`, clockwise at `b1`. Entries are arc indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndOrderings {
    pub at_b0: Vec<usize>,
    pub at_b1: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadClassification {
    /// Longest initial run of the order at `b0` that also starts the order
    /// at `b1`.
    pub good: Vec<usize>,
    pub bad: Vec<usize>,
    pub purely_bad: bool,
}

pub fn classify_bad(o: &EndOrderings) -> Result<BadClassification, ArcError> {
    let mut a: Vec<usize> = o.at_b0.clone();
    let mut b: Vec<usize> = o.at_b1.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b || a.windows(2).any(|w| w[0] == w[1]) {
        return Err(ArcError::NotAnchored(format!("{:?} vs {:?}", o.at_b0, o.at_b1)));
    }
    if a.is_empty() {
        return Err(ArcError::EmptySimplex);
    }
    let k = o.at_b0.iter().zip(&o.at_b1).take_while(|(x, y)| x == y).count();
    Ok(BadClassification {
        good: o.at_b0[..k].to_vec(),
        bad: o.at_b0[k..].to_vec(),
        purely_bad: k == 0,
    })
}

/// End orderings of arcs crossing the annulus from `b0` (inner boundary) to
/// `b1` (outer boundary), given by their twist parameters. In the strip
/// model arc `n` runs from `(k, 0)` to `(k + n, 1)`, so anticlockwise at
/// `b0` the twists decrease while clockwise at `b1` they increase.
pub fn annulus_end_orderings(twists: &[i64]) -> Result<EndOrderings, ArcError> {
    for (x, &n) in twists.iter().enumerate() {
        for &m in &twists[x + 1..] {
            if n == m || (n - m).abs() > 1 {
                return Err(ArcError::NotASimplex(format!("t{n}"), format!("t{m}")));
            }
        }
    }
    let mut idx: Vec<usize> = (0..twists.len()).collect();
    idx.sort_by_key(|&x| twists[x]);
    let at_b1 = idx.clone();
    idx.reverse();
    Ok(EndOrderings { at_b0: idx, at_b1 })
}
