use serde::{Deserialize, Serialize};

use super::{ArcError, DiscArc, DiscModel};
use crate::homology::homological_connectivity;
use crate::simplicial::{flag_complex, Simplex, SimplicialComplex};
use crate::surfaces::{bound, Bound, Family, Label};

/// Flag complex of pairwise compatible non-trivial arcs.
#[derive(Debug, Clone)]
pub struct ArcComplex {
    pub model: DiscModel,
    pub family: Family,
    /// Vertex `i` of `complex` is `arcs[i]`.
    pub arcs: Vec<DiscArc>,
    pub complex: SimplicialComplex,
    pub dim_cap: Option<usize>,
    /// Simplices above `dim_cap` exist but were not enumerated.
    pub truncated: bool,
}

impl ArcComplex {
    pub fn vertex_of(&self, a: &DiscArc) -> Option<u32> {
        self.arcs.iter().position(|b| b == a).map(|i| i as u32)
    }

    pub fn simplex_of(&self, arcs: &[DiscArc]) -> Option<Simplex> {
        arcs.iter().map(|a| self.vertex_of(a)).collect::<Option<Vec<_>>>().map(Simplex::new)
    }

    pub fn arcs_of(&self, s: &Simplex) -> Vec<DiscArc> {
        s.vertices().iter().map(|&v| self.arcs[v as usize]).collect()
    }
}

/// Vertex set of `family`: all non-trivial arcs for A, non-trivial chords
/// joining differently labeled points for B.
fn family_arcs(model: &DiscModel, family: Family) -> Result<Vec<DiscArc>, ArcError> {
    match family {
        Family::A => Ok(model.arcs(true)),
        Family::B => {
            let labels = model.labels_or_default();
            for l in [Label::D0, Label::D1] {
                if !labels.contains(&l) {
                    return Err(crate::surfaces::SurfaceError::MissingLabel(l).into());
                }
            }
            Ok(model.arcs(false).into_iter().filter(|a| model.is_impure(a)).collect())
        }
        f => Err(ArcError::UnsupportedFamily(f)),
    }
}

pub fn build_arc_complex(
    model: &DiscModel,
    family: Family,
    dim_cap: Option<usize>,
) -> Result<ArcComplex, ArcError> {
    model.validate()?;
    let arcs = family_arcs(model, family)?;
    let names = arcs.iter().map(|a| a.to_string()).collect();
    let (complex, truncated) =
        flag_complex(names, |i, j| model.compatible(&arcs[i], &arcs[j]), dim_cap);
    Ok(ArcComplex { model: model.clone(), family, arcs, complex, dim_cap, truncated })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    pub q: u32,
    pub labels: Vec<Label>,
    pub family: Family,
    pub bound: Bound,
    /// Reduced homology was computed in degrees `0..=d_max`.
    pub d_max: isize,
    /// Homological connectivity (reduced integral homology only).
    pub homological_connectivity: isize,
    pub f_vector: Vec<usize>,
    pub truncated: bool,
    pub pass: bool,
}

/// Computes the homological connectivity of the family's complex and
/// compares it with the surface bound. `d_max` defaults to what the bound
/// requires: the bound itself, or the full dimension when contractible.
pub fn verify_connectivity(
    model: &DiscModel,
    family: Family,
    d_max: Option<isize>,
) -> Result<ConnectivityReport, ArcError> {
    let b = bound(family, &model.surface())?;
    let (cx, d_max) = match (b, d_max) {
        (Bound::Connected(n), d) => {
            let d = d.unwrap_or(n as isize).max(-1);
            (build_arc_complex(model, family, Some((d + 1) as usize))?, d)
        }
        (Bound::Contractible, Some(d)) => {
            let d = d.max(-1);
            (build_arc_complex(model, family, Some((d + 1) as usize))?, d)
        }
        (Bound::Contractible, None) => {
            let cx = build_arc_complex(model, family, None)?;
            let d = cx.complex.dim().max(-1);
            (cx, d)
        }
    };
    let conn = homological_connectivity(&cx.complex, d_max);
    Ok(ConnectivityReport {
        q: model.q,
        labels: model.labels_or_default(),
        family,
        bound: b,
        d_max,
        homological_connectivity: conn,
        f_vector: cx.complex.f_vector(),
        truncated: cx.truncated,
        pass: b.satisfied_by(conn, d_max),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuspensionReport {
    pub family: Family,
    pub before: Vec<Label>,
    pub after: Vec<Label>,
    pub old_bound: i64,
    pub new_bound: i64,
    /// Homological connectivity of the enlarged complex, computed through
    /// degree `old_bound + 1`.
    pub new_connectivity: isize,
    pub exact_jump: bool,
    pub pass: bool,
}

/// Inserts a point after `after` and checks that the bound rises by exactly
/// one and that the enlarged complex attains it. For B the new point must
/// create a pure edge flanked by two impure edges.
pub fn suspension_check(
    model: &DiscModel,
    family: Family,
    after: u32,
    label: Label,
) -> Result<SuspensionReport, ArcError> {
    let bigger = model.insert_point(after, label)?;
    if family == Family::B {
        let l = bigger.labels_or_default();
        let n = l.len();
        let at = after as usize + 1;
        let pure = |i: usize| l[i % n] == l[(i + 1) % n];
        // the new edges are (at-1, at) and (at, at+1)
        let (p, others) = if pure(at + n - 1) { (at + n - 1, [at + n - 2, at]) } else { (at, [at + n - 1, at + 1]) };
        if !pure(p) || others.iter().any(|&e| pure(e)) {
            return Err(ArcError::IllegalInsertion(format!(
                "inserting {label} after point {after} does not put a pure edge between impure edges"
            )));
        }
    }
    let connected = |m: &DiscModel| match bound(family, &m.surface())? {
        Bound::Connected(n) => Ok(n),
        Bound::Contractible => Err(ArcError::IllegalInsertion("the complex is already contractible".into())),
    };
    let old_bound = connected(model)?;
    let new_bound = connected(&bigger)?;
    let d = (old_bound + 1).max(-1) as isize;
    let cx = build_arc_complex(&bigger, family, Some((d + 1) as usize))?;
    let conn = homological_connectivity(&cx.complex, d);
    let exact_jump = new_bound == old_bound + 1;
    Ok(SuspensionReport {
        family,
        before: model.labels_or_default(),
        after: bigger.labels_or_default(),
        old_bound,
        new_bound,
        new_connectivity: conn,
        exact_jump,
        pass: exact_jump && conn as i64 >= (old_bound + 1).min(d as i64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Label::{D0, D1};

    #[test]
    fn small_a_complexes() {
        let m = DiscModel::unlabeled(4).unwrap();
        let cx = build_arc_complex(&m, Family::A, None).unwrap();
        assert_eq!(cx.complex.f_vector()[0], 22);
        assert!(!cx.truncated);
        let r = verify_connectivity(&DiscModel::unlabeled(5).unwrap(), Family::A, None).unwrap();
        assert_eq!(r.bound, Bound::Connected(0));
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn b_examples() {
        let alt6 = DiscModel::new(6, [D0, D1].repeat(3)).unwrap();
        let cx = build_arc_complex(&alt6, Family::B, None).unwrap();
        assert!(cx.vertex_of(&DiscArc::chord(0, 3)).is_some());
        let r = verify_connectivity(&alt6, Family::B, None).unwrap();
        assert_eq!(r.bound, Bound::Connected(-1));
        assert!(r.pass);
        let special = DiscModel::new(4, vec![D0, D0, D1, D1]).unwrap();
        let r = verify_connectivity(&special, Family::B, None).unwrap();
        assert!(r.pass && r.homological_connectivity >= -1);
        assert!(build_arc_complex(&DiscModel::unlabeled(5).unwrap(), Family::B, None).is_err());
    }

    #[test]
    fn suspensions() {
        let alt6 = DiscModel::new(6, [D0, D1].repeat(3)).unwrap();
        let r = suspension_check(&alt6, Family::B, 0, D0).unwrap();
        assert!(r.pass && r.exact_jump, "{r:?}");
        assert!(r.new_connectivity >= 0);
        let a4 = DiscModel::unlabeled(4).unwrap();
        let r = suspension_check(&a4, Family::A, 0, D0).unwrap();
        assert!(r.pass && r.new_bound == 0);
        let bad = DiscModel::new(4, vec![D0, D0, D1, D1]).unwrap();
        assert!(suspension_check(&bad, Family::B, 0, D0).is_err());
    }
}
