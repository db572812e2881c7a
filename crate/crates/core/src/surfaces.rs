//! Marked-surface bookkeeping: boundary statistics, connectivity bounds of
//! the arc complexes, cut arithmetic, stabilizer transport, stable ranges of
//! the stabilization maps and an audit of the induction inequalities.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("the surface carries no marked points")]
    MissingMarkedPoints,
    #[error("no marked point carries label {0}")]
    MissingLabel(Label),
    #[error("cut would have negative genus {genus}")]
    NegativeGenus { genus: i64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// Which of the two point sets a marked point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    D0,
    D1,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::D0 => "D0",
            Label::D1 => "D1",
        })
    }
}

/// A compact oriented surface of genus `genus` whose boundary circles carry
/// cyclically ordered labeled points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkedSurface {
    pub genus: u32,
    pub boundaries: Vec<Vec<Label>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceStats {
    pub g: i64,
    pub r: i64,
    /// Boundary circles carrying at least one point.
    pub r_marked: i64,
    pub q: i64,
    /// Half the number of impure edges.
    pub l: i64,
    /// Number of pure edges.
    pub m: i64,
    pub chi: i64,
}

impl MarkedSurface {
    pub fn new(genus: u32, boundaries: Vec<Vec<Label>>) -> Self {
        MarkedSurface { genus, boundaries }
    }

    /// Disc with the given boundary labels.
    pub fn disc(labels: Vec<Label>) -> Self {
        MarkedSurface::new(0, vec![labels])
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("surface serializes")
    }

    /// Edges of one boundary circle as (pure?) flags. One point bounds a
    /// single pure edge from itself to itself.
    fn edge_purity(circle: &[Label]) -> impl Iterator<Item = bool> + '_ {
        let k = circle.len();
        (0..k).map(move |i| circle[i] == circle[(i + 1) % k])
    }

    pub fn stats(&self) -> SurfaceStats {
        let mut impure = 0i64;
        let mut pure = 0i64;
        for c in &self.boundaries {
            for p in Self::edge_purity(c) {
                if p {
                    pure += 1;
                } else {
                    impure += 1;
                }
            }
        }
        assert!(impure % 2 == 0, "impure edge count {impure} is odd");
        let g = self.genus as i64;
        let r = self.boundaries.len() as i64;
        SurfaceStats {
            g,
            r,
            r_marked: self.boundaries.iter().filter(|c| !c.is_empty()).count() as i64,
            q: self.boundaries.iter().map(|c| c.len() as i64).sum(),
            l: impure / 2,
            m: pure,
            chi: 2 - 2 * g - r,
        }
    }

    fn has_label(&self, l: Label) -> bool {
        self.boundaries.iter().flatten().any(|&x| x == l)
    }

    /// Some marked circle whose points all carry one label.
    pub fn has_pure_boundary(&self) -> bool {
        self.boundaries
            .iter()
            .any(|c| !c.is_empty() && c.iter().all(|&x| x == c[0]))
    }

    /// Some circle with an impure edge contains a pure edge flanked by a
    /// pure edge on one side and an impure edge on the other.
    pub fn has_pure_edge_between_pure_and_impure(&self) -> bool {
        self.boundaries.iter().any(|c| {
            let e: Vec<bool> = Self::edge_purity(c).collect();
            let k = e.len();
            e.iter().any(|&p| !p)
                && (0..k).any(|i| e[i] && (e[(i + 1) % k] || e[(i + k - 1) % k]))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    B0,
    O,
}

/// Lower bound on the connectivity of an arc complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bound {
    Contractible,
    Connected(i64),
}

impl Bound {
    /// Whether a homological connectivity `conn` computed through degree
    /// `d_max` is consistent with this bound.
    pub fn satisfied_by(&self, conn: isize, d_max: isize) -> bool {
        match *self {
            Bound::Contractible => conn >= d_max,
            Bound::Connected(b) => conn as i64 >= b.min(d_max as i64),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Contractible => f.write_str("contractible"),
            Bound::Connected(n) => write!(f, "{n}-connected"),
        }
    }
}

/// Connectivity bound for the arc complex of `family` on `s`.
pub fn bound(family: Family, s: &MarkedSurface) -> Result<Bound, SurfaceError> {
    let st = s.stats();
    if st.q == 0 {
        return Err(SurfaceError::MissingMarkedPoints);
    }
    let both = || -> Result<(), SurfaceError> {
        for l in [Label::D0, Label::D1] {
            if !s.has_label(l) {
                return Err(SurfaceError::MissingLabel(l));
            }
        }
        Ok(())
    };
    Ok(match family {
        Family::A => {
            let disc = st.g == 0 && st.r == 1;
            let annulus_one_side = st.g == 0 && st.r == 2 && st.r_marked == 1;
            if disc || annulus_one_side {
                Bound::Connected(st.q + 2 * st.r - 7)
            } else {
                Bound::Contractible
            }
        }
        Family::B => {
            both()?;
            if s.has_pure_boundary() || s.has_pure_edge_between_pure_and_impure() {
                Bound::Contractible
            } else {
                Bound::Connected(4 * st.g + st.r + st.r_marked + st.l + st.m - 6)
            }
        }
        Family::B0 => {
            both()?;
            Bound::Connected(2 * st.g + st.r_marked - 3)
        }
        Family::O => {
            both()?;
            Bound::Connected(st.g - 2)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CutFamily {
    O1,
    O2,
}

/// Type of the surface left after cutting along a p-simplex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutProfile {
    pub genus: i64,
    pub boundaries: i64,
    pub labels: Vec<String>,
}

fn euler(g: i64, r: i64) -> i64 {
    2 - 2 * g - r
}

/// Cuts `S_{g,r}` along a p-simplex of O¹ (both ends on one boundary) or
/// O² (ends on two boundaries).
pub fn cut_profile(family: CutFamily, g: i64, r: i64, p: i64) -> Result<CutProfile, SurfaceError> {
    if g < 0 || p < 0 {
        return Err(SurfaceError::InvalidParameters(format!("g={g}, p={p}")));
    }
    let chain = |labels: &mut Vec<String>| {
        for i in 1..=p {
            labels.push(format!("[ā{}*a{}]", i - 1, i));
        }
    };
    let (genus, boundaries, labels, untouched_from) = match family {
        CutFamily::O1 => {
            if r < 1 {
                return Err(SurfaceError::InvalidParameters("O1 needs r ≥ 1".into()));
            }
            let mut labels = vec!["[∂₀⁺S*a0]".to_string()];
            chain(&mut labels);
            labels.push(format!("[ā{p}*∂₀⁻S]"));
            (g - p - 1, r + p + 1, labels, 1)
        }
        CutFamily::O2 => {
            if r < 2 {
                return Err(SurfaceError::InvalidParameters("O2 needs r ≥ 2".into()));
            }
            let mut labels = vec![format!("[∂₀S*a0*∂₁S*ā{p}]")];
            chain(&mut labels);
            (g - p, r + p - 1, labels, 2)
        }
    };
    if genus < 0 {
        return Err(SurfaceError::NegativeGenus { genus });
    }
    let mut labels = labels;
    labels.extend((untouched_from..r).map(|i| format!("∂{i}S")));
    debug_assert_eq!(labels.len() as i64, boundaries);
    assert_eq!(euler(genus, boundaries), euler(g, r) + p + 1);
    Ok(CutProfile { genus, boundaries, labels })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabKind {
    Alpha,
    Beta,
    Delta,
}

/// The map a stabilization induces on a p-simplex stabilizer:
/// α on `Γ(S_{g,r+1}) → Γ(S_{g+1,r})` restricts to β at `(g−p, r+p)`, and β
/// on `Γ(S_{g,r}) → Γ(S_{g,r+1})` restricts to α at `(g−p−1, r+p+1)`.
pub fn stabilizer_transport(
    kind: StabKind,
    g: i64,
    r: i64,
    p: i64,
) -> Result<(StabKind, i64, i64), SurfaceError> {
    if p < 0 || r < 0 {
        return Err(SurfaceError::InvalidParameters(format!("r={r}, p={p}")));
    }
    let (k, g2, r2) = match kind {
        StabKind::Alpha => (StabKind::Beta, g - p, r + p),
        StabKind::Beta => (StabKind::Alpha, g - p - 1, r + p + 1),
        StabKind::Delta => {
            return Err(SurfaceError::InvalidParameters("δ has no stabilizer transport".into()))
        }
    };
    if g2 < 0 {
        return Err(SurfaceError::NegativeGenus { genus: g2 });
    }
    Ok((k, g2, r2))
}

/// Surface types `(genus, boundaries)` reached along the two routes of one
/// of the stabilizer squares; they must coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareCheck {
    pub kind: StabKind,
    pub g: i64,
    pub r: i64,
    pub p: i64,
    pub via_cut_first: (i64, i64),
    pub via_map_first: (i64, i64),
}

impl SquareCheck {
    pub fn commutes(&self) -> bool {
        self.via_cut_first == self.via_map_first
    }
}

/// α: cut `S_{g,r+1}` along an O² simplex, then add a boundary (β), versus
/// glue the handle first and cut the O¹ simplex of `S_{g+1,r}`.
/// β: cut `S_{g,r}` along an O¹ simplex then glue a strip (α), versus add the
/// boundary first and cut along an O² simplex of `S_{g,r+1}`.
pub fn square_check(kind: StabKind, g: i64, r: i64, p: i64) -> Result<SquareCheck, SurfaceError> {
    let (via_cut_first, via_map_first) = match kind {
        StabKind::Alpha => {
            let c = cut_profile(CutFamily::O2, g, r + 1, p)?;
            let d = cut_profile(CutFamily::O1, g + 1, r, p)?;
            let (k, g2, r2) = stabilizer_transport(kind, g, r, p)?;
            debug_assert_eq!(k, StabKind::Beta);
            // β adds one boundary to the cut surface.
            assert_eq!((c.genus, c.boundaries), (g2, r2));
            ((c.genus, c.boundaries + 1), (d.genus, d.boundaries))
        }
        StabKind::Beta => {
            let c = cut_profile(CutFamily::O1, g, r, p)?;
            let d = cut_profile(CutFamily::O2, g, r + 1, p)?;
            let (k, g2, r2) = stabilizer_transport(kind, g, r, p)?;
            debug_assert_eq!(k, StabKind::Alpha);
            assert_eq!((c.genus, c.boundaries), (g2, r2));
            // α glues a strip: (h, k+1) ↦ (h+1, k).
            ((c.genus + 1, c.boundaries - 1), (d.genus, d.boundaries))
        }
        StabKind::Delta => {
            return Err(SurfaceError::InvalidParameters("δ has no stabilizer square".into()))
        }
    };
    Ok(SquareCheck { kind, g, r, p, via_cut_first, via_map_first })
}

/// Degrees through which a stabilization map is surjective and an
/// isomorphism, as integer floors and exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableRange {
    pub kind: StabKind,
    pub genus: i64,
    /// `None` when the map is injective in every degree, so surjectivity is
    /// the only content.
    pub surjective_upto: Option<i64>,
    pub surjective_exact: Option<Ratio<i64>>,
    pub iso_upto: i64,
    pub iso_exact: Ratio<i64>,
    pub always_injective: bool,
}

pub fn stable_range(kind: StabKind, g: i64) -> StableRange {
    let r = |n: i64, d: i64| Ratio::new(n, d);
    let (surj, iso, inj) = match kind {
        StabKind::Alpha => (Some(r(2 * g + 1, 3)), r(2 * g - 2, 3), false),
        StabKind::Beta => (None, r(2 * g, 3), true),
        StabKind::Delta => (Some(r(2 * g + 3, 3)), r(2 * g, 3), false),
    };
    StableRange {
        kind,
        genus: g,
        surjective_upto: surj.map(|x| x.floor().to_integer()),
        surjective_exact: surj,
        iso_upto: iso.floor().to_integer(),
        iso_exact: iso,
        always_injective: inj,
    }
}

/// Parameters of the induction: `H_i(α_g) = 0` for `i ≤ slope·g + alpha_offset`
/// and `H_i(β_g) = 0` for `i ≤ slope·g + beta_offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditParams {
    pub slope: Ratio<i64>,
    pub alpha_offset: Ratio<i64>,
    pub beta_offset: Ratio<i64>,
}

impl Default for AuditParams {
    fn default() -> Self {
        AuditParams {
            slope: Ratio::new(2, 3),
            alpha_offset: Ratio::new(1, 3),
            beta_offset: Ratio::new(0, 1),
        }
    }
}

impl AuditParams {
    pub fn with_slope(slope: Ratio<i64>) -> Self {
        AuditParams { slope, ..Self::default() }
    }

    fn alpha(&self, g: i64) -> Ratio<i64> {
        self.slope * g + self.alpha_offset
    }

    fn beta(&self, g: i64) -> Ratio<i64> {
        self.slope * g + self.beta_offset
    }

    fn floor(x: Ratio<i64>) -> i64 {
        x.floor().to_integer()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditViolation {
    pub step: u8,
    pub claim: u8,
    pub g: i64,
    pub p: i64,
    pub q: i64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub g_max: i64,
    pub params: AuditParams,
    pub checks: u64,
    /// Sources left to the third claim (p = 0 at the top degree).
    pub deferred_to_claim3: u64,
    pub violations: Vec<AuditViolation>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_violation(&self) -> Option<&AuditViolation> {
        self.violations.first()
    }
}

/// Replays the integer inequalities of the two induction steps for every
/// genus up to `g_max`, in the order genus, step, claim, q, p.
///
/// Step 1 (g ≥ 1) kills `E¹_{−1,q} = H_q(α_g)` for `q ≤ A(g)`, Step 2
/// (g ≥ 2) kills `H_q(β_g)` for `q ≤ B(g)`, where `A`, `B` are the bounds
/// of [`AuditParams`]. Claim 1 is the connectivity of the complexes, Claim 2
/// the vanishing of all sources `E¹_{p,q−p}` of differentials into
/// `(−1, q)` by induction, Claim 3 the remaining `p = 0` source.
pub fn induction_audit(g_max: i64, params: AuditParams) -> AuditReport {
    let mut rep = AuditReport {
        g_max,
        params,
        checks: 0,
        deferred_to_claim3: 0,
        violations: Vec::new(),
    };
    let fail = |rep: &mut AuditReport, step, claim, g, p, q, detail: String| {
        rep.violations.push(AuditViolation { step, claim, g, p, q, detail });
    };
    let fl = AuditParams::floor;

    // Base cases only concern H_0.
    rep.checks += 2;
    if fl(params.alpha(0)) > 0 {
        fail(&mut rep, 1, 0, 0, 0, fl(params.alpha(0)), "base case α_0 exceeds degree 0".into());
    }
    if fl(params.beta(1)) > 0 {
        fail(&mut rep, 2, 0, 1, 0, fl(params.beta(1)), "base case β_1 exceeds degree 0".into());
    }

    for g in 1..=g_max {
        // Step 1: target H_q(α_g), complexes (g−2)- and (g−1)-connected so
        // E^∞_{−1,q} = 0 for q ≤ g.
        let top = fl(params.alpha(g));
        rep.checks += 1;
        if top > g {
            fail(&mut rep, 1, 1, g, -1, top, format!("⌊A({g})⌋ = {top} > {g}"));
        }
        for q in 0..=top {
            for p in 0..=q.min(g) {
                rep.checks += 1;
                // E¹_{p,q−p} = H_{q−p}(β_{g−p})
                if Ratio::from_integer(q - p) <= params.beta(g - p) {
                    continue;
                }
                if p == 0 {
                    rep.deferred_to_claim3 += 1;
                    continue;
                }
                fail(
                    &mut rep,
                    1,
                    2,
                    g,
                    p,
                    q,
                    format!("H_{}(β_{}) not known to vanish", q - p, g - p),
                );
            }
        }

        if g < 2 {
            continue;
        }
        // Step 2: target H_q(β_g), complexes (g−2)-connected so
        // E^∞_{−1,q} = 0 for q ≤ g−1.
        let top = fl(params.beta(g));
        rep.checks += 1;
        if top > g - 1 {
            fail(&mut rep, 2, 1, g, -1, top, format!("⌊B({g})⌋ = {top} > {}", g - 1));
        }
        for q in 0..=top {
            for p in 0..=q.min(g - 1) {
                rep.checks += 1;
                // E¹_{p,q−p} = H_{q−p}(α_{g−p−1})
                if Ratio::from_integer(q - p) <= params.alpha(g - p - 1) {
                    continue;
                }
                if p == 0 {
                    rep.deferred_to_claim3 += 1;
                    continue;
                }
                fail(
                    &mut rep,
                    2,
                    2,
                    g,
                    p,
                    q,
                    format!("H_{}(α_{}) not known to vanish", q - p, g - p - 1),
                );
            }
            // Claim 3: d¹ from E¹_{0,q} factors through H_{q−1}(β_{g−1}).
            rep.checks += 1;
            if Ratio::from_integer(q - 1) > params.beta(g - 1) {
                fail(
                    &mut rep,
                    2,
                    3,
                    g,
                    0,
                    q,
                    format!("H_{}(β_{}) not known to vanish", q - 1, g - 1),
                );
            }
        }
    }
    rep
}

/// `⌊a/b⌋` for `b > 0`.
pub fn div_floor(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Label::{D0, D1};

    #[test]
    fn stats_examples() {
        let s = MarkedSurface::disc(vec![D0, D1, D0, D1]).stats();
        assert_eq!((s.g, s.r, s.r_marked, s.q, s.l, s.m), (0, 1, 1, 4, 2, 0));
        let s = MarkedSurface::disc(vec![D0, D0, D1, D1]).stats();
        assert_eq!((s.l, s.m), (1, 2));
        let s = MarkedSurface::new(2, vec![vec![D0], vec![D1]]).stats();
        assert_eq!((s.r, s.r_marked, s.q, s.l, s.m, s.chi), (2, 2, 2, 0, 2, -4));
        let s = MarkedSurface::new(1, vec![vec![], vec![D0, D1]]).stats();
        assert_eq!((s.r, s.r_marked, s.l, s.m), (2, 1, 1, 0));
    }

    #[test]
    fn bound_examples() {
        let disc4 = MarkedSurface::disc(vec![D0; 4]);
        assert_eq!(bound(Family::A, &disc4).unwrap(), Bound::Connected(-1));
        let b = MarkedSurface::disc(vec![D0, D1, D0, D1, D0, D1]);
        assert_eq!(bound(Family::B, &b).unwrap(), Bound::Connected(-1));
        let o = MarkedSurface::new(5, vec![vec![D0, D1]]);
        assert_eq!(bound(Family::O, &o).unwrap(), Bound::Connected(3));
        assert_eq!(
            bound(Family::A, &MarkedSurface::new(1, vec![vec![D0]])).unwrap(),
            Bound::Contractible
        );
        assert_eq!(
            bound(Family::A, &MarkedSurface::disc(vec![])),
            Err(SurfaceError::MissingMarkedPoints)
        );
        assert_eq!(bound(Family::B, &disc4), Err(SurfaceError::MissingLabel(D1)));
        let pure_run = MarkedSurface::disc(vec![D0, D0, D0, D1]);
        assert_eq!(bound(Family::B, &pure_run).unwrap(), Bound::Contractible);
        let pure_circle = MarkedSurface::new(0, vec![vec![D0, D1], vec![D0]]);
        assert_eq!(bound(Family::B, &pure_circle).unwrap(), Bound::Contractible);
        let b0 = MarkedSurface::new(1, vec![vec![D0, D1]]);
        assert_eq!(bound(Family::B0, &b0).unwrap(), Bound::Connected(0));
    }

    #[test]
    fn bound_b_suspension_steps() {
        // a pure edge between two impure edges, then an unmarked boundary
        let s = MarkedSurface::disc(vec![D0, D1, D0, D1, D0, D1]);
        let t = MarkedSurface::disc(vec![D0, D0, D1, D0, D1, D0, D1]);
        let u = MarkedSurface::new(0, vec![vec![D0, D1, D0, D1, D0, D1], vec![]]);
        let b = |x: &MarkedSurface| match bound(Family::B, x).unwrap() {
            Bound::Connected(n) => n,
            Bound::Contractible => panic!(),
        };
        assert_eq!(b(&t), b(&s) + 1);
        assert_eq!(b(&u), b(&s) + 1);
    }

    #[test]
    fn cut_examples() {
        let c = cut_profile(CutFamily::O1, 3, 1, 2).unwrap();
        assert_eq!((c.genus, c.boundaries), (0, 4));
        assert_eq!(c.labels[0], "[∂₀⁺S*a0]");
        assert_eq!(c.labels[3], "[ā2*∂₀⁻S]");
        let c = cut_profile(CutFamily::O2, 3, 2, 0).unwrap();
        assert_eq!((c.genus, c.boundaries), (3, 1));
        assert_eq!(c.labels, vec!["[∂₀S*a0*∂₁S*ā0]"]);
        assert_eq!(
            cut_profile(CutFamily::O1, 1, 1, 1),
            Err(SurfaceError::NegativeGenus { genus: -1 })
        );
    }

    #[test]
    fn transport_examples() {
        assert_eq!(stabilizer_transport(StabKind::Alpha, 4, 1, 0).unwrap(), (StabKind::Beta, 4, 1));
        assert_eq!(stabilizer_transport(StabKind::Beta, 4, 1, 0).unwrap(), (StabKind::Alpha, 3, 2));
        for g in 0..=10 {
            for p in 0..g {
                for r in 1..4 {
                    assert!(square_check(StabKind::Alpha, g, r, p).unwrap().commutes());
                    assert!(square_check(StabKind::Beta, g, r, p).unwrap().commutes());
                }
            }
        }
    }

    #[test]
    fn stable_range_examples() {
        let a = stable_range(StabKind::Alpha, 3);
        assert_eq!((a.surjective_upto, a.iso_upto), (Some(2), 1));
        let b = stable_range(StabKind::Beta, 2);
        assert!(b.always_injective && b.iso_upto == 1 && b.surjective_upto.is_none());
        let d = stable_range(StabKind::Delta, 0);
        assert_eq!((d.surjective_upto, d.iso_upto), (Some(1), 0));
        assert_eq!(stable_range(StabKind::Alpha, 0).iso_upto, -1);
        assert_eq!(div_floor(-2, 3), -1);
    }

    #[test]
    fn audit_passes_and_perturbed_fails() {
        let rep = induction_audit(30, AuditParams::default());
        assert!(rep.passed(), "{:?}", rep.violations);
        assert!(rep.deferred_to_claim3 > 0);
        assert!(induction_audit(1, AuditParams::default()).passed());
        let bad = induction_audit(30, AuditParams::with_slope(Ratio::new(3, 4)));
        let w = bad.first_violation().expect("witness");
        assert_eq!((w.step, w.claim, w.g, w.p, w.q), (2, 2, 4, 1, 3));
    }
}
