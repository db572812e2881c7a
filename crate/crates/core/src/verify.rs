//! The acceptance suite: fifteen exact checks, each run against an
//! independent oracle or a closed formula, with seeded random sweeps.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arccomplexes::{
    annulus_model, build_arc_complex, cut_decomposition, farey_path, primitive_pairs, suspension_check,
    surgery_flow, verify_connectivity, ArcError, DiscArc, DiscModel, FareyModel,
};
use crate::grouphom::{group_homology, prism_identity, Budget, FiniteGroup, GroupChain};
use crate::homology::{
    chain_complex, homological_connectivity, join_connectivity_bound, smith_normal_form, AbelianGroup, SparseMatrix,
};
use crate::reference::{dense_invariant_factors, periodic_cyclic_homology};
use crate::simplicial::{flag_complex, join, named, SimplicialComplex};
use crate::stability::{demo_annulus, shapiro_E1, Action, GroupAction, OrbitComplex};
use crate::surfaces::{
    cut_profile, induction_audit, square_check, stable_range, AuditParams, CutFamily, Family, Label, StabKind,
};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Largest disc size for the A sweeps; the B sweeps go one further.
    pub q_max: u32,
    pub g_max: i64,
    #[serde(skip)]
    pub budget: Budget,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0, q_max: 7, g_max: 30, budget: Budget::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub q_max: u32,
    pub g_max: i64,
    pub results: Vec<CriterionResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }
}

pub const CRITERIA: [(u8, &str); 15] = [
    (1, "A connectivity sweep on the disc"),
    (2, "B connectivity sweep over label patterns"),
    (3, "suspension jumps"),
    (4, "join connectivity bound"),
    (5, "prism identity"),
    (6, "homology of finite cyclic groups"),
    (7, "Shapiro identification of E1 columns"),
    (8, "annulus demo recovers H_*(Z)"),
    (9, "cut arithmetic and stabilizer squares"),
    (10, "stable ranges"),
    (11, "induction audit"),
    (12, "cut decomposition identities"),
    (13, "Smith normal form against the dense oracle"),
    (14, "surgery flows"),
    (15, "Farey and annulus models"),
];

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn rng(cfg: &VerifyConfig, id: u8) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(id as u64))
}

pub fn run_criterion(id: u8, cfg: &VerifyConfig) -> CriterionResult {
    let name = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown criterion", |c| c.1).to_string();
    let start = Instant::now();
    let outcome = match id {
        1 => a_sweep(cfg),
        2 => b_sweep(cfg),
        3 => suspensions(cfg),
        4 => joins(cfg),
        5 => prisms(cfg),
        6 => cyclic_homology(cfg),
        7 => shapiro(cfg),
        8 => annulus(cfg),
        9 => cuts(cfg),
        10 => ranges(cfg),
        11 => audit(cfg),
        12 => decompositions(cfg),
        13 => snf(cfg),
        14 => flows(cfg),
        15 => farey(cfg),
        _ => Err(format!("no criterion {id}")),
    };
    let seconds = start.elapsed().as_secs_f64();
    let (pass, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult { id, name, pass, detail, seconds }
}

pub fn verify_all(cfg: &VerifyConfig) -> VerifyReport {
    let results = CRITERIA.iter().map(|&(id, _)| run_criterion(id, cfg)).collect();
    VerifyReport { seed: cfg.seed, q_max: cfg.q_max, g_max: cfg.g_max, results }
}

fn within(elapsed: Duration, limit_s: u64, what: &str) -> Result<(), String> {
    if elapsed > Duration::from_secs(limit_s) {
        return Err(format!("{what} took {:.1}s, over the {limit_s}s limit", elapsed.as_secs_f64()));
    }
    Ok(())
}

/// Every labeling of `q` points using both labels.
fn two_label_patterns(q: u32) -> Vec<DiscModel> {
    (1..(1u32 << q) - 1)
        .map(|bits| {
            let labels = (0..q).map(|i| if bits >> i & 1 == 1 { Label::D1 } else { Label::D0 }).collect();
            DiscModel::new(q, labels).expect("valid pattern")
        })
        .collect()
}

fn l_and_m(model: &DiscModel) -> (i64, i64) {
    let st = model.surface().stats();
    (st.l, st.m)
}

fn a_sweep(cfg: &VerifyConfig) -> Outcome {
    let start = Instant::now();
    let mut seen = Vec::new();
    for q in 4..=cfg.q_max {
        let model = DiscModel::unlabeled(q).map_err(err)?;
        let rep = verify_connectivity(&model, Family::A, Some(q as isize - 5)).map_err(err)?;
        ensure!(
            rep.pass && rep.homological_connectivity >= q as isize - 5,
            "q = {q}: homological connectivity {} below {}",
            rep.homological_connectivity,
            q as isize - 5
        );
        seen.push(format!("q={q}: {}", rep.homological_connectivity));
    }
    within(start.elapsed(), 600, "the A sweep")?;
    Ok(format!("homological connectivity ≥ q−5 ({})", seen.join(", ")))
}

fn b_sweep(cfg: &VerifyConfig) -> Outcome {
    let start = Instant::now();
    let q_top = cfg.q_max + 1;
    let models: Vec<DiscModel> = (2..=q_top).flat_map(two_label_patterns).collect();
    let failures: Vec<String> = models
        .par_iter()
        .filter_map(|m| {
            let (l, mm) = l_and_m(m);
            let d = (l + mm - 4) as isize;
            match verify_connectivity(m, Family::B, Some(d)) {
                Ok(r) if r.pass && r.homological_connectivity >= d.min(r.d_max) => None,
                Ok(r) => Some(format!("{:?}: connectivity {} < {d}", m.labels, r.homological_connectivity)),
                Err(e) => Some(format!("{:?}: {e}", m.labels)),
            }
        })
        .collect();
    ensure!(failures.is_empty(), "{} patterns fail, first {}", failures.len(), failures[0]);
    // the special rows (l, r, m) = (1, 1, 2) and (2, 1, 1)
    let mut special = 0;
    for m in models.iter().filter(|m| matches!(l_and_m(m), (1, 2) | (2, 1))) {
        let cx = build_arc_complex(m, Family::B, Some(0)).map_err(err)?;
        ensure!(!cx.complex.is_empty(), "{:?} has an empty B complex", m.labels);
        special += 1;
    }
    ensure!(special > 0, "no pattern with (l, m) = (1, 2) or (2, 1)");
    within(start.elapsed(), 900, "the B sweep")?;
    Ok(format!("{} patterns with q ≤ {q_top} reach l+m−4; {special} special-row patterns non-empty", models.len()))
}

fn suspensions(cfg: &VerifyConfig) -> Outcome {
    let mut a_jumps = 0;
    for q in 4..cfg.q_max {
        let rep = suspension_check(&DiscModel::unlabeled(q).map_err(err)?, Family::A, 0, Label::D0).map_err(err)?;
        ensure!(rep.pass, "A: q = {q} → {}: {rep:?}", q + 1);
        a_jumps += 1;
    }
    let mut b_jumps = 0;
    for q in 2..cfg.q_max {
        for m in two_label_patterns(q) {
            for after in 0..q {
                for label in [Label::D0, Label::D1] {
                    match suspension_check(&m, Family::B, after, label) {
                        Ok(rep) => {
                            ensure!(rep.pass, "B: {:?} + {label} after {after}: {rep:?}", m.labels);
                            b_jumps += 1;
                        }
                        Err(ArcError::IllegalInsertion(_)) => {}
                        Err(e) => return Err(format!("B: {:?}: {e}", m.labels)),
                    }
                }
            }
        }
    }
    ensure!(b_jumps > 0, "no legal B insertion");
    Ok(format!("{a_jumps} A jumps and {b_jumps} B jumps of exactly +1, each attained"))
}

/// A random complex on at most six vertices.
fn random_complex(rng: &mut ChaCha8Rng) -> SimplicialComplex {
    let n = rng.gen_range(1..=6usize);
    let faces = rng.gen_range(1..=4usize);
    let sets: Vec<Vec<usize>> = (0..faces)
        .map(|_| {
            let mut vs: Vec<usize> = (0..n).collect();
            vs.shuffle(rng);
            vs.truncate(rng.gen_range(1..=n.min(4)));
            vs
        })
        .collect();
    // vertices not in any face are dropped by relabeling
    let mut used: Vec<usize> = sets.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let sets = sets.iter().map(|s| s.iter().map(|v| used.binary_search(v).expect("used") as u32).collect()).collect();
    SimplicialComplex::from_index_sets((0..used.len()).map(|i| format!("v{i}")).collect(), sets)
        .expect("faces over the vertex set")
}

/// A named complex with its homological connectivity through its dimension.
fn known_complex(rng: &mut ChaCha8Rng) -> (SimplicialComplex, isize) {
    match rng.gen_range(0..4) {
        0 => {
            let d = rng.gen_range(0..=2usize);
            (named::sphere(d), d as isize - 1)
        }
        1 => (named::points(rng.gen_range(2..=4)), -1),
        2 => (named::cycle(rng.gen_range(3..=5)), 0),
        _ => {
            let d = rng.gen_range(0..=2usize);
            (named::simplex(d), d as isize)
        }
    }
}

fn reduced_homology(x: &SimplicialComplex) -> Vec<(isize, AbelianGroup)> {
    chain_complex::<BigInt>(x, true).homology_all().into_iter().filter(|(_, g)| !g.is_trivial()).collect()
}

fn joins(cfg: &VerifyConfig) -> Outcome {
    let start = Instant::now();
    let mut rng = rng(cfg, 4);
    for i in 0..200 {
        let pick = |rng: &mut ChaCha8Rng| -> Result<(SimplicialComplex, isize), String> {
            if rng.gen_bool(0.3) {
                let (x, known) = known_complex(rng);
                let c = homological_connectivity(&x, x.dim());
                ensure!(c == known, "pair {i}: computed connectivity {c} differs from the known {known}");
                Ok((x, c))
            } else {
                let x = random_complex(rng);
                let c = homological_connectivity(&x, x.dim());
                Ok((x, c))
            }
        };
        let (x, cx) = pick(&mut rng)?;
        let (y, cy) = pick(&mut rng)?;
        let j = join(&x, &y);
        let bound = join_connectivity_bound(&[cx, cy]).map_err(err)?;
        // connectivity computed through the dimension is as good as infinite
        let conn = homological_connectivity(&j, j.dim());
        ensure!(conn >= bound.min(j.dim()), "pair {i}: conn(X*Y) = {conn} < {bound}");
    }
    let s0 = named::points(2);
    let s1 = join(&s0, &s0);
    let s2 = join(&s0, &s1);
    ensure!(reduced_homology(&s1) == vec![(1, AbelianGroup::free(1))], "S0*S0 is not a circle");
    ensure!(reduced_homology(&s2) == vec![(2, AbelianGroup::free(1))], "S0*S1 is not a 2-sphere");
    within(start.elapsed(), 120, "the join sweep")?;
    Ok("200 random pairs meet Σ(n_i+2)−2; S0*S0 ≃ S1 and S0*S1 ≃ S2".into())
}

fn cells(order: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..order.pow(k as u32)).map(move |mut i| {
        let mut t = vec![0; k];
        for s in t.iter_mut().rev() {
            *s = i % order;
            i /= order;
        }
        t
    })
}

fn groups_up_to_six() -> Vec<FiniteGroup> {
    let mut gs: Vec<FiniteGroup> = (1..=6).map(FiniteGroup::cyclic).collect();
    gs.push(FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2)));
    gs.push(FiniteGroup::symmetric3());
    gs
}

fn groups_up_to_twelve() -> Vec<FiniteGroup> {
    let z = FiniteGroup::cyclic;
    let mut gs: Vec<FiniteGroup> = (1..=12).map(z).collect();
    gs.extend([
        z(2).product(&z(2)),
        z(2).product(&z(4)),
        z(2).product(&z(2)).product(&z(2)),
        z(3).product(&z(3)),
        z(2).product(&z(6)),
        FiniteGroup::symmetric3(),
        FiniteGroup::symmetric3().product(&z(2)),
    ]);
    gs
}

fn prisms(cfg: &VerifyConfig) -> Outcome {
    let start = Instant::now();
    let mut exhaustive = 0;
    for g in groups_up_to_six() {
        for k in 0..=2 {
            for c in cells(g.order(), k) {
                let chain = GroupChain::cell(c.clone());
                for t in 0..g.order() {
                    ensure!(prism_identity(&g, &chain, t).map_err(err)?.holds(), "{}: c = {c:?}, t = {t}", g.name());
                    exhaustive += 1;
                }
            }
        }
    }
    let mut rng = rng(cfg, 5);
    let groups = groups_up_to_twelve();
    for s in 0..1000 {
        let g = groups.choose(&mut rng).expect("nonempty");
        let n = g.order();
        let terms: Vec<(Vec<usize>, i64)> = (0..rng.gen_range(1..=4))
            .map(|_| ((0..3).map(|_| rng.gen_range(0..n)).collect(), rng.gen_range(-3..=3)))
            .collect();
        let chain = GroupChain::from_terms(3, terms).map_err(err)?;
        let t = rng.gen_range(0..n);
        ensure!(prism_identity(g, &chain, t).map_err(err)?.holds(), "sample {s} in {}: {chain:?}, t = {t}", g.name());
    }
    within(start.elapsed(), 120, "the prism sweep")?;
    Ok(format!("{exhaustive} exhaustive cases (|G| ≤ 6, k ≤ 2) and 1000 samples (|G| ≤ 12, k = 3)"))
}

fn cyclic_homology(cfg: &VerifyConfig) -> Outcome {
    for n in 2..=5u64 {
        let expected =
            [AbelianGroup::free(1), AbelianGroup::cyclic(n), AbelianGroup::zero(), AbelianGroup::cyclic(n)];
        for (k, want) in expected.iter().enumerate() {
            let h = group_homology(&FiniteGroup::cyclic(n as usize), k, &cfg.budget).map_err(err)?;
            let (free, torsion) = periodic_cyclic_homology(n, k);
            ensure!(h == *want, "H_{k}(Z/{n}) = {h}, expected {want}");
            ensure!(h == AbelianGroup { free_rank: free, torsion }, "H_{k}(Z/{n}) disagrees with the periodic resolution");
        }
    }
    Ok("H_*(Z/n) = (Z, Z/n, 0, Z/n) for n = 2..5".into())
}

fn shapiro(cfg: &VerifyConfig) -> Outcome {
    let mut checked = Vec::new();
    for act in [GroupAction::triangle_rotation(), GroupAction::pentagon_rotation()] {
        for p in -1..=1 {
            let r = shapiro_E1(&act, p, 2, &cfg.budget).map_err(err)?;
            ensure!(r.holds(), "{} p = {p}: {:?}", act.group().name(), r.status);
            checked.push(format!("{} p={p}", act.group().name()));
        }
    }
    let line = Action::InfiniteCyclic(OrbitComplex::from_annulus(&annulus_model(8).map_err(err)?).map_err(err)?);
    for p in 0..=1 {
        let r = line.shapiro_E1(p, 2, &cfg.budget).map_err(err)?;
        ensure!(r.holds(), "Z p = {p}: {:?}", r.status);
        checked.push(format!("Z p={p}"));
    }
    Ok(format!("E1 columns match stabilizer homology through q = 2: {}", checked.join(", ")))
}

fn annulus(_cfg: &VerifyConfig) -> Outcome {
    let start = Instant::now();
    let d = demo_annulus().map_err(err)?;
    let want = vec![AbelianGroup::free(1), AbelianGroup::free(1), AbelianGroup::zero()];
    ensure!(d.homology() == want, "recovered {:?}", d.homology());
    within(start.elapsed(), 60, "the annulus demo")?;
    Ok(format!(
        "recovered ({}) from E1_(-1,*); the column E∞ vanishes through total degree {}",
        d.homology().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "),
        d.vanishing_frontier
    ))
}

fn cuts(_cfg: &VerifyConfig) -> Outcome {
    let mut checks = 0;
    let chi = |g: i64, r: i64| 2 - 2 * g - r;
    for g in 0..=10 {
        for p in 0..=g {
            for r in 1..=4 {
                for (fam, want, ok) in [
                    (CutFamily::O1, (g - p - 1, r + p + 1), p < g),
                    (CutFamily::O2, (g - p, r + p - 1), r >= 2),
                ] {
                    match cut_profile(fam, g, r, p) {
                        Ok(c) => {
                            ensure!(ok, "{fam:?} at (g, r, p) = ({g}, {r}, {p}) should be impossible");
                            ensure!((c.genus, c.boundaries) == want, "{fam:?} ({g}, {r}, {p}) gives {c:?}");
                            ensure!(chi(c.genus, c.boundaries) == chi(g, r) + p + 1, "Euler identity at ({g}, {r}, {p})");
                        }
                        Err(e) => ensure!(!ok, "{fam:?} ({g}, {r}, {p}): {e}"),
                    }
                    checks += 1;
                }
                for (kind, ok) in [(StabKind::Alpha, true), (StabKind::Beta, p < g)] {
                    match square_check(kind, g, r, p) {
                        Ok(s) => ensure!(ok && s.commutes(), "{kind:?} square at ({g}, {r}, {p}): {s:?}"),
                        Err(e) => ensure!(!ok, "{kind:?} square at ({g}, {r}, {p}): {e}"),
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} cut profiles and squares for g ≤ 10, p ≤ g, 1 ≤ r ≤ 4"))
}

fn ranges(cfg: &VerifyConfig) -> Outcome {
    let floor3 = |n: i64| n.div_euclid(3);
    for g in 0..=cfg.g_max {
        let a = stable_range(StabKind::Alpha, g);
        ensure!(
            a.surjective_upto == Some(floor3(2 * g + 1)) && a.iso_upto == floor3(2 * g - 2) && !a.always_injective,
            "α at g = {g}: {a:?}"
        );
        let b = stable_range(StabKind::Beta, g);
        ensure!(b.surjective_upto.is_none() && b.iso_upto == floor3(2 * g) && b.always_injective, "β at g = {g}: {b:?}");
        let d = stable_range(StabKind::Delta, g);
        ensure!(d.surjective_upto == Some(floor3(2 * g) + 1) && d.iso_upto == floor3(2 * g), "δ at g = {g}: {d:?}");
    }
    Ok(format!("α, β, δ tables match for g ≤ {}", cfg.g_max))
}

fn audit(cfg: &VerifyConfig) -> Outcome {
    let rep = induction_audit(cfg.g_max, AuditParams::default());
    ensure!(rep.passed(), "slope 2/3 fails: {:?}", rep.first_violation());
    let bad = induction_audit(cfg.g_max, AuditParams::with_slope(Ratio::new(3, 4)));
    let Some(w) = bad.first_violation() else {
        return Err("slope 3/4 was not rejected".into());
    };
    Ok(format!(
        "{} inequalities hold for g ≤ {}; slope 3/4 fails at step {} claim {} (g = {}, p = {}, q = {})",
        rep.checks, cfg.g_max, w.step, w.claim, w.g, w.p, w.q
    ))
}

fn all_simplices(x: &SimplicialComplex) -> impl Iterator<Item = &crate::simplicial::Simplex> {
    x.faces_by_dim().iter().flatten()
}

fn decompositions(cfg: &VerifyConfig) -> Outcome {
    let q_top = cfg.q_max + 1;
    let models: Vec<DiscModel> = (2..=q_top).flat_map(two_label_patterns).collect();
    let counts: Vec<Result<(usize, usize), String>> = models
        .par_iter()
        .map(|m| {
            let cx = build_arc_complex(m, Family::B, None).map_err(err)?;
            let mut n = 0;
            for s in all_simplices(&cx.complex) {
                cut_decomposition(m, &cx.arcs_of(s)).map_err(|e| format!("{:?}: {e}", m.labels))?;
                n += 1;
            }
            // with no pure boundary edge, simplices of pure chords satisfy the
            // literal count Σm_i + Σq_j = 2p′ + 2
            let mut pure = 0;
            if l_and_m(m).1 == 0 {
                let chords: Vec<DiscArc> = m.arcs(false).into_iter().filter(|a| !m.is_impure(a)).collect();
                let names = chords.iter().map(|a| a.to_string()).collect();
                let (fc, _) = flag_complex(names, |i, j| m.compatible(&chords[i], &chords[j]), None);
                for s in all_simplices(&fc) {
                    let sigma: Vec<DiscArc> = s.vertices().iter().map(|&v| chords[v as usize]).collect();
                    let dec = cut_decomposition(m, &sigma).map_err(|e| format!("{:?}: {e}", m.labels))?;
                    if !dec.pure_arc_count_identity() {
                        return Err(format!("{:?}: Σm_i + Σq_j = {} ≠ 2p′+2 for {sigma:?}", m.labels, dec.pure_edges.0));
                    }
                    pure += 1;
                }
            }
            Ok((n, pure))
        })
        .collect();
    let (mut n, mut pure) = (0, 0);
    for c in counts {
        let (a, b) = c?;
        n += a;
        pure += b;
    }
    Ok(format!("identities hold on {n} B-simplices and {pure} pure-chord simplices, q ≤ {q_top}"))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let (r, c) = (rng.gen_range(1..=30), rng.gen_range(1..=30));
    let entry = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.6) { 0 } else { rng.gen_range(-4..=4) };
    if rng.gen_bool(0.3) {
        // a product through a narrow middle, scaled, for rank deficiency and torsion
        let k = rng.gen_range(1..=r.min(c));
        let a: Vec<Vec<i64>> = (0..r).map(|_| (0..k).map(|_| entry(rng)).collect()).collect();
        let b: Vec<Vec<i64>> = (0..k).map(|_| (0..c).map(|_| entry(rng)).collect()).collect();
        let s = rng.gen_range(1..=3);
        (0..r).map(|i| (0..c).map(|j| s * (0..k).map(|t| a[i][t] * b[t][j]).sum::<i64>()).collect()).collect()
    } else {
        (0..r).map(|_| (0..c).map(|_| entry(rng)).collect()).collect()
    }
}

fn unimodular(m: &SparseMatrix<BigInt>) -> Result<bool, String> {
    Ok(m.determinant().map_err(err)?.abs().is_one())
}

fn snf(cfg: &VerifyConfig) -> Outcome {
    let mut rng = rng(cfg, 13);
    let mats: Vec<Vec<Vec<BigInt>>> = (0..500)
        .map(|_| random_matrix(&mut rng).into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect())
        .collect();
    let outcomes: Vec<Result<usize, String>> = mats
        .par_iter()
        .enumerate()
        .map(|(i, dense)| {
            let m = SparseMatrix::from_dense(dense);
            let s = smith_normal_form(&m);
            let d = s.left_transform.mul(&m).and_then(|lm| lm.mul(&s.right_transform)).map_err(err)?;
            ensure!(d == s.diagonal(m.rows(), m.cols()), "matrix {i}: L·M·R is not the diagonal");
            ensure!(unimodular(&s.left_transform)? && unimodular(&s.right_transform)?, "matrix {i}: transform not unimodular");
            let ours: Vec<BigInt> = s.invariant_factors.iter().filter(|f| !f.is_zero()).cloned().collect();
            let oracle = dense_invariant_factors(dense);
            ensure!(ours == oracle, "matrix {i}: factors {ours:?}, oracle {oracle:?}");
            ensure!(ours.windows(2).all(|w| (&w[1] % &w[0]).is_zero()), "matrix {i}: divisibility chain broken");
            Ok(ours.len())
        })
        .collect();
    let mut total_rank = 0;
    for o in outcomes {
        total_rank += o?;
    }
    Ok(format!("500 matrices agree with the oracle (total rank {total_rank}); L and R unimodular"))
}

fn flows(cfg: &VerifyConfig) -> Outcome {
    let mut rng = rng(cfg, 14);
    let mut crossings = 0;
    let mut done = 0;
    while done < 100 {
        let q = rng.gen_range(4..=cfg.q_max + 1);
        let model = DiscModel::unlabeled(q).map_err(err)?;
        let chords = model.arcs(false);
        let a = *chords.choose(&mut rng).expect("q ≥ 4 has chords");
        // grow a random simplex of pairwise compatible chords
        let mut pool = chords.clone();
        pool.shuffle(&mut rng);
        let size = rng.gen_range(1..=q as usize - 3);
        let mut sigma: Vec<DiscArc> = Vec::new();
        for c in pool {
            if sigma.len() < size && sigma.iter().all(|s| model.compatible(s, &c)) {
                sigma.push(c);
            }
        }
        let (i, j) = a.endpoints();
        let p = if rng.gen_bool(0.5) { i } else { j };
        let flow = surgery_flow(&model, &sigma, a, p).map_err(err)?;
        ensure!(flow.valid(), "q = {q}, σ = {sigma:?}, a = {a}, p = {p}: {flow:?}");
        crossings += flow.crossings.len();
        done += 1;
    }
    Ok(format!("100 flows valid, {crossings} crossings resolved"))
}

fn farey(cfg: &VerifyConfig) -> Outcome {
    let mut rng = rng(cfg, 15);
    let verts = primitive_pairs(40);
    let det = |u: (i64, i64), v: (i64, i64)| u.0 * v.1 - u.1 * v.0;
    let same = |u: (i64, i64), v: (i64, i64)| u == v || u == (-v.0, -v.1);
    let mut longest = 0;
    for _ in 0..100 {
        let (u, v) = (*verts.choose(&mut rng).expect("nonempty"), *verts.choose(&mut rng).expect("nonempty"));
        let path = farey_path(u, v).map_err(err)?;
        ensure!(
            same(path[0], u) && same(*path.last().expect("nonempty"), v),
            "path {path:?} does not join {u:?} and {v:?}"
        );
        ensure!(path.windows(2).all(|w| det(w[0], w[1]).abs() == 1), "path {path:?} leaves the Farey graph");
        longest = longest.max(path.len());
    }
    let fm = FareyModel::new(6);
    ensure!(fm.is_connected(), "the height-6 Farey model is disconnected");
    ensure!(homological_connectivity(&fm.complex(), 0) >= 0, "the height-6 Farey model is not 0-connected");
    for n in 1..=64 {
        let x = annulus_model(n).map_err(err)?.complex;
        ensure!(!x.is_empty() && reduced_homology(&x).is_empty(), "annulus truncation N = {n} is not acyclic");
    }
    Ok(format!("100 Farey paths (longest {longest}); annulus truncations acyclic for N ≤ 64"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_criteria_pass() {
        let cfg = VerifyConfig { q_max: 5, g_max: 12, ..VerifyConfig::default() };
        for id in [4, 6, 9, 10, 11, 15] {
            let r = run_criterion(id, &cfg);
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn patterns_use_both_labels() {
        let ps = two_label_patterns(3);
        assert_eq!(ps.len(), 6);
        assert!(ps.iter().all(|m| m.labels.contains(&Label::D0) && m.labels.contains(&Label::D1)));
    }

    #[test]
    fn unknown_criterion_fails() {
        assert!(!run_criterion(99, &VerifyConfig::default()).pass);
    }
}
