use std::path::{Path, PathBuf};

use num_rational::Ratio;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use thiserror::Error;

use stabkit::arccomplexes::{
    annulus_model, build_arc_complex, cut_decomposition, surgery_flow, verify_connectivity, ArcError, DiscArc,
    DiscModel,
};
use stabkit::grouphom::{Budget, GroupInput};
use stabkit::homology::{chain_complex, homological_connectivity};
use stabkit::simplicial::{ComplexJson, SimplicialComplex};
use stabkit::specseq::{run_to_limit, spectral_page, turn_page, DoubleComplex, DoubleComplexJson, Filtration, SpecSeqError};
use stabkit::stability::{demo_annulus_with, shapiro_E1, Action, GroupAction, OrbitComplex, ShapiroStatus, StabilityError};
use stabkit::surfaces::{bound, cut_profile, induction_audit, AuditParams, CutFamily, Family, MarkedSurface};
use stabkit::verify::{run_criterion, VerifyConfig, VerifyReport, CRITERIA};

use crate::{ArcCmd, ComplexCmd, CutArg, FamilyArg, FiltrationArg, Global, SsCmd, StabilityCmd, SurfaceCmd, VerifyCmd};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid JSON in {path} at line {line}, column {column}: {message}")]
    Json { path: PathBuf, line: usize, column: usize, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            _ => 2,
        }
    }
}

impl From<ArcError> for CliError {
    fn from(e: ArcError) -> Self {
        match e {
            ArcError::IdentityViolation(_) => CliError::Failed(e.to_string()),
            e => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<SpecSeqError> for CliError {
    fn from(e: SpecSeqError) -> Self {
        match e {
            SpecSeqError::VanishFailure { .. }
            | SpecSeqError::RankMismatch { .. }
            | SpecSeqError::NotWellDefined { .. }
            | SpecSeqError::LiftingFailure { .. } => CliError::Failed(e.to_string()),
            e => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<StabilityError> for CliError {
    fn from(e: StabilityError) -> Self {
        match e {
            StabilityError::Mismatch(_) => CliError::Failed(e.to_string()),
            StabilityError::SpecSeq(s) => s.into(),
            e => CliError::Invalid(e.to_string()),
        }
    }
}

/// Canonical output of a subcommand.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub pass: bool,
    /// Library operations whose results appear in `result`.
    pub operations: Vec<&'static str>,
    pub result: Value,
    /// Short text rendering; the generic one is used when empty.
    pub summary: Vec<String>,
    pub dot: Option<String>,
}

impl Report {
    fn new(g: &Global, command: &str, operations: Vec<&'static str>, result: Value) -> Self {
        Report {
            command: command.into(),
            seed: g.seed,
            pass: true,
            operations,
            result,
            summary: Vec::new(),
            dot: None,
        }
    }

    fn pass(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "seed": self.seed,
            "pass": self.pass,
            "operations": self.operations,
            "result": self.result,
        })
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| {
        let message = e.to_string();
        // drop serde's own position suffix, it is reported separately
        let message = message.split(" at line ").next().unwrap_or(&message).to_string();
        CliError::Json { path: path.into(), line: e.line(), column: e.column(), message }
    })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn budget() -> Result<Budget, CliError> {
    match std::env::var("STABKIT_BUDGET_MB") {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&mb| mb > 0)
            .map(Budget::from_megabytes)
            .ok_or_else(|| CliError::Invalid(format!("STABKIT_BUDGET_MB must be a positive integer, got {v:?}"))),
        Err(_) => Ok(Budget::default()),
    }
}

fn family(f: FamilyArg) -> Family {
    match f {
        FamilyArg::A => Family::A,
        FamilyArg::B => Family::B,
        FamilyArg::B0 => Family::B0,
        FamilyArg::O => Family::O,
    }
}

fn load_complex(path: &Path) -> Result<SimplicialComplex, CliError> {
    let j: ComplexJson = read_json(path)?;
    SimplicialComplex::from_json(j).map_err(|e| CliError::Invalid(e.to_string()))
}

fn load_disc(path: &Path) -> Result<DiscModel, CliError> {
    let m: DiscModel = read_json(path)?;
    m.validate()?;
    Ok(m)
}

fn parse_arcs(items: &[String]) -> Result<Vec<DiscArc>, CliError> {
    items.iter().map(|s| DiscArc::parse(s).map_err(CliError::from)).collect()
}

pub fn complex(g: &Global, cmd: &ComplexCmd) -> Result<Report, CliError> {
    let ComplexCmd::Homology { input, reduced, dim_cap, degree_cap } = cmd;
    let mut x = load_complex(input)?;
    if let Some(d) = dim_cap {
        x = x.skeleton(*d as usize);
    }
    let c = chain_complex::<num_bigint::BigInt>(&x, *reduced);
    let groups: Vec<Value> = c
        .homology_all()
        .iter()
        .map(|(k, h)| json!({ "degree": k, "group": h.to_string(), "free_rank": h.free_rank,
            "torsion": h.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>() }))
        .collect();
    let d_max = degree_cap.map_or(x.dim(), |d| d as isize);
    let result = json!({
        "f_vector": x.f_vector(),
        "dimension": x.dim(),
        "euler_characteristic": x.euler_characteristic(),
        "reduced": reduced,
        "homology": groups,
        "homological_connectivity": homological_connectivity(&x, d_max),
        "connectivity_degree_cap": d_max,
    });
    let mut r = Report::new(
        g,
        "complex homology",
        vec!["homology::chain_complex", "homology::homological_connectivity"],
        result,
    );
    r.dot = Some(x.to_dot());
    Ok(r)
}

pub fn arc(g: &Global, cmd: &ArcCmd) -> Result<Report, CliError> {
    match cmd {
        ArcCmd::Build { input, family: f, dim_cap } => {
            let m = load_disc(input)?;
            let cx = build_arc_complex(&m, family(*f), dim_cap.map(|d| d as usize))?;
            let result = json!({
                "q": m.q,
                "family": family(*f),
                "arcs": cx.arcs.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                "f_vector": cx.complex.f_vector(),
                "dimension": cx.complex.dim(),
                "truncated": cx.truncated,
            });
            let mut r = Report::new(g, "arc build", vec!["arccomplexes::build_arc_complex"], result);
            r.dot = Some(cx.complex.to_dot());
            Ok(r)
        }
        ArcCmd::Verify { input, family: f, degree_cap } => {
            let m = load_disc(input)?;
            let rep = verify_connectivity(&m, family(*f), degree_cap.map(|d| d as isize))?;
            let mut r = Report::new(g, "arc verify", vec!["arccomplexes::verify_connectivity"], to_value(&rep)).pass(rep.pass);
            r.summary = vec![
                format!("family {:?}, q = {}, bound: {}", rep.family, rep.q, rep.bound),
                format!("homological connectivity {} (computed through degree {})", rep.homological_connectivity, rep.d_max),
                format!("f-vector {:?}", rep.f_vector),
                format!("{}", if rep.pass { "PASS" } else { "FAIL" }),
            ];
            Ok(r)
        }
        ArcCmd::Surgery { input, sigma, arc, p } => {
            let m = load_disc(input)?;
            let flow = surgery_flow(&m, &parse_arcs(sigma)?, DiscArc::parse(arc)?, *p)?;
            Ok(Report::new(g, "arc surgery", vec!["arccomplexes::surgery_flow"], to_value(&flow)).pass(flow.valid()))
        }
        ArcCmd::Decompose { input, sigma } => {
            let m = load_disc(input)?;
            let dec = cut_decomposition(&m, &parse_arcs(sigma)?)?;
            let mut result = to_value(&dec);
            result["pure_arc_count_identity"] = json!(dec.pure_arc_count_identity());
            Ok(Report::new(g, "arc decompose", vec!["arccomplexes::cut_decomposition"], result))
        }
    }
}

fn parse_ratio(s: &str) -> Result<Ratio<i64>, CliError> {
    let bad = || CliError::Invalid(format!("slope {s:?} is not of the form a/b"));
    let (a, b) = s.split_once('/').ok_or_else(bad)?;
    let (a, b) = (a.trim().parse::<i64>().map_err(|_| bad())?, b.trim().parse::<i64>().map_err(|_| bad())?);
    if b <= 0 {
        return Err(bad());
    }
    Ok(Ratio::new(a, b))
}

pub fn surface(g: &Global, cmd: &SurfaceCmd) -> Result<Report, CliError> {
    let invalid = |e: stabkit::surfaces::SurfaceError| CliError::Invalid(e.to_string());
    match cmd {
        SurfaceCmd::Stats { input } => {
            let s: MarkedSurface = read_json(input)?;
            Ok(Report::new(g, "surface stats", vec!["surfaces::MarkedSurface::stats"], to_value(&s.stats())))
        }
        SurfaceCmd::Bound { input, family: f } => {
            let s: MarkedSurface = read_json(input)?;
            let b = bound(family(*f), &s).map_err(invalid)?;
            let result = json!({ "family": family(*f), "bound": b, "statement": b.to_string() });
            Ok(Report::new(g, "surface bound", vec!["surfaces::bound"], result))
        }
        SurfaceCmd::Cut { family: f, genus, boundaries, p } => {
            let fam = match f {
                CutArg::O1 => CutFamily::O1,
                CutArg::O2 => CutFamily::O2,
            };
            let c = cut_profile(fam, *genus, *boundaries, *p).map_err(invalid)?;
            let chi = |g: i64, r: i64| 2 - 2 * g - r;
            let result = json!({
                "profile": c,
                "euler_before": chi(*genus, *boundaries),
                "euler_after": chi(c.genus, c.boundaries),
                "euler_identity": chi(c.genus, c.boundaries) == chi(*genus, *boundaries) + p + 1,
            });
            Ok(Report::new(g, "surface cut", vec!["surfaces::cut_profile"], result))
        }
        SurfaceCmd::Audit { gmax, slope } => {
            if *gmax < 0 {
                return Err(CliError::Invalid("gmax must be non-negative".into()));
            }
            let rep = induction_audit(*gmax, AuditParams::with_slope(parse_ratio(slope)?));
            let mut r = Report::new(g, "surface audit", vec!["surfaces::induction_audit"], to_value(&rep)).pass(rep.passed());
            r.summary = vec![format!("{} inequalities checked for g ≤ {}", rep.checks, gmax)];
            match rep.first_violation() {
                None => r.summary.push("PASS".into()),
                Some(w) => r.summary.push(format!(
                    "FAIL at step {} claim {}: g = {}, p = {}, q = {} ({})",
                    w.step, w.claim, w.g, w.p, w.q, w.detail
                )),
            }
            Ok(r)
        }
    }
}

pub fn ss(g: &Global, cmd: &SsCmd) -> Result<Report, CliError> {
    let SsCmd::Run { input, filtration, pages, assert_vanish } = cmd;
    let j: DoubleComplexJson = read_json(input)?;
    let dc = DoubleComplex::from_json(&j)?;
    let filt = match filtration {
        FiltrationArg::Column => Filtration::Column,
        FiltrationArg::Row => Filtration::Row,
    };
    if let Some(n) = pages {
        let mut page = spectral_page(&dc, filt, 1)?;
        let mut out = vec![page.report()];
        for _ in 1..*n {
            page = turn_page(&page)?;
            out.push(page.report());
        }
        return Ok(Report::new(
            g,
            "ss run",
            vec!["specseq::spectral_page", "specseq::turn_page"],
            json!({ "filtration": filt, "pages": out }),
        ));
    }
    let rep = run_to_limit(&dc, filt, *assert_vanish)?;
    let mut r = Report::new(g, "ss run", vec!["specseq::run_to_limit"], to_value(&rep));
    r.summary = vec![
        format!("{filt:?} filtration, limit reached on page {}", rep.limit_page),
        format!("E∞ vanishes through total degree {}", rep.vanishing_frontier),
    ];
    r.summary.extend(rep.limit.terms.iter().filter(|t| t.free_rank > 0 || !t.torsion.is_empty()).map(|t| {
        let grp = stabkit::homology::AbelianGroup { free_rank: t.free_rank, torsion: t.torsion.clone() };
        format!("E∞({}, {}) = {grp}", t.p, t.q)
    }));
    Ok(r)
}

/// The finite action named by `group` on `x`.
fn finite_action(group: &str, x: SimplicialComplex) -> Result<GroupAction, CliError> {
    let n = x.vertex_names().len();
    match GroupInput::parse(group).map_err(|e| CliError::Invalid(e.to_string()))? {
        GroupInput::Finite(g) if group.trim() == "S3" => {
            if n != 3 {
                return Err(CliError::Invalid("S3 acts by permuting exactly three vertices".into()));
            }
            let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            Ok(GroupAction::new(g, x, perms.iter().map(|p| p.to_vec()).collect())?)
        }
        GroupInput::Finite(g) if group.trim().starts_with("Z/") => Ok(GroupAction::rotation(g.order(), x)?),
        _ => Err(CliError::Invalid(format!("group {group:?}: use Z/n, S3 or Z"))),
    }
}

pub fn stability(g: &Global, cmd: &StabilityCmd) -> Result<Report, CliError> {
    match cmd {
        StabilityCmd::DemoAnnulus { n, qmax } => {
            let d = demo_annulus_with(*n, *qmax, stabkit::stability::LAURENT_WINDOW)?;
            let mut r = Report::new(
                g,
                "stability demo-annulus",
                vec!["stability::demo_annulus", "specseq::run_to_limit", "grouphom::small_resolution_z"],
                to_value(&d),
            );
            r.summary = vec![
                format!("H_*(Z) recovered: ({})", d.homology().iter().map(|h| h.to_string()).collect::<Vec<_>>().join(", ")),
                format!("rows vanish: {}", d.rows.rows_vanish),
            ];
            r.summary.extend(d.killed_by.iter().map(|k| {
                format!("d^{} from {:?} kills E(-1, {})", k.page, k.source, k.q)
            }));
            Ok(r)
        }
        StabilityCmd::Shapiro { group, complex, p, qmax } => {
            let budget = budget()?;
            let rep = if group.trim() == "Z" {
                let line = OrbitComplex::from_annulus(&annulus_model(8)?)?;
                Action::InfiniteCyclic(line).shapiro_E1(*p, *qmax, &budget)?
            } else {
                let path = complex.as_ref().ok_or_else(|| CliError::Invalid("--complex is required".into()))?;
                let act = finite_action(group, load_complex(path)?)?;
                shapiro_E1(&act, *p, *qmax, &budget)?
            };
            if rep.status == ShapiroStatus::RotationPresent {
                return Err(CliError::Invalid(format!(
                    "the stabilizer of {:?} moves its vertices; the comparison is not defined",
                    rep.representative
                )));
            }
            let mut r = Report::new(g, "stability shapiro", vec!["stability::shapiro_E1"], to_value(&rep)).pass(rep.holds());
            r.summary = vec![format!("{} on p = {}: stabilizer {} of {:?}", rep.group, rep.p, rep.stabilizer, rep.representative)];
            r.summary.extend(rep.rows.iter().map(|row| {
                format!("q = {}: E1 {:?}/{:?}, stabilizer {:?}/{:?} {}", row.q, row.direct.free_rank, row.direct.torsion,
                    row.stabilizer.free_rank, row.stabilizer.torsion, if row.agree { "agree" } else { "DIFFER" })
            }));
            Ok(r)
        }
    }
}

pub fn verify(g: &Global, cmd: &VerifyCmd) -> Result<Report, CliError> {
    let VerifyCmd::All { qmax, gmax, only } = cmd;
    if let Some(bad) = only.iter().find(|id| !CRITERIA.iter().any(|c| c.0 == **id)) {
        return Err(CliError::Invalid(format!("no criterion {bad}")));
    }
    let cfg = VerifyConfig { seed: g.seed, q_max: *qmax, g_max: *gmax, budget: budget()? };
    let results = CRITERIA
        .iter()
        .filter(|c| only.is_empty() || only.contains(&c.0))
        .map(|c| run_criterion(c.0, &cfg))
        .collect();
    let rep = VerifyReport { seed: cfg.seed, q_max: cfg.q_max, g_max: cfg.g_max, results };
    let mut r = Report::new(g, "verify all", vec!["verify::run_criterion"], to_value(&rep)).pass(rep.passed());
    r.summary = rep
        .results
        .iter()
        .map(|c| format!("{} {:>2} {} [{:.2}s]: {}", if c.pass { "PASS" } else { "FAIL" }, c.id, c.name, c.seconds, c.detail))
        .collect();
    let passed = rep.results.iter().filter(|c| c.pass).count();
    r.summary.push(format!("{passed}/{} criteria pass (seed {})", rep.results.len(), cfg.seed));
    Ok(r)
}
