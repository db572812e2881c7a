//! Finite combinatorial models of arc complexes: the marked disc (families
//! A and B), the annulus line model and the Farey model, together with the
//! surgery flow, cut decomposition and bad-simplex classification used in
//! connectivity arguments.

mod build;
mod disc;
mod flows;
mod models;

use thiserror::Error;

pub use build::{
    build_arc_complex, suspension_check, verify_connectivity, ArcComplex, ConnectivityReport,
    SuspensionReport,
};
pub use disc::{interleave, DiscArc, DiscModel, MAX_POINTS};
pub use flows::{
    annulus_end_orderings, classify_bad, cut_decomposition, surgery_flow, BadClassification,
    ComponentKind, CutComponent, CutDecomposition, EndOrderings, SurgeryFlow,
};
pub use models::{annulus_model, farey_path, primitive_pairs, AnnulusModel, FareyModel, FareyVertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArcError {
    #[error("invalid disc model: {0}")]
    BadModel(String),
    #[error("invalid arc: {0}")]
    BadArc(String),
    #[error("malformed model JSON: {0}")]
    Json(String),
    #[error("family {0:?} is not modeled on the disc")]
    UnsupportedFamily(crate::surfaces::Family),
    #[error(transparent)]
    Surface(#[from] crate::surfaces::SurfaceError),
    #[error("arcs {0} and {1} are not compatible")]
    NotASimplex(String, String),
    #[error("empty simplex")]
    EmptySimplex,
    #[error("loops are not supported here")]
    LoopUnsupported,
    #[error("trivial arc {0}")]
    TrivialArc(String),
    #[error("arc {0} is not anchored at both distinguished points")]
    NotAnchored(String),
    #[error("suspension insertion not legal: {0}")]
    IllegalInsertion(String),
    #[error("cut identity violated: {0}")]
    IdentityViolation(String),
    #[error("{0:?} is not a primitive integer pair")]
    NotPrimitive((i64, i64)),
}
