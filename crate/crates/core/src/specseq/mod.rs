//! Double complexes, the spectral sequences of their two filtrations, maps
//! between them, and realizations of semi-simplicial sets.

mod double;
mod lattice;
mod pages;
mod semisimplicial;

use thiserror::Error;

pub use double::{BlockJson, DoubleComplex, DoubleComplexJson, DoubleMap, TwistJson};
pub use lattice::Lattice;
pub use pages::{
    edge_square, horizontal_E1, page_map, run_to_limit, spectral_page, turn_page, vertical_E1, Antidiagonal,
    Differential, EdgeSquare, Filtration, Page, PageReport, SpectralReport, Term, TermMap, TermReport,
};
pub use semisimplicial::{realization_of_complexes, semisimplicial_realization, SemiSimplicialSet};

use crate::homology::{AbelianGroup, HomologyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecSeqError {
    #[error("block at ({p}, {q}) lies outside the window")]
    OutsideWindow { p: isize, q: isize },
    #[error("block at ({p}, {q}) should be {expected:?}, found {found:?}")]
    BlockShape { p: isize, q: isize, expected: (usize, usize), found: (usize, usize) },
    #[error("horizontal differential squares to a nonzero map at ({p}, {q})")]
    HorizontalSquare { p: isize, q: isize },
    #[error("vertical differential squares to a nonzero map at ({p}, {q})")]
    VerticalSquare { p: isize, q: isize },
    #[error("horizontal and vertical differentials do not commute at ({p}, {q})")]
    NotCommuting { p: isize, q: isize },
    #[error("twisted component at ({p}, {q}) has r = {r}; twists need r ≥ 2")]
    BadTwist { p: isize, q: isize, r: usize },
    #[error("the row filtration is not a filtration of a twisted double complex")]
    RowOfTwisted,
    #[error("total differential does not square to zero")]
    TotalSquare,
    #[error("invalid double complex JSON: {0}")]
    Json(String),
    #[error("page {r} at ({p}, {q}): {reason}")]
    LiftingFailure { p: isize, q: isize, r: usize, reason: &'static str },
    #[error("d^{r} out of ({p}, {q}) does not respect the relations")]
    NotWellDefined { p: isize, q: isize, r: usize },
    #[error("limit rank {limit} differs from total homology rank {total} in degree {n}")]
    RankMismatch { n: isize, limit: usize, total: usize },
    #[error("E^∞({p}, {q}) = {group} is nonzero although p + q ≤ {c}")]
    VanishFailure { c: isize, p: isize, q: isize, group: AbelianGroup, report: Box<SpectralReport> },
    #[error("map is not a morphism of double complexes at ({p}, {q})")]
    NotAMorphism { p: isize, q: isize },
    #[error("edge map E^1 → E^∞ is undefined at ({p}, {q})")]
    EdgeUndefined { p: isize, q: isize },
    #[error("level {level}: {reason}")]
    BadFace { level: usize, reason: String },
    #[error("d_{i} d_{j} ≠ d_{} d_{i} on element {element} of level {level}", j - 1)]
    SimplicialIdentity { level: usize, i: usize, j: usize, element: usize },
    #[error(transparent)]
    Homology(#[from] HomologyError),
}
