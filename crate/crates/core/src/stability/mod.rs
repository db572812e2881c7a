//! Group actions on complexes, the equivariant mapping-cone double complex,
//! the Shapiro comparison for its columns, and the infinite cyclic action on
//! the arc line of the annulus.

mod action;
mod annulus;
mod equivariant;
mod orbit;

use thiserror::Error;

pub use action::{GroupAction, Orbit, OrbitPresentation, Stabilizer};
pub use annulus::{demo_annulus, demo_annulus_with, transferred_double_complex, AnnulusDemo, Kill, RowSide};
pub use equivariant::{
    column_complex, equivariant_double_complex, shapiro_E1, EquivariantMap, ShapiroReport, ShapiroRow, ShapiroStatus,
};
pub use orbit::{CyclicOrbit, OrbitComplex};

use crate::arccomplexes::ArcError;
use crate::grouphom::{Budget, GroupError};
use crate::homology::HomologyError;
use crate::specseq::{SpecSeqError, SpectralReport};

#[derive(Debug, Error)]
pub enum StabilityError {
    #[error("not a group action: {0}")]
    NotAnAction(String),
    #[error("not simplicial: {0}")]
    NotSimplicial(String),
    #[error("not equivariant: {0}")]
    NotEquivariant(String),
    #[error("the action on {p}-simplices has {orbits} orbits")]
    NotTransitive { p: isize, orbits: usize },
    #[error("there are no {p}-simplices")]
    NoSimplices { p: isize },
    #[error("non-free orbit: {0}")]
    NotFree(String),
    #[error("integer overflow in a window computation")]
    Overflow,
    #[error("consistency check failed: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    SpecSeq(#[from] SpecSeqError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Arc(#[from] ArcError),
}

/// A finite action or the orbit data of an infinite cyclic one.
#[derive(Debug, Clone)]
pub enum Action {
    Finite(GroupAction),
    InfiniteCyclic(OrbitComplex),
}

/// Laurent window used for free orbits of the infinite cyclic group.
pub const LAURENT_WINDOW: i64 = 16;

impl Action {
    pub fn check_transitivity(&self, p: usize) -> bool {
        match self {
            Action::Finite(a) => a.check_transitivity(p),
            Action::InfiniteCyclic(o) => o.check_transitivity(p),
        }
    }

    #[allow(non_snake_case)]
    pub fn shapiro_E1(&self, p: isize, q_max: usize, budget: &Budget) -> Result<ShapiroReport, StabilityError> {
        match self {
            Action::Finite(a) => shapiro_E1(a, p, q_max, budget),
            Action::InfiniteCyclic(_) if p < 0 => Err(StabilityError::NoSimplices { p }),
            Action::InfiniteCyclic(o) => o.shapiro_E1(p as usize, q_max, LAURENT_WINDOW),
        }
    }
}

/// `E^∞_{p,q} = 0` for every `p + q ≤ c` in the window.
pub fn vanishing_check(report: &SpectralReport, c: isize) -> bool {
    report.vanishes_through(c)
}
