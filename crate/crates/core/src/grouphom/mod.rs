//! Group homology through bar constructions, and the chain-level prism
//! operators on bar chains.

pub(crate) mod bar;
mod chains;
mod group;

use thiserror::Error;

use crate::homology::HomologyError;

pub use bar::{
    bar_complex, bar_resolution, group_homology, laurent_window_exact, relative_group_homology, small_resolution_z,
    Budget, Resolution, ResolutionGroup, RingElement,
};
pub use chains::{
    bar_boundary, diagram_chain, iterated_prism, prism, prism_identity, GroupChain, IteratedPrism, PrismCheck,
};
pub use group::{FiniteGroup, GroupInput, GroupTableJson};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("unknown group preset {0:?}; expected Z, Z/n, S3 or a JSON table")]
    UnknownPreset(String),
    #[error("invalid group JSON: {0}")]
    Json(String),
    #[error("element {0} is not in the group")]
    BadElement(usize),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("degree {degree} is above the degree cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("bar construction for |G| = {order} through degree {degree} needs {cells} cells, budget is {limit}")]
    BudgetExceeded { order: usize, degree: usize, cells: u64, limit: u64 },
    #[error("resolution is not exact at degree {degree}")]
    NotExact { degree: usize },
    #[error("expected tuples of length {expected}, found {found}")]
    RaggedChain { expected: usize, found: usize },
    #[error("diagram does not commute at square {index}")]
    CommutationFailure { index: usize },
    #[error("element {element} does not commute with {with}")]
    DoesNotCommute { element: usize, with: usize },
    #[error(transparent)]
    Homology(#[from] HomologyError),
}
