//! Exact integer linear algebra and homology of chain complexes.

mod chain;
mod matrix;
mod scalar;
mod snf;

use thiserror::Error;

pub use chain::{
    chain_complex, chain_complex_through, homological_connectivity, join_connectivity_bound,
    mapping_cone, AbelianGroup, ChainComplex, ChainMap, HomologyReport,
};
pub use matrix::{MatrixJson, SparseMatrix};
pub use scalar::{Overflow, Scalar};
pub use snf::{smith_normal_form, sparse_invariant_factors, sparse_rank, SmithNormalForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("shape mismatch: expected {left:?}, found {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("matrix entry {0} is not an integer")]
    BadEntry(String),
    #[error("homology in degree {degree} needs the window to extend past degree {top}")]
    WindowTooSmall { degree: isize, top: isize },
    #[error("map does not commute with the boundary in degree {degree}")]
    NotAChainMap { degree: isize },
    #[error("d∘d is nonzero at degree {degree}")]
    DSquaredNonzero { degree: isize },
    #[error("connectivity list is empty")]
    EmptyList,
}

/// Serializes integer lists as JSON numbers when they fit in 64 bits and as
/// decimal strings otherwise.
pub(crate) mod bigint_list {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Value;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|b| match i64::try_from(b) {
                Ok(x) => Value::from(x),
                Err(_) => Value::from(b.to_string()),
            })
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Value>::deserialize(d)?
            .into_iter()
            .map(|v| match v {
                Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| D::Error::custom("bad integer")),
                Value::String(s) => s.parse().map_err(D::Error::custom),
                _ => Err(D::Error::custom("expected integer")),
            })
            .collect()
    }
}
