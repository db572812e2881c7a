//! Exact combinatorial and homological tools for homological stability
//! arguments: simplicial complexes, Smith normal form homology, spectral
//! sequences of double complexes, bar-resolution group homology, marked
//! surface bookkeeping, finite arc-complex models and group actions.

pub mod arccomplexes;
pub mod grouphom;
pub mod homology;
pub mod reference;
pub mod simplicial;
pub mod specseq;
pub mod verify;
pub mod stability;
pub mod surfaces;

use num_bigint::BigInt;

/// Arbitrary-precision integer matrix.
pub type IntegerMatrix = homology::SparseMatrix<BigInt>;
/// Chain complex over the integers.
pub type IntChainComplex = homology::ChainComplex<BigInt>;
/// Chain map over the integers.
pub type IntChainMap = homology::ChainMap<BigInt>;
/// Smith normal form over the integers.
pub type IntSmithNormalForm = homology::SmithNormalForm<BigInt>;
