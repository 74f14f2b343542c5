//! Chow groups and `K₀` of an algebraic bielliptic surface: explicit generators, the
//! quasi-linear map `H`, the integral Chern character and the generator map `h`.

mod chern;
mod classes;
mod intersection;

pub use chern::{bielliptic_blocks, build_quasilinear, h_inverse, h_map, BlockMap, QuasilinearMap};
pub use classes::{cross_pair_is_torsion, ChowClass, DivisorClass, EllipticPoint, K0Class, ZeroCycle, CROSS_PAIRS};
pub use intersection::{IntersectionTable, TableMode};

use std::sync::Arc;

use crate::abelian::{CircleValue, FGAbelianGroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChowError {
    #[error("no value configured for {0}")]
    MissingTableEntry(String),
    #[error("block map {0} violates H(a+b) = H(a) + H(b) + ab")]
    BlockMapNotQuasilinear(usize),
    #[error("expected 5 block maps, got {0}")]
    BlockCount(usize),
    #[error("half class {0} is not killed by 4")]
    HalfClassOrder(String),
    #[error("{0} must be 2-torsion")]
    TorsionNotRespected(String),
    #[error("{0} is not a configurable product")]
    InvalidPair(String),
    #[error("class contains undetermined intersection products")]
    SymbolicClass,
}

/// The default half class `P = (1/4, e)`.
pub fn default_half_class(g: &Arc<FGAbelianGroup>) -> EllipticPoint {
    EllipticPoint::new(CircleValue::from_ratio(1, 4), g.identity())
}
