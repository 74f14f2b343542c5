//! Exact arithmetic on finitely generated abelian groups and on `ℚ/ℤ`.

mod circle;
mod group;
mod matrix;
mod snf;

pub use circle::{frac, int, parse_rational, rat, rational_string, CircleValue, Rational};
pub use group::{cokernel, direct_sum, kernel, n_torsion, FGAbelianGroup, GroupElement, GroupHom};
pub use matrix::{IntegerMatrix, Matrix};
pub use snf::{invariant_factors, smith_normal_form, SmithForm};

use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AbelianError {
    #[error("invariant factor {0} is not at least 2")]
    InvalidTorsion(BigInt),
    #[error("invariant factors do not form a divisibility chain")]
    NotDivisibilityChain,
    #[error("expected {expected} coordinates, got {got}")]
    CoordinateCount { expected: usize, got: usize },
    #[error("matrix shape does not match domain and codomain")]
    ShapeMismatch,
    #[error("image of torsion generator {generator} is not killed by its order")]
    TorsionNotRespected { generator: usize },
}
