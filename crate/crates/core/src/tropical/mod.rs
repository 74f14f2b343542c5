//! Tropical Klein bottles, their sections and piecewise-linear models, corner loci, and the
//! tropical Albanese map.

mod albanese;
mod klein;
mod pl;

pub use albanese::{alb_zero_cycle, albanese_data, AlbaneseData};
pub use klein::{standardize, AffineMap2, KleinFamily, Lattice2, Mat2, TropicalKlein, Vec2};
pub use pl::{
    bend_locus, pl_approximation, section_representative, Axis, HypersurfaceComponent, PLFunction1D,
    QuadraticSection, SectionClass, TropicalHypersurface,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TropicalError {
    #[error("lattice basis is degenerate")]
    DegenerateLattice,
    #[error("linear part of the involution is not in GL(2, Z)")]
    NotIntegral,
    #[error("involution preserves orientation")]
    NotOrientationReversing,
    #[error("map does not square to the identity on the torus")]
    NotInvolution,
    #[error("involution has fixed points")]
    HasFixedPoints,
    #[error("affine structure is not preserved by the involution")]
    LatticeNotInvariant,
    #[error("only Klein bottles of the first family are supported")]
    UnsupportedFamily,
    #[error("0-cycle has degree {0}, expected 0")]
    NonzeroDegree(i64),
}
