//! Tropical Lagrangian branes on the bielliptic surface, their cobordism invariants and the
//! normal form deciding cobordism.

mod brane;
mod invariants;
mod relations;

pub use brane::{lift_x_slots, Brane, FiberBrane, FormalSum, LiftXBrane, LiftYBrane, SectionBrane, XCopy, YComponent, YLevel};
pub use invariants::{
    alb_loc, alb_prime_loc, brane_class, cyc, fiber_reduce, is_cobordant, normal_form, psi, psi_at, realize, reduce,
    refined_cyc, splitting_section, surgery_decompose, surgery_decompose_with, vertical_cycle_intersection,
    InvariantTuple,
};
pub use relations::{fiber_glide, fiber_slide, grading_shift, section_relation, section_relation_with};

use crate::abelian::CircleValue;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CobError {
    #[error("refined cycle class is not zero")]
    NotInKernel,
    #[error("{0} is not 2-torsion")]
    NotTwoTorsion(String),
    #[error("grading parity must be 1 or -1, got {0}")]
    InvalidParity(i8),
    #[error("y-lift components live at 0 or 1/2, got {0}")]
    InvalidLevel(CircleValue),
    #[error("expected {expected} sheet monodromies, got {got}")]
    DistributionLength { expected: usize, got: usize },
    #[error("sheet monodromies do not multiply to the section's monodromy")]
    DistributionProduct,
}
