//! Exact invariants for tropical Lagrangian branes on the bielliptic surface and the
//! matching Chow/K-theory computations on its mirror.

pub mod abelian;
pub mod tropical;
pub mod homology;
pub mod cob_t2;
pub mod cob_biell;
pub mod chow_k0;
pub mod mirror;
pub mod roitman;

pub use abelian::{CircleValue, FGAbelianGroup, GroupElement, GroupHom, IntegerMatrix, Rational};
pub use chow_k0::{ChowClass, DivisorClass, EllipticPoint, IntersectionTable, K0Class, ZeroCycle};
pub use cob_biell::{Brane, FormalSum, InvariantTuple};
pub use cob_t2::{CircleBrane, T2Class};
pub use homology::H2Class;
pub use tropical::SectionClass;
