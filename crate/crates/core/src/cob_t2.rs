//! Lagrangian cobordism group of the torus `T² = ℝ²/ℤ²` with local systems, generated by
//! horizontal and vertical circles.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::{CircleValue, FGAbelianGroup, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum T2Error {
    #[error("sum has nonzero homology class ({0}, {1})")]
    NotNullHomologous(BigInt, BigInt),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Direction {
    /// `S¹ × {a}`, class `(1, 0)`.
    Horizontal,
    /// `{b} × S¹`, class `(0, 1)`.
    Vertical,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CircleBrane {
    pub direction: Direction,
    pub position: CircleValue,
    pub monodromy: GroupElement,
    pub sign: i8,
}

impl CircleBrane {
    pub fn horizontal(position: CircleValue, monodromy: GroupElement) -> Self {
        CircleBrane { direction: Direction::Horizontal, position, monodromy, sign: 1 }
    }

    pub fn vertical(position: CircleValue, monodromy: GroupElement) -> Self {
        CircleBrane { direction: Direction::Vertical, position, monodromy, sign: 1 }
    }

    pub fn negated(&self) -> Self {
        CircleBrane { sign: -self.sign, ..self.clone() }
    }

    fn class(&self) -> (BigInt, BigInt) {
        let s = BigInt::from(self.sign);
        match self.direction {
            Direction::Horizontal => (s, BigInt::zero()),
            Direction::Vertical => (BigInt::zero(), s),
        }
    }
}

/// `ℤ² ⊕ ℚ/ℤ ⊕ G`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct T2Class {
    pub homology: (BigInt, BigInt),
    pub flux: CircleValue,
    pub monodromy: GroupElement,
}

impl fmt::Display for T2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({}, {}), {}, {})", self.homology.0, self.homology.1, self.flux, self.monodromy)
    }
}

fn homology(sum: &[CircleBrane]) -> (BigInt, BigInt) {
    sum.iter().fold((BigInt::zero(), BigInt::zero()), |(h, v), b| {
        let (dh, dv) = b.class();
        (h + dh, v + dv)
    })
}

/// `−Σ sᵢ·posᵢ`: the boundary of `S¹ × [a, a+θ]` is `S¹×{a} − S¹×{a+θ}` and has area `θ`; a
/// vertical pair contributes with the same sign so that a horizontal band and a vertical band
/// of equal width bound each other's difference.
fn signed_positions(sum: &[CircleBrane]) -> CircleValue {
    sum.iter().fold(CircleValue::zero(), |acc, b| {
        let d = b.position.scale(&BigInt::from(b.sign));
        &acc - &d
    })
}

/// Area of a 2-chain bounding a null-homologous sum, modulo the total area `1`.
pub fn flux(sum: &[CircleBrane]) -> Result<CircleValue, T2Error> {
    let (h, v) = homology(sum);
    if !h.is_zero() || !v.is_zero() {
        return Err(T2Error::NotNullHomologous(h, v));
    }
    Ok(signed_positions(sum))
}

/// Complete invariant. The reference representative of class `(h, v)` is `h·S¹×{0} + v·{0}×S¹`,
/// whose positions are all zero, so the flux of the difference is the signed position sum.
pub fn normal_form_t2(sum: &[CircleBrane], g: &Arc<FGAbelianGroup>) -> T2Class {
    let monodromy = sum.iter().fold(g.identity(), |acc, b| {
        let m = b.monodromy.scale(&BigInt::from(b.sign));
        &acc + &m
    });
    T2Class { homology: homology(sum), flux: signed_positions(sum), monodromy }
}

pub fn cobordant_t2(a: &[CircleBrane], b: &[CircleBrane], g: &Arc<FGAbelianGroup>) -> bool {
    normal_form_t2(a, g) == normal_form_t2(b, g)
}

/// `S¹×{a} − S¹×{a+θ} − ({b}×S¹ − {b+θ}×S¹)`.
pub fn relation1(a: &CircleValue, b: &CircleValue, theta: &CircleValue, g: &Arc<FGAbelianGroup>) -> Vec<CircleBrane> {
    let e = g.identity();
    vec![
        CircleBrane::horizontal(a.clone(), e.clone()),
        CircleBrane::horizontal(a + theta, e.clone()).negated(),
        CircleBrane::vertical(b.clone(), e.clone()).negated(),
        CircleBrane::vertical(b + theta, e),
    ]
}

/// `S¹×{0} − S¹×{θ} − (S¹×{a} − S¹×{a+θ})`.
pub fn relation2(a: &CircleValue, theta: &CircleValue, g: &Arc<FGAbelianGroup>) -> Vec<CircleBrane> {
    let e = g.identity();
    vec![
        CircleBrane::horizontal(CircleValue::zero(), e.clone()),
        CircleBrane::horizontal(theta.clone(), e.clone()).negated(),
        CircleBrane::horizontal(a.clone(), e.clone()).negated(),
        CircleBrane::horizontal(a + theta, e),
    ]
}

/// A sum realizing a given class.
pub fn realize_t2(class: &T2Class) -> Vec<CircleBrane> {
    let g = class.monodromy.group();
    let e = g.identity();
    let mut out = Vec::new();
    let copies = |k: &BigInt, b: CircleBrane, out: &mut Vec<CircleBrane>| {
        let n = k.magnitude().clone();
        let mut i = num_bigint::BigUint::zero();
        while i < n {
            out.push(if k < &BigInt::zero() { b.negated() } else { b.clone() });
            i += 1u32;
        }
    };
    copies(&class.homology.0, CircleBrane::horizontal(CircleValue::zero(), e.clone()), &mut out);
    copies(&class.homology.1, CircleBrane::vertical(CircleValue::zero(), e.clone()), &mut out);
    out.push(CircleBrane::horizontal(CircleValue::zero(), e.clone()));
    out.push(CircleBrane::horizontal(class.flux.clone(), e.clone()).negated());
    out.push(CircleBrane::horizontal(CircleValue::zero(), class.monodromy.clone()));
    out.push(CircleBrane::horizontal(CircleValue::zero(), e).negated());
    out
}
