use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::abelian::{frac, rat, CircleValue, FGAbelianGroup, GroupElement, Rational};
use crate::tropical::SectionClass;

use super::CobError;

/// A fiber `T²_p` over `p = (x, y)` with monodromies around the `dx` and `dy` loops.
///
/// Base points are kept in the fundamental domain `x ∈ [0, 1/2)`, `y ∈ [0, 1)`; moving a point
/// across the glide inverts `λy`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FiberBrane {
    x: Rational,
    y: Rational,
    lx: GroupElement,
    ly: GroupElement,
}

impl FiberBrane {
    pub fn new(x: Rational, y: Rational, lx: GroupElement, ly: GroupElement) -> Self {
        let mut x = frac(&x);
        let mut y = frac(&y);
        let mut ly = ly;
        if x >= rat(1, 2) {
            x -= rat(1, 2);
            y = frac(&-y);
            ly = -&ly;
        }
        FiberBrane { x, y, lx, ly }
    }

    pub fn trivial(x: Rational, y: Rational, g: &Arc<FGAbelianGroup>) -> Self {
        Self::new(x, y, g.identity(), g.identity())
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn lx(&self) -> &GroupElement {
        &self.lx
    }

    pub fn ly(&self) -> &GroupElement {
        &self.ly
    }

    /// The coordinate `u = 2x` of the base point on the Albanese circle.
    pub fn u(&self) -> CircleValue {
        CircleValue::new(&self.x * Rational::from_integer(2.into()))
    }
}

/// A tropical section `Γ(m, n, l, θ)` with grading parity and local system. `ηZ` is the
/// monodromy along the glide loop and `ηZ2` (2-torsion) along the `y`-loop.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SectionBrane {
    class: SectionClass,
    parity: i8,
    eta_z: GroupElement,
    eta2: GroupElement,
}

impl SectionBrane {
    pub fn new(class: SectionClass, parity: i8, eta_z: GroupElement, eta2: GroupElement) -> Result<Self, CobError> {
        if parity != 1 && parity != -1 {
            return Err(CobError::InvalidParity(parity));
        }
        two_torsion(&eta2)?;
        Ok(SectionBrane { class, parity, eta_z, eta2 })
    }

    pub fn trivial(class: SectionClass, g: &Arc<FGAbelianGroup>) -> Self {
        SectionBrane { class, parity: 1, eta_z: g.identity(), eta2: g.identity() }
    }

    /// `Γ₀` with local system `(h, ηZ2)`.
    pub fn zero_section(h: GroupElement, eta2: GroupElement) -> Result<Self, CobError> {
        Self::new(SectionClass::zero(), 1, h, eta2)
    }

    pub fn class(&self) -> &SectionClass {
        &self.class
    }

    pub fn parity(&self) -> i8 {
        self.parity
    }

    pub fn eta_z(&self) -> &GroupElement {
        &self.eta_z
    }

    pub fn eta2(&self) -> &GroupElement {
        &self.eta2
    }

    pub fn is_zero_section(&self) -> bool {
        self.class.is_zero()
    }
}

/// One sheet of an `x`-lift: the conormal torus over `{u = position}` taken with `sign`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct XCopy {
    pub position: CircleValue,
    pub sign: i8,
    pub nu: GroupElement,
}

/// The lift `L_f` of a PL function of `x`: one torus per unit of bending.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LiftXBrane {
    copies: Vec<XCopy>,
    eta2: GroupElement,
}

impl LiftXBrane {
    pub fn new(mut copies: Vec<XCopy>, eta2: GroupElement) -> Result<Self, CobError> {
        if let Some(c) = copies.iter().find(|c| c.sign != 1 && c.sign != -1) {
            return Err(CobError::InvalidParity(c.sign));
        }
        two_torsion(&eta2)?;
        copies.sort();
        Ok(LiftXBrane { copies, eta2 })
    }

    /// `L_{f_{mθ}}`, the lift of `m𝔣 + 𝔣_θ`: `|m|` sheets at `u = 1/2`, and for `θ ≠ 0` a
    /// positive sheet at `1 − θ` and a negative one at `0`. `nus` is assigned in that order.
    pub fn from_function(m: &BigInt, theta: &CircleValue, nus: &[GroupElement], eta2: GroupElement) -> Result<Self, CobError> {
        let slots = lift_x_slots(m, theta);
        if nus.len() != slots.len() {
            return Err(CobError::DistributionLength { expected: slots.len(), got: nus.len() });
        }
        let copies = slots.into_iter().zip(nus).map(|((position, sign), nu)| XCopy { position, sign, nu: nu.clone() }).collect();
        Self::new(copies, eta2)
    }

    pub fn copies(&self) -> &[XCopy] {
        &self.copies
    }

    pub fn eta2(&self) -> &GroupElement {
        &self.eta2
    }
}

/// Positions and signs of the sheets of `L_{f_{mθ}}`, in assignment order.
pub fn lift_x_slots(m: &BigInt, theta: &CircleValue) -> Vec<(CircleValue, i8)> {
    let sign: i8 = if m.is_negative() { -1 } else { 1 };
    let mut slots = Vec::new();
    let mut k = BigInt::zero();
    while &k < &m.abs() {
        slots.push((CircleValue::from_ratio(1, 2), sign));
        k += 1;
    }
    if !theta.is_zero() {
        slots.push((CircleValue::new(Rational::one() - theta.value()), 1));
        slots.push((CircleValue::zero(), -1));
    }
    slots
}

/// The two invariant circles of `K` in the `y` direction: `{y = 1/2}` (`C₂`) and `{y = 0}` (`C₃`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum YLevel {
    Zero,
    Half,
}

impl YLevel {
    pub fn from_position(p: &CircleValue) -> Result<Self, CobError> {
        if p.is_zero() {
            Ok(YLevel::Zero)
        } else if p.value() == &rat(1, 2) {
            Ok(YLevel::Half)
        } else {
            Err(CobError::InvalidLevel(p.clone()))
        }
    }

    pub fn position(self) -> CircleValue {
        match self {
            YLevel::Zero => CircleValue::zero(),
            YLevel::Half => CircleValue::from_ratio(1, 2),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct YComponent {
    pub level: YLevel,
    pub weight: BigInt,
    /// Monodromy around the fiber loop; 2-torsion since that loop is conjugate to its inverse.
    pub nu: GroupElement,
}

/// The lift `L_f` of a PL function of `y`: a Klein bottle over each bend circle, with weight.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LiftYBrane {
    components: Vec<YComponent>,
}

impl LiftYBrane {
    /// Components with equal level and monodromy are merged; zero weights are dropped.
    pub fn new(components: Vec<YComponent>) -> Result<Self, CobError> {
        let mut merged: BTreeMap<(YLevel, GroupElement), BigInt> = BTreeMap::new();
        for c in components {
            two_torsion(&c.nu)?;
            *merged.entry((c.level, c.nu)).or_insert_with(BigInt::zero) += c.weight;
        }
        let components = merged
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|((level, nu), weight)| YComponent { level, weight, nu })
            .collect();
        Ok(LiftYBrane { components })
    }

    /// `L_{f^{nl}}`, the lift of `n𝔣 + 𝔣_{l/2}`: weight `n + l` on `{y = 1/2}` and `−l` on `{y = 0}`.
    pub fn from_function(n: &BigInt, l: u8, g: &Arc<FGAbelianGroup>) -> Self {
        let l = BigInt::from(l);
        let comps = vec![
            YComponent { level: YLevel::Half, weight: n + &l, nu: g.identity() },
            YComponent { level: YLevel::Zero, weight: -l, nu: g.identity() },
        ];
        Self::new(comps).expect("identity is 2-torsion")
    }

    pub fn components(&self) -> &[YComponent] {
        &self.components
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Brane {
    Fiber(FiberBrane),
    Section(SectionBrane),
    LiftX(LiftXBrane),
    LiftY(LiftYBrane),
}

impl From<FiberBrane> for Brane {
    fn from(b: FiberBrane) -> Self {
        Brane::Fiber(b)
    }
}

impl From<SectionBrane> for Brane {
    fn from(b: SectionBrane) -> Self {
        Brane::Section(b)
    }
}

impl From<LiftXBrane> for Brane {
    fn from(b: LiftXBrane) -> Self {
        Brane::LiftX(b)
    }
}

impl From<LiftYBrane> for Brane {
    fn from(b: LiftYBrane) -> Self {
        Brane::LiftY(b)
    }
}

pub(crate) fn two_torsion(g: &GroupElement) -> Result<(), CobError> {
    if g.is_killed_by(2) {
        Ok(())
    } else {
        Err(CobError::NotTwoTorsion(g.to_string()))
    }
}

/// An integer combination of branes, kept merged and without zero coefficients.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct FormalSum {
    terms: BTreeMap<Brane, BigInt>,
}

impl FormalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(b: impl Into<Brane>) -> Self {
        Self::from_terms([(b.into(), BigInt::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Brane, BigInt)>) -> Self {
        let mut s = Self::zero();
        for (b, k) in terms {
            s.push(b, k);
        }
        s
    }

    /// Adds `k·b`. Lifts without sheets are the empty Lagrangian and are dropped.
    pub fn push(&mut self, b: impl Into<Brane>, k: BigInt) {
        let b = b.into();
        let empty = match &b {
            Brane::LiftX(l) => l.copies().is_empty(),
            Brane::LiftY(l) => l.components().is_empty(),
            _ => false,
        };
        if empty {
            return;
        }
        let entry = self.terms.entry(b.clone()).or_insert_with(BigInt::zero);
        *entry += k;
        if entry.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Brane, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(b, c)| (b.clone(), c * k)))
    }
}

impl Add for &FormalSum {
    type Output = FormalSum;
    fn add(self, rhs: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (b, k) in &rhs.terms {
            out.push(b.clone(), k.clone());
        }
        out
    }
}

impl Neg for &FormalSum {
    type Output = FormalSum;
    fn neg(self) -> FormalSum {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &FormalSum {
    type Output = FormalSum;
    fn sub(self, rhs: &FormalSum) -> FormalSum {
        self + &-rhs
    }
}
