use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::abelian::{CircleValue, FGAbelianGroup, GroupElement};

/// A point of the elliptic curve, modeled as `ℚ/ℤ ⊕ G`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EllipticPoint {
    pub circle: CircleValue,
    pub g: GroupElement,
}

impl EllipticPoint {
    pub fn new(circle: CircleValue, g: GroupElement) -> Self {
        EllipticPoint { circle, g }
    }

    pub fn zero(group: &Arc<FGAbelianGroup>) -> Self {
        EllipticPoint { circle: CircleValue::zero(), g: group.identity() }
    }

    pub fn is_zero(&self) -> bool {
        self.circle.is_zero() && self.g.is_identity()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        EllipticPoint { circle: self.circle.scale(k), g: self.g.scale(k) }
    }

    pub fn group(&self) -> &Arc<FGAbelianGroup> {
        self.g.group()
    }
}

impl Add for &EllipticPoint {
    type Output = EllipticPoint;
    fn add(self, o: &EllipticPoint) -> EllipticPoint {
        EllipticPoint { circle: &self.circle + &o.circle, g: &self.g + &o.g }
    }
}

impl Neg for &EllipticPoint {
    type Output = EllipticPoint;
    fn neg(self) -> EllipticPoint {
        EllipticPoint { circle: -&self.circle, g: -&self.g }
    }
}

impl Sub for &EllipticPoint {
    type Output = EllipticPoint;
    fn sub(self, o: &EllipticPoint) -> EllipticPoint {
        self + &-o
    }
}

impl fmt::Display for EllipticPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.circle, self.g)
    }
}

fn mod2(x: &BigInt) -> u8 {
    u8::from(x.is_odd())
}

/// `CH¹ = ℤD₁ ⊕ ℤD₂ ⊕ ℤ₂D₃ ⊕ ℤ₂D₄ ⊕ Pic⁰`, the last summand written `D₅ᵖ`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DivisorClass {
    pub d1: BigInt,
    pub d2: BigInt,
    d3: u8,
    d4: u8,
    pub pic0: EllipticPoint,
}

impl DivisorClass {
    pub fn new(d1: BigInt, d2: BigInt, d3: &BigInt, d4: &BigInt, pic0: EllipticPoint) -> Self {
        DivisorClass { d1, d2, d3: mod2(d3), d4: mod2(d4), pic0 }
    }

    pub fn from_i64(d1: i64, d2: i64, d3: i64, d4: i64, pic0: EllipticPoint) -> Self {
        Self::new(d1.into(), d2.into(), &d3.into(), &d4.into(), pic0)
    }

    pub fn zero(group: &Arc<FGAbelianGroup>) -> Self {
        Self::from_i64(0, 0, 0, 0, EllipticPoint::zero(group))
    }

    pub fn d3(&self) -> u8 {
        self.d3
    }

    pub fn d4(&self) -> u8 {
        self.d4
    }

    pub fn is_zero(&self) -> bool {
        self.d1.is_zero() && self.d2.is_zero() && self.d3 == 0 && self.d4 == 0 && self.pic0.is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(k * &self.d1, k * &self.d2, &(k * self.d3), &(k * self.d4), self.pic0.scale(k))
    }

    /// Coefficients on `D₁..D₄`.
    pub fn discrete(&self) -> [BigInt; 4] {
        [self.d1.clone(), self.d2.clone(), self.d3.into(), self.d4.into()]
    }

    /// The component in summand `i` (0-based: `D₁, D₂, D₃, D₄, Pic⁰`).
    pub fn block(&self, i: usize) -> DivisorClass {
        let z = EllipticPoint::zero(self.pic0.group());
        let zero = BigInt::zero();
        match i {
            0 => Self::new(self.d1.clone(), zero.clone(), &zero, &zero, z),
            1 => Self::new(zero.clone(), self.d2.clone(), &zero, &zero, z),
            2 => Self::new(zero.clone(), zero.clone(), &self.d3.into(), &zero, z),
            3 => Self::new(zero.clone(), zero.clone(), &zero, &self.d4.into(), z),
            4 => Self::new(zero.clone(), zero.clone(), &zero, &zero, self.pic0.clone()),
            _ => panic!("CH^1 has five summands"),
        }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: &DivisorClass) -> DivisorClass {
        DivisorClass::new(
            &self.d1 + &o.d1,
            &self.d2 + &o.d2,
            &BigInt::from(self.d3 + o.d3),
            &BigInt::from(self.d4 + o.d4),
            &self.pic0 + &o.pic0,
        )
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: &DivisorClass) -> DivisorClass {
        self + &-o
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}D1 + {}D2 + {}D3 + {}D4 + D5{}", self.d1, self.d2, self.d3, self.d4, self.pic0)
    }
}

/// Unordered pairs among `D₁..D₄` whose product the literature leaves unstated.
pub const CROSS_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Whether the product of a cross pair is 2-torsion (one factor is `D₃` or `D₄`).
pub fn cross_pair_is_torsion(k: usize) -> bool {
    k != 0
}

/// A class in `CH₀ = ℤ ⊕ Alb`, plus formal symbols standing for products of divisors that
/// are not determined: `σᵢⱼ = DᵢDⱼ` for the cross pairs (2-torsion except `σ₁₂`), and
/// `τ(q) = D₂·D₅^q`, a homomorphism `E → CH₀` recorded by its accumulated argument.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ZeroCycle {
    pub degree: BigInt,
    pub alb: EllipticPoint,
    symbols: [BigInt; 6],
    pub tau: EllipticPoint,
}

impl ZeroCycle {
    pub fn new(degree: BigInt, alb: EllipticPoint) -> Self {
        let tau = EllipticPoint::zero(alb.group());
        ZeroCycle { degree, alb, symbols: Default::default(), tau }
    }

    pub fn zero(group: &Arc<FGAbelianGroup>) -> Self {
        Self::new(BigInt::zero(), EllipticPoint::zero(group))
    }

    /// The point `p₀ + a` of degree one.
    pub fn point(alb: EllipticPoint) -> Self {
        Self::new(BigInt::from(1), alb)
    }

    /// `k·σ` for the cross pair with index `pair` in [`CROSS_PAIRS`].
    pub fn symbol(pair: usize, k: &BigInt, group: &Arc<FGAbelianGroup>) -> Self {
        let mut z = Self::zero(group);
        z.symbols[pair] = k.clone();
        z.normalize();
        z
    }

    pub fn tau_of(q: &EllipticPoint) -> Self {
        let mut z = Self::zero(q.group());
        z.tau = q.clone();
        z
    }

    pub fn symbols(&self) -> &[BigInt; 6] {
        &self.symbols
    }

    pub fn is_zero(&self) -> bool {
        self.degree.is_zero() && self.alb.is_zero() && self.symbols.iter().all(Zero::is_zero) && self.tau.is_zero()
    }

    /// Free of formal symbols.
    pub fn is_explicit(&self) -> bool {
        self.symbols.iter().all(Zero::is_zero) && self.tau.is_zero()
    }

    /// Killed by 2 in `CH₀`.
    pub fn is_two_torsion(&self) -> bool {
        self.scale(&BigInt::from(2)).is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut z = ZeroCycle {
            degree: k * &self.degree,
            alb: self.alb.scale(k),
            symbols: self.symbols.clone().map(|s| s * k),
            tau: self.tau.scale(k),
        };
        z.normalize();
        z
    }

    fn normalize(&mut self) {
        for (k, s) in self.symbols.iter_mut().enumerate() {
            if cross_pair_is_torsion(k) {
                *s = s.mod_floor(&BigInt::from(2));
            }
        }
    }
}

impl Add for &ZeroCycle {
    type Output = ZeroCycle;
    fn add(self, o: &ZeroCycle) -> ZeroCycle {
        let mut symbols = self.symbols.clone();
        for (s, t) in symbols.iter_mut().zip(&o.symbols) {
            *s += t;
        }
        let mut z = ZeroCycle { degree: &self.degree + &o.degree, alb: &self.alb + &o.alb, symbols, tau: &self.tau + &o.tau };
        z.normalize();
        z
    }
}

impl Neg for &ZeroCycle {
    type Output = ZeroCycle;
    fn neg(self) -> ZeroCycle {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &ZeroCycle {
    type Output = ZeroCycle;
    fn sub(self, o: &ZeroCycle) -> ZeroCycle {
        self + &-o
    }
}

impl fmt::Display for ZeroCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}pt + A{}", self.degree, self.alb)?;
        for (k, s) in self.symbols.iter().enumerate() {
            if !s.is_zero() {
                let (i, j) = CROSS_PAIRS[k];
                write!(f, " + {}D{}.D{}", s, i + 1, j + 1)?;
            }
        }
        if !self.tau.is_zero() {
            write!(f, " + D2.D5{}", self.tau)?;
        }
        Ok(())
    }
}

/// An element of `CH*(Y) = CH² ⊕ CH¹ ⊕ CH₀`, indexed by codimension.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChowClass {
    pub fundamental: BigInt,
    pub divisor: DivisorClass,
    pub zero_cycle: ZeroCycle,
}

impl ChowClass {
    pub fn zero(group: &Arc<FGAbelianGroup>) -> Self {
        ChowClass { fundamental: BigInt::zero(), divisor: DivisorClass::zero(group), zero_cycle: ZeroCycle::zero(group) }
    }

    pub fn is_zero(&self) -> bool {
        self.fundamental.is_zero() && self.divisor.is_zero() && self.zero_cycle.is_zero()
    }
}

impl Add for &ChowClass {
    type Output = ChowClass;
    fn add(self, o: &ChowClass) -> ChowClass {
        ChowClass {
            fundamental: &self.fundamental + &o.fundamental,
            divisor: &self.divisor + &o.divisor,
            zero_cycle: &self.zero_cycle + &o.zero_cycle,
        }
    }
}

impl Neg for &ChowClass {
    type Output = ChowClass;
    fn neg(self) -> ChowClass {
        ChowClass { fundamental: -&self.fundamental, divisor: -&self.divisor, zero_cycle: -&self.zero_cycle }
    }
}

impl Sub for &ChowClass {
    type Output = ChowClass;
    fn sub(self, o: &ChowClass) -> ChowClass {
        self + &-o
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[Y] + {} + {}", self.fundamental, self.divisor, self.zero_cycle)
    }
}

/// Coordinates `(n₁, …, n₄, n₅, n₆, p, p′) ∈ ℤ⁴ ⊕ ℤ₂² ⊕ E²` on `K₀`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct K0Class {
    pub n: [BigInt; 4],
    n5: u8,
    n6: u8,
    pub p: EllipticPoint,
    pub p_prime: EllipticPoint,
}

impl K0Class {
    pub fn new(n: [BigInt; 4], n5: &BigInt, n6: &BigInt, p: EllipticPoint, p_prime: EllipticPoint) -> Self {
        K0Class { n, n5: mod2(n5), n6: mod2(n6), p, p_prime }
    }

    pub fn from_i64(n: [i64; 6], p: EllipticPoint, p_prime: EllipticPoint) -> Self {
        Self::new([n[0].into(), n[1].into(), n[2].into(), n[3].into()], &n[4].into(), &n[5].into(), p, p_prime)
    }

    pub fn zero(group: &Arc<FGAbelianGroup>) -> Self {
        Self::from_i64([0; 6], EllipticPoint::zero(group), EllipticPoint::zero(group))
    }

    pub fn n5(&self) -> u8 {
        self.n5
    }

    pub fn n6(&self) -> u8 {
        self.n6
    }

    pub fn is_zero(&self) -> bool {
        self.n.iter().all(Zero::is_zero) && self.n5 == 0 && self.n6 == 0 && self.p.is_zero() && self.p_prime.is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(
            self.n.clone().map(|x| x * k),
            &(k * self.n5),
            &(k * self.n6),
            self.p.scale(k),
            self.p_prime.scale(k),
        )
    }
}

impl Add for &K0Class {
    type Output = K0Class;
    fn add(self, o: &K0Class) -> K0Class {
        let n = [&self.n[0] + &o.n[0], &self.n[1] + &o.n[1], &self.n[2] + &o.n[2], &self.n[3] + &o.n[3]];
        K0Class::new(n, &BigInt::from(self.n5 + o.n5), &BigInt::from(self.n6 + o.n6), &self.p + &o.p, &self.p_prime + &o.p_prime)
    }
}

impl Neg for &K0Class {
    type Output = K0Class;
    fn neg(self) -> K0Class {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &K0Class {
    type Output = K0Class;
    fn sub(self, o: &K0Class) -> K0Class {
        self + &-o
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {}, {}, {}, {})",
            self.n[0], self.n[1], self.n[2], self.n[3], self.n5, self.n6, self.p, self.p_prime
        )
    }
}
