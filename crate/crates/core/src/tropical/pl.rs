use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::abelian::{frac, int, rat, CircleValue, Rational};

/// A class in `H¹(Aff) ≅ ℤ² ⊕ ℤ₂ ⊕ S¹` of tropical sections: `(m, n, [l], θ)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SectionClass {
    pub m: BigInt,
    pub n: BigInt,
    l: u8,
    pub theta: CircleValue,
}

impl SectionClass {
    pub fn new(m: BigInt, n: BigInt, l: &BigInt, theta: CircleValue) -> Self {
        let l = if l.is_odd() { 1 } else { 0 };
        SectionClass { m, n, l, theta }
    }

    pub fn from_i64(m: i64, n: i64, l: i64, theta: Rational) -> Self {
        Self::new(BigInt::from(m), BigInt::from(n), &BigInt::from(l), CircleValue::new(theta))
    }

    pub fn zero() -> Self {
        Self::from_i64(0, 0, 0, int(0))
    }

    pub fn l(&self) -> u8 {
        self.l
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero() && self.n.is_zero() && self.l == 0 && self.theta.is_zero()
    }
}

/// Coefficients of `a·x² + b·y² + c·y + d·x`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadraticSection {
    pub xx: Rational,
    pub yy: Rational,
    pub y: Rational,
    pub x: Rational,
}

/// The quadratic representative `m/2·x² + n/2·y² + l/2·y + θx`.
pub fn section_representative(s: &SectionClass) -> QuadraticSection {
    let half = rat(1, 2);
    QuadraticSection {
        xx: Rational::from_integer(s.m.clone()) * &half,
        yy: Rational::from_integer(s.n.clone()) * &half,
        y: int(i64::from(s.l)) * &half,
        x: s.theta.value().clone(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Axis {
    X,
    Y,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
        })
    }
}

/// A continuous piecewise-linear function `ℝ → ℝ` with integer slopes, normalized by
/// `f(0) = 0`, whose derivative satisfies `f'(t + 1) = f'(t) + step`.
///
/// `pieces[i] = (start, slope)` lists the slope on `[start, next start)` inside `[0, 1)`;
/// the first start is `0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PLFunction1D {
    axis: Axis,
    pieces: Vec<(Rational, BigInt)>,
    step: BigInt,
}

impl PLFunction1D {
    pub fn constant(axis: Axis) -> Self {
        PLFunction1D { axis, pieces: vec![(int(0), BigInt::zero())], step: BigInt::zero() }
    }

    /// `m·𝔣`, where `𝔣' = 0` on `(−1/2, 1/2)` and `𝔣'` grows by one each period.
    pub fn quadratic(axis: Axis, m: &BigInt) -> Self {
        if m.is_zero() {
            return Self::constant(axis);
        }
        PLFunction1D { axis, pieces: vec![(int(0), BigInt::zero()), (rat(1, 2), m.clone())], step: m.clone() }
    }

    /// `𝔣_φ`: periodic slopes, `0` on `(0, 1 − φ)` and `1` on `(1 − φ, 1)`, so that
    /// `𝔣_φ(t + 1) = 𝔣_φ(t) + φ` for `φ ∈ [0, 1)`.
    pub fn linear(axis: Axis, phi: &CircleValue) -> Self {
        if phi.is_zero() {
            return Self::constant(axis);
        }
        let cut = int(1) - phi.value();
        PLFunction1D { axis, pieces: vec![(int(0), BigInt::zero()), (cut, BigInt::one())], step: BigInt::zero() }
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn step(&self) -> &BigInt {
        &self.step
    }

    pub fn pieces(&self) -> &[(Rational, BigInt)] {
        &self.pieces
    }

    /// Positions in `[0, 1)` where the slope jumps.
    pub fn breakpoints(&self) -> Vec<Rational> {
        self.jumps().into_iter().map(|(p, _)| p).collect()
    }

    /// Slopes on consecutive pieces of `[0, 1)`.
    pub fn slopes(&self) -> Vec<BigInt> {
        self.pieces.iter().map(|(_, s)| s.clone()).collect()
    }

    /// `f(1) − f(0)`.
    pub fn drift(&self) -> Rational {
        let mut total = int(0);
        for (i, (start, slope)) in self.pieces.iter().enumerate() {
            let end = self.pieces.get(i + 1).map_or(int(1), |p| p.0.clone());
            total += (end - start) * Rational::from_integer(slope.clone());
        }
        total
    }

    fn jumps(&self) -> Vec<(Rational, BigInt)> {
        let last = &self.pieces.last().expect("nonempty").1;
        let mut out = Vec::new();
        let at_zero = &self.pieces[0].1 - (last - &self.step);
        if !at_zero.is_zero() {
            out.push((int(0), at_zero));
        }
        for w in self.pieces.windows(2) {
            let j = &w[1].1 - &w[0].1;
            if !j.is_zero() {
                out.push((w[1].0.clone(), j));
            }
        }
        out
    }

    /// Value of the primitive on `[0, t]` for `t ∈ [0, 1]`.
    fn partial(&self, t: &Rational) -> Rational {
        let mut total = int(0);
        for (i, (start, slope)) in self.pieces.iter().enumerate() {
            if start >= t {
                break;
            }
            let end = self.pieces.get(i + 1).map_or(int(1), |p| p.0.clone());
            let end = if &end < t { end } else { t.clone() };
            total += (end - start) * Rational::from_integer(slope.clone());
        }
        total
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let k = x.floor();
        let t = x - &k;
        let k_int = k.to_integer();
        let step = Rational::from_integer(self.step.clone());
        // f(k) = k·drift + step·k(k−1)/2 and the slopes on [k, k+1) are shifted by k·step.
        let base = &k * self.drift() + &step * &k * (&k - int(1)) / int(2);
        base + self.partial(&t) + Rational::from_integer(k_int) * step * t
    }

    /// Pointwise sum; both functions must live on the same axis.
    pub fn add(&self, other: &PLFunction1D) -> PLFunction1D {
        assert_eq!(self.axis, other.axis, "adding functions of different variables");
        let mut starts: Vec<Rational> = self.pieces.iter().chain(&other.pieces).map(|p| p.0.clone()).collect();
        starts.sort();
        starts.dedup();
        let slope_at = |f: &PLFunction1D, s: &Rational| -> BigInt {
            f.pieces.iter().rev().find(|p| &p.0 <= s).expect("first start is 0").1.clone()
        };
        let mut pieces: Vec<(Rational, BigInt)> = Vec::new();
        for s in starts {
            let slope = slope_at(self, &s) + slope_at(other, &s);
            if pieces.last().map_or(true, |p| p.1 != slope) {
                pieces.push((s, slope));
            }
        }
        PLFunction1D { axis: self.axis, pieces, step: &self.step + &other.step }
    }

    fn kinks_near(&self, radius: i64) -> Vec<Rational> {
        let mut pts = Vec::new();
        for k in -radius..=radius {
            for (p, _) in &self.pieces {
                pts.push(p + int(k));
            }
        }
        pts
    }

    /// Checks `f(t) − f(t + 1) = h(t) − h(t + 1)` for `h(t) = a·t² + b·t`, exactly.
    pub fn satisfies_translation_identity(&self, a: &Rational, b: &Rational) -> bool {
        let h = |t: &Rational| a * t * t + b * t;
        // Both sides are piecewise linear with kinks among the pieces' starts, so agreement at
        // every kink of a window and its ends pins them down on it; the slope condition
        // `f'(t+1) = f'(t) + step` then carries the identity to all of ℝ.
        let two_a = a * int(2);
        if Rational::from_integer(self.step.clone()) != two_a {
            return false;
        }
        self.kinks_near(3).iter().all(|t| {
            let t1 = t + int(1);
            self.eval(t) - self.eval(&t1) == h(t) - h(&t1)
        })
    }

    /// Checks `f(t) − f(−t) = h(t) − h(−t)` for `h(t) = a·t² + b·t`, exactly.
    pub fn satisfies_reflection_identity(&self, a: &Rational, b: &Rational) -> bool {
        let h = |t: &Rational| a * t * t + b * t;
        let mut pts = self.kinks_near(3);
        pts.extend(self.kinks_near(3).into_iter().map(|t| -t));
        pts.iter().all(|t| {
            let nt = -t;
            self.eval(t) - self.eval(&nt) == h(t) - h(&nt)
        })
    }
}

/// Piecewise-linear approximations of the section `(m, n, l, θ)`:
/// `m·𝔣 + 𝔣_θ` in `x` and `n·𝔣 + 𝔣_{l/2}` in `y`.
pub fn pl_approximation(s: &SectionClass) -> (PLFunction1D, PLFunction1D) {
    let x = PLFunction1D::quadratic(Axis::X, &s.m).add(&PLFunction1D::linear(Axis::X, &s.theta));
    let y = PLFunction1D::quadratic(Axis::Y, &s.n).add(&PLFunction1D::linear(Axis::Y, &CircleValue::new(rat(i64::from(s.l()), 2))));
    (x, y)
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HypersurfaceComponent {
    pub axis: Axis,
    pub position: CircleValue,
    pub weight: BigInt,
}

/// A weighted union of circles `{x = a}` and `{y = b}`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct TropicalHypersurface {
    pub components: Vec<HypersurfaceComponent>,
}

impl TropicalHypersurface {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn total_weight(&self, axis: Axis) -> BigInt {
        self.components.iter().filter(|c| c.axis == axis).map(|c| c.weight.clone()).sum()
    }
}

/// The corner locus: one component per breakpoint, weighted by the slope jump.
pub fn bend_locus(f: &PLFunction1D) -> TropicalHypersurface {
    let components = f
        .jumps()
        .into_iter()
        .map(|(p, w)| HypersurfaceComponent { axis: f.axis, position: CircleValue::new(frac(&p)), weight: w })
        .collect();
    TropicalHypersurface { components }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn thetas() -> Vec<Rational> {
        vec![int(0), rat(1, 4), rat(1, 3), rat(1, 2)]
    }

    #[test]
    fn representatives() {
        let q = section_representative(&SectionClass::from_i64(1, 0, 0, int(0)));
        assert_eq!((q.xx, q.yy, q.y, q.x), (rat(1, 2), int(0), int(0), int(0)));
        let q = section_representative(&SectionClass::from_i64(2, 3, 1, rat(1, 4)));
        assert_eq!((q.xx, q.yy, q.y, q.x), (int(1), rat(3, 2), rat(1, 2), rat(1, 4)));
        let q = section_representative(&SectionClass::zero());
        assert_eq!((q.xx, q.yy, q.y, q.x), (int(0), int(0), int(0), int(0)));
    }

    #[test]
    fn the_basic_functions() {
        let f = PLFunction1D::quadratic(Axis::X, &BigInt::one());
        // slope 0 on (−1/2, 1/2), 1 on (1/2, 3/2), −1 on (−3/2, −1/2)
        assert_eq!(f.eval(&rat(1, 2)), int(0));
        assert_eq!(f.eval(&rat(-1, 2)), int(0));
        assert_eq!(f.eval(&rat(3, 2)), int(1));
        assert_eq!(f.eval(&rat(-3, 2)), int(1));
        assert_eq!(f.eval(&int(2)), int(2));
        let g = PLFunction1D::linear(Axis::X, &CircleValue::from_ratio(1, 3));
        assert_eq!(g.drift(), rat(1, 3));
        assert_eq!(g.eval(&rat(7, 3)), rat(2, 3));
        let (x, y) = pl_approximation(&SectionClass::zero());
        assert!(bend_locus(&x).is_empty() && bend_locus(&y).is_empty());
    }

    #[test]
    fn bend_loci() {
        let f = PLFunction1D::quadratic(Axis::X, &BigInt::one());
        let b = bend_locus(&f);
        assert_eq!(b.components.len(), 1);
        assert_eq!(b.components[0].position, CircleValue::from_ratio(1, 2));
        assert_eq!(b.components[0].weight, BigInt::one());
        let b = bend_locus(&PLFunction1D::quadratic(Axis::X, &BigInt::from(-3)));
        assert_eq!(b.components[0].weight, BigInt::from(-3));
        // 𝔣_{1/2} in y bends up at 1/2 and down at 0.
        let (_, y) = pl_approximation(&SectionClass::from_i64(0, 2, 1, int(0)));
        let b = bend_locus(&y);
        let at = |p: CircleValue| b.components.iter().find(|c| c.position == p).map(|c| c.weight.clone());
        assert_eq!(at(CircleValue::from_ratio(1, 2)), Some(BigInt::from(3)));
        assert_eq!(at(CircleValue::zero()), Some(BigInt::from(-1)));
    }

    #[test]
    fn periodicity_identities_on_the_grid() {
        for m in -5..=5 {
            for theta in thetas() {
                let s = SectionClass::from_i64(m, m, 1, theta.clone());
                let (x, y) = pl_approximation(&s);
                let a = rat(m, 2);
                assert!(x.satisfies_translation_identity(&a, &theta), "x m={m} θ={theta}");
                assert!(y.satisfies_translation_identity(&a, &rat(1, 2)), "y m={m}");
                assert!(y.satisfies_reflection_identity(&a, &rat(1, 2)), "y m={m}");
                let (_, y0) = pl_approximation(&SectionClass::from_i64(m, m, 0, theta.clone()));
                assert!(y0.satisfies_reflection_identity(&a, &int(0)));
                // The weights of the corner locus add up to the slope growth per period.
                assert_eq!(bend_locus(&x).total_weight(Axis::X), BigInt::from(m));
                assert_eq!(bend_locus(&y).total_weight(Axis::Y), BigInt::from(m));
            }
        }
    }

    #[test]
    fn identity_checks_reject_wrong_data() {
        let (x, _) = pl_approximation(&SectionClass::from_i64(2, 0, 0, rat(1, 3)));
        assert!(!x.satisfies_translation_identity(&int(1), &rat(1, 4)));
        assert!(!x.satisfies_translation_identity(&rat(1, 2), &rat(1, 3)));
    }
}
