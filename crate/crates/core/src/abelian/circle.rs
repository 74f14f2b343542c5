use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// Prints a rational as `p` or `p/q`.
pub fn rational_string(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `-p`, `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    (!d.is_zero()).then(|| Rational::new(n, d))
}

/// An element of `ℚ/ℤ`, stored as its representative in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CircleValue(Rational);

impl CircleValue {
    pub fn new(x: Rational) -> Self {
        CircleValue(frac(&x))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::new(rat(p, q))
    }

    pub fn zero() -> Self {
        CircleValue(Rational::zero())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(&self.0 * Rational::from_integer(k.clone()))
    }

    /// Order in `ℚ/ℤ`, i.e. the reduced denominator.
    pub fn order(&self) -> BigInt {
        if self.0.is_zero() {
            BigInt::one()
        } else {
            self.0.denom().clone()
        }
    }
}

impl Add for &CircleValue {
    type Output = CircleValue;
    fn add(self, rhs: &CircleValue) -> CircleValue {
        CircleValue::new(&self.0 + &rhs.0)
    }
}

impl Sub for &CircleValue {
    type Output = CircleValue;
    fn sub(self, rhs: &CircleValue) -> CircleValue {
        CircleValue::new(&self.0 - &rhs.0)
    }
}

impl Neg for &CircleValue {
    type Output = CircleValue;
    fn neg(self) -> CircleValue {
        CircleValue::new(-&self.0)
    }
}

impl fmt::Display for CircleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rational_string(&self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_into_unit_interval() {
        assert_eq!(CircleValue::new(rat(-1, 4)), CircleValue::from_ratio(3, 4));
        assert_eq!(CircleValue::new(rat(7, 3)).value(), &rat(1, 3));
        let a = CircleValue::from_ratio(2, 3);
        assert_eq!(&a + &a, CircleValue::from_ratio(1, 3));
        assert_eq!(a.scale(&BigInt::from(3)), CircleValue::zero());
        assert_eq!(a.order(), BigInt::from(3));
    }

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "-3", "1/2", "-7/9"] {
            assert_eq!(rational_string(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }
}
