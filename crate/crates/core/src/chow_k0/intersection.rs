use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::classes::{cross_pair_is_torsion, DivisorClass, EllipticPoint, ZeroCycle, CROSS_PAIRS};
use super::ChowError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TableMode {
    /// Unconfigured products stay as formal symbols.
    Symbolic,
    /// Unconfigured products are an error.
    PinnedOnly,
}

/// The intersection pairing on `CH¹` with values in `CH₀`.
///
/// Fixed entries: `D₁² = D₃² = D₄² = (D₅ᵖ)² = 0` and `D₂² = 2P`. Products of `D₅ᵖ` with `D₁`,
/// `D₃`, `D₄` vanish: `D₁` and `D₅ᵖ` are differences of fibers of the same fibration, and a
/// homomorphism from the divisible group `E` to 2-torsion is zero. `D₂·D₅ᵖ` is the formal
/// homomorphism `τ`. The six cross products of `D₁..D₄` may be configured.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntersectionTable {
    half_class: EllipticPoint,
    mode: TableMode,
    products: BTreeMap<usize, ZeroCycle>,
}

pub(crate) fn pair_name(i: usize, j: usize) -> String {
    format!("D{}.D{}", i + 1, j + 1)
}

impl IntersectionTable {
    /// A table with half-class `P`; requires `4P = 0` so that `D₂² = 2P` is 2-torsion.
    pub fn new(half_class: EllipticPoint, mode: TableMode) -> Result<Self, ChowError> {
        if !half_class.scale(&BigInt::from(4)).is_zero() {
            return Err(ChowError::HalfClassOrder(half_class.to_string()));
        }
        Ok(IntersectionTable { half_class, mode, products: BTreeMap::new() })
    }

    pub fn symbolic(half_class: EllipticPoint) -> Result<Self, ChowError> {
        Self::new(half_class, TableMode::Symbolic)
    }

    pub fn pinned_only(half_class: EllipticPoint) -> Result<Self, ChowError> {
        Self::new(half_class, TableMode::PinnedOnly)
    }

    /// Sets `DᵢDⱼ` (0-based, `i ≠ j < 4`). Products with `D₃` or `D₄` must be 2-torsion.
    pub fn with_product(mut self, i: usize, j: usize, value: ZeroCycle) -> Result<Self, ChowError> {
        let key = (i.min(j), i.max(j));
        let k = CROSS_PAIRS.iter().position(|&p| p == key).ok_or_else(|| ChowError::InvalidPair(pair_name(i, j)))?;
        if !value.is_explicit() {
            return Err(ChowError::InvalidPair(pair_name(i, j)));
        }
        if cross_pair_is_torsion(k) && !value.is_two_torsion() {
            return Err(ChowError::TorsionNotRespected(pair_name(key.0, key.1)));
        }
        self.products.insert(k, value);
        Ok(self)
    }

    pub fn half_class(&self) -> &EllipticPoint {
        &self.half_class
    }

    pub fn mode(&self) -> TableMode {
        self.mode
    }

    /// `D₂²`.
    pub fn d2_squared(&self) -> ZeroCycle {
        ZeroCycle::new(BigInt::zero(), self.half_class.scale(&BigInt::from(2)))
    }

    fn cross(&self, k: usize, coeff: &BigInt) -> Result<ZeroCycle, ChowError> {
        let group = self.half_class.group();
        let coeff = if cross_pair_is_torsion(k) { coeff.mod_floor(&BigInt::from(2)) } else { coeff.clone() };
        if coeff.is_zero() {
            return Ok(ZeroCycle::zero(group));
        }
        match (self.products.get(&k), self.mode) {
            (Some(v), _) => Ok(v.scale(&coeff)),
            (None, TableMode::Symbolic) => Ok(ZeroCycle::symbol(k, &coeff, group)),
            (None, TableMode::PinnedOnly) => {
                let (i, j) = CROSS_PAIRS[k];
                Err(ChowError::MissingTableEntry(pair_name(i, j)))
            }
        }
    }

    /// The bilinear extension of the table.
    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<ZeroCycle, ChowError> {
        let x = a.discrete();
        let y = b.discrete();
        let mut out = self.d2_squared().scale(&(&x[1] * &y[1]));
        for (k, &(i, j)) in CROSS_PAIRS.iter().enumerate() {
            let coeff = &x[i] * &y[j] + &x[j] * &y[i];
            out = &out + &self.cross(k, &coeff)?;
        }
        let q = &b.pic0.scale(&x[1]) + &a.pic0.scale(&y[1]);
        if !q.is_zero() {
            if self.mode == TableMode::PinnedOnly {
                return Err(ChowError::MissingTableEntry(pair_name(1, 4)));
            }
            out = &out + &ZeroCycle::tau_of(&q);
        }
        Ok(out)
    }
}
