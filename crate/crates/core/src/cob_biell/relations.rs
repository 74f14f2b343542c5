//! Sums that vanish in the cobordism group.

use num_bigint::BigInt;

use crate::abelian::{rat, GroupElement, Rational};

use super::brane::{FiberBrane, FormalSum, SectionBrane};
use super::invariants::{surgery_decompose, surgery_decompose_with};
use super::CobError;

/// A section minus its surgery decomposition.
pub fn section_relation(b: &SectionBrane) -> FormalSum {
    &FormalSum::single(b.clone()) - &surgery_decompose(b)
}

/// As [`section_relation`], with an explicit distribution of `ηZ` over the `x`-sheets.
pub fn section_relation_with(b: &SectionBrane, nus: &[GroupElement]) -> Result<FormalSum, CobError> {
    Ok(&FormalSum::single(b.clone()) - &surgery_decompose_with(b, nus)?)
}

/// `(F_p, λx ⊗ λy) − (F_{ι(p)}, λx ⊗ λy⁻¹)`: the same fiber seen from both sides of the glide.
pub fn fiber_glide(x: Rational, y: Rational, lx: &GroupElement, ly: &GroupElement) -> FormalSum {
    let here = FiberBrane::new(x.clone(), y.clone(), lx.clone(), ly.clone());
    let there = FiberBrane::new(x + rat(1, 2), -y, lx.clone(), -ly);
    &FormalSum::single(here) - &FormalSum::single(there)
}

/// `(F_p, λx ⊗ λy) − (F_{pr(p)}, λx)`, sliding a fiber onto `{y = 1/2}`.
pub fn fiber_slide(x: Rational, y: Rational, lx: &GroupElement, ly: &GroupElement) -> FormalSum {
    let here = FiberBrane::new(x.clone(), y, lx.clone(), ly.clone());
    let there = FiberBrane::new(x, rat(1, 2), lx.clone(), lx.group().identity());
    &FormalSum::single(here) - &FormalSum::single(there)
}

/// `2B − (3B + B[1])`, where `B[1]` is `B` with the grading parity flipped.
pub fn grading_shift(b: &SectionBrane) -> Result<FormalSum, CobError> {
    let flipped = SectionBrane::new(b.class().clone(), -b.parity(), b.eta_z().clone(), b.eta2().clone())?;
    let two = FormalSum::single(b.clone()).scale(&BigInt::from(2));
    let three = FormalSum::single(b.clone()).scale(&BigInt::from(3));
    Ok(&(&two - &three) - &FormalSum::single(flipped))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::abelian::{int, FGAbelianGroup};
    use crate::cob_biell::normal_form;
    use crate::tropical::SectionClass;

    #[test]
    fn relations_vanish_for_mixed_coefficients() {
        let g = Arc::new(FGAbelianGroup::from_i64(1, &[2, 4]).unwrap());
        let gens: Vec<_> = (0..g.ngens()).map(|i| g.generator(i)).chain([g.identity()]).collect();
        let twos: Vec<_> = g.two_torsion_elements();
        for m in -2..=2 {
            for n in -2..=2 {
                for l in 0..2 {
                    for t in [int(0), rat(1, 4), rat(1, 2)] {
                        for eta in &gens {
                            for eta2 in &twos {
                                let s = SectionBrane::new(SectionClass::from_i64(m, n, l, t.clone()), 1, eta.clone(), eta2.clone()).unwrap();
                                assert!(normal_form(&section_relation(&s), &g).is_zero());
                                assert!(normal_form(&grading_shift(&s).unwrap(), &g).is_zero());
                            }
                        }
                    }
                }
            }
        }
        for lx in &gens {
            for ly in &gens {
                let (x, y) = (rat(1, 3), rat(1, 5));
                assert!(normal_form(&fiber_glide(x.clone(), y.clone(), lx, ly).scale(&2.into()), &g).is_zero());
                assert!(normal_form(&fiber_slide(x.clone(), y.clone(), lx, ly).scale(&4.into()), &g).is_zero());
                assert!(normal_form(&fiber_slide(x, y, lx, ly), &g).is_zero());
            }
        }
    }
}
