use num_traits::{Signed, Zero};

use crate::abelian::{int, rat, CircleValue, Rational};

use super::klein::{KleinFamily, TropicalKlein, Vec2};
use super::TropicalError;

/// Global tropical 1-forms and the period of the generating loop.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlbaneseData {
    /// Primitive invariant integral covectors, in the input coordinates of the bottle.
    pub form_basis: Vec<Vec2>,
    /// `∫` of the form over the loop traced by the glide.
    pub period: Rational,
}

/// The invariant integral covector `dx/a` in standard coordinates, where `(a, 0)` generates
/// the affine structure on the x-axis.
fn standard_form(k: &TropicalKlein) -> Result<Vec2, TropicalError> {
    if k.family() != KleinFamily::K1 {
        return Err(TropicalError::UnsupportedFamily);
    }
    let l1 = k.lattice().basis().column(0);
    debug_assert!(l1[1].is_zero() && l1[0].is_positive());
    Ok([int(1) / &l1[0], int(0)])
}

pub fn albanese_data(k: &TropicalKlein) -> Result<AlbaneseData, TropicalError> {
    let alpha = standard_form(k)?;
    let t = &k.to_standard().0;
    let form = [&alpha[0] * &t[0][0] + &alpha[1] * &t[1][0], &alpha[0] * &t[0][1] + &alpha[1] * &t[1][1]];
    let period = &alpha[0] * rat(1, 2);
    Ok(AlbaneseData { form_basis: vec![form], period })
}

/// The Albanese image of a degree-zero 0-cycle `Σ sᵢ pᵢ` (points in the input coordinates of
/// `k`), rescaled by the period so it lands in `ℚ/ℤ`.
pub fn alb_zero_cycle(points: &[(i64, Vec2)], k: &TropicalKlein) -> Result<CircleValue, TropicalError> {
    let degree: i64 = points.iter().map(|(s, _)| s).sum();
    if degree != 0 {
        return Err(TropicalError::NonzeroDegree(degree));
    }
    let data = albanese_data(k)?;
    let form = &data.form_basis[0];
    let mut total = int(0);
    for (s, p) in points {
        total += int(*s) * (&form[0] * &p[0] + &form[1] * &p[1]);
    }
    Ok(CircleValue::new(total / data.period))
}
