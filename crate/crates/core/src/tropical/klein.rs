use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::abelian::{frac, int, rat, Rational};

use super::TropicalError;

pub type Vec2 = [Rational; 2];

/// A 2×2 rational matrix, stored by rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat2(pub [[Rational; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([[int(1), int(0)], [int(0), int(1)]])
    }

    pub fn diag(a: Rational, b: Rational) -> Self {
        Mat2([[a, int(0)], [int(0), b]])
    }

    pub fn from_i64(rows: [[i64; 2]; 2]) -> Self {
        Mat2([[int(rows[0][0]), int(rows[0][1])], [int(rows[1][0]), int(rows[1][1])]])
    }

    pub fn from_columns(a: &Vec2, b: &Vec2) -> Self {
        Mat2([[a[0].clone(), b[0].clone()], [a[1].clone(), b[1].clone()]])
    }

    pub fn column(&self, j: usize) -> Vec2 {
        [self.0[0][j].clone(), self.0[1][j].clone()]
    }

    pub fn det(&self) -> Rational {
        &self.0[0][0] * &self.0[1][1] - &self.0[0][1] * &self.0[1][0]
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let m = &self.0;
        Some(Mat2([[&m[1][1] / &d, -&m[0][1] / &d], [-&m[1][0] / &d, &m[0][0] / &d]]))
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &o.0;
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        let m = &self.0;
        [&m[0][0] * &v[0] + &m[0][1] * &v[1], &m[1][0] * &v[0] + &m[1][1] * &v[1]]
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().flatten().all(Rational::is_integer)
    }
}

/// A full-rank lattice in ℝ², given by a basis (the columns of `basis`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lattice2 {
    basis: Mat2,
}

impl Lattice2 {
    pub fn new(basis: Mat2) -> Result<Self, TropicalError> {
        if basis.det().is_zero() {
            return Err(TropicalError::DegenerateLattice);
        }
        Ok(Lattice2 { basis })
    }

    pub fn from_generators(a: Vec2, b: Vec2) -> Result<Self, TropicalError> {
        Self::new(Mat2::from_columns(&a, &b))
    }

    pub fn standard() -> Self {
        Lattice2 { basis: Mat2::identity() }
    }

    pub fn basis(&self) -> &Mat2 {
        &self.basis
    }

    /// Coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &Vec2) -> Option<[BigInt; 2]> {
        let c = self.basis.inverse().expect("nondegenerate").apply(v);
        (c[0].is_integer() && c[1].is_integer()).then(|| [c[0].to_integer(), c[1].to_integer()])
    }

    pub fn contains(&self, v: &Vec2) -> bool {
        self.coordinates(v).is_some()
    }

    /// Same lattice, regardless of basis.
    pub fn same_as(&self, other: &Lattice2) -> bool {
        other.contains(&self.basis.column(0))
            && other.contains(&self.basis.column(1))
            && self.contains(&other.basis.column(0))
            && self.contains(&other.basis.column(1))
    }

    pub fn image(&self, m: &Mat2) -> Result<Lattice2, TropicalError> {
        Lattice2::new(m.mul(&self.basis))
    }

    /// The positive primitive generator of the lattice points on the line spanned by `dir`.
    fn primitive_on_line(&self, dir: &Vec2) -> Vec2 {
        // Points B·z on the line satisfy n·(B z) = 0 for the normal n of `dir`.
        let normal = [-dir[1].clone(), dir[0].clone()];
        let b = &self.basis.0;
        let r = [&normal[0] * &b[0][0] + &normal[1] * &b[1][0], &normal[0] * &b[0][1] + &normal[1] * &b[1][1]];
        let z = primitive_integer_kernel(&r);
        let v = self.basis.apply(&[Rational::from_integer(z[0].clone()), Rational::from_integer(z[1].clone())]);
        if v[0].is_negative() || (v[0].is_zero() && v[1].is_negative()) {
            [-&v[0], -&v[1]]
        } else {
            v
        }
    }
}

/// Primitive integer `z ≠ 0` with `r·z = 0` for a nonzero rational row `r`.
fn primitive_integer_kernel(r: &[Rational; 2]) -> [BigInt; 2] {
    let den = r[0].denom().lcm(r[1].denom());
    let a = (&r[0] * Rational::from_integer(den.clone())).to_integer();
    let b = (&r[1] * Rational::from_integer(den)).to_integer();
    let g = a.gcd(&b);
    assert!(!g.is_zero(), "zero row has no one-dimensional kernel");
    [-(&b / &g), &a / &g]
}

fn primitive_integer(v: &Vec2) -> Option<[BigInt; 2]> {
    if v[0].is_zero() && v[1].is_zero() {
        return None;
    }
    let den = v[0].denom().lcm(v[1].denom());
    let a = (&v[0] * Rational::from_integer(den.clone())).to_integer();
    let b = (&v[1] * Rational::from_integer(den)).to_integer();
    let g = a.gcd(&b);
    let (mut a, mut b) = (a / &g, b / &g);
    if a.is_negative() || (a.is_zero() && b.is_negative()) {
        a = -a;
        b = -b;
    }
    Some([a, b])
}

/// `v ↦ linear·v + translation`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineMap2 {
    pub linear: Mat2,
    pub translation: Vec2,
}

impl AffineMap2 {
    pub fn new(linear: Mat2, translation: Vec2) -> Self {
        AffineMap2 { linear, translation }
    }

    /// `(x, y) ↦ (x + 1/2, −y)`.
    pub fn standard_glide() -> Self {
        AffineMap2 { linear: Mat2::diag(int(1), int(-1)), translation: [rat(1, 2), int(0)] }
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        let w = self.linear.apply(v);
        [&w[0] + &self.translation[0], &w[1] + &self.translation[1]]
    }

    /// `m ∘ self ∘ m⁻¹` for a linear change of coordinates `m`.
    fn conjugate(&self, m: &Mat2) -> AffineMap2 {
        let inv = m.inverse().expect("invertible change of coordinates");
        AffineMap2 { linear: m.mul(&self.linear).mul(&inv), translation: m.apply(&self.translation) }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum KleinFamily {
    /// The affine structure is spanned by its points on the two axes.
    K1,
    /// The affine structure is spanned by `l₁` and `(l₁ + l₂)/2`.
    K2,
}

/// A tropical Klein bottle `((ℝ², L)/ℤ²)/ℤ₂` in standard form: the involution is the glide
/// `(x, y) ↦ (x + 1/2, −y)` and `L` is the integral affine structure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TropicalKlein {
    family: KleinFamily,
    lattice: Lattice2,
    involution: AffineMap2,
    /// Linear part of the coordinate change from the input coordinates to standard ones.
    to_standard: Mat2,
}

impl TropicalKlein {
    /// The Klein bottle with affine structure `ℤ²`.
    pub fn standard() -> Self {
        TropicalKlein {
            family: KleinFamily::K1,
            lattice: Lattice2::standard(),
            involution: AffineMap2::standard_glide(),
            to_standard: Mat2::identity(),
        }
    }

    pub fn family(&self) -> KleinFamily {
        self.family
    }

    /// The integral affine structure in standard coordinates.
    pub fn lattice(&self) -> &Lattice2 {
        &self.lattice
    }

    pub fn involution(&self) -> &AffineMap2 {
        &self.involution
    }

    pub fn to_standard(&self) -> &Mat2 {
        &self.to_standard
    }

    /// Builds the bottle `(ℝ²/Λ)/⟨ψ⟩` where `ℝ²` carries its standard integral affine structure.
    pub fn from_translation_lattice(translations: &Lattice2, involution: &AffineMap2) -> Result<Self, TropicalError> {
        let s = translations.basis().inverse().expect("nondegenerate");
        let structure = Lattice2::new(s.clone())?;
        let k = standardize(&structure, &involution.conjugate(&s))?;
        let to_standard = k.to_standard.mul(&s);
        Ok(TropicalKlein { to_standard, ..k })
    }
}

/// Brings `(ℝ², L)/ℤ²` with the involution `ψ` into standard form.
pub fn standardize(lattice: &Lattice2, involution: &AffineMap2) -> Result<TropicalKlein, TropicalError> {
    let a = &involution.linear;
    let c = &involution.translation;
    if !a.is_integral() || !a.det().abs().is_one() {
        return Err(TropicalError::NotIntegral);
    }
    if !a.det().is_negative() {
        return Err(TropicalError::NotOrientationReversing);
    }
    if a.mul(a) != Mat2::identity() {
        return Err(TropicalError::NotInvolution);
    }
    let ac = a.apply(c);
    let twice = [&ac[0] + &c[0], &ac[1] + &c[1]];
    if !(twice[0].is_integer() && twice[1].is_integer()) {
        return Err(TropicalError::NotInvolution);
    }
    if !lattice.image(a)?.same_as(lattice) {
        return Err(TropicalError::LatticeNotInvariant);
    }

    // Eigenlattices of A inside the translation lattice ℤ². Columns of A ± I span the
    // ∓1-eigenlines because (A − I)(A + I) = 0.
    let plus = Mat2([[&a.0[0][0] + int(1), a.0[0][1].clone()], [a.0[1][0].clone(), &a.0[1][1] + int(1)]]);
    let minus = Mat2([[&a.0[0][0] - int(1), a.0[0][1].clone()], [a.0[1][0].clone(), &a.0[1][1] - int(1)]]);
    let u1 = primitive_integer(&plus.column(0)).or_else(|| primitive_integer(&plus.column(1))).expect("det −1");
    let u2 = primitive_integer(&minus.column(0)).or_else(|| primitive_integer(&minus.column(1))).expect("det −1");
    let u = Mat2::from_columns(
        &[Rational::from_integer(u1[0].clone()), Rational::from_integer(u1[1].clone())],
        &[Rational::from_integer(u2[0].clone()), Rational::from_integer(u2[1].clone())],
    );
    if !u.det().abs().is_one() {
        // The eigenlattices span an index-2 sublattice: the involution swaps two
        // coordinates up to a change of basis and always has a fixed point.
        return Err(TropicalError::HasFixedPoints);
    }
    let t = u.inverse().expect("unimodular");
    let ct = t.apply(c);
    if ct[0].is_integer() {
        return Err(TropicalError::HasFixedPoints);
    }
    debug_assert_eq!(frac(&ct[0]), rat(1, 2));

    let std_lattice = lattice.image(&t)?;
    let l1 = std_lattice.primitive_on_line(&[int(1), int(0)]);
    let l2 = std_lattice.primitive_on_line(&[int(0), int(1)]);
    let axes = Lattice2::from_generators(l1.clone(), l2.clone())?;
    let (family, basis) = if axes.same_as(&std_lattice) {
        (KleinFamily::K1, Mat2::from_columns(&l1, &l2))
    } else {
        let half = [(&l1[0] + &l2[0]) / int(2), (&l1[1] + &l2[1]) / int(2)];
        (KleinFamily::K2, Mat2::from_columns(&l1, &half))
    };
    let lattice = Lattice2::new(basis)?;
    debug_assert!(lattice.same_as(&std_lattice));
    Ok(TropicalKlein { family, lattice, involution: AffineMap2::standard_glide(), to_standard: t })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_data_is_k1() {
        let k = standardize(&Lattice2::standard(), &AffineMap2::standard_glide()).unwrap();
        assert_eq!(k.family(), KleinFamily::K1);
        assert_eq!(k.involution(), &AffineMap2::standard_glide());
        assert_eq!(k, TropicalKlein::standard());
    }

    #[test]
    fn half_diagonal_lattice_is_k2() {
        let l = Lattice2::from_generators([int(1), int(0)], [rat(1, 2), rat(1, 2)]).unwrap();
        let k = standardize(&l, &AffineMap2::standard_glide()).unwrap();
        assert_eq!(k.family(), KleinFamily::K2);
    }

    #[test]
    fn error_cases() {
        let l = Lattice2::standard();
        let id = AffineMap2::new(Mat2::identity(), [rat(1, 2), int(0)]);
        assert_eq!(standardize(&l, &id), Err(TropicalError::NotOrientationReversing));
        let reflection = AffineMap2::new(Mat2::diag(int(1), int(-1)), [int(0), int(0)]);
        assert_eq!(standardize(&l, &reflection), Err(TropicalError::HasFixedPoints));
        // Swapping the coordinates always has fixed points.
        let swap = AffineMap2::new(Mat2::from_i64([[0, 1], [1, 0]]), [rat(1, 2), rat(1, 2)]);
        assert_eq!(standardize(&l, &swap), Err(TropicalError::HasFixedPoints));
        let skew = Lattice2::from_generators([int(1), int(0)], [rat(1, 3), int(1)]).unwrap();
        assert_eq!(standardize(&skew, &AffineMap2::standard_glide()), Err(TropicalError::LatticeNotInvariant));
    }

    #[test]
    fn conjugated_glide_standardizes() {
        // The glide along the y-axis: (x, y) ↦ (−x, y + 1/2).
        let psi = AffineMap2::new(Mat2::diag(int(-1), int(1)), [int(0), rat(1, 2)]);
        let k = standardize(&Lattice2::standard(), &psi).unwrap();
        assert_eq!(k.family(), KleinFamily::K1);
        assert!(k.lattice().same_as(&Lattice2::standard()));
    }

    #[test]
    fn standardize_is_idempotent() {
        let lattices = [
            Lattice2::standard(),
            Lattice2::from_generators([int(2), int(0)], [int(0), rat(1, 3)]).unwrap(),
            Lattice2::from_generators([int(1), int(0)], [rat(1, 2), rat(3, 2)]).unwrap(),
        ];
        for l in lattices {
            let k = standardize(&l, &AffineMap2::standard_glide()).unwrap();
            let again = standardize(k.lattice(), k.involution()).unwrap();
            assert_eq!(again.family(), k.family());
            assert_eq!(again.lattice(), k.lattice());
            assert_eq!(again.involution(), k.involution());
        }
    }
}
