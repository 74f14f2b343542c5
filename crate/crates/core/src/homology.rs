//! Twisted homology of the bielliptic surface `𝒦 = T*K/T*_ℤK` with coefficients in the
//! orientation system `ξ` of the base, via Mayer–Vietoris over two vertical strips of `K`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::abelian::{cokernel, direct_sum, kernel, n_torsion, FGAbelianGroup, GroupElement, GroupHom, IntegerMatrix};
use crate::tropical::SectionClass;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// Coordinates `(a, b, m, n, l)` of a class in `H₂(𝒦; ξ) ≅ ℤ⁴ ⊕ ℤ₂` in the basis
/// (fiber, zero section, `L_{C₁}`, `L_{C₂}`, `L_{C₂} − L_{C₃}`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct H2Class {
    pub a: BigInt,
    pub b: BigInt,
    pub m: BigInt,
    pub n: BigInt,
    l: u8,
}

impl H2Class {
    pub fn new(a: BigInt, b: BigInt, m: BigInt, n: BigInt, l: &BigInt) -> Self {
        H2Class { a, b, m, n, l: u8::from(l.is_odd()) }
    }

    pub fn from_i64(a: i64, b: i64, m: i64, n: i64, l: i64) -> Self {
        Self::new(a.into(), b.into(), m.into(), n.into(), &l.into())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn l(&self) -> u8 {
        self.l
    }

    pub fn is_zero(&self) -> bool {
        self == &Self::zero()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        H2Class::new(k * &self.a, k * &self.b, k * &self.m, k * &self.n, &(k * BigInt::from(self.l)))
    }

    fn coords(&self) -> Vec<BigInt> {
        vec![self.a.clone(), self.b.clone(), self.m.clone(), self.n.clone(), BigInt::from(self.l)]
    }
}

impl Add for &H2Class {
    type Output = H2Class;
    fn add(self, o: &H2Class) -> H2Class {
        H2Class::new(&self.a + &o.a, &self.b + &o.b, &self.m + &o.m, &self.n + &o.n, &BigInt::from(self.l + o.l))
    }
}

impl Neg for &H2Class {
    type Output = H2Class;
    fn neg(self) -> H2Class {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &H2Class {
    type Output = H2Class;
    fn sub(self, o: &H2Class) -> H2Class {
        self + &(-o)
    }
}

impl fmt::Display for H2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{})", self.a, self.b, self.m, self.n, self.l)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum H2Generator {
    Fiber,
    ZeroSection,
    LiftC1,
    LiftC2,
    LiftC2MinusC3,
}

impl H2Generator {
    pub const ALL: [H2Generator; 5] =
        [H2Generator::Fiber, H2Generator::ZeroSection, H2Generator::LiftC1, H2Generator::LiftC2, H2Generator::LiftC2MinusC3];

    pub fn name(self) -> &'static str {
        match self {
            H2Generator::Fiber => "fiber",
            H2Generator::ZeroSection => "zero-section",
            H2Generator::LiftC1 => "L_C1",
            H2Generator::LiftC2 => "L_C2",
            H2Generator::LiftC2MinusC3 => "L_C2-L_C3",
        }
    }
}

/// Inclusion maps of the Mayer–Vietoris sequence for `𝒦 = U₁ ∪ U₂`, where each `Uᵢ` and each
/// of the two components of `U₁ ∩ U₂` is a circle times the fiber torus.
///
/// Bases: `H₁` of a piece is (base loop, fiber `dx`, fiber `dy`); `H₂` is (fiber, base ⊗ `dy`,
/// base ⊗ `dx`); `H₃` is base ⊗ fiber. The second intersection component is glued to `U₁`
/// through the glide, which reverses the base loop, flips `dy`, and twists `ξ`.
pub struct MayerVietoris {
    pub i1: IntegerMatrix,
    pub i2: IntegerMatrix,
    pub i3: IntegerMatrix,
}

impl MayerVietoris {
    pub fn bielliptic() -> Self {
        let i1 = IntegerMatrix::from_i64_rows(&[
            [1, 0, 0, 1, 0, 0],
            [0, 1, 0, 0, -1, 0],
            [0, 0, 1, 0, 0, 1],
            [1, 0, 0, 1, 0, 0],
            [0, 1, 0, 0, 1, 0],
            [0, 0, 1, 0, 0, 1],
        ]);
        let i2 = IntegerMatrix::from_i64_rows(&[
            [1, 0, 0, 1, 0, 0],
            [0, 1, 0, 0, -1, 0],
            [0, 0, 1, 0, 0, 1],
            [1, 0, 0, 1, 0, 0],
            [0, 1, 0, 0, 1, 0],
            [0, 0, 1, 0, 0, 1],
        ]);
        let i3 = IntegerMatrix::from_i64_rows(&[[1, -1], [1, 1]]);
        MayerVietoris { i1, i2, i3 }
    }

    fn hom(m: &IntegerMatrix) -> GroupHom {
        GroupHom::new(
            Arc::new(FGAbelianGroup::free(m.cols())),
            Arc::new(FGAbelianGroup::free(m.rows())),
            m.clone(),
        )
        .expect("free groups")
    }
}

/// `H₂(𝒦; ξ)` with its named Lagrangian generators.
#[derive(Clone, Debug)]
pub struct TwistedH2 {
    pub group: Arc<FGAbelianGroup>,
    /// `coker(i²)`, the image of `H₂(U₁) ⊕ H₂(U₂)`.
    pub cokernel: FGAbelianGroup,
    /// `ker(i¹)`, detected by intersecting with the cut.
    pub kernel: FGAbelianGroup,
    pub generators: Vec<(H2Generator, GroupElement)>,
    basis: GroupHom,
}

impl TwistedH2 {
    /// The group element of a class given in generator coordinates.
    pub fn element(&self, c: &H2Class) -> GroupElement {
        let std = self.basis.domain().element(c.coords()).expect("five coordinates");
        self.basis.apply(&std)
    }

    /// Generator coordinates of a group element.
    pub fn class_of(&self, x: &GroupElement) -> H2Class {
        let p = self.basis.preimage(x).expect("basis is an isomorphism");
        let c = p.coords();
        H2Class::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone(), &c[4])
    }
}

fn inconsistent(what: &str) -> HomologyError {
    HomologyError::InternalInconsistency(what.to_string())
}

fn vector(group: &Arc<FGAbelianGroup>, v: &[i64]) -> GroupElement {
    group.element_i64(v).expect("coordinate count")
}

/// Runs the Mayer–Vietoris computation: `H₂ = coker(i²) ⊕ ker(i¹)`.
pub fn compute_h2_twisted() -> Result<TwistedH2, HomologyError> {
    let mv = MayerVietoris::bielliptic();
    let i2 = MayerVietoris::hom(&mv.i2);
    let i1 = MayerVietoris::hom(&mv.i1);
    let (coker, proj) = cokernel(&i2);
    if coker != FGAbelianGroup::from_i64(2, &[2]).expect("valid") {
        return Err(inconsistent("quotient term is not Z + Z/2 + Z"));
    }
    let (ker, incl) = kernel(&i1);
    if ker != FGAbelianGroup::free(2) {
        return Err(inconsistent("kernel term is not Z^2"));
    }
    let coker_arc = proj.codomain().clone();
    let ker_arc = incl.domain().clone();
    let (group, ic, ik) = direct_sum(&coker_arc, &ker_arc);
    if *group != FGAbelianGroup::from_i64(4, &[2]).expect("valid") {
        return Err(inconsistent("H2 is not Z^4 + Z/2"));
    }

    let h2_pieces = proj.domain().clone();
    let h1_cut = incl.codomain().clone();
    let from_pieces = |v: &[i64]| ic.apply(&proj.apply(&vector(&h2_pieces, v)));
    let from_cut = |v: &[i64]| -> Result<GroupElement, HomologyError> {
        let k = incl.preimage(&vector(&h1_cut, v)).ok_or_else(|| inconsistent("cut class not in the kernel"))?;
        Ok(ik.apply(&k))
    };
    let generators = vec![
        (H2Generator::Fiber, from_pieces(&[1, 0, 0, 0, 0, 0])),
        (H2Generator::ZeroSection, from_cut(&[1, 0, 0, -1, 0, 0])?),
        (H2Generator::LiftC1, from_pieces(&[0, 0, 1, 0, 0, 0])),
        (H2Generator::LiftC2, from_cut(&[0, 0, 1, 0, 0, -1])?),
        (H2Generator::LiftC2MinusC3, from_pieces(&[0, 1, 0, 0, 0, 0])),
    ];
    let columns: Vec<Vec<BigInt>> = generators.iter().map(|(_, g)| g.coords().to_vec()).collect();
    let standard = Arc::new(FGAbelianGroup::from_i64(4, &[2]).expect("valid"));
    let basis = GroupHom::new(standard, group.clone(), IntegerMatrix::from_columns(group.ngens(), &columns))
        .map_err(|_| inconsistent("torsion generator has the wrong order"))?;
    if !basis.is_isomorphism() {
        return Err(inconsistent("named generators do not form a basis"));
    }
    Ok(TwistedH2 { group, cokernel: coker, kernel: ker, generators, basis })
}

/// Shared result of [`compute_h2_twisted`].
pub fn twisted_h2() -> &'static TwistedH2 {
    static H2: OnceLock<TwistedH2> = OnceLock::new();
    H2.get_or_init(|| compute_h2_twisted().expect("Mayer-Vietoris data is consistent"))
}

/// `[Γ^{n,l}_{m,θ}] = (mn, 1, m, n, l)`, independent of `θ`.
pub fn class_of_section(s: &SectionClass) -> H2Class {
    H2Class::new(&s.m * &s.n, BigInt::from(1), s.m.clone(), s.n.clone(), &BigInt::from(s.l()))
}

pub fn class_of_fiber() -> H2Class {
    H2Class::from_i64(1, 0, 0, 0, 0)
}

pub fn class_of_zero_section() -> H2Class {
    H2Class::from_i64(0, 1, 0, 0, 0)
}

pub fn class_of_lift_x(m: &BigInt) -> H2Class {
    H2Class::new(BigInt::zero(), BigInt::zero(), m.clone(), BigInt::zero(), &BigInt::zero())
}

pub fn class_of_lift_y(n: &BigInt, l: &BigInt) -> H2Class {
    H2Class::new(BigInt::zero(), BigInt::zero(), BigInt::zero(), n.clone(), l)
}

/// `H₃(𝒦; ξ) = coker(i³) ⊕ ker(i²)`.
pub fn compute_h3_twisted() -> Result<(Arc<FGAbelianGroup>, GroupElement), HomologyError> {
    let mv = MayerVietoris::bielliptic();
    let (coker, proj) = cokernel(&MayerVietoris::hom(&mv.i3));
    let (ker, incl) = kernel(&MayerVietoris::hom(&mv.i2));
    if coker != FGAbelianGroup::cyclic(2) || ker != FGAbelianGroup::free(2) {
        return Err(inconsistent("unexpected Mayer-Vietoris terms in degree 3"));
    }
    let (group, ic, _) = direct_sum(proj.codomain(), incl.domain());
    // The preimage of a vertical circle: base loop of U₁ times the fiber.
    let vertical = ic.apply(&proj.apply(&vector(proj.domain(), &[1, 0])));
    Ok((group, vertical))
}

/// The chain representative of the generator of `H₃(𝒦; ξ)₍₂₎`: the preimage `π⁻¹(C)` of a
/// vertical circle `C = {u = c}` in the base. Its intersection with a brane `L` is the cycle
/// `C_L` whose monodromy defines `Ψ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerticalCircleCycle;

/// `H₃(𝒦; ξ)₍₂₎ ≅ ℤ₂` with its generator.
pub struct H3TwoTorsion {
    pub group: FGAbelianGroup,
    pub generator: GroupElement,
    pub representative: VerticalCircleCycle,
}

pub fn h3_two_torsion() -> Result<H3TwoTorsion, HomologyError> {
    let (h3, vertical) = compute_h3_twisted()?;
    let (t, incl) = n_torsion(&h3, 2);
    if t != FGAbelianGroup::cyclic(2) {
        return Err(inconsistent("2-torsion of H3 is not Z/2"));
    }
    let gen = incl.apply(&incl.domain().generator(0));
    if gen != vertical {
        return Err(inconsistent("vertical circle does not generate the 2-torsion"));
    }
    Ok(H3TwoTorsion { group: t, generator: gen, representative: VerticalCircleCycle })
}

/// `H₃(𝒦; ξ) ≅ ℤ⟨[K]×dx⟩ ⊕ H₁(K; ℋ₂⊗ξ)` projected onto `H₁(K; ℤ) ≅ ℤ ⊕ ℤ₂`.
///
/// Domain coordinates: `[K]×dx`, the fiber over the glide loop, the fiber over the vertical
/// loop (order 2). Codomain: glide loop, vertical loop.
pub fn h3_to_h1_projection() -> GroupHom {
    let h3 = Arc::new(FGAbelianGroup::from_i64(2, &[2]).expect("valid"));
    let h1 = Arc::new(FGAbelianGroup::from_i64(1, &[2]).expect("valid"));
    GroupHom::new(h3, h1, IntegerMatrix::from_i64_rows(&[[1, 0, 0], [0, 0, 0]])).expect("valid projection")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::rat;

    #[test]
    fn h2_and_its_intermediates() {
        let h = compute_h2_twisted().unwrap();
        assert_eq!(*h.group, FGAbelianGroup::from_i64(4, &[2]).unwrap());
        assert_eq!(h.kernel, FGAbelianGroup::free(2));
        assert_eq!(h.cokernel, FGAbelianGroup::from_i64(2, &[2]).unwrap());
        let names: Vec<_> = h.generators.iter().map(|(g, _)| g.name()).collect();
        assert_eq!(names, ["fiber", "zero-section", "L_C1", "L_C2", "L_C2-L_C3"]);
    }

    #[test]
    fn generators_are_the_standard_basis() {
        let h = twisted_h2();
        let expected = [
            class_of_fiber(),
            class_of_zero_section(),
            class_of_lift_x(&BigInt::from(1)),
            class_of_lift_y(&BigInt::from(1), &BigInt::from(0)),
            class_of_lift_y(&BigInt::from(0), &BigInt::from(1)),
        ];
        for ((_, g), e) in h.generators.iter().zip(&expected) {
            assert_eq!(&h.class_of(g), e);
            assert_eq!(&h.element(e), g);
        }
        let two = BigInt::from(2);
        assert!(h.element(&class_of_lift_y(&BigInt::from(0), &BigInt::from(1))).scale(&two).is_identity());
    }

    #[test]
    fn section_classes() {
        let c = |m, n, l| class_of_section(&SectionClass::from_i64(m, n, l, rat(1, 3)));
        assert_eq!(c(0, 0, 0), H2Class::from_i64(0, 1, 0, 0, 0));
        assert_eq!(c(2, 3, 1), H2Class::from_i64(6, 1, 2, 3, 1));
        assert_eq!(c(-1, 1, 0), H2Class::from_i64(-1, 1, -1, 1, 0));
        assert_eq!(class_of_lift_x(&BigInt::from(3)), H2Class::from_i64(0, 0, 3, 0, 0));
    }

    #[test]
    fn section_class_splits_into_generators() {
        for m in -5i64..=5 {
            for n in -5i64..=5 {
                for l in 0..2 {
                    let s = SectionClass::from_i64(m, n, l, rat(1, 4));
                    let sum = &(&(&class_of_fiber().scale(&BigInt::from(m * n)) + &class_of_zero_section())
                        + &class_of_lift_x(&BigInt::from(m)))
                        + &class_of_lift_y(&BigInt::from(n), &BigInt::from(l));
                    assert_eq!(class_of_section(&s), sum);
                }
            }
        }
    }

    #[test]
    fn h3_two_torsion_is_z2() {
        let t = h3_two_torsion().unwrap();
        assert_eq!(t.group, FGAbelianGroup::cyclic(2));
        assert!(!t.generator.is_identity());
        assert!(t.generator.is_killed_by(2));
    }

    #[test]
    fn projection_to_h1() {
        let p = h3_to_h1_projection();
        let d = p.domain();
        assert_eq!(p.apply(&d.generator(0)), p.codomain().generator(0));
        assert!(p.apply(&d.generator(1)).is_identity());
        assert!(p.apply(&d.generator(2)).is_identity());
        assert!(p.apply(&d.identity()).is_identity());
        // The model of H₃ agrees with the Mayer–Vietoris computation.
        assert_eq!(**d, *compute_h3_twisted().unwrap().0);
    }
}
