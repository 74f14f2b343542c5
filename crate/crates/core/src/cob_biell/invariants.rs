use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abelian::{rat, CircleValue, FGAbelianGroup, GroupElement, Rational};
use crate::homology::{class_of_fiber, class_of_section, H2Class};

use super::brane::{
    lift_x_slots, two_torsion, Brane, FiberBrane, FormalSum, LiftXBrane, LiftYBrane, SectionBrane, XCopy, YComponent,
    YLevel,
};
use super::CobError;

/// `(c, g₂, a, a′)` in `H₂(𝒦; ξ) ⊕ G₍₂₎ ⊕ (S¹ ⊕ G) ⊕ (S¹ ⊕ G)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvariantTuple {
    pub c: H2Class,
    pub g2: GroupElement,
    pub a: (CircleValue, GroupElement),
    pub a_prime: (CircleValue, GroupElement),
}

impl InvariantTuple {
    pub fn zero(g: &Arc<FGAbelianGroup>) -> Self {
        InvariantTuple {
            c: H2Class::zero(),
            g2: g.identity(),
            a: (CircleValue::zero(), g.identity()),
            a_prime: (CircleValue::zero(), g.identity()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
            && self.g2.is_identity()
            && self.a.0.is_zero()
            && self.a.1.is_identity()
            && self.a_prime.0.is_zero()
            && self.a_prime.1.is_identity()
    }
}

impl Add for &InvariantTuple {
    type Output = InvariantTuple;
    fn add(self, o: &InvariantTuple) -> InvariantTuple {
        InvariantTuple {
            c: &self.c + &o.c,
            g2: &self.g2 + &o.g2,
            a: (&self.a.0 + &o.a.0, &self.a.1 + &o.a.1),
            a_prime: (&self.a_prime.0 + &o.a_prime.0, &self.a_prime.1 + &o.a_prime.1),
        }
    }
}

impl Neg for &InvariantTuple {
    type Output = InvariantTuple;
    fn neg(self) -> InvariantTuple {
        InvariantTuple {
            c: -&self.c,
            g2: -&self.g2,
            a: (-&self.a.0, -&self.a.1),
            a_prime: (-&self.a_prime.0, -&self.a_prime.1),
        }
    }
}

impl Sub for &InvariantTuple {
    type Output = InvariantTuple;
    fn sub(self, o: &InvariantTuple) -> InvariantTuple {
        self + &-o
    }
}

impl fmt::Display for InvariantTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c={} g2={} a=({}, {}) a'=({}, {})", self.c, self.g2, self.a.0, self.a.1, self.a_prime.0, self.a_prime.1)
    }
}

fn y_component_class(c: &YComponent) -> H2Class {
    match c.level {
        YLevel::Half => H2Class::new(BigInt::zero(), BigInt::zero(), BigInt::zero(), c.weight.clone(), &BigInt::zero()),
        YLevel::Zero => H2Class::new(BigInt::zero(), BigInt::zero(), BigInt::zero(), c.weight.clone(), &c.weight),
    }
}

/// Class of a single brane, including the grading parity of sections.
pub fn brane_class(b: &Brane) -> H2Class {
    match b {
        Brane::Fiber(_) => class_of_fiber(),
        Brane::Section(s) => class_of_section(s.class()).scale(&BigInt::from(s.parity())),
        Brane::LiftX(l) => {
            let m: i64 = l.copies().iter().map(|c| i64::from(c.sign)).sum();
            H2Class::from_i64(0, 0, m, 0, 0)
        }
        Brane::LiftY(l) => l.components().iter().fold(H2Class::zero(), |acc, c| &acc + &y_component_class(c)),
    }
}

pub fn cyc(sum: &FormalSum) -> H2Class {
    sum.terms().fold(H2Class::zero(), |acc, (b, k)| &acc + &brane_class(b).scale(k))
}

/// The 1-cycles cut out on `b` by `π⁻¹({u = c})`, as (monodromy, multiplicity) pairs.
/// `None` when the intersection is not transverse.
pub fn vertical_cycle_intersection(b: &Brane, c: &CircleValue) -> Option<Vec<(GroupElement, BigInt)>> {
    match b {
        Brane::Fiber(f) => (f.u() != *c).then(Vec::new),
        Brane::LiftX(l) => (!l.copies().iter().any(|x| &x.position == c)).then(Vec::new),
        // The `y`-loop of the section over `u = c`.
        Brane::Section(s) => Some(vec![(s.eta2().clone(), BigInt::from(s.parity()))]),
        // The fiber loop of the Klein bottle over the point `(c, level)`.
        Brane::LiftY(l) => Some(l.components().iter().map(|comp| (comp.nu.clone(), comp.weight.clone())).collect()),
    }
}

fn generic_vertical_position(sum: &FormalSum) -> CircleValue {
    let mut used = Vec::new();
    for (b, _) in sum.terms() {
        match b {
            Brane::Fiber(f) => used.push(f.u()),
            Brane::LiftX(l) => used.extend(l.copies().iter().map(|c| c.position.clone())),
            _ => {}
        }
    }
    let mut q = 2;
    loop {
        for p in 1..q {
            let c = CircleValue::from_ratio(p, q);
            if !used.contains(&c) {
                return c;
            }
        }
        q += 1;
    }
}

/// Monodromy around the intersection with a vertical circle cycle at `u = c`.
pub fn psi_at(sum: &FormalSum, c: &CircleValue, g: &Arc<FGAbelianGroup>) -> Option<GroupElement> {
    let mut total = g.identity();
    for (b, k) in sum.terms() {
        for (eta, mult) in vertical_cycle_intersection(b, c)? {
            total = &total + &eta.scale(&(mult * k));
        }
    }
    Some(total)
}

/// The 2-torsion refinement of the cycle class.
pub fn psi(sum: &FormalSum, g: &Arc<FGAbelianGroup>) -> GroupElement {
    psi_at(sum, &generic_vertical_position(sum), g).expect("generic position is transverse")
}

pub fn refined_cyc(sum: &FormalSum, g: &Arc<FGAbelianGroup>) -> (H2Class, GroupElement) {
    (cyc(sum), psi(sum, g))
}

/// Surgery of a section into `Γ₀`, its `x`- and `y`-lifts and the fibers over their
/// crossings. `ηZ` goes on the first `x`-sheet, or on `Γ₀` when there are none.
pub fn surgery_decompose(b: &SectionBrane) -> FormalSum {
    let g = b.eta_z().group();
    let slots = lift_x_slots(&b.class().m, &b.class().theta);
    let mut nus = vec![g.identity(); slots.len()];
    if let Some(first) = nus.first_mut() {
        *first = b.eta_z().clone();
    }
    surgery_decompose_with(b, &nus).expect("distribution matches")
}

/// As [`surgery_decompose`], with the sheet monodromies given explicitly. They must multiply
/// to `ηZ`; when there are no sheets `ηZ` stays on `Γ₀`.
pub fn surgery_decompose_with(b: &SectionBrane, nus: &[GroupElement]) -> Result<FormalSum, CobError> {
    let g = b.eta_z().group().clone();
    let class = b.class();
    let slots = lift_x_slots(&class.m, &class.theta);
    if nus.len() != slots.len() {
        return Err(CobError::DistributionLength { expected: slots.len(), got: nus.len() });
    }
    let product = nus.iter().fold(g.identity(), |acc, n| &acc + n);
    let h = if slots.is_empty() {
        b.eta_z().clone()
    } else if &product == b.eta_z() {
        g.identity()
    } else {
        return Err(CobError::DistributionProduct);
    };
    let s = BigInt::from(b.parity());
    let mut out = FormalSum::zero();
    out.push(SectionBrane::zero_section(h, b.eta2().clone())?, s.clone());
    if !slots.is_empty() {
        let x = LiftXBrane::from_function(&class.m, &class.theta, nus, b.eta2().clone())?;
        out.push(x, s.clone());
    }
    let y = LiftYBrane::from_function(&class.n, class.l(), &g);
    for ((u, sign), nu) in slots.iter().zip(nus) {
        let sign = BigInt::from(*sign);
        for comp in y.components() {
            let fiber = FiberBrane::new(
                u.value() * rat(1, 2),
                comp.level.position().value().clone(),
                nu.scale(&sign),
                g.identity(),
            );
            out.push(fiber, &s * &sign * &comp.weight);
        }
    }
    if !y.components().is_empty() {
        out.push(y, s);
    }
    Ok(out)
}

/// Moves the fiber to `{y = 1/2}` and forgets `λy`.
pub fn fiber_reduce(f: &FiberBrane) -> FiberBrane {
    FiberBrane::new(f.x().clone(), rat(1, 2), f.lx().clone(), f.lx().group().identity())
}

/// Decomposes every section and reduces every fiber. The result contains only fibers on
/// `{y = 1/2}`, zero sections with even grading, and lifts.
pub fn reduce(sum: &FormalSum) -> FormalSum {
    let mut out = FormalSum::zero();
    for (b, k) in sum.terms() {
        match b {
            Brane::Section(s) if !(s.is_zero_section() && s.parity() == 1) => {
                for (d, j) in surgery_decompose(s).terms() {
                    match d {
                        Brane::Fiber(f) => out.push(fiber_reduce(f), j * k),
                        other => out.push(other.clone(), j * k),
                    }
                }
            }
            Brane::Fiber(f) => out.push(fiber_reduce(f), k.clone()),
            other => out.push(other.clone(), k.clone()),
        }
    }
    out
}

fn kernel_part(sum: &FormalSum, g: &Arc<FGAbelianGroup>) -> Result<FormalSum, CobError> {
    let r = reduce(sum);
    let (c, g2) = refined_cyc(&r, g);
    if !c.is_zero() || !g2.is_identity() {
        return Err(CobError::NotInKernel);
    }
    Ok(r)
}

/// Albanese image of the fibers, on the kernel of the refined cycle class.
pub fn alb_loc(sum: &FormalSum, g: &Arc<FGAbelianGroup>) -> Result<(CircleValue, GroupElement), CobError> {
    let r = kernel_part(sum, g)?;
    let mut circle = CircleValue::zero();
    let mut group = g.identity();
    for (b, k) in r.terms() {
        if let Brane::Fiber(f) = b {
            circle = &circle + &f.u().scale(k);
            group = &group + &f.lx().scale(k);
        }
    }
    Ok((circle, group))
}

/// Albanese image of the `x`-sheets on the mirror side, on the kernel of the refined cycle
/// class. Sheets are measured from `u = 1/2`, the position of `L_{f₁₀}`.
pub fn alb_prime_loc(sum: &FormalSum, g: &Arc<FGAbelianGroup>) -> Result<(CircleValue, GroupElement), CobError> {
    let r = kernel_part(sum, g)?;
    let mut circle = Rational::zero();
    let mut group = g.identity();
    for (b, k) in r.terms() {
        match b {
            Brane::LiftX(l) => {
                for c in l.copies() {
                    let offset = c.position.value() - rat(1, 2);
                    circle += offset * Rational::from_integer(k * BigInt::from(c.sign));
                    group = &group + &c.nu.scale(k);
                }
            }
            Brane::Section(s) => group = &group + &s.eta_z().scale(k),
            _ => {}
        }
    }
    Ok((CircleValue::new(circle), group))
}

fn one_sheet(position: CircleValue, nu: GroupElement) -> LiftXBrane {
    let e = nu.group().identity();
    LiftXBrane::new(vec![XCopy { position, sign: 1, nu }], e).expect("valid sheet")
}

fn y_circle(comps: &[(YLevel, i64)], nu: &GroupElement) -> Result<LiftYBrane, CobError> {
    LiftYBrane::new(comps.iter().map(|&(level, w)| YComponent { level, weight: w.into(), nu: nu.clone() }).collect())
}

/// `N_f·F_{(0,1/2)} + N₀·Γ₀ + m·L_{f₁₀} + n·L_{f^{10}} + l·L_{f^{01}} + ((L_{f^{10}}, g) − L_{f^{10}})`.
pub fn splitting_section(c: &H2Class, g2: &GroupElement) -> Result<FormalSum, CobError> {
    two_torsion(g2)?;
    let g = g2.group();
    let e = g.identity();
    let mut out = FormalSum::zero();
    out.push(FiberBrane::trivial(Rational::zero(), rat(1, 2), g), c.a.clone());
    out.push(SectionBrane::trivial(crate::tropical::SectionClass::zero(), g), c.b.clone());
    out.push(one_sheet(CircleValue::from_ratio(1, 2), e.clone()), c.m.clone());
    out.push(y_circle(&[(YLevel::Half, 1)], &e)?, c.n.clone());
    out.push(y_circle(&[(YLevel::Half, 1), (YLevel::Zero, -1)], &e)?, BigInt::from(c.l()));
    out.push(y_circle(&[(YLevel::Half, 1)], g2)?, BigInt::one());
    out.push(y_circle(&[(YLevel::Half, 1)], &e)?, BigInt::from(-1));
    Ok(out)
}

pub fn normal_form(sum: &FormalSum, g: &Arc<FGAbelianGroup>) -> InvariantTuple {
    let r = reduce(sum);
    let (c, g2) = refined_cyc(&r, g);
    let split = reduce(&splitting_section(&c, &g2).expect("psi is 2-torsion"));
    let rest = &r - &split;
    let a = alb_loc(&rest, g).expect("remainder is in the kernel");
    let a_prime = alb_prime_loc(&rest, g).expect("remainder is in the kernel");
    InvariantTuple { c, g2, a, a_prime }
}

pub fn is_cobordant(a: &FormalSum, b: &FormalSum, g: &Arc<FGAbelianGroup>) -> bool {
    normal_form(&(a - b), g).is_zero()
}

/// A sum with the given invariants: the splitting section, one fiber difference carrying
/// `a`, and one sheet difference carrying `a′`.
pub fn realize(t: &InvariantTuple) -> Result<FormalSum, CobError> {
    let g = t.g2.group();
    let mut out = splitting_section(&t.c, &t.g2)?;
    let e = g.identity();
    out.push(FiberBrane::new(t.a.0.value() * rat(1, 2), rat(1, 2), t.a.1.clone(), e.clone()), BigInt::one());
    out.push(FiberBrane::trivial(Rational::zero(), rat(1, 2), g), BigInt::from(-1));
    let u = CircleValue::new(t.a_prime.0.value() + rat(1, 2));
    out.push(one_sheet(u, t.a_prime.1.clone()), BigInt::one());
    out.push(one_sheet(CircleValue::from_ratio(1, 2), e), BigInt::from(-1));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::int;
    use crate::tropical::{alb_zero_cycle, SectionClass, TropicalKlein};
    use proptest::prelude::*;

    fn g4() -> Arc<FGAbelianGroup> {
        Arc::new(FGAbelianGroup::cyclic(4))
    }

    fn g22() -> Arc<FGAbelianGroup> {
        Arc::new(FGAbelianGroup::from_i64(1, &[2]).unwrap())
    }

    fn section(m: i64, n: i64, l: i64, theta: Rational, g: &Arc<FGAbelianGroup>) -> SectionBrane {
        SectionBrane::trivial(SectionClass::from_i64(m, n, l, theta), g)
    }

    fn thetas() -> Vec<Rational> {
        vec![int(0), rat(1, 4), rat(1, 3), rat(1, 2)]
    }

    #[test]
    fn cycle_classes() {
        let g = g4();
        assert_eq!(cyc(&FormalSum::single(section(0, 0, 0, int(0), &g))), H2Class::from_i64(0, 1, 0, 0, 0));
        let f = |x, y| FormalSum::single(FiberBrane::trivial(x, y, &g));
        assert!(cyc(&(&f(rat(1, 3), rat(1, 5)) - &f(int(0), int(0)))).is_zero());
        let s = SectionBrane::new(SectionClass::from_i64(2, 3, 1, rat(1, 3)), -1, g.identity(), g.identity()).unwrap();
        assert_eq!(cyc(&FormalSum::single(s)), H2Class::from_i64(-6, -1, -2, -3, 1));
    }

    #[test]
    fn surgery_preserves_class() {
        let g = g4();
        for m in -3..=3 {
            for n in -3..=3 {
                for l in 0..2 {
                    for t in thetas() {
                        let s = section(m, n, l, t, &g);
                        assert_eq!(cyc(&surgery_decompose(&s)), class_of_section(s.class()));
                    }
                }
            }
        }
        let d = surgery_decompose(&section(0, 0, 0, int(0), &g));
        assert_eq!(d, FormalSum::single(section(0, 0, 0, int(0), &g)));
        let d = surgery_decompose(&section(1, 1, 0, int(0), &g));
        let kinds: Vec<_> = d.terms().map(|(b, k)| (std::mem::discriminant(b), k.clone())).collect();
        assert_eq!(kinds.len(), 4);
        assert!(d.terms().all(|(_, k)| k == &BigInt::one()));
    }

    #[test]
    fn psi_values() {
        let g = g22();
        let t = g.element_i64(&[0, 1]).unwrap();
        let e = g.identity();
        let ly = |nu: &GroupElement| FormalSum::single(y_circle(&[(YLevel::Half, 1)], nu).unwrap());
        assert_eq!(psi(&(&ly(&t) - &ly(&e)), &g), t);
        let trivial = &FormalSum::single(section(2, 1, 1, rat(1, 3), &g)) + &ly(&e);
        assert!(psi(&trivial, &g).is_identity());
        let s = SectionBrane::new(SectionClass::from_i64(1, 0, 0, int(0)), 1, e.clone(), t.clone()).unwrap();
        assert_eq!(psi(&FormalSum::single(s), &g), t);
        // The chosen cut does not matter as long as it is transverse.
        let mixed = &(&trivial + &ly(&t)) + &FormalSum::single(FiberBrane::new(rat(1, 4), int(0), t.clone(), t.clone()));
        let values: Vec<_> =
            (1..7).filter_map(|p| psi_at(&mixed, &CircleValue::from_ratio(p, 7), &g)).collect();
        assert!(values.len() >= 6 && values.iter().all(|v| v == &t));
        assert_eq!(psi_at(&mixed, &CircleValue::from_ratio(1, 2), &g), None);
    }

    #[test]
    fn fiber_reduction() {
        let g = g4();
        let a = g.element_i64(&[1]).unwrap();
        let b = g.element_i64(&[2]).unwrap();
        let f = FiberBrane::new(rat(1, 4), rat(1, 3), a.clone(), b.clone());
        assert_eq!(fiber_reduce(&f), FiberBrane::new(rat(1, 4), rat(1, 2), a.clone(), g.identity()));
        let on = FiberBrane::new(rat(1, 4), rat(1, 2), a.clone(), b);
        assert_eq!(fiber_reduce(&on), FiberBrane::new(rat(1, 4), rat(1, 2), a, g.identity()));
    }

    #[test]
    fn albanese_examples() {
        let g = g4();
        let f = |x, y, lx: &GroupElement| FormalSum::single(FiberBrane::new(x, y, lx.clone(), g.identity()));
        let e = g.identity();
        let d = &f(rat(1, 4), rat(1, 2), &e) - &f(int(0), rat(1, 2), &e);
        assert_eq!(alb_loc(&d, &g).unwrap(), (CircleValue::from_ratio(1, 2), e.clone()));
        let a = g.element_i64(&[1]).unwrap();
        let b = g.element_i64(&[3]).unwrap();
        let d = &f(rat(1, 5), rat(1, 2), &a) - &f(rat(1, 5), rat(1, 2), &b);
        assert_eq!(alb_loc(&d, &g).unwrap(), (CircleValue::zero(), &a - &b));
        assert_eq!(alb_prime_loc(&d, &g).unwrap(), (CircleValue::zero(), e.clone()));

        let lift = |t: &CircleValue| {
            let k = lift_x_slots(&BigInt::zero(), t).len();
            FormalSum::single(LiftXBrane::from_function(&BigInt::zero(), t, &vec![e.clone(); k], e.clone()).unwrap())
        };
        let one = || FormalSum::single(one_sheet(CircleValue::from_ratio(1, 2), e.clone()));
        let a14 = &lift(&CircleValue::from_ratio(1, 4)) + &one();
        let d = &a14 - &one();
        assert_eq!(alb_loc(&d, &g).unwrap(), (CircleValue::zero(), e.clone()));
        assert_eq!(alb_prime_loc(&d, &g).unwrap(), (CircleValue::from_ratio(3, 4), e.clone()));
        assert_eq!(alb_prime_loc(&(&a14 - &a14), &g).unwrap(), (CircleValue::zero(), e.clone()));
        assert_eq!(alb_loc(&one(), &g), Err(CobError::NotInKernel));
    }

    #[test]
    fn fiber_albanese_matches_zero_cycle_oracle() {
        let g = g4();
        let k = TropicalKlein::standard();
        let pts = [(rat(1, 7), rat(2, 3)), (rat(3, 8), int(0)), (rat(5, 6), rat(1, 9)), (rat(-1, 3), rat(1, 2))];
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i..] {
                let s = &FormalSum::single(FiberBrane::trivial(p.0.clone(), p.1.clone(), &g))
                    - &FormalSum::single(FiberBrane::trivial(q.0.clone(), q.1.clone(), &g));
                let oracle = alb_zero_cycle(&[(1, [p.0.clone(), p.1.clone()]), (-1, [q.0.clone(), q.1.clone()])], &k).unwrap();
                assert_eq!(alb_loc(&s, &g).unwrap().0, oracle);
            }
        }
    }

    #[test]
    fn normal_form_examples() {
        let g = g4();
        let e = g.identity();
        let nf = normal_form(&FormalSum::single(section(0, 0, 0, int(0), &g)), &g);
        assert_eq!(nf.c, H2Class::from_i64(0, 1, 0, 0, 0));
        assert!(nf.g2.is_identity() && nf.a == (CircleValue::zero(), e.clone()) && nf.a_prime == nf.a);
        let f = FormalSum::single(FiberBrane::trivial(rat(1, 3), rat(1, 7), &g));
        assert!(normal_form(&(&f - &f), &g).is_zero());
        assert_eq!(splitting_section(&H2Class::from_i64(0, 1, 0, 0, 0), &e).unwrap(), FormalSum::single(section(0, 0, 0, int(0), &g)));
        assert_eq!(
            splitting_section(&H2Class::from_i64(1, 0, 0, 0, 0), &e).unwrap(),
            FormalSum::single(FiberBrane::trivial(int(0), rat(1, 2), &g))
        );
        assert!(matches!(splitting_section(&H2Class::zero(), &g.element_i64(&[1]).unwrap()), Err(CobError::NotTwoTorsion(_))));
        // The section Γ(0, 0, 0, θ) sits at `a′ = −θ` relative to Γ₀.
        let s = FormalSum::single(section(0, 0, 0, rat(1, 3), &g));
        assert_eq!(normal_form(&s, &g).a_prime.0, CircleValue::from_ratio(2, 3));
    }

    #[test]
    fn splitting_round_trip() {
        let g = g22();
        for t in g.two_torsion_elements() {
            for a in -2..=2 {
                for b in -2..=2 {
                    for m in -2..=2 {
                        for n in -2..=2 {
                            for l in 0..2 {
                                let c = H2Class::from_i64(a, b, m, n, l);
                                let s = splitting_section(&c, &t).unwrap();
                                assert_eq!(refined_cyc(&reduce(&s), &g), (c.clone(), t.clone()));
                                let nf = normal_form(&s, &g);
                                assert_eq!((&nf.c, &nf.g2), (&c, &t));
                                assert!(nf.a.0.is_zero() && nf.a.1.is_identity());
                                assert!(nf.a_prime.0.is_zero() && nf.a_prime.1.is_identity());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn choice_independence() {
        for order in 2..=6u64 {
            let g = Arc::new(FGAbelianGroup::cyclic(order));
            for m in -3i64..=3 {
                for theta in [int(0), rat(1, 3)] {
                    let eta = g.generator(0);
                    let b = SectionBrane::new(SectionClass::from_i64(m, 1, 1, theta.clone()), 1, eta.clone(), g.identity()).unwrap();
                    let reference = normal_form(&surgery_decompose(&b), &g);
                    assert_eq!(reference, normal_form(&FormalSum::single(b.clone()), &g));
                    let k = lift_x_slots(&BigInt::from(m), &CircleValue::new(theta.clone())).len();
                    if k == 0 {
                        continue;
                    }
                    // Every distribution: free choice on the first k−1 sheets, the last one fixed.
                    let elems = g.elements();
                    let mut idx = vec![0usize; k - 1];
                    loop {
                        let mut nus: Vec<GroupElement> = idx.iter().map(|&i| elems[i].clone()).collect();
                        let partial = nus.iter().fold(g.identity(), |acc, n| &acc + n);
                        nus.push(&eta - &partial);
                        let d = surgery_decompose_with(&b, &nus).unwrap();
                        assert_eq!(normal_form(&d, &g), reference);
                        let mut j = 0;
                        while j < idx.len() && idx[j] + 1 == elems.len() {
                            idx[j] = 0;
                            j += 1;
                        }
                        if j == idx.len() {
                            break;
                        }
                        idx[j] += 1;
                    }
                }
            }
        }
    }

    #[test]
    fn bad_distributions() {
        let g = g4();
        let b = SectionBrane::new(SectionClass::from_i64(2, 0, 0, int(0)), 1, g.generator(0), g.identity()).unwrap();
        assert_eq!(surgery_decompose_with(&b, &[g.identity(), g.identity()]), Err(CobError::DistributionProduct));
        assert!(matches!(surgery_decompose_with(&b, &[g.generator(0)]), Err(CobError::DistributionLength { .. })));
    }

    #[test]
    fn grading_shift() {
        let g = g4();
        let plus = SectionBrane::new(SectionClass::from_i64(2, -1, 1, rat(1, 4)), 1, g.generator(0), g.identity()).unwrap();
        let minus = SectionBrane::new(plus.class().clone(), -1, g.generator(0), g.identity()).unwrap();
        let two = FormalSum::from_terms([(Brane::from(plus.clone()), BigInt::from(2))]);
        let rhs = FormalSum::from_terms([(Brane::from(plus), BigInt::from(3)), (Brane::from(minus), BigInt::one())]);
        assert_eq!(normal_form(&two, &g), normal_form(&rhs, &g));
    }

    fn tuple_strategy() -> impl Strategy<Value = (i64, i64, i64, i64, i64, i64, i64, i64, i64, i64, i64)> {
        (-3i64..4, -3i64..4, -3i64..4, -3i64..4, 0i64..2, 0i64..2, 0i64..24, 0i64..4, 0i64..24, 0i64..4, 0i64..2)
    }

    fn brane_strategy() -> impl Strategy<Value = (Brane, i64)> {
        let g = g4();
        let fiber = (0i64..24, 0i64..12, 0i64..4, 0i64..4).prop_map({
            let g = g.clone();
            move |(x, y, a, b)| {
                Brane::from(FiberBrane::new(rat(x, 24), rat(y, 12), g.element_i64(&[a]).unwrap(), g.element_i64(&[b]).unwrap()))
            }
        });
        let sect = (-3i64..4, -3i64..4, 0i64..2, 0i64..6, any::<bool>(), 0i64..4, 0i64..2).prop_map({
            let g = g.clone();
            move |(m, n, l, t, s, h, t2)| {
                Brane::from(
                    SectionBrane::new(
                        SectionClass::from_i64(m, n, l, rat(t, 6)),
                        if s { 1 } else { -1 },
                        g.element_i64(&[h]).unwrap(),
                        g.element_i64(&[2 * t2]).unwrap(),
                    )
                    .unwrap(),
                )
            }
        });
        let lx = proptest::collection::vec((0i64..12, any::<bool>(), 0i64..4), 1..3).prop_map({
            let g = g.clone();
            move |v| {
                let copies = v
                    .into_iter()
                    .map(|(p, s, nu)| XCopy {
                        position: CircleValue::from_ratio(p, 12),
                        sign: if s { 1 } else { -1 },
                        nu: g.element_i64(&[nu]).unwrap(),
                    })
                    .collect();
                Brane::from(LiftXBrane::new(copies, g.identity()).unwrap())
            }
        });
        let ly = proptest::collection::vec((any::<bool>(), -2i64..3, 0i64..2), 1..3).prop_map({
            let g = g.clone();
            move |v| {
                let comps = v
                    .into_iter()
                    .map(|(h, w, nu)| YComponent {
                        level: if h { YLevel::Half } else { YLevel::Zero },
                        weight: w.into(),
                        nu: g.element_i64(&[2 * nu]).unwrap(),
                    })
                    .collect();
                Brane::from(LiftYBrane::new(comps).unwrap())
            }
        });
        (prop_oneof![fiber, sect, lx, ly], -2i64..3)
    }

    fn sum_of(v: Vec<(Brane, i64)>) -> FormalSum {
        FormalSum::from_terms(v.into_iter().map(|(b, k)| (b, BigInt::from(k))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn normal_form_is_additive(
            a in proptest::collection::vec(brane_strategy(), 0..4),
            b in proptest::collection::vec(brane_strategy(), 0..4),
        ) {
            let g = g4();
            let (a, b) = (sum_of(a), sum_of(b));
            prop_assert_eq!(normal_form(&(&a + &b), &g), &normal_form(&a, &g) + &normal_form(&b, &g));
        }

        #[test]
        fn realize_inverts_normal_form(t in tuple_strategy()) {
            let g = g4();
            let (a, b, m, n, l, g2, ac, ag, pc, pg, _) = t;
            let tuple = InvariantTuple {
                c: H2Class::from_i64(a, b, m, n, l),
                g2: g.element_i64(&[2 * g2]).unwrap(),
                a: (CircleValue::from_ratio(ac, 24), g.element_i64(&[ag]).unwrap()),
                a_prime: (CircleValue::from_ratio(pc, 24), g.element_i64(&[pg]).unwrap()),
            };
            prop_assert_eq!(normal_form(&realize(&tuple).unwrap(), &g), tuple);
        }

        #[test]
        fn normal_form_decides_its_own_realization(v in proptest::collection::vec(brane_strategy(), 0..4)) {
            let g = g4();
            let s = sum_of(v);
            let r = realize(&normal_form(&s, &g)).unwrap();
            prop_assert!(is_cobordant(&s, &r, &g));
        }
    }
}
