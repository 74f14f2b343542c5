//! The dictionary from tropical branes on the bielliptic surface to `K₀` of the mirror, and
//! an end-to-end comparison with the cobordism normal form.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::abelian::{rat, CircleValue, FGAbelianGroup, GroupElement, Rational};
use crate::chow_k0::{h_map, ChowClass, DivisorClass, EllipticPoint, K0Class, ZeroCycle};
use crate::cob_biell::{
    normal_form, reduce, splitting_section, Brane, FiberBrane, FormalSum, InvariantTuple, LiftXBrane, LiftYBrane,
    SectionBrane, XCopy, YComponent, YLevel,
};
use crate::homology::H2Class;
use crate::tropical::SectionClass;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MirrorError {
    #[error("brane is not in the generator set: {0}")]
    NotInGeneratorSet(String),
    #[error("the 2-torsion of {0} is not Z/2")]
    UnsupportedCoefficients(String),
}

/// The identification `G₍₂₎ ≅ ℤ₂`.
#[derive(Clone, Debug)]
pub struct TwoTorsionIso {
    generator: GroupElement,
}

impl TwoTorsionIso {
    pub fn new(g: &Arc<FGAbelianGroup>) -> Result<Self, MirrorError> {
        let mut t = g.two_torsion_elements();
        t.retain(|x| !x.is_identity());
        if t.len() != 1 {
            return Err(MirrorError::UnsupportedCoefficients(g.to_string()));
        }
        Ok(TwoTorsionIso { generator: t.remove(0) })
    }

    pub fn to_z2(&self, x: &GroupElement) -> u8 {
        u8::from(x == &self.generator)
    }

    pub fn from_z2(&self, k: u8) -> GroupElement {
        if k % 2 == 1 {
            self.generator.clone()
        } else {
            self.generator.group().identity()
        }
    }
}

/// Generator patterns and their `K₀` images. Sections are first cut into generators.
///
/// - `(Γ₀, h, ηZ2)` ↦ `[𝒪_Y] + ι(ηZ2)·[𝒪_{Z₆}]`, with `p = −(0, h)`
/// - `(F_b, λx)` ↦ skyscraper `[𝒪_{p₀}]`, with `p′ = −(2x, λx)`
/// - `x`-sheet `(u, s, ν)` ↦ `s·[𝒪_{D₁}]`, with `p = −(s(u − 1/2), ν)`
/// - `y`-lift of weight `w` over `{y = 1/2}` ↦ `w·[𝒪_{D₂}] + w·ι(ν)·[𝒪_{Z₆}]`
/// - `y`-lift of weight `w` over `{y = 0}` ↦ as over `{y = 1/2}`, plus `w·[𝒪_{Z₅}]`
pub fn mirror_class(sum: &FormalSum, g: &Arc<FGAbelianGroup>) -> Result<K0Class, MirrorError> {
    let iso = TwoTorsionIso::new(g)?;
    let mut out = K0Class::zero(g);
    let zero = || EllipticPoint::zero(g);
    for (b, k) in reduce(sum).terms() {
        check_group(b, g)?;
        let term = match b {
            Brane::Section(s) => {
                if !s.class().is_zero() || s.parity() != 1 {
                    return Err(MirrorError::NotInGeneratorSet(format!("{b:?}")));
                }
                let n6 = BigInt::from(iso.to_z2(s.eta2()));
                let p = -&EllipticPoint::new(CircleValue::zero(), s.eta_z().clone());
                K0Class::new([One::one(), Zero::zero(), Zero::zero(), Zero::zero()], &Zero::zero(), &n6, p, zero())
            }
            Brane::Fiber(f) => {
                let p_prime = -&EllipticPoint::new(f.u(), f.lx().clone());
                K0Class::new([Zero::zero(), One::one(), Zero::zero(), Zero::zero()], &Zero::zero(), &Zero::zero(), zero(), p_prime)
            }
            Brane::LiftX(l) => {
                let mut t = K0Class::zero(g);
                for c in l.copies() {
                    let s = BigInt::from(c.sign);
                    let offset = (c.position.value() - rat(1, 2)) * Rational::from_integer(s.clone());
                    let p = -&EllipticPoint::new(CircleValue::new(offset), c.nu.clone());
                    let sheet = K0Class::new([Zero::zero(), Zero::zero(), s, Zero::zero()], &Zero::zero(), &Zero::zero(), p, zero());
                    t = &t + &sheet;
                }
                t
            }
            Brane::LiftY(l) => {
                let mut t = K0Class::zero(g);
                for c in l.components() {
                    let w = &c.weight;
                    let n5 = if c.level == YLevel::Zero { w.clone() } else { BigInt::zero() };
                    let n6 = w * BigInt::from(iso.to_z2(&c.nu));
                    let comp = K0Class::new([Zero::zero(), Zero::zero(), Zero::zero(), w.clone()], &n5, &n6, zero(), zero());
                    t = &t + &comp;
                }
                t
            }
        };
        out = &out + &term.scale(k);
    }
    Ok(out)
}

fn check_group(b: &Brane, g: &Arc<FGAbelianGroup>) -> Result<(), MirrorError> {
    let group = match b {
        Brane::Section(s) => s.eta_z().group(),
        Brane::Fiber(f) => f.lx().group(),
        Brane::LiftX(l) => l.eta2().group(),
        Brane::LiftY(l) => match l.components().first() {
            Some(c) => c.nu.group(),
            None => return Ok(()),
        },
    };
    if group != g {
        return Err(MirrorError::NotInGeneratorSet(format!("decorated over {group}, expected {g}")));
    }
    Ok(())
}

/// The fixed coordinate change from cobordism invariants to Chow coordinates:
/// `[Y] ↔ Γ₀`, `pt ↔ fiber`, `(D₁, D₂, D₃) ↔ (L_{C₁}, L_{C₂}, L_{C₂} − L_{C₃})`, `D₄ ↔ Ψ`,
/// `Pic⁰ ↔ −a′` and `Alb ↔ a + n·P`.
pub fn coordinate_change(t: &InvariantTuple, half_class: &EllipticPoint) -> Result<ChowClass, MirrorError> {
    let iso = TwoTorsionIso::new(t.g2.group())?;
    let c = &t.c;
    let divisor = DivisorClass::new(
        c.m.clone(),
        c.n.clone(),
        &BigInt::from(c.l()),
        &BigInt::from(iso.to_z2(&t.g2)),
        -&EllipticPoint::new(t.a_prime.0.clone(), t.a_prime.1.clone()),
    );
    let alb = &half_class.scale(&c.n) + &EllipticPoint::new(t.a.0.clone(), t.a.1.clone());
    Ok(ChowClass { fundamental: c.b.clone(), divisor, zero_cycle: ZeroCycle::new(c.a.clone(), alb) })
}

#[derive(Clone, Debug, Default)]
pub struct IsomorphismReport {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl IsomorphismReport {
    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `ch̃ ∘ h ∘ mirror_class` with `coordinate_change ∘ normal_form` on one sum.
pub fn compare(sum: &FormalSum, g: &Arc<FGAbelianGroup>, half_class: &EllipticPoint) -> Result<Option<String>, MirrorError> {
    let lhs = h_map(&mirror_class(sum, g)?, half_class);
    let rhs = coordinate_change(&normal_form(sum, g), half_class)?;
    Ok((lhs != rhs).then(|| format!("mirror side {lhs} differs from cobordism side {rhs}")))
}

fn thetas() -> Vec<Rational> {
    vec![Rational::zero(), rat(1, 4), rat(1, 3), rat(1, 2)]
}

fn generators_of(g: &Arc<FGAbelianGroup>) -> Vec<GroupElement> {
    (0..g.ngens()).map(|i| g.generator(i)).chain([g.identity()]).collect()
}

/// The generating set: splitting-section basis, decorated `Γ₀`, fibers, single `x`-sheets,
/// `y`-lift components, and sections over a grid.
pub fn generating_set(g: &Arc<FGAbelianGroup>) -> Vec<FormalSum> {
    let gens = generators_of(g);
    let twos = g.two_torsion_elements();
    let e = g.identity();
    let mut out = vec![FormalSum::zero()];
    for i in 0..5 {
        let mut v = [0i64; 5];
        v[i] = 1;
        let c = H2Class::from_i64(v[0], v[1], v[2], v[3], v[4]);
        out.push(splitting_section(&c, &e).expect("identity is 2-torsion"));
    }
    for t in &twos {
        out.push(splitting_section(&H2Class::zero(), t).expect("2-torsion"));
    }
    for h in &gens {
        for t in &twos {
            out.push(FormalSum::single(SectionBrane::zero_section(h.clone(), t.clone()).expect("2-torsion")));
        }
    }
    for x in [rat(0, 1), rat(1, 6), rat(1, 4), rat(2, 5)] {
        for y in [rat(0, 1), rat(1, 3), rat(1, 2)] {
            for lx in &gens {
                out.push(FormalSum::single(FiberBrane::new(x.clone(), y.clone(), lx.clone(), gens[0].clone())));
            }
        }
    }
    for u in [CircleValue::zero(), CircleValue::from_ratio(1, 3), CircleValue::from_ratio(1, 2)] {
        for sign in [1i8, -1] {
            for nu in &gens {
                let sheet = XCopy { position: u.clone(), sign, nu: nu.clone() };
                out.push(FormalSum::single(LiftXBrane::new(vec![sheet], e.clone()).expect("valid")));
            }
        }
    }
    for level in [YLevel::Zero, YLevel::Half] {
        for nu in &twos {
            let comp = YComponent { level, weight: BigInt::one(), nu: nu.clone() };
            out.push(FormalSum::single(LiftYBrane::new(vec![comp]).expect("2-torsion")));
        }
    }
    for m in -2..=2 {
        for n in -2..=2 {
            for l in 0..2 {
                for theta in thetas() {
                    for (eta, parity) in [(&gens[0], 1), (&e, -1)] {
                        let class = SectionClass::from_i64(m, n, l, theta.clone());
                        let eta2 = twos.last().expect("identity").clone();
                        let s = SectionBrane::new(class, parity, eta.clone(), eta2).expect("valid section");
                        out.push(FormalSum::single(s));
                    }
                }
            }
        }
    }
    out
}

fn random_element(rng: &mut ChaCha8Rng, g: &Arc<FGAbelianGroup>) -> GroupElement {
    let coords: Vec<BigInt> = (0..g.ngens())
        .map(|i| {
            if i < g.free_rank() {
                BigInt::from(rng.gen_range(-3i64..=3))
            } else {
                let d = g.generator_order(i).to_i64().expect("small torsion");
                BigInt::from(rng.gen_range(0..d))
            }
        })
        .collect();
    g.element(coords).expect("coordinate count")
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let q = rng.gen_range(1i64..=12);
    rat(rng.gen_range(-2 * q..=2 * q), q)
}

/// A random generator with random rational parameters and local systems.
pub fn random_brane(rng: &mut ChaCha8Rng, g: &Arc<FGAbelianGroup>) -> Brane {
    let twos = g.two_torsion_elements();
    let two = |rng: &mut ChaCha8Rng| twos[rng.gen_range(0..twos.len())].clone();
    match rng.gen_range(0..4) {
        0 => Brane::from(FiberBrane::new(random_rational(rng), random_rational(rng), random_element(rng, g), random_element(rng, g))),
        1 => {
            let class = SectionClass::new(
                BigInt::from(rng.gen_range(-3i64..=3)),
                BigInt::from(rng.gen_range(-3i64..=3)),
                &BigInt::from(rng.gen_range(0i64..2)),
                CircleValue::new(random_rational(rng)),
            );
            let parity = if rng.gen_bool(0.5) { 1 } else { -1 };
            Brane::from(SectionBrane::new(class, parity, random_element(rng, g), two(rng)).expect("valid section"))
        }
        2 => {
            let k = rng.gen_range(1..=3);
            let copies = (0..k)
                .map(|_| XCopy {
                    position: CircleValue::new(random_rational(rng)),
                    sign: if rng.gen_bool(0.5) { 1 } else { -1 },
                    nu: random_element(rng, g),
                })
                .collect();
            Brane::from(LiftXBrane::new(copies, two(rng)).expect("valid lift"))
        }
        _ => {
            let k = rng.gen_range(1..=2);
            let comps = (0..k)
                .map(|_| YComponent {
                    level: if rng.gen_bool(0.5) { YLevel::Half } else { YLevel::Zero },
                    weight: BigInt::from(rng.gen_range(-3i64..=3)),
                    nu: two(rng),
                })
                .collect();
            Brane::from(LiftYBrane::new(comps).expect("valid lift"))
        }
    }
}

/// A random integer combination of up to five random generators.
pub fn random_sum(rng: &mut ChaCha8Rng, g: &Arc<FGAbelianGroup>) -> FormalSum {
    let k = rng.gen_range(1..=5);
    FormalSum::from_terms((0..k).map(|_| {
        let b = random_brane(rng, g);
        (b, BigInt::from(rng.gen_range(-4i64..=4)))
    }))
}

/// Checks the generating set and `random` seeded random combinations.
pub fn verify_isomorphism(
    g: &Arc<FGAbelianGroup>,
    half_class: &EllipticPoint,
    seed: u64,
    random: usize,
) -> Result<IsomorphismReport, MirrorError> {
    TwoTorsionIso::new(g)?;
    let mut report = IsomorphismReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_sums: Vec<FormalSum> = (0..random).map(|_| random_sum(&mut rng, g)).collect();
    for s in generating_set(g).iter().chain(&random_sums) {
        report.checked += 1;
        if let Some(m) = compare(s, g, half_class)? {
            report.mismatches.push(m);
        }
    }
    Ok(report)
}
