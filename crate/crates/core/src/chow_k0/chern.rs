use std::sync::Arc;

use num_bigint::BigInt;

use crate::abelian::{CircleValue, GroupElement};

use super::classes::{ChowClass, DivisorClass, EllipticPoint, K0Class, ZeroCycle};
use super::intersection::IntersectionTable;
use super::ChowError;

/// A map on one summand of `CH¹`.
pub type BlockMap = Arc<dyn Fn(&DivisorClass) -> ZeroCycle + Send + Sync>;

/// `H(⊕vᵢ) = Σ Hᵢ(vᵢ) + Σ_{i<j} vᵢvⱼ`.
#[derive(Clone)]
pub struct QuasilinearMap {
    table: IntersectionTable,
    blocks: Vec<BlockMap>,
}

fn block_samples(i: usize, p: &EllipticPoint) -> Vec<DivisorClass> {
    let g = p.group();
    let z = || EllipticPoint::zero(g);
    match i {
        0 => (-3..=3).map(|k| DivisorClass::from_i64(k, 0, 0, 0, z())).collect(),
        1 => (-3..=3).map(|k| DivisorClass::from_i64(0, k, 0, 0, z())).collect(),
        2 => (0..2).map(|k| DivisorClass::from_i64(0, 0, k, 0, z())).collect(),
        3 => (0..2).map(|k| DivisorClass::from_i64(0, 0, 0, k, z())).collect(),
        _ => {
            let mut gs: Vec<GroupElement> = (0..g.ngens()).map(|j| g.generator(j)).collect();
            gs.push(g.identity());
            let mut out = Vec::new();
            for k in 0..6 {
                for e in &gs {
                    out.push(DivisorClass::from_i64(0, 0, 0, 0, EllipticPoint::new(CircleValue::from_ratio(k, 6), e.clone())));
                }
            }
            out
        }
    }
}

/// Assembles `H` from block maps, checking `Hᵢ(α + β) = Hᵢ(α) + Hᵢ(β) + αβ` on sample pairs
/// of each block.
pub fn build_quasilinear(blocks: Vec<BlockMap>, table: IntersectionTable) -> Result<QuasilinearMap, ChowError> {
    if blocks.len() != 5 {
        return Err(ChowError::BlockCount(blocks.len()));
    }
    for (i, h) in blocks.iter().enumerate() {
        let samples = block_samples(i, table.half_class());
        for a in &samples {
            for b in &samples {
                let lhs = h(&(a + b));
                let rhs = &(&h(a) + &h(b)) + &table.intersect(a, b)?;
                if lhs != rhs {
                    return Err(ChowError::BlockMapNotQuasilinear(i));
                }
            }
        }
    }
    Ok(QuasilinearMap { table, blocks })
}

/// The blocks for the bielliptic surface: `H₂(kD₂) = k²P`, all others zero.
pub fn bielliptic_blocks(table: &IntersectionTable) -> Vec<BlockMap> {
    let p = table.half_class().clone();
    let zero: BlockMap = {
        let g = p.group().clone();
        Arc::new(move |_: &DivisorClass| ZeroCycle::zero(&g))
    };
    let h2: BlockMap = Arc::new(move |v: &DivisorClass| ZeroCycle::new(BigInt::from(0), p.scale(&(&v.d2 * &v.d2))));
    vec![zero.clone(), h2, zero.clone(), zero.clone(), zero]
}

impl QuasilinearMap {
    pub fn bielliptic(table: IntersectionTable) -> Result<Self, ChowError> {
        let blocks = bielliptic_blocks(&table);
        build_quasilinear(blocks, table)
    }

    pub fn table(&self) -> &IntersectionTable {
        &self.table
    }

    pub fn apply(&self, v: &DivisorClass) -> Result<ZeroCycle, ChowError> {
        let parts: Vec<DivisorClass> = (0..5).map(|i| v.block(i)).collect();
        let mut out = ZeroCycle::zero(v.pic0.group());
        for (h, part) in self.blocks.iter().zip(&parts) {
            out = &out + &h(part);
        }
        for i in 0..5 {
            for j in i + 1..5 {
                out = &out + &self.table.intersect(&parts[i], &parts[j])?;
            }
        }
        Ok(out)
    }

    /// `ch̃ = rk + c₁ + (H(c₁) − c₂)`.
    pub fn chern(&self, rk: &BigInt, c1: &DivisorClass, c2: &ZeroCycle) -> Result<ChowClass, ChowError> {
        Ok(ChowClass { fundamental: rk.clone(), divisor: c1.clone(), zero_cycle: &self.apply(c1)? - c2 })
    }
}

/// `ch̃ ∘ h: (n₁, …, n₆, p, p′) ↦ Σ nᵢZᵢ + n₄P + Z_p + Z′_{p′}` with `Z₁ = Y`, `Z₂ = p₀`,
/// `Z₃..Z₆ = D₁..D₄`, `Z_p = D₅ᵖ` and `Z′_{p′} = p₀ − p′`.
pub fn h_map(k: &K0Class, half_class: &EllipticPoint) -> ChowClass {
    let divisor = DivisorClass::new(
        k.n[2].clone(),
        k.n[3].clone(),
        &BigInt::from(k.n5()),
        &BigInt::from(k.n6()),
        k.p.clone(),
    );
    let alb = &half_class.scale(&k.n[3]) - &k.p_prime;
    ChowClass { fundamental: k.n[0].clone(), divisor, zero_cycle: ZeroCycle::new(k.n[1].clone(), alb) }
}

/// Inverse of [`h_map`] on symbol-free classes.
pub fn h_inverse(c: &ChowClass, half_class: &EllipticPoint) -> Result<K0Class, ChowError> {
    if !c.zero_cycle.is_explicit() {
        return Err(ChowError::SymbolicClass);
    }
    let d = &c.divisor;
    let p_prime = &half_class.scale(&d.d2) - &c.zero_cycle.alb;
    Ok(K0Class::new(
        [c.fundamental.clone(), c.zero_cycle.degree.clone(), d.d1.clone(), d.d2.clone()],
        &BigInt::from(d.d3()),
        &BigInt::from(d.d4()),
        d.pic0.clone(),
        p_prime,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{FGAbelianGroup, IntegerMatrix};
    use num_traits::{Signed, Zero};
    use proptest::prelude::*;

    fn g() -> Arc<FGAbelianGroup> {
        Arc::new(FGAbelianGroup::from_i64(1, &[2]).unwrap())
    }

    fn p(g: &Arc<FGAbelianGroup>) -> EllipticPoint {
        EllipticPoint::new(CircleValue::from_ratio(1, 4), g.identity())
    }

    fn h() -> QuasilinearMap {
        let g = g();
        QuasilinearMap::bielliptic(IntersectionTable::symbolic(p(&g)).unwrap()).unwrap()
    }

    fn point(g: &Arc<FGAbelianGroup>, c: i64, d: i64, f: i64, t: i64) -> EllipticPoint {
        EllipticPoint::new(CircleValue::from_ratio(c, d), g.element_i64(&[f, t]).unwrap())
    }

    #[test]
    fn quasilinear_examples() {
        let g = g();
        let table = IntersectionTable::symbolic(p(&g)).unwrap();
        let zero: BlockMap = {
            let g = g.clone();
            Arc::new(move |_: &DivisorClass| ZeroCycle::zero(&g))
        };
        let mut trivial_table = IntersectionTable::symbolic(EllipticPoint::zero(&g)).unwrap();
        for (i, j) in crate::chow_k0::CROSS_PAIRS {
            trivial_table = trivial_table.with_product(i, j, ZeroCycle::zero(&g)).unwrap();
        }
        let h0 = build_quasilinear(vec![zero.clone(); 5], trivial_table).unwrap();
        let v = DivisorClass::from_i64(2, 5, 1, 1, EllipticPoint::zero(&g));
        assert!(h0.apply(&v).unwrap().is_zero());

        let h = h();
        for m in -4..=4 {
            let v = DivisorClass::from_i64(0, m, 0, 0, EllipticPoint::zero(&g));
            assert_eq!(h.apply(&v).unwrap().alb, p(&g).scale(&BigInt::from(m * m)));
        }
        let v = DivisorClass::from_i64(1, 1, 0, 0, EllipticPoint::zero(&g));
        let expected = &ZeroCycle::new(BigInt::zero(), p(&g)) + &ZeroCycle::symbol(0, &BigInt::from(1), &g);
        assert_eq!(h.apply(&v).unwrap(), expected);

        // A block map that is linear on D₂ misses the D₂² correction.
        let linear: BlockMap = {
            let q = p(&g);
            Arc::new(move |v: &DivisorClass| ZeroCycle::new(BigInt::zero(), q.scale(&v.d2)))
        };
        let blocks = vec![zero.clone(), linear, zero.clone(), zero.clone(), zero];
        assert!(matches!(build_quasilinear(blocks, table), Err(ChowError::BlockMapNotQuasilinear(1))));
    }

    #[test]
    fn chern_examples() {
        let g = g();
        let h = h();
        let zero_d = DivisorClass::zero(&g);
        let o = h.chern(&BigInt::from(1), &zero_d, &ZeroCycle::zero(&g)).unwrap();
        assert_eq!(o, ChowClass { fundamental: BigInt::from(1), divisor: zero_d.clone(), zero_cycle: ZeroCycle::zero(&g) });
        let pt = ZeroCycle::point(point(&g, 1, 5, 0, 1));
        let skyscraper = h.chern(&BigInt::zero(), &zero_d, &-&pt).unwrap();
        assert_eq!(skyscraper.zero_cycle, pt);
        // 𝒪(D) = 1 + D + H(D).
        let d = DivisorClass::from_i64(0, 3, 0, 1, EllipticPoint::zero(&g));
        let od = h.chern(&BigInt::from(1), &d, &ZeroCycle::zero(&g)).unwrap();
        assert_eq!(od.zero_cycle, h.apply(&d).unwrap());
    }

    #[test]
    fn h_map_examples() {
        let g = g();
        let z = || EllipticPoint::zero(&g);
        let y = h_map(&K0Class::from_i64([1, 0, 0, 0, 0, 0], z(), z()), &p(&g));
        assert_eq!(y.fundamental, BigInt::from(1));
        assert!(y.divisor.is_zero() && y.zero_cycle.is_zero());
        let z4 = h_map(&K0Class::from_i64([0, 0, 0, 1, 0, 0], z(), z()), &p(&g));
        assert_eq!(z4.divisor, DivisorClass::from_i64(0, 1, 0, 0, z()));
        assert_eq!(z4.zero_cycle, ZeroCycle::new(BigInt::zero(), p(&g)));
        let z5 = K0Class::from_i64([0, 0, 0, 0, 1, 0], z(), z());
        assert!(h_map(&(&z5 + &z5), &p(&g)).is_zero());
    }

    #[test]
    fn h_map_free_part_is_unimodular() {
        let g = g();
        let z = || EllipticPoint::zero(&g);
        let mut columns = Vec::new();
        for i in 0..4 {
            let mut n = [0; 6];
            n[i] = 1;
            let c = h_map(&K0Class::from_i64(n, z(), z()), &p(&g));
            columns.push(vec![c.fundamental, c.zero_cycle.degree, c.divisor.d1, c.divisor.d2]);
        }
        let m = IntegerMatrix::from_columns(4, &columns);
        assert_eq!(m.determinant().abs(), BigInt::from(1));
    }

    #[test]
    fn h_map_torsion_part_is_injective() {
        let g = g();
        let z = || EllipticPoint::zero(&g);
        let images: Vec<_> = (0..4)
            .map(|k| h_map(&K0Class::from_i64([0, 0, 0, 0, k & 1, k >> 1], z(), z()), &p(&g)).divisor)
            .collect();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(images[i] == images[j], i == j);
            }
        }
    }

    fn k0_strategy() -> impl Strategy<Value = K0Class> {
        (proptest::array::uniform6(-5i64..6), (0i64..24, -3i64..4, 0i64..2), (0i64..24, -3i64..4, 0i64..2)).prop_map(
            |(n, a, b)| {
                let g = g();
                K0Class::from_i64(n, point(&g, a.0, 24, a.1, a.2), point(&g, b.0, 24, b.1, b.2))
            },
        )
    }

    proptest! {
        #[test]
        fn h_map_is_additive_and_invertible(a in k0_strategy(), b in k0_strategy()) {
            let g = g();
            let p = p(&g);
            prop_assert_eq!(h_map(&(&a + &b), &p), &h_map(&a, &p) + &h_map(&b, &p));
            prop_assert_eq!(h_inverse(&h_map(&a, &p), &p).unwrap(), a.clone());
            let c = h_map(&a, &p);
            prop_assert_eq!(h_map(&h_inverse(&c, &p).unwrap(), &p), c);
        }

        #[test]
        fn quasilinear_identity(
            a in (proptest::array::uniform4(-6i64..7), 0i64..12, -3i64..4, 0i64..2),
            b in (proptest::array::uniform4(-6i64..7), 0i64..12, -3i64..4, 0i64..2),
        ) {
            let g = g();
            let h = h();
            let mk = |(v, c, f, t): ([i64; 4], i64, i64, i64)| DivisorClass::from_i64(v[0], v[1], v[2], v[3], point(&g, c, 12, f, t));
            let (a, b) = (mk(a), mk(b));
            let lhs = h.apply(&(&a + &b)).unwrap();
            let rhs = &(&h.apply(&a).unwrap() + &h.apply(&b).unwrap()) + &h.table().intersect(&a, &b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn chern_is_additive_on_direct_sums(
            r in (-3i64..4, -3i64..4),
            a in (proptest::array::uniform4(-4i64..5), 0i64..12, 0i64..2),
            b in (proptest::array::uniform4(-4i64..5), 0i64..12, 0i64..2),
            c in ((-5i64..6, 0i64..12), (-5i64..6, 0i64..12)),
        ) {
            let g = g();
            let h = h();
            let mk = |(v, k, t): ([i64; 4], i64, i64)| DivisorClass::from_i64(v[0], v[1], v[2], v[3], point(&g, k, 12, 0, t));
            let (c1a, c1b) = (mk(a), mk(b));
            let c2a = ZeroCycle::new(c.0.0.into(), point(&g, c.0.1, 12, 1, 0));
            let c2b = ZeroCycle::new(c.1.0.into(), point(&g, c.1.1, 12, 0, 1));
            // Whitney: c₂(F₁ ⊕ F₂) = c₂(F₁) + c₂(F₂) + c₁(F₁)c₁(F₂).
            let c2 = &(&c2a + &c2b) + &h.table().intersect(&c1a, &c1b).unwrap();
            let sum = h.chern(&BigInt::from(r.0 + r.1), &(&c1a + &c1b), &c2).unwrap();
            let parts = &h.chern(&r.0.into(), &c1a, &c2a).unwrap() + &h.chern(&r.1.into(), &c1b, &c2b).unwrap();
            prop_assert_eq!(sum, parts);
        }
    }
}
