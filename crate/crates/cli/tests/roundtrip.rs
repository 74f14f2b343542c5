use std::sync::Arc;

use cobk_cli::syntax::{parse_sum, parse_t2_sum, print_sum, print_t2_sum};
use cobk_core::abelian::{rat, CircleValue, FGAbelianGroup};
use cobk_core::cob_t2::{CircleBrane, Direction};
use cobk_core::mirror::random_sum;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn groups() -> Vec<Arc<FGAbelianGroup>> {
    vec![
        Arc::new(FGAbelianGroup::trivial()),
        Arc::new(FGAbelianGroup::cyclic(4)),
        Arc::new(FGAbelianGroup::from_i64(1, &[2]).unwrap()),
        Arc::new(FGAbelianGroup::from_i64(2, &[2, 6]).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn brane_sums_round_trip(seed in any::<u64>(), which in 0usize..4) {
        let g = &groups()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_sum(&mut rng, g);
        let b = random_sum(&mut rng, g);
        let s = &a - &b.scale(&3.into());
        let printed = print_sum(&s);
        prop_assert_eq!(parse_sum(&printed, g).unwrap(), s, "{}", printed);
    }

    #[test]
    fn circle_sums_round_trip(seed in any::<u64>(), which in 0usize..4) {
        let g = &groups()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(0..6);
        let sum: Vec<CircleBrane> = (0..n).map(|_| {
            let q = rng.gen_range(1..10);
            let coords: Vec<i64> = (0..g.ngens()).map(|_| rng.gen_range(0..2)).collect();
            CircleBrane {
                direction: if rng.gen_bool(0.5) { Direction::Horizontal } else { Direction::Vertical },
                position: CircleValue::new(rat(rng.gen_range(0..q), q)),
                monodromy: g.element_i64(&coords).unwrap(),
                sign: if rng.gen_bool(0.5) { 1 } else { -1 },
            }
        }).collect();
        let printed = print_t2_sum(&sum);
        prop_assert_eq!(parse_t2_sum(&printed, g).unwrap(), sum, "{}", printed);
    }
}
