mod common;

use common::*;
use equm::representation::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn canonical_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=4);
        let (m, space) = rng_model(&mut rng, n, -2, 4);
        let c = canonicalize(&m, &space).unwrap();
        let report = verify_equivalence(&m, &c, &space, 4).unwrap();
        prop_assert!(report.is_equivalent(), "{} for {:?}", report, m);

        prop_assert!(c.classes().len() <= n);
        let mut members: Vec<usize> = c.classes().iter().flat_map(|k| k.members.clone()).collect();
        members.sort();
        prop_assert_eq!(members, (0..n).collect::<Vec<_>>());
        for (i, k) in c.classes().iter().enumerate() {
            prop_assert_eq!(k.index, i);
            prop_assert!(k.standard_utilities.iter().all(|u| u > &num_traits::Zero::zero()));
        }

        let again = canonicalize(&c.to_utility_model(&space).unwrap(), &space).unwrap();
        prop_assert_eq!(again, c);
    }

    #[test]
    fn canonical_survives_scaling(seed in any::<u64>(), k in arb_positive(-3, 3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=4);
        let (m, space) = rng_model(&mut rng, n, -2, 4);
        let c = canonicalize(&m, &space).unwrap();
        let scaled = canonicalize(&m.scaled(&k), &space).unwrap();
        prop_assert_eq!(c, scaled);
    }
}
