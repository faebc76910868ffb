use std::sync::Arc;

use facto_core::budget::Budget;
use facto_core::catalogue;
use facto_core::catfib::{comprehensive_factorize, is_discrete_right_fibration, right_cover_check, slice_factorize, Side};
use facto_core::orth::{enumerate_functors, Functor};
use proptest::prelude::*;

#[test]
fn identity_factors_through_isos() {
    for c in catalogue::categories() {
        let id = Functor::identity(c.clone());
        for side in [Side::Right, Side::Left] {
            let fac = comprehensive_factorize(&id, side).unwrap();
            assert!(fac.first.is_bijective() && fac.second.is_bijective());
        }
    }
}

#[test]
fn slices_cover_their_base() {
    for c in catalogue::categories() {
        let family: Vec<Functor> = (0..c.num_objects())
            .map(|o| slice_factorize(&c, o, Side::Right).unwrap().projection)
            .collect();
        assert!(right_cover_check(&c, &family, Side::Right).unwrap());
        if c.num_objects() > 0 {
            assert!(!right_cover_check(&c, &[], Side::Right).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fibration_first_leg_is_an_iso(i in 0usize..64, j in 0usize..64, k in 0usize..1000) {
        let cats = catalogue::categories();
        let (c, d): (&Arc<_>, &Arc<_>) = (&cats[i % cats.len()], &cats[j % cats.len()]);
        let fs = enumerate_functors(c, d, &Budget::default()).unwrap();
        prop_assume!(!fs.is_empty());
        let f = &fs[k % fs.len()];
        let fac = comprehensive_factorize(f, Side::Right).unwrap();
        prop_assert!(fac.composite().unwrap().same_maps(f));
        if is_discrete_right_fibration(f) {
            prop_assert!(fac.first.is_bijective());
        }
    }
}
