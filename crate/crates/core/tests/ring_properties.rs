use std::sync::Arc;

use facto_core::budget::Budget;
use facto_core::catalogue;
use facto_core::finring::{enumerate_homs, is_isomorphic, prime_ideals, FinRing, Ideal};
use facto_core::ringfacto::{classify_ring, cover_check, finite_fields, Family, RingSystem, Topology};
use proptest::prelude::*;

fn small_rings() -> Vec<Arc<FinRing>> {
    catalogue::rings().into_iter().filter(|r| r.order() <= 9).collect()
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorizations_compose_back_with_legs_in_class(i in 0usize..64, j in 0usize..64, k in 0usize..1000) {
        let rings = small_rings();
        let (a, b) = (&rings[i % rings.len()], &rings[j % rings.len()]);
        let homs = enumerate_homs(a, b, &Budget::default()).unwrap();
        prop_assume!(!homs.is_empty());
        let u = &homs[k % homs.len()];
        for sys in RingSystem::ALL {
            let f = sys.factorize(u);
            prop_assert!(f.check(u).is_ok(), "{sys}: {:?}", f.check(u));
        }
    }

    #[test]
    fn relabelling_preserves_primes_and_classification(i in 0usize..64, seed in any::<u64>()) {
        let rings = catalogue::rings();
        let a = &rings[i % rings.len()];
        let b = Arc::new(a.permuted(&shuffled(a.order(), seed)));
        prop_assert!(is_isomorphic(a, &b));
        prop_assert_eq!(prime_ideals(a).len(), prime_ideals(&b).len());
        let (ca, cb) = (classify_ring(a), classify_ring(&b));
        prop_assert_eq!(ca.is_local.holds, cb.is_local.holds);
        prop_assert_eq!(ca.is_domain.holds, cb.is_domain.holds);
        prop_assert_eq!(ca.is_field.holds, cb.is_field.holds);
        prop_assert_eq!(ca.is_fat_field.holds, cb.is_fat_field.holds);
    }

    #[test]
    fn zar_certificate_is_a_partition_of_unity(i in 0usize..64, xs in prop::collection::vec(0usize..64, 0..4)) {
        let rings = catalogue::rings();
        let a = &rings[i % rings.len()];
        let xs: Vec<usize> = xs.into_iter().map(|x| x % a.order()).collect();
        let r = cover_check(a, &Family::Elements(xs.clone()), Topology::Zar, &finite_fields(4), &Budget::default()).unwrap();
        prop_assert_eq!(r.covers, Ideal::generated(a, &xs).contains(a.one()));
        if let Some(c) = r.certificate {
            let sum = xs.iter().zip(&c).fold(a.zero(), |acc, (&x, &r)| a.add(acc, a.mul(r, x)));
            prop_assert_eq!(sum, a.one());
        }
    }
}
