use std::sync::Arc;

use facto_core::budget::Budget;
use facto_core::catalogue;
use facto_core::sset::{deg_ndeg_factorize, random_map, FinSSet, SimplicialOperator};
use proptest::prelude::*;
use rand::SeedableRng;

const DIM: usize = 4;

fn corpus() -> Vec<Arc<FinSSet>> {
    catalogue::ssets(DIM)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn action_is_functorial(i in 0usize..64, m in 0usize..=DIM, x in 0usize..10_000, a in 0usize..1000, b in 0usize..1000) {
        let xs = corpus();
        let s = &xs[i % xs.len()];
        prop_assume!(s.count(m) > 0);
        let x = x % s.count(m);
        let p = a % (DIM + 1);
        let r = b % (DIM + 1);
        let thetas = SimplicialOperator::all(p, m);
        let phis = SimplicialOperator::all(r, p);
        let theta = &thetas[a % thetas.len()];
        let phi = &phis[b % phis.len()];
        let step = s.act(p, s.act(m, x, theta), phi);
        prop_assert_eq!(step, s.act(m, x, &theta.after(phi)));
    }

    #[test]
    fn ez_recovers_the_simplex(i in 0usize..64, m in 0usize..=DIM, x in 0usize..10_000) {
        let xs = corpus();
        let s = &xs[i % xs.len()];
        prop_assume!(s.count(m) > 0);
        let x = x % s.count(m);
        let ez = s.eilenberg_zilber(m, x);
        prop_assert!(ez.surjection.is_surjective());
        prop_assert!(s.is_nondegenerate(ez.dim, ez.nondeg));
        prop_assert_eq!(s.act(ez.dim, ez.nondeg, &ez.surjection), x);
    }

    #[test]
    fn deg_ndeg_legs(i in 0usize..64, j in 0usize..64, seed in any::<u64>()) {
        let xs: Vec<Arc<FinSSet>> = corpus().into_iter().filter(|x| x.nondegenerate_count() <= 20).collect();
        let (y, x) = (&xs[i % xs.len()], &xs[j % xs.len()]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f = random_map(y, x, &mut rng, &Budget::default()).unwrap();
        prop_assume!(f.is_some());
        let f = f.unwrap();
        let fac = deg_ndeg_factorize(&f).unwrap();
        prop_assert!(fac.composite().same_tables(&f));
        prop_assert!(fac.left.is_surjective());
        prop_assert!(fac.right.is_nondegenerate_map());
    }
}
