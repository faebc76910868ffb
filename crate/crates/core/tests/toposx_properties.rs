use std::sync::Arc;

use facto_core::toposx::{
    atoms_and_orbits, burnside_count, epi_mono_linear, necklace_count, FinGSet, FqVecSpace, LinearMap,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn necklace_orbits_match_burnside(n in 1usize..=6, k in 1usize..=3) {
        let x = FinGSet::necklaces(n, k).unwrap();
        let orbits = atoms_and_orbits(&x);
        prop_assert_eq!(orbits.len(), necklace_count(n, k));
        prop_assert_eq!(burnside_count(&x), necklace_count(n, k));
        prop_assert_eq!(orbits.iter().map(|o| o.elements.len()).sum::<usize>(), x.len());
    }

    #[test]
    fn rank_nullity(q in prop::sample::select(vec![2usize, 3, 4]), n in 1usize..=3, m in 1usize..=3, seed in prop::collection::vec(0usize..4, 9)) {
        let v = Arc::new(FqVecSpace::new(q, n).unwrap());
        let w = Arc::new(FqVecSpace::over(v.field().clone(), m));
        let cols: Vec<Vec<usize>> = (0..n).map(|j| (0..m).map(|i| seed[j * 3 + i] % q).collect()).collect();
        let f = LinearMap::from_columns(v.clone(), w, &cols).unwrap();
        let kernel = f.table.iter().filter(|&&y| y == f.target.zero()).count();
        let fac = epi_mono_linear(&f).unwrap();
        prop_assert_eq!(kernel * fac.image.len(), v.len());
        prop_assert_eq!(fac.surjection.then(&fac.injection), f.table);
    }
}
