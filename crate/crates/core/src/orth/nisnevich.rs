/// Keeps the covering families through which every forcing object lifts.
///
/// `lifts(l, family)` must decide whether every map from `l` to the base
/// factors through some member of `family`. The output is the sub-list of
/// `covers` passing the test for all of `forcing`, in input order.
pub fn nisnevich_filter<F, L>(covers: &[F], forcing: &[L], lifts: impl Fn(&L, &F) -> bool) -> Vec<F>
where
    F: Clone,
{
    covers
        .iter()
        .filter(|fam| forcing.iter().all(|l| lifts(l, fam)))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // toy model: a family is a set of "vertices" of the base, a forcing object
    // is a set of vertices its maps can hit; it lifts iff its set is inside one
    // member.
    fn toy_lifts(l: &Vec<u8>, fam: &Vec<Vec<u8>>) -> bool {
        fam.iter().any(|m| l.iter().all(|x| m.contains(x)))
    }

    #[test]
    fn empty_forcing_keeps_all() {
        let covers = vec![vec![vec![0u8]], vec![vec![1u8]]];
        let forcing: Vec<Vec<u8>> = vec![];
        assert_eq!(nisnevich_filter(&covers, &forcing, toy_lifts), covers);
    }

    #[test]
    fn family_containing_identity_survives() {
        let base = vec![0u8, 1, 2];
        let covers = vec![vec![vec![0u8], base.clone()]];
        let forcing = vec![vec![0u8, 1], vec![1, 2], base.clone()];
        assert_eq!(nisnevich_filter(&covers, &forcing, toy_lifts).len(), 1);
    }

    proptest! {
        #[test]
        fn enlarging_forcing_shrinks_output(
            covers in prop::collection::vec(prop::collection::vec(prop::collection::vec(0u8..4, 1..3), 1..3), 0..6),
            forcing in prop::collection::vec(prop::collection::vec(0u8..4, 1..3), 0..4),
            extra in prop::collection::vec(0u8..4, 1..3),
        ) {
            let small = nisnevich_filter(&covers, &forcing, toy_lifts);
            let mut bigger = forcing.clone();
            bigger.push(extra);
            let large = nisnevich_filter(&covers, &bigger, toy_lifts);
            prop_assert!(large.len() <= small.len());
            prop_assert!(large.iter().all(|f| small.contains(f)));
            prop_assert!(small.iter().all(|f| covers.contains(f)));
        }
    }
}
