use facto_core::poset::Poset;
use proptest::prelude::*;

fn divisibility(ns: &[u32]) -> Poset {
    Poset::from_fn(ns.iter().map(|n| n.to_string()).collect(), |a, b| ns[b] % ns[a] == 0).unwrap()
}

proptest! {
    #[test]
    fn hasse_edges_are_exactly_the_covers(mut ns in prop::collection::vec(1u32..60, 1..12)) {
        ns.sort();
        ns.dedup();
        let p = divisibility(&ns);
        let edges = p.hasse_edges();
        let n = ns.len();
        for a in 0..n {
            for b in 0..n {
                let covers = a != b
                    && p.leq(a, b)
                    && !(0..n).any(|c| c != a && c != b && p.leq(a, c) && p.leq(c, b));
                prop_assert_eq!(edges.contains(&(a, b)), covers);
            }
        }
        let dot = p.to_dot("d");
        prop_assert_eq!(dot.matches(" -> ").count(), edges.len());
    }
}
