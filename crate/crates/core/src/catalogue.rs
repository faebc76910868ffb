//! Fixed test catalogues of small objects.

use std::sync::Arc;

use crate::finring::FinRing;
use crate::orth::FinCat;
use crate::poset::Poset;
use crate::sset::{FinSSet, SSetSpec};

fn zmod(n: usize) -> FinRing {
    FinRing::zmod(n).expect("n >= 1")
}

fn gf(p: usize, k: usize) -> FinRing {
    FinRing::gf(p, k).expect("prime power")
}

fn prod(fs: &[FinRing]) -> FinRing {
    FinRing::product(fs).expect("small product")
}

/// `base[x]/(x^k)`.
fn truncated(base: FinRing, k: usize, var: &str) -> FinRing {
    FinRing::polynomial_quotient(&base, &vec![0; k], var).expect("small quotient")
}

/// Pairwise non-isomorphic rings of order at most 16, with every local and
/// product shape that fits: fields, chain rings, dual numbers and products.
pub fn rings() -> Vec<Arc<FinRing>> {
    let galois_4_2 = FinRing::polynomial_quotient(&zmod(4), &[1, 1], "x")
        .expect("x^2+x+1 over Z/4")
        .with_name("GR(4,2)");
    [
        zmod(1),
        zmod(2),
        zmod(3),
        zmod(4),
        truncated(zmod(2), 2, "e"),
        gf(2, 2),
        prod(&[zmod(2), zmod(2)]),
        zmod(5),
        zmod(6),
        zmod(7),
        zmod(8),
        gf(2, 3),
        truncated(zmod(2), 3, "e"),
        prod(&[zmod(2), zmod(4)]),
        prod(&[zmod(2), gf(2, 2)]),
        zmod(9),
        gf(3, 2),
        truncated(zmod(3), 2, "e"),
        zmod(10),
        zmod(12),
        prod(&[zmod(2), zmod(6)]),
        zmod(16),
        gf(2, 4),
        galois_4_2,
        prod(&[gf(2, 2), gf(2, 2)]),
    ]
    .into_iter()
    .map(Arc::new)
    .collect()
}

/// The rings named explicitly by the duality checks, beyond [`rings`].
pub fn duality_rings() -> Vec<Arc<FinRing>> {
    let mut out = rings();
    out.push(Arc::new(zmod(36)));
    out.push(Arc::new(zmod(30)));
    out.push(Arc::new(prod(&[zmod(4), zmod(9)])));
    out
}

fn poset_cat(labels: &[&str], rel: &[(usize, usize)]) -> FinCat {
    let p = Poset::from_relation(labels.iter().map(|l| l.to_string()).collect(), rel).expect("poset");
    FinCat::from_poset(&p)
}

/// A concrete category: objects are the finite sets `0..sizes[o]` and
/// `homs[a][b]` lists functions as value tables.
fn concrete(objects: &[(&str, usize)], homs: Vec<Vec<Vec<Vec<usize>>>>, names: &[(&[usize], &str)]) -> FinCat {
    let sizes: Vec<usize> = objects.iter().map(|o| o.1).collect();
    FinCat::from_concrete(
        objects.iter().map(|o| o.0.to_string()).collect(),
        homs,
        |a| (0..sizes[a]).collect(),
        |g: &Vec<usize>, f: &Vec<usize>| f.iter().map(|&x| g[x]).collect(),
        |a, b, v| {
            let base = names.iter().find(|(t, _)| *t == v.as_slice()).map(|n| n.1.to_string());
            let tag = format!("{}->{}", objects[a].0, objects[b].0);
            if a == b && v.iter().enumerate().all(|(i, &x)| i == x) {
                return format!("id_{}", objects[a].0);
            }
            match base {
                Some(n) => format!("{n}:{tag}"),
                None => format!("{v:?}:{tag}"),
            }
        },
    )
    .expect("concrete category")
    .0
}

fn monoid(name: &str, elements: &[&str], table: Vec<Vec<usize>>) -> FinCat {
    FinCat::from_monoid(name, elements.iter().map(|e| e.to_string()).collect(), table).expect("monoid")
}

/// Small categories: posets, monoids and EI-categories, at most 6 objects each.
pub fn categories() -> Vec<Arc<FinCat>> {
    let swap = vec![1, 0];
    let id2 = vec![0, 1];
    let out = vec![
        FinCat::ordinal(0),
        FinCat::ordinal(1),
        FinCat::ordinal(2),
        FinCat::ordinal(3),
        poset_cat(&["a", "b"], &[]),
        poset_cat(&["a", "b", "c"], &[(0, 2), (1, 2)]),
        poset_cat(&["a", "b", "c"], &[(2, 0), (2, 1)]),
        poset_cat(&["00", "01", "10", "11"], &[(0, 1), (0, 2), (1, 3), (2, 3)]),
        poset_cat(&["a", "b", "c", "d", "e", "f"], &[(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)]),
        monoid("Z/2", &["1", "s"], vec![vec![0, 1], vec![1, 0]]),
        monoid("Z/3", &["1", "r", "r2"], vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]),
        monoid("idem", &["1", "e"], vec![vec![0, 1], vec![1, 1]]),
        monoid("nil", &["1", "a", "0"], vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]]),
        // Z/2 acting on a, one arrow a -> b
        concrete(
            &[("a", 2), ("b", 1)],
            vec![vec![vec![id2.clone(), swap.clone()], vec![vec![0, 0]]], vec![vec![], vec![vec![0]]]],
            &[(&[1, 0], "s"), (&[0, 0], "f")],
        ),
        // Z/2 acting on a, swapping two arrows a -> b
        concrete(
            &[("a", 2), ("b", 2)],
            vec![vec![vec![id2.clone(), swap.clone()], vec![id2.clone(), swap.clone()]], vec![vec![], vec![id2.clone()]]],
            &[(&[1, 0], "s")],
        ),
        // a parallel pair a ⇉ b
        concrete(
            &[("a", 1), ("b", 2)],
            vec![vec![vec![vec![0]], vec![vec![0], vec![1]]], vec![vec![], vec![id2.clone()]]],
            &[(&[0], "u")],
        ),
        // two isomorphic objects
        concrete(
            &[("a", 1), ("b", 1)],
            vec![vec![vec![vec![0]], vec![vec![0]]], vec![vec![vec![0]], vec![vec![0]]]],
            &[(&[0], "i")],
        ),
    ];
    out.into_iter().map(Arc::new).collect()
}

fn custom(name: &str, dim: usize, nd: serde_json::Value) -> crate::Result<FinSSet> {
    let spec: SSetSpec = serde_json::from_value(serde_json::json!({ "dim": dim, "nondegenerate": nd })).expect("well-formed spec");
    FinSSet::build(name, &spec)
}

/// Simplicial sets truncated at `dim`, standard objects first; objects that
/// need a higher truncation are left out, so `dim ≥ 5` gives the full list.
/// All are regular except the bigon (one degenerate face) and the spheres
/// `Δ[n]/∂Δ[n]` with `n ≥ 2`.
pub fn ssets(dim: usize) -> Vec<Arc<FinSSet>> {
    let mut out: Vec<crate::Result<FinSSet>> = vec![];
    for n in 0..=4 {
        out.push(FinSSet::delta(n, dim));
    }
    for n in 1..=4 {
        out.push(FinSSet::boundary(n, dim));
    }
    for (n, k) in [(2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 3)] {
        out.push(FinSSet::horn(n, k, dim));
    }
    out.push(FinSSet::circle(dim));
    let union = |a: usize, b: usize| -> crate::Result<FinSSet> {
        let x = FinSSet::disjoint_union(&FinSSet::delta(a, dim)?, &FinSSet::delta(b, dim)?)?;
        Ok(x.with_name(format!("Δ[{a}] ⊔ Δ[{b}]")))
    };
    out.push(union(1, 0));
    out.push(union(2, 1));
    out.push(custom(
        "two-edge loop",
        dim,
        serde_json::json!({"0": ["a", "b"], "1": [
            {"name": "ab", "faces": ["b", "a"]},
            {"name": "ba", "faces": ["a", "b"]}]}),
    ));
    out.push(custom(
        "parallel edges",
        dim,
        serde_json::json!({"0": ["a", "b"], "1": [
            {"name": "e", "faces": ["b", "a"]},
            {"name": "f", "faces": ["b", "a"]}]}),
    ));
    out.push(custom(
        "spine",
        dim,
        serde_json::json!({"0": ["0", "1", "2", "3"], "1": [
            {"name": "01", "faces": ["1", "0"]},
            {"name": "12", "faces": ["2", "1"]},
            {"name": "23", "faces": ["3", "2"]}]}),
    ));
    out.push(custom(
        "square",
        dim,
        serde_json::json!({"0": ["a", "b", "c", "d"], "1": [
            {"name": "ab", "faces": ["b", "a"]},
            {"name": "bd", "faces": ["d", "b"]},
            {"name": "ac", "faces": ["c", "a"]},
            {"name": "cd", "faces": ["d", "c"]},
            {"name": "ad", "faces": ["d", "a"]}], "2": [
            {"name": "abd", "faces": ["bd", "ad", "ab"]},
            {"name": "acd", "faces": ["cd", "ad", "ac"]}]}),
    ));
    out.push(custom(
        "bigon",
        dim,
        serde_json::json!({"0": ["a", "b"], "1": [
            {"name": "e", "faces": ["b", "a"]},
            {"name": "f", "faces": ["b", "a"]}], "2": [
            {"name": "t", "faces": [{"op": [0, 0], "of": "b"}, "f", "e"]}]}),
    ));
    out.push(FinSSet::sphere(2, dim));
    out.push(FinSSet::sphere(3, dim));
    out.into_iter()
        .filter_map(|x| match x {
            Ok(x) => Some(Arc::new(x)),
            Err(crate::Error::TruncationTooLow(_)) => None,
            Err(e) => panic!("catalogue object does not build: {e}"),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sset_corpus_builds() {
        let xs = ssets(5);
        assert!(xs.len() >= 20);
        let irregular: Vec<&str> = xs.iter().filter(|x| !x.is_regular()).map(|x| x.name()).collect();
        assert_eq!(irregular, vec!["bigon", "S^2", "S^3"]);
        let low = ssets(2);
        assert!(low.iter().all(|x| x.top_dim().is_none_or(|t| t < 2)));
        assert!(low.len() >= 8);
    }

    #[test]
    fn categories_build() {
        let cs = categories();
        assert!(cs.iter().all(|c| c.num_objects() <= 6));
        assert_eq!(cs.len(), 17);
    }
}
