use std::sync::Arc;

use crate::budget::Budget;
use crate::error::Result;

use super::{enumerate_homs, quotient, zero_divisor_pair, FinRing, Ideal, RingHom};

pub fn units(a: &FinRing) -> Vec<usize> {
    a.elements().filter(|&x| a.is_unit(x)).collect()
}

pub fn is_nilpotent(a: &FinRing, x: usize) -> bool {
    let mut p = x;
    for _ in 0..a.order() {
        if p == a.zero() {
            return true;
        }
        p = a.mul(p, x);
    }
    p == a.zero()
}

pub fn nilpotents(a: &FinRing) -> Vec<usize> {
    a.elements().filter(|&x| is_nilpotent(a, x)).collect()
}

pub fn units_and_nilpotents(a: &FinRing) -> (Vec<usize>, Vec<usize>) {
    (units(a), nilpotents(a))
}

pub fn nilradical(a: &FinRing) -> Ideal {
    Ideal::zero(a).radical(a)
}

pub fn idempotents(a: &FinRing) -> Vec<usize> {
    a.elements().filter(|&x| a.is_idempotent(x)).collect()
}

/// Nonzero idempotents with no nonzero idempotent strictly below them. In a
/// finite ring these form the complete orthogonal decomposition of 1.
pub fn primitive_idempotents(a: &FinRing) -> Vec<usize> {
    let es = idempotents(a);
    let z = a.zero();
    es.iter()
        .copied()
        .filter(|&e| e != z && es.iter().all(|&f| f == z || f == e || a.mul(e, f) != f))
        .collect()
}

/// `A/I` is an integral domain (in particular nonzero).
pub fn quotient_is_domain(a: &Arc<FinRing>, i: &Ideal) -> bool {
    if !i.is_proper() {
        return false;
    }
    zero_divisor_pair(&quotient(a, i).ring).is_none()
}

/// One prime per primitive idempotent `e`: `(1-e)A + nonunits(eA)`.
pub fn prime_ideals(a: &FinRing) -> Vec<Ideal> {
    let one = a.one();
    primitive_idempotents(a)
        .into_iter()
        .map(|e| {
            let f = a.sub(one, e);
            let local: Vec<usize> = {
                let mut v: Vec<usize> = a.elements().map(|x| a.mul(e, x)).collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            let nonunits: Vec<usize> = local
                .iter()
                .copied()
                .filter(|&x| !local.iter().any(|&y| a.mul(x, y) == e))
                .collect();
            let mut mask = vec![false; a.order()];
            for r in a.elements() {
                let fr = a.mul(f, r);
                for &n in &nonunits {
                    mask[a.add(fr, n)] = true;
                }
            }
            Ideal::from_mask(mask)
        })
        .collect()
}

pub fn is_prime_ideal(a: &Arc<FinRing>, p: &Ideal) -> bool {
    prime_ideals(a).contains(p)
}

/// `A → A/p`.
pub fn residue_field(a: &Arc<FinRing>, p: &Ideal) -> RingHom {
    quotient(a, p).projection
}

/// Result of inverting a subset.
#[derive(Debug, Clone)]
pub struct Localization {
    pub ring: Arc<FinRing>,
    pub projection: RingHom,
    /// Multiplicative closure of the inverted set, with 1.
    pub saturation: Vec<usize>,
    /// `{a : s·a = 0 for some s in the saturation}`.
    pub kernel: Ideal,
}

pub fn multiplicative_closure(a: &FinRing, s: &[usize]) -> Vec<usize> {
    let mut mask = vec![false; a.order()];
    let mut list = vec![a.one()];
    mask[a.one()] = true;
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for &g in s {
            let y = a.mul(x, g);
            if !mask[y] {
                mask[y] = true;
                list.push(y);
            }
        }
        i += 1;
    }
    list.sort_unstable();
    list
}

/// `A[S⁻¹]`, computed as `A/I` with `I` the annihilator ideal of the
/// saturation. Valid for finite rings since a power of every element is
/// idempotent.
pub fn localize(a: &Arc<FinRing>, s: &[usize]) -> Localization {
    let sat = multiplicative_closure(a, s);
    let kernel = Ideal::from_mask(
        a.elements()
            .map(|x| sat.iter().any(|&t| a.mul(t, x) == a.zero()))
            .collect(),
    );
    let q = quotient(a, &kernel);
    let name = if s.iter().all(|&x| x == a.one()) {
        a.name().to_string()
    } else {
        let ls: Vec<&str> = s.iter().map(|&x| a.label(x)).collect();
        format!("{}[1/{}]", a.name(), ls.join(","))
    };
    let ring = Arc::new((*q.ring).clone().with_name(name));
    let projection = RingHom::new_unchecked(a.clone(), ring.clone(), q.projection.map().to_vec());
    Localization {
        ring,
        projection,
        saturation: sat,
        kernel,
    }
}

/// Checks the universal property of `loc` against every hom out of `A`
/// into each test ring: a hom inverting `S` factors through the projection
/// exactly once, and no other hom factors at all.
pub fn verify_localization(a: &Arc<FinRing>, s: &[usize], loc: &Localization, tests: &[Arc<FinRing>], budget: &Budget) -> Result<bool> {
    if s.iter().any(|&x| !loc.ring.is_unit(loc.projection.apply(x))) || loc.projection.kernel() != loc.kernel {
        return Ok(false);
    }
    for c in tests {
        let through = enumerate_homs(&loc.ring, c, budget)?;
        for h in enumerate_homs(a, c, budget)? {
            let inverts = s.iter().all(|&x| c.is_unit(h.apply(x)));
            let factorings = through
                .iter()
                .filter(|g| loc.projection.map().iter().map(|&y| g.apply(y)).eq(h.map().iter().copied()))
                .count();
            if factorings != usize::from(inverts) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::all_ideals;

    fn z(n: usize) -> Arc<FinRing> {
        Arc::new(FinRing::zmod(n).unwrap())
    }

    #[test]
    fn z4_and_z6_units_nilpotents() {
        assert_eq!(units_and_nilpotents(&z(4)), (vec![1, 3], vec![0, 2]));
        assert_eq!(units_and_nilpotents(&z(6)), (vec![1, 5], vec![0]));
        let f8 = FinRing::gf(2, 3).unwrap();
        assert_eq!(units(&f8).len(), 7);
        assert_eq!(nilpotents(&f8), vec![f8.zero()]);
    }

    #[test]
    fn primitive_idempotents_of_z12() {
        assert_eq!(primitive_idempotents(&z(12)), vec![4, 9]);
        assert_eq!(primitive_idempotents(&z(8)), vec![1]);
        assert!(primitive_idempotents(&z(1)).is_empty());
        let f2f2 = FinRing::product(&[FinRing::zmod(2).unwrap(), FinRing::zmod(2).unwrap()]).unwrap();
        let labels: Vec<&str> = primitive_idempotents(&f2f2).into_iter().map(|e| f2f2.label(e)).collect();
        assert_eq!(labels, vec!["(0,1)", "(1,0)"]);
    }

    #[test]
    fn primes_of_z12_and_z8() {
        let a = z(12);
        let ps = prime_ideals(&a);
        assert_eq!(ps, vec![Ideal::generated(&a, &[3]), Ideal::generated(&a, &[2])]);
        let b = z(8);
        assert_eq!(prime_ideals(&b), vec![Ideal::generated(&b, &[2])]);
        assert!(prime_ideals(&z(1)).is_empty());
    }

    #[test]
    fn primes_agree_with_all_ideal_scan() {
        for n in 1..=16 {
            let a = z(n);
            let mut fast = prime_ideals(&a);
            let mut slow: Vec<Ideal> = all_ideals(&a).into_iter().filter(|i| quotient_is_domain(&a, i)).collect();
            fast.sort();
            slow.sort();
            assert_eq!(fast, slow, "Z/{n}");
        }
    }

    #[test]
    fn localizations() {
        let a = z(12);
        let l = localize(&a, &[4]);
        assert_eq!(l.kernel.to_vec(), vec![0, 3, 6, 9]);
        assert_eq!(l.ring.order(), 3);
        let id = localize(&a, &[1]);
        assert_eq!(id.ring.order(), 12);
        assert!(localize(&z(4), &[2]).ring.is_zero_ring());
    }

    #[test]
    fn localization_universal_property() {
        let a = z(12);
        let tests: Vec<Arc<FinRing>> = [1, 2, 3, 4, 6, 12].iter().map(|&n| z(n)).collect();
        let b = Budget::default();
        for s in [vec![1], vec![4], vec![9], vec![2], vec![5, 7]] {
            let l = localize(&a, &s);
            assert!(verify_localization(&a, &s, &l, &tests, &b).unwrap(), "{s:?}");
        }
    }
}
