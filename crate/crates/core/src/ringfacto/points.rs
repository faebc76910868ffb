use std::sync::Arc;

use crate::budget::Budget;
use crate::error::Result;
use crate::finring::{
    enumerate_homs, localize, nilradical, primitive_idempotents, quotient, FinRing, Ideal, RingHom,
};

use super::cover::{finite_fields, Topology};

/// A point of the spectrum: a prime with its residue map `A → A/p`.
#[derive(Debug, Clone)]
pub struct Point {
    pub prime: Ideal,
    pub residue: RingHom,
}

/// Points of `A` for a topology, each found by the route natural to it:
///
/// * zar: residue fields of the local factors `A[1/e]`, `e` primitive;
/// * dom: the field factors of the reduction `A/√0`, pulled back to `A`;
/// * fin, nfin: kernels of homs into finite fields.
///
/// Sorted by prime so that the lists can be compared across topologies.
pub fn points_of(a: &Arc<FinRing>, topology: Topology, budget: &Budget) -> Result<Vec<Point>> {
    let mut primes: Vec<Ideal> = match topology {
        Topology::Zar => primitive_idempotents(a)
            .into_iter()
            .map(|e| {
                let l = localize(a, &[e]);
                let local = &l.ring;
                let m: Vec<usize> = local.elements().filter(|&x| !local.is_unit(x)).collect();
                let m = Ideal::from_elements(local, &m).expect("non-units of a local ring form an ideal");
                l.projection.contract_ideal(&m)
            })
            .collect(),
        Topology::Dom => {
            let red = quotient(a, &nilradical(a));
            primitive_idempotents(&red.ring)
                .into_iter()
                .map(|f| {
                    let r = &red.ring;
                    let comp = Ideal::generated(r, &[r.sub(r.one(), f)]);
                    red.projection.contract_ideal(&comp)
                })
                .collect()
        }
        Topology::Fin | Topology::Nfin => {
            if a.is_zero_ring() {
                Vec::new()
            } else {
                let mut ks = Vec::new();
                for k in finite_fields(a.order()) {
                    if a.order() % k.characteristic() != 0 {
                        continue;
                    }
                    for h in enumerate_homs(a, &k, budget)? {
                        ks.push(h.kernel());
                    }
                }
                ks
            }
        }
    };
    primes.sort();
    primes.dedup();
    Ok(primes
        .into_iter()
        .map(|p| Point {
            residue: quotient(a, &p).projection,
            prime: p,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::prime_ideals;

    #[test]
    fn z12_two_points_everywhere() {
        let a = Arc::new(FinRing::zmod(12).unwrap());
        let mut expect = prime_ideals(&a);
        expect.sort();
        for t in Topology::ALL {
            let pts = points_of(&a, t, &Budget::default()).unwrap();
            let ps: Vec<Ideal> = pts.iter().map(|p| p.prime.clone()).collect();
            assert_eq!(ps, expect, "{t}");
            let orders: Vec<usize> = pts.iter().map(|p| p.residue.target().order()).collect();
            // (3) sorts before (2) by membership mask
            assert_eq!(orders, vec![3, 2]);
        }
    }

    #[test]
    fn zero_ring_has_no_points() {
        let a = Arc::new(FinRing::zmod(1).unwrap());
        for t in Topology::ALL {
            assert!(points_of(&a, t, &Budget::default()).unwrap().is_empty());
        }
    }

    #[test]
    fn field_has_one_point() {
        let a = Arc::new(FinRing::gf(3, 2).unwrap());
        for t in Topology::ALL {
            let pts = points_of(&a, t, &Budget::default()).unwrap();
            assert_eq!(pts.len(), 1);
            assert!(pts[0].residue.is_iso());
        }
    }
}
