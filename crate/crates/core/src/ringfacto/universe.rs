use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::finring::{all_ideals, canonical_form, canonical_isomorphism, enumerate_homs, quotient, CanonicalForm, FinRing, RingHom};
use crate::orth::{verify_system, FinCat, SystemReport};

use super::factor::{Factorization, RingSystem};

/// A finite category of rings (pairwise non-isomorphic, closed under
/// quotients) with every hom between them.
#[derive(Debug)]
pub struct RingUniverse {
    pub rings: Vec<Arc<FinRing>>,
    pub cat: FinCat,
    pub homs: Vec<RingHom>,
    forms: Vec<CanonicalForm>,
    index: HashMap<(usize, usize, Vec<usize>), usize>,
}

impl RingUniverse {
    /// Keeps the first ring of each isomorphism class in the order given,
    /// then appends missing quotients.
    pub fn new(seeds: &[Arc<FinRing>], budget: &Budget) -> Result<Self> {
        let mut rings: Vec<Arc<FinRing>> = Vec::new();
        let mut forms: Vec<CanonicalForm> = Vec::new();
        let mut queue: Vec<Arc<FinRing>> = seeds.to_vec();
        let mut i = 0;
        while i < queue.len() {
            let r = queue[i].clone();
            i += 1;
            budget.charge((r.order() * r.order()) as u64)?;
            let form = canonical_form(&r).0;
            if forms.contains(&form) {
                continue;
            }
            for ideal in all_ideals(&r) {
                if ideal.len() > 1 {
                    queue.push(quotient(&r, &ideal).ring);
                }
            }
            forms.push(form);
            rings.push(r);
        }
        let n = rings.len();
        let mut homs_by_pair = vec![vec![Vec::new(); n]; n];
        for (s, a) in rings.iter().enumerate() {
            for (t, b) in rings.iter().enumerate() {
                homs_by_pair[s][t] = enumerate_homs(a, b, budget)?;
            }
        }
        let objects = rings.iter().map(|r| r.name().to_string()).collect();
        let maps: Vec<Vec<Vec<Vec<usize>>>> = homs_by_pair
            .iter()
            .map(|row| row.iter().map(|hs| hs.iter().map(|h| h.map().to_vec()).collect()).collect())
            .collect();
        let names: Vec<String> = rings.iter().map(|r| r.name().to_string()).collect();
        let (cat, values) = FinCat::from_concrete(
            objects,
            maps,
            |o| rings[o].elements().collect(),
            |g: &Vec<usize>, f: &Vec<usize>| f.iter().map(|&y| g[y]).collect(),
            |s, t, m: &Vec<usize>| format!("{} -> {} {:?}", names[s], names[t], m),
        )?;
        let homs: Vec<RingHom> = (0..cat.num_morphisms())
            .map(|x| {
                let (s, t) = (cat.src(x), cat.tgt(x));
                RingHom::new(rings[s].clone(), rings[t].clone(), values[x].clone()).expect("enumerated hom")
            })
            .collect();
        let index = (0..cat.num_morphisms())
            .map(|x| ((cat.src(x), cat.tgt(x), values[x].clone()), x))
            .collect();
        Ok(RingUniverse {
            rings,
            cat,
            homs,
            forms,
            index,
        })
    }

    pub fn object_of(&self, r: &FinRing) -> Option<usize> {
        let form = canonical_form(r).0;
        self.forms.iter().position(|f| *f == form)
    }

    fn exact_object(&self, r: &Arc<FinRing>) -> Option<usize> {
        self.rings.iter().position(|x| Arc::ptr_eq(x, r) || **x == **r)
    }

    pub fn morphism_of(&self, h: &RingHom) -> Option<usize> {
        let s = self.exact_object(h.source())?;
        let t = self.exact_object(h.target())?;
        self.index.get(&(s, t, h.map().to_vec())).copied()
    }

    /// Moves a factorization onto the universe's copy of its middle ring.
    pub fn locate(&self, f: &Factorization) -> Result<(usize, usize)> {
        let missing = |what: &str| Error::FactorizerContractViolation {
            morphism: format!("{:?}", f.composite()),
            reason: format!("{what} is not in the universe"),
        };
        let j = self.object_of(&f.middle).ok_or_else(|| missing("middle ring"))?;
        let phi = canonical_isomorphism(&f.middle, &self.rings[j]).ok_or_else(|| missing("middle ring"))?;
        let left = f.left.then(&phi);
        let right = phi.inverse().expect("iso").then(&f.right);
        let a = self.morphism_of(&left).ok_or_else(|| missing("left leg"))?;
        let b = self.morphism_of(&right).ok_or_else(|| missing("right leg"))?;
        Ok((a, b))
    }

    pub fn verify(&self, system: RingSystem, budget: &Budget) -> Result<SystemReport> {
        let fac = |x: usize| self.locate(&system.factorize(&self.homs[x]));
        let in_a = |x: usize| system.in_left(&self.homs[x]);
        let in_b = |x: usize| system.in_right(&self.homs[x]);
        verify_system(&self.cat, &fac, &in_a, &in_b, budget)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_universe_is_closed_and_verifies() {
        let seeds: Vec<Arc<FinRing>> = [4, 6].iter().map(|&n| Arc::new(FinRing::zmod(n).unwrap())).collect();
        let b = Budget::default();
        let u = RingUniverse::new(&seeds, &b).unwrap();
        // Z/4, Z/6 and the quotients Z/2, Z/3, 0
        assert_eq!(u.rings.len(), 5);
        for s in RingSystem::ALL {
            let r = u.verify(s, &b).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.failures());
        }
    }
}
