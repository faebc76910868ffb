use std::sync::Arc;

use crate::error::{Error, Result};

use super::{FinRing, RingHom};

/// An ideal, stored as a membership mask over the carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    mask: Vec<bool>,
}

impl Ideal {
    /// Checks the ideal axioms for an explicit subset.
    pub fn from_elements(a: &FinRing, elems: &[usize]) -> Result<Ideal> {
        let mut mask = vec![false; a.order()];
        for &e in elems {
            if e >= a.order() {
                return Err(Error::InvalidSpec(format!("element {e} out of range")));
            }
            mask[e] = true;
        }
        let i = Ideal { mask };
        if !i.contains(a.zero()) {
            return Err(Error::InvalidSpec("ideal misses 0".into()));
        }
        for x in i.elements() {
            for y in i.elements() {
                if !i.contains(a.sub(x, y)) {
                    return Err(Error::InvalidSpec("subset is not an additive subgroup".into()));
                }
            }
            for r in a.elements() {
                if !i.contains(a.mul(r, x)) {
                    return Err(Error::InvalidSpec("subset does not absorb multiplication".into()));
                }
            }
        }
        Ok(i)
    }

    /// The smallest ideal containing `gens`.
    pub fn generated(a: &FinRing, gens: &[usize]) -> Ideal {
        let multiples: Vec<usize> = gens
            .iter()
            .flat_map(|&g| a.elements().map(move |r| (r, g)))
            .map(|(r, g)| a.mul(r, g))
            .collect();
        Ideal {
            mask: additive_closure(a, &multiples),
        }
    }

    pub fn zero(a: &FinRing) -> Ideal {
        Ideal::generated(a, &[])
    }

    pub fn unit(a: &FinRing) -> Ideal {
        Ideal { mask: vec![true; a.order()] }
    }

    pub(crate) fn from_mask(mask: Vec<bool>) -> Ideal {
        Ideal { mask }
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.elements().collect()
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_proper(&self) -> bool {
        self.mask.iter().any(|&b| !b)
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        Ideal {
            mask: self.mask.iter().zip(&other.mask).map(|(&a, &b)| a && b).collect(),
        }
    }

    pub fn sum(&self, a: &FinRing, other: &Ideal) -> Ideal {
        let gens: Vec<usize> = self.elements().chain(other.elements()).collect();
        Ideal::generated(a, &gens)
    }

    pub fn product(&self, a: &FinRing, other: &Ideal) -> Ideal {
        let gens: Vec<usize> = self
            .elements()
            .flat_map(|x| other.elements().map(move |y| (x, y)))
            .map(|(x, y)| a.mul(x, y))
            .collect();
        Ideal::generated(a, &gens)
    }

    /// `{a : a^k ∈ I for some k}`.
    pub fn radical(&self, a: &FinRing) -> Ideal {
        let n = a.order();
        Ideal {
            mask: a
                .elements()
                .map(|x| {
                    let mut p = x;
                    (1..=n).any(|_| {
                        let hit = self.contains(p);
                        p = a.mul(p, x);
                        hit
                    })
                })
                .collect(),
        }
    }

    pub fn is_radical(&self, a: &FinRing) -> bool {
        self.radical(a) == *self
    }

    /// Labels of the members, for reports.
    pub fn labels(&self, a: &FinRing) -> Vec<String> {
        self.elements().map(|x| a.label(x).to_string()).collect()
    }
}

fn additive_closure(a: &FinRing, seeds: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; a.order()];
    mask[a.zero()] = true;
    let mut list = vec![a.zero()];
    for &s in seeds {
        if !mask[s] {
            mask[s] = true;
            list.push(s);
        }
    }
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for j in 0..=i {
            let y = list[j];
            for z in [a.add(x, y), a.neg(x)] {
                if !mask[z] {
                    mask[z] = true;
                    list.push(z);
                }
            }
        }
        i += 1;
    }
    mask
}

/// A quotient ring `A/I` with its projection and coset representatives.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub ring: Arc<FinRing>,
    pub projection: RingHom,
    /// Least representative in `A` of each element of `A/I`.
    pub reps: Vec<usize>,
}

/// `A/I`. Cosets are numbered by their least representative, so the
/// labels of the quotient are those representatives' labels.
pub fn quotient(a: &Arc<FinRing>, ideal: &Ideal) -> Quotient {
    let n = a.order();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for i in ideal.elements() {
            class[a.add(x, i)] = c;
        }
    }
    let labels = reps.iter().map(|&r| a.label(r).to_string()).collect();
    let gens: Vec<usize> = a.generators().iter().map(|&g| class[g]).collect();
    let ring = FinRing::from_fns(
        format!("{}/I", a.name()),
        labels,
        |x, y| class[a.add(reps[x], reps[y])],
        |x, y| class[a.mul(reps[x], reps[y])],
        class[a.one()],
        Some(gens),
    )
    .expect("quotient by an ideal is a ring");
    let ring = Arc::new(ring);
    let projection = RingHom::new_unchecked(a.clone(), ring.clone(), class);
    Quotient { ring, projection, reps }
}

/// Every ideal, by closing each additive subgroup under multiplication.
/// Only meant as a test oracle on small rings.
pub fn all_ideals(a: &FinRing) -> Vec<Ideal> {
    let mut found: Vec<Ideal> = vec![Ideal::zero(a)];
    let mut seen: std::collections::BTreeSet<Vec<bool>> = found.iter().map(|i| i.mask.clone()).collect();
    let mut frontier = found.clone();
    while let Some(i) = frontier.pop() {
        for x in a.elements().filter(|&x| !i.contains(x)) {
            let mut gens = i.to_vec();
            gens.push(x);
            let j = Ideal::generated(a, &gens);
            if seen.insert(j.mask.clone()) {
                found.push(j.clone());
                frontier.push(j);
            }
        }
    }
    found.sort();
    found
}

/// Scans for `x·y = 0` with both nonzero.
pub fn zero_divisor_pair(a: &FinRing) -> Option<(usize, usize)> {
    a.elements()
        .filter(|&x| x != a.zero())
        .flat_map(|x| a.elements().map(move |y| (x, y)))
        .find(|&(x, y)| y != a.zero() && a.mul(x, y) == a.zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<FinRing> {
        Arc::new(FinRing::zmod(n).unwrap())
    }

    #[test]
    fn ideal_generated_by_two_in_z12() {
        let a = z(12);
        assert_eq!(Ideal::generated(&a, &[2]).to_vec(), vec![0, 2, 4, 6, 8, 10]);
        assert_eq!(Ideal::generated(&a, &[8, 3]), Ideal::unit(&a));
    }

    #[test]
    fn quotient_z12_by_3_is_z3() {
        let a = z(12);
        let q = quotient(&a, &Ideal::generated(&a, &[3]));
        assert_eq!(q.ring.order(), 3);
        assert_eq!(q.reps, vec![0, 1, 2]);
        assert_eq!(q.projection.apply(7), 1);
        assert!(q.projection.validate().is_ok());
    }

    #[test]
    fn radical_of_four_is_two() {
        let a = z(12);
        let r = Ideal::generated(&a, &[4]).radical(&a);
        assert_eq!(r, Ideal::generated(&a, &[2]));
    }

    #[test]
    fn ideals_of_z12_are_divisor_ideals() {
        let a = z(12);
        let ids = all_ideals(&a);
        assert_eq!(ids.len(), 6);
        for d in [1, 2, 3, 4, 6, 12] {
            assert!(ids.contains(&Ideal::generated(&a, &[d % 12])));
        }
    }

    #[test]
    fn explicit_subset_validation() {
        let a = z(6);
        assert!(Ideal::from_elements(&a, &[0, 3]).is_ok());
        assert!(Ideal::from_elements(&a, &[0, 2]).is_err());
    }
}
