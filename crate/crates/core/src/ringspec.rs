//! Spectra of finite rings: the lattice of localizations, the lattice of
//! reduced quotients, their duality, point posets and stalks.

use std::sync::Arc;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::finring::{idempotents, localize, prime_ideals, quotient, FinRing, Ideal, RingHom};
use crate::poset::{check_lattice_laws, Poset};
use crate::ringfacto::{classify_ring, is_localization, points_of, unit_preimage, Topology};

/// An element of a spectrum lattice: a ring under `A` with its structure map.
#[derive(Debug, Clone)]
pub struct LatticeElement {
    pub ring: Arc<FinRing>,
    pub hom: RingHom,
    /// Kernel of the structure map; identifies the element as an `A`-algebra.
    pub kernel: Ideal,
}

#[derive(Debug, Clone)]
pub struct SpecLattice {
    pub elements: Vec<LatticeElement>,
    pub poset: Poset,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RingSummary {
    pub name: String,
    pub order: usize,
}

impl RingSummary {
    fn of(r: &FinRing) -> Self {
        RingSummary {
            name: r.name().to_string(),
            order: r.order(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecElementJson {
    pub id: usize,
    pub label: String,
    pub ring: RingSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stalk: Option<RingSummary>,
    pub kernel: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecJson {
    pub elements: Vec<SpecElementJson>,
    pub order: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meet: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub join: Option<Vec<Vec<usize>>>,
}

impl SpecLattice {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn position(&self, kernel: &Ideal) -> Option<usize> {
        self.elements.iter().position(|e| e.kernel == *kernel)
    }

    pub fn to_json(&self, base: &FinRing) -> SpecJson {
        SpecJson {
            elements: self
                .elements
                .iter()
                .enumerate()
                .map(|(id, e)| SpecElementJson {
                    id,
                    label: self.poset.labels()[id].clone(),
                    ring: RingSummary::of(&e.ring),
                    stalk: None,
                    kernel: e.kernel.labels(base),
                })
                .collect(),
            order: self.poset.strict_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
            meet: Some(self.meet.clone()),
            join: Some(self.join.clone()),
        }
    }

    /// Formula tables must agree with the order and satisfy the lattice laws.
    fn verify(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                if self.poset.meet(a, b) != Some(self.meet[a][b]) {
                    return Err(Error::LatticeViolation(format!("meet of {a} and {b} is not the greatest lower bound")));
                }
                if self.poset.join(a, b) != Some(self.join[a][b]) {
                    return Err(Error::LatticeViolation(format!("join of {a} and {b} is not the least upper bound")));
                }
            }
        }
        check_lattice_laws(&self.meet, &self.join).map_err(Error::LatticeViolation)
    }
}

/// `x ≤ y` iff `ker y ⊆ ker x`, i.e. `A → x` factors through `A → y`.
fn order_by_kernels(elements: &[LatticeElement], labels: Vec<String>) -> Poset {
    Poset::from_fn(labels, |x, y| elements[y].kernel.is_subset(&elements[x].kernel)).expect("inclusion is an order")
}

/// Localizations `A[1/e]` at idempotents, identified when they agree as
/// `A`-algebras. Meets invert products; joins are the middle of the
/// (Loc, Cons) factorization of `A → A[1/a] × A[1/b]`.
pub fn zar_lattice(a: &Arc<FinRing>) -> Result<SpecLattice> {
    let mut elements: Vec<LatticeElement> = Vec::new();
    let mut gens: Vec<usize> = Vec::new();
    for e in idempotents(a) {
        let l = localize(a, &[e]);
        if elements.iter().any(|x| x.kernel == l.kernel) {
            continue;
        }
        gens.push(e);
        elements.push(LatticeElement {
            ring: l.ring,
            hom: l.projection,
            kernel: l.kernel,
        });
    }
    let labels = gens
        .iter()
        .zip(&elements)
        .map(|(&e, x)| format!("{}[1/{}] (order {})", a.name(), a.label(e), x.ring.order()))
        .collect();
    let poset = order_by_kernels(&elements, labels);
    let mut lat = SpecLattice {
        elements,
        poset,
        meet: Vec::new(),
        join: Vec::new(),
    };
    let n = lat.len();
    let missing = || Error::LatticeViolation("formula result is not an element".into());
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            let m = localize(a, &[a.mul(gens[x], gens[y])]);
            meet[x][y] = lat.position(&m.kernel).ok_or_else(missing)?;
            // units of a product are componentwise, so u⁻¹(B×) for
            // u = (π_x, π_y) is the intersection of the two unit preimages
            let (rx, ry) = (&lat.elements[x].hom, &lat.elements[y].hom);
            let (ux, uy) = (unit_preimage(rx), unit_preimage(ry));
            let s: Vec<usize> = ux.into_iter().filter(|t| uy.contains(t)).collect();
            join[x][y] = lat.position(&localize(a, &s).kernel).ok_or_else(missing)?;
        }
    }
    lat.meet = meet;
    lat.join = join;
    lat.verify()?;
    Ok(lat)
}

/// Reduced quotients `A/√I`, one per radical ideal (intersections of
/// primes). Meet is `A/√(I+J)`, join is `A/√(I∩J)`.
pub fn dom_lattice(a: &Arc<FinRing>) -> Result<SpecLattice> {
    let primes = prime_ideals(a);
    let k = primes.len();
    let mut radicals: Vec<Ideal> = Vec::new();
    for subset in 0u32..(1 << k) {
        let i = (0..k)
            .filter(|&j| subset & (1 << j) != 0)
            .fold(Ideal::unit(a), |acc, j| acc.intersection(&primes[j]));
        if !radicals.contains(&i) {
            radicals.push(i);
        }
    }
    let elements: Vec<LatticeElement> = radicals
        .iter()
        .map(|i| {
            let q = quotient(a, i);
            LatticeElement {
                ring: q.ring,
                hom: q.projection,
                kernel: i.clone(),
            }
        })
        .collect();
    let labels = elements
        .iter()
        .map(|x| format!("{}/{{{}}} (order {})", a.name(), x.kernel.labels(a).join(","), x.ring.order()))
        .collect();
    let poset = order_by_kernels(&elements, labels);
    let mut lat = SpecLattice {
        elements,
        poset,
        meet: Vec::new(),
        join: Vec::new(),
    };
    let n = lat.len();
    let missing = || Error::LatticeViolation("formula result is not an element".into());
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            let (i, j) = (&lat.elements[x].kernel, &lat.elements[y].kernel);
            meet[x][y] = lat.position(&i.sum(a, j).radical(a)).ok_or_else(missing)?;
            join[x][y] = lat.position(&i.intersection(j).radical(a)).ok_or_else(missing)?;
        }
    }
    lat.meet = meet;
    lat.join = join;
    lat.verify()?;
    Ok(lat)
}

#[derive(Debug, Clone, Serialize)]
pub struct Duality {
    pub holds: bool,
    /// `witness[i]` is the Domain element paired with Zariski element `i`.
    pub witness: Option<Vec<usize>>,
    pub pairs: Vec<[String; 2]>,
}

/// Looks for an order-reversing bijection from the Zariski lattice to the
/// Domain lattice. The complement pairing `A[1/e] ↦ A/√(e)` is tried first
/// and the generic search is the fallback.
pub fn check_duality(a: &Arc<FinRing>) -> Result<Duality> {
    let zar = zar_lattice(a)?;
    let dom = dom_lattice(a)?;
    let canonical: Option<Vec<usize>> = zar
        .elements
        .iter()
        .map(|x| {
            // the idempotent generating x is its image's preimage of 1 with least index
            let e = a
                .elements()
                .find(|&t| a.is_idempotent(t) && localize(a, &[t]).kernel == x.kernel)?;
            dom.position(&Ideal::generated(a, &[e]).radical(a))
        })
        .collect();
    let reverses = |w: &[usize]| {
        let n = zar.len();
        n == dom.len()
            && {
                let mut seen = vec![false; n];
                w.iter().all(|&j| j < n && !std::mem::replace(&mut seen[j], true))
            }
            && (0..n).all(|x| (0..n).all(|y| zar.poset.leq(x, y) == dom.poset.leq(w[y], w[x])))
    };
    let witness = match canonical {
        Some(w) if reverses(&w) => Some(w),
        _ => zar.poset.find_anti_isomorphism(&dom.poset),
    };
    let pairs = witness
        .iter()
        .flat_map(|w| {
            w.iter()
                .enumerate()
                .map(|(i, &j)| [zar.poset.labels()[i].clone(), dom.poset.labels()[j].clone()])
        })
        .collect();
    Ok(Duality {
        holds: witness.is_some(),
        witness,
        pairs,
    })
}

/// The local form at a prime and its structure map.
#[derive(Debug, Clone)]
pub struct Stalk {
    pub topology: Topology,
    pub ring: Arc<FinRing>,
    pub hom: RingHom,
}

/// zar: `A_p = A[(A∖p)⁻¹]`; dom: `A/p`; fin and nfin: the residue field
/// `A/p` as well (every prime of a finite ring is maximal).
pub fn stalk(a: &Arc<FinRing>, p: &Ideal, topology: Topology) -> Result<Stalk> {
    if !prime_ideals(a).contains(p) {
        return Err(Error::NotAPrime(format!("{{{}}} is not a prime of {}", p.labels(a).join(","), a)));
    }
    let (ring, hom) = match topology {
        Topology::Zar => {
            let outside: Vec<usize> = a.elements().filter(|&x| !p.contains(x)).collect();
            let l = localize(a, &outside);
            let name = format!("{}_p", a.name());
            let ring = Arc::new((*l.ring).clone().with_name(name));
            let hom = RingHom::new(a.clone(), ring.clone(), l.projection.map().to_vec())?;
            (ring, hom)
        }
        Topology::Dom | Topology::Fin | Topology::Nfin => {
            let q = quotient(a, p);
            (q.ring, q.projection)
        }
    };
    Ok(Stalk { topology, ring, hom })
}

impl Stalk {
    /// zar stalks are local with a localization structure map; the others
    /// are domains with a surjective structure map.
    pub fn check(&self) -> std::result::Result<(), String> {
        let c = classify_ring(&self.ring);
        match self.topology {
            Topology::Zar => {
                if !c.is_local.holds {
                    return Err(format!("{} is not local", self.ring));
                }
                if !is_localization(&self.hom) {
                    return Err("structure map is not a localization".into());
                }
            }
            _ => {
                if !c.is_domain.holds {
                    return Err(format!("{} is not a domain", self.ring));
                }
                if !self.hom.is_surjective() {
                    return Err("structure map is not surjective".into());
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SpecPoset {
    pub poset: Poset,
    pub primes: Vec<Ideal>,
    pub stalks: Vec<Stalk>,
}

impl SpecPoset {
    pub fn to_json(&self, base: &FinRing) -> SpecJson {
        SpecJson {
            elements: self
                .primes
                .iter()
                .zip(&self.stalks)
                .enumerate()
                .map(|(id, (p, s))| SpecElementJson {
                    id,
                    label: self.poset.labels()[id].clone(),
                    ring: RingSummary::of(&quotient(&Arc::new(base.clone()), p).ring),
                    stalk: Some(RingSummary::of(&s.ring)),
                    kernel: p.labels(base),
                })
                .collect(),
            order: self.poset.strict_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
            meet: None,
            join: None,
        }
    }
}

/// Points with stalks, ordered by specialization (`p ≤ q` iff `p ⊆ q`).
pub fn spec_points(a: &Arc<FinRing>, topology: Topology, budget: &Budget) -> Result<SpecPoset> {
    let points = points_of(a, topology, budget)?;
    let primes: Vec<Ideal> = points.into_iter().map(|p| p.prime).collect();
    let labels = primes.iter().map(|p| format!("({})", p.labels(a).join(","))).collect();
    let poset = Poset::from_fn(labels, |x, y| primes[x].is_subset(&primes[y]))?;
    debug_assert!(poset.is_discrete(), "primes of a finite ring are maximal");
    let stalks = primes.iter().map(|p| stalk(a, p, topology)).collect::<Result<Vec<_>>>()?;
    Ok(SpecPoset { poset, primes, stalks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::is_isomorphic;

    fn z(n: usize) -> Arc<FinRing> {
        Arc::new(FinRing::zmod(n).unwrap())
    }

    #[test]
    fn zar_lattice_of_z12_is_boolean() {
        let l = zar_lattice(&z(12)).unwrap();
        let mut orders: Vec<usize> = l.elements.iter().map(|e| e.ring.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 3, 4, 12]);
        assert_eq!(l.poset.hasse_edges().len(), 4);
    }

    #[test]
    fn small_lattices() {
        assert_eq!(zar_lattice(&z(8)).unwrap().len(), 2);
        assert_eq!(zar_lattice(&Arc::new(FinRing::gf(2, 3).unwrap())).unwrap().len(), 2);
        let d = dom_lattice(&z(4)).unwrap();
        let mut orders: Vec<usize> = d.elements.iter().map(|e| e.ring.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2]);
    }

    #[test]
    fn dom_lattice_of_z12() {
        let d = dom_lattice(&z(12)).unwrap();
        let mut orders: Vec<usize> = d.elements.iter().map(|e| e.ring.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 3, 6]);
    }

    #[test]
    fn duality_pairs_complements() {
        let d = check_duality(&z(12)).unwrap();
        assert!(d.holds);
        let zar = zar_lattice(&z(12)).unwrap();
        let dom = dom_lattice(&z(12)).unwrap();
        let w = d.witness.unwrap();
        for (i, &j) in w.iter().enumerate() {
            let (zo, dmo) = (zar.elements[i].ring.order(), dom.elements[j].ring.order());
            let pair = (zo, dmo);
            assert!([(1, 6), (12, 1), (3, 2), (4, 3)].contains(&pair), "{pair:?}");
        }
        for n in [1, 2, 8, 30, 36] {
            assert!(check_duality(&z(n)).unwrap().holds, "Z/{n}");
        }
    }

    #[test]
    fn stalks_of_z12() {
        let a = z(12);
        let p = Ideal::generated(&a, &[2]);
        let s = stalk(&a, &p, Topology::Zar).unwrap();
        assert!(is_isomorphic(&s.ring, &z(4)));
        s.check().unwrap();
        let s = stalk(&a, &p, Topology::Dom).unwrap();
        assert!(is_isomorphic(&s.ring, &z(2)));
        s.check().unwrap();
        assert!(matches!(stalk(&a, &Ideal::generated(&a, &[4]), Topology::Zar), Err(Error::NotAPrime(_))));
    }

    #[test]
    fn join_matches_explicit_product_factorization() {
        use crate::ringfacto::loc_cons_factorize;
        for a in [z(12), z(6), Arc::new(FinRing::product(&[FinRing::gf(2, 2).unwrap(), FinRing::zmod(2).unwrap()]).unwrap())] {
            let l = zar_lattice(&a).unwrap();
            for x in 0..l.len() {
                for y in 0..l.len() {
                    let (rx, ry) = (&l.elements[x].hom, &l.elements[y].hom);
                    let prod = Arc::new(FinRing::product(&[(**rx.target()).clone(), (**ry.target()).clone()]).unwrap());
                    let s = ry.target().order();
                    let diag: Vec<usize> = a.elements().map(|t| rx.apply(t) * s + ry.apply(t)).collect();
                    let u = RingHom::new(a.clone(), prod, diag).unwrap();
                    assert_eq!(loc_cons_factorize(&u).left.kernel(), l.elements[l.join[x][y]].kernel);
                }
            }
        }
    }

    #[test]
    fn spec_points_discrete() {
        let sp = spec_points(&z(12), Topology::Zar, &Budget::default()).unwrap();
        assert_eq!(sp.poset.len(), 2);
        assert!(sp.poset.is_discrete());
        assert!(spec_points(&z(1), Topology::Dom, &Budget::default()).unwrap().poset.is_empty());
    }
}
