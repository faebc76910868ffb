use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::finring::{localize, quotient, FinRing, Ideal, RingHom};

/// The three factorisation systems computed on finite rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RingSystem {
    LocCons,
    SurjMono,
    IntIntclo,
}

impl RingSystem {
    pub const ALL: [RingSystem; 3] = [RingSystem::LocCons, RingSystem::SurjMono, RingSystem::IntIntclo];

    pub fn as_str(self) -> &'static str {
        match self {
            RingSystem::LocCons => "loc-cons",
            RingSystem::SurjMono => "surj-mono",
            RingSystem::IntIntclo => "int-intclo",
        }
    }

    pub fn factorize(self, u: &RingHom) -> Factorization {
        match self {
            RingSystem::LocCons => loc_cons_factorize(u),
            RingSystem::SurjMono => surj_mono_factorize(u),
            RingSystem::IntIntclo => int_intclo_factorize(u),
        }
    }

    pub fn in_left(self, u: &RingHom) -> bool {
        match self {
            RingSystem::LocCons => is_localization(u),
            RingSystem::SurjMono => u.is_surjective(),
            RingSystem::IntIntclo => is_integral(u),
        }
    }

    pub fn in_right(self, u: &RingHom) -> bool {
        match self {
            RingSystem::LocCons => is_conservative(u),
            RingSystem::SurjMono => u.is_injective(),
            RingSystem::IntIntclo => is_integrally_closed(u),
        }
    }
}

impl fmt::Display for RingSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RingSystem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        RingSystem::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown ring system {s:?} (expected loc-cons, surj-mono or int-intclo)")))
    }
}

/// `u = right ∘ left` through `middle`.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub system: RingSystem,
    pub left: RingHom,
    pub middle: Arc<FinRing>,
    pub right: RingHom,
}

impl Factorization {
    pub fn composite(&self) -> RingHom {
        self.left.then(&self.right)
    }

    /// Composite equals the input and both legs pass the class tests.
    pub fn check(&self, u: &RingHom) -> Result<(), String> {
        if self.composite().map() != u.map() {
            return Err("right ∘ left differs from the input".into());
        }
        if !self.system.in_left(&self.left) {
            return Err(format!("left leg is not in the left class of {}", self.system));
        }
        if !self.system.in_right(&self.right) {
            return Err(format!("right leg is not in the right class of {}", self.system));
        }
        Ok(())
    }
}

/// `A → A/ker u → B`.
#[derive(Debug, Clone)]
pub struct TripleFactorization {
    pub surj: RingHom,
    pub monoint: RingHom,
    pub intclo: RingHom,
}

impl TripleFactorization {
    pub fn composite(&self) -> RingHom {
        self.surj.then(&self.monoint).then(&self.intclo)
    }
}

/// The map `A/I → B` induced by `u` on a quotient of its source.
fn induced(u: &RingHom, q_ring: &Arc<FinRing>, reps: &[usize]) -> RingHom {
    let map = reps.iter().map(|&r| u.apply(r)).collect();
    RingHom::new(q_ring.clone(), u.target().clone(), map).expect("u vanishes on the ideal")
}

/// Preimage of the target's units.
pub fn unit_preimage(u: &RingHom) -> Vec<usize> {
    let b = u.target();
    u.source().elements().filter(|&a| b.is_unit(u.apply(a))).collect()
}

pub fn loc_cons_factorize(u: &RingHom) -> Factorization {
    let s = unit_preimage(u);
    let loc = localize(u.source(), &s);
    let reps = representatives(&loc.projection);
    let right = induced(u, &loc.ring, &reps);
    Factorization {
        system: RingSystem::LocCons,
        left: loc.projection,
        middle: loc.ring,
        right,
    }
}

fn representatives(proj: &RingHom) -> Vec<usize> {
    let mut reps = vec![usize::MAX; proj.target().order()];
    for (x, &y) in proj.map().iter().enumerate() {
        if reps[y] == usize::MAX {
            reps[y] = x;
        }
    }
    reps
}

/// An element `a` with `u(a)` invertible but `a` not, if any.
pub fn conservativity_witness(u: &RingHom) -> Option<usize> {
    let (a, b) = (u.source(), u.target());
    debug_assert!(a.elements().all(|x| !a.is_unit(x) || b.is_unit(u.apply(x))));
    a.elements().find(|&x| b.is_unit(u.apply(x)) && !a.is_unit(x))
}

pub fn is_conservative(u: &RingHom) -> bool {
    conservativity_witness(u).is_none()
}

/// `u` is a localization iff it is onto and its kernel is the annihilator
/// ideal of `u⁻¹(B×)`.
pub fn is_localization(u: &RingHom) -> bool {
    if !u.is_surjective() {
        return false;
    }
    let a = u.source();
    let s = unit_preimage(u);
    let ann = Ideal::from_elements(
        a,
        &a.elements()
            .filter(|&x| s.iter().any(|&t| a.mul(t, x) == a.zero()))
            .collect::<Vec<_>>(),
    )
    .expect("annihilator of a multiplicative set is an ideal");
    u.kernel() == ann
}

pub fn surj_mono_factorize(u: &RingHom) -> Factorization {
    let q = quotient(u.source(), &u.kernel());
    let right = induced(u, &q.ring, &q.reps);
    Factorization {
        system: RingSystem::SurjMono,
        left: q.projection,
        middle: q.ring,
        right,
    }
}

/// A monic polynomial over the image witnessing integrality of `element`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegralWitness {
    pub element: usize,
    /// Coefficients below the leading one, lowest degree first, as target
    /// elements lying in the image.
    pub coefficients: Vec<usize>,
    pub polynomial: String,
}

/// For each target element, the least-degree monic relation over the
/// image found by scanning powers for a dependence on lower ones.
pub fn integral_elements(u: &RingHom) -> Vec<Option<IntegralWitness>> {
    let b = u.target();
    let mut image: Vec<usize> = u.map().to_vec();
    image.sort_unstable();
    image.dedup();
    b.elements().map(|x| integral_witness(b, &image, x)).collect()
}

fn integral_witness(b: &FinRing, image: &[usize], x: usize) -> Option<IntegralWitness> {
    let n = b.order();
    // span[v] = coefficients (c_0..c_{d-1}) with Σ c_i x^i = v
    let mut span: Vec<Option<Vec<usize>>> = vec![None; n];
    for &c in image {
        span[c].get_or_insert_with(|| vec![c]);
    }
    let mut power = x;
    for d in 1..=n {
        if let Some(cs) = &span[power] {
            let mut cs = cs.clone();
            cs.resize(d, b.zero());
            // x^d - Σ c_i x^i
            let coefficients: Vec<usize> = cs.iter().map(|&c| b.neg(c)).collect();
            let polynomial = format_poly(b, &coefficients);
            return Some(IntegralWitness {
                element: x,
                coefficients,
                polynomial,
            });
        }
        let mut next: Vec<Option<Vec<usize>>> = vec![None; n];
        for v in 0..n {
            let Some(cs) = &span[v] else { continue };
            for &c in image {
                let w = b.add(v, b.mul(c, power));
                if next[w].is_none() {
                    let mut e = cs.clone();
                    e.resize(d, b.zero());
                    e.push(c);
                    next[w] = Some(e);
                }
            }
        }
        span = next;
        power = b.mul(power, x);
    }
    None
}

fn format_poly(b: &FinRing, lower: &[usize]) -> String {
    let d = lower.len();
    let mut terms = vec![if d == 1 { "x".to_string() } else { format!("x^{d}") }];
    for (i, &c) in lower.iter().enumerate().rev() {
        if c == b.zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".into(),
            k => format!("x^{k}"),
        };
        terms.push(match (i, c == b.one()) {
            (0, _) => b.label(c).to_string(),
            (_, true) => mono,
            _ => format!("{}{}", b.label(c), mono),
        });
    }
    terms.join("+")
}

/// Every element of the target is integral over the image.
pub fn is_integral(u: &RingHom) -> bool {
    integral_elements(u).iter().all(Option::is_some)
}

/// Injective, and every element integral over the image lies in it.
pub fn is_integrally_closed(u: &RingHom) -> bool {
    if !u.is_injective() {
        return false;
    }
    let image = u.image_mask();
    integral_elements(u)
        .iter()
        .enumerate()
        .all(|(x, w)| w.is_none() || image[x])
}

/// Mask of target elements integral over the image.
fn integral_closure_mask(u: &RingHom) -> Vec<bool> {
    integral_elements(u).iter().map(Option::is_some).collect()
}

/// Middle is the integral closure of the image in the target.
pub fn int_intclo_factorize(u: &RingHom) -> Factorization {
    let (d, incl, left_map) = integral_closure(u);
    let left = RingHom::new(u.source().clone(), d.clone(), left_map).expect("corestriction of u");
    Factorization {
        system: RingSystem::IntIntclo,
        left,
        middle: d,
        right: incl,
    }
}

/// `(D, D ↪ B, A → D as a map)` for the integral closure `D` of the image.
fn integral_closure(u: &RingHom) -> (Arc<FinRing>, RingHom, Vec<usize>) {
    let b = u.target();
    let mask = integral_closure_mask(u);
    if mask.iter().all(|&m| m) {
        return (b.clone(), RingHom::identity(b), u.map().to_vec());
    }
    let (sub, elems) = b.subring(&mask).expect("integral closure is a subring");
    let sub = Arc::new(sub);
    let pos = |y: usize| elems.iter().position(|&e| e == y).expect("image lies in the closure");
    let incl = RingHom::new(sub.clone(), b.clone(), elems.clone()).expect("subring inclusion");
    let left = u.map().iter().map(|&y| pos(y)).collect();
    (sub, incl, left)
}

pub fn triple_factorize(u: &RingHom) -> TripleFactorization {
    let sm = surj_mono_factorize(u);
    let mid_map = sm.right.clone();
    let (d, incl, inner) = integral_closure(&mid_map);
    let monoint = RingHom::new(sm.middle.clone(), d, inner).expect("corestriction of the injective part");
    TripleFactorization {
        surj: sm.left,
        monoint,
        intclo: incl,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::finring::{enumerate_homs, is_isomorphic};

    fn z(n: usize) -> Arc<FinRing> {
        Arc::new(FinRing::zmod(n).unwrap())
    }

    fn only_hom(a: &Arc<FinRing>, b: &Arc<FinRing>) -> RingHom {
        let hs = enumerate_homs(a, b, &Budget::default()).unwrap();
        assert_eq!(hs.len(), 1);
        hs.into_iter().next().unwrap()
    }

    #[test]
    fn loc_cons_of_reduction_z4_z2() {
        let u = only_hom(&z(4), &z(2));
        let f = loc_cons_factorize(&u);
        assert!(f.left.is_iso());
        assert_eq!(f.middle.order(), 4);
        assert!(is_conservative(&f.right));
        f.check(&u).unwrap();
    }

    #[test]
    fn loc_cons_of_z12_z3() {
        let u = only_hom(&z(12), &z(3));
        let f = loc_cons_factorize(&u);
        assert!(is_isomorphic(&f.middle, &z(3)));
        assert_eq!(f.left.kernel().to_vec(), vec![0, 3, 6, 9]);
        assert!(f.right.is_iso());
        f.check(&u).unwrap();
    }

    #[test]
    fn conservativity() {
        assert!(is_conservative(&only_hom(&z(4), &z(2))));
        assert_eq!(conservativity_witness(&only_hom(&z(6), &z(2))), Some(3));
    }

    #[test]
    fn surj_mono_z12_to_f4() {
        let f4 = Arc::new(FinRing::gf(2, 2).unwrap());
        let u = only_hom(&z(12), &f4);
        let f = surj_mono_factorize(&u);
        assert!(is_isomorphic(&f.middle, &z(2)));
        f.check(&u).unwrap();
        let zero = only_hom(&z(6), &z(1));
        assert!(surj_mono_factorize(&zero).middle.is_zero_ring());
    }

    #[test]
    fn integral_witness_for_f4_generator() {
        let f4 = Arc::new(FinRing::gf(2, 2).unwrap());
        let u = only_hom(&z(2), &f4);
        let ws = integral_elements(&u);
        let x = f4.element("x").unwrap();
        assert_eq!(ws[x].as_ref().unwrap().polynomial, "x^2+x+1");
        assert!(is_integral(&u));
        assert!(!is_integrally_closed(&u));
        let id = RingHom::identity(&f4);
        assert!(integral_elements(&id).iter().all(|w| w.as_ref().unwrap().coefficients.len() == 1));
    }

    #[test]
    fn triple_of_z12_to_f4() {
        let f4 = Arc::new(FinRing::gf(2, 2).unwrap());
        let u = only_hom(&z(12), &f4);
        let t = triple_factorize(&u);
        assert_eq!(t.composite().map(), u.map());
        assert!(t.surj.is_surjective() && is_isomorphic(t.surj.target(), &z(2)));
        assert!(t.monoint.is_injective() && is_integral(&t.monoint));
        assert!(t.intclo.is_iso());
        let f = int_intclo_factorize(&u);
        assert_eq!(f.middle.order(), 4);
        f.check(&u).unwrap();
    }
}
