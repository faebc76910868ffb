use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::finring::{enumerate_homs, localize, nilradical, prime_ideals, prime_power, FinRing, Ideal, RingHom};
use crate::orth::nisnevich_filter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Zar,
    Dom,
    Fin,
    Nfin,
}

impl Topology {
    pub const ALL: [Topology; 4] = [Topology::Zar, Topology::Dom, Topology::Fin, Topology::Nfin];

    pub fn as_str(self) -> &'static str {
        match self {
            Topology::Zar => "zar",
            Topology::Dom => "dom",
            Topology::Fin => "fin",
            Topology::Nfin => "nfin",
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Topology {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Topology::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown ring topology {s:?} (expected zar, dom, fin or nfin)")))
    }
}

/// A candidate covering family of a ring, in the shape its topology expects.
#[derive(Debug, Clone)]
pub enum Family {
    /// Elements `a_i`, standing for `A → A[1/a_i]`.
    Elements(Vec<usize>),
    /// Ideals `I_i`, standing for `A → A/I_i`.
    Ideals(Vec<Ideal>),
    /// Explicit homs out of the base.
    Homs(Vec<RingHom>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverResult {
    pub covers: bool,
    /// zar: coefficients `r_i` with `Σ r_i a_i = 1`; dom: the intersection
    /// of the ideals; fin and nfin: for each prime, a member whose fibre
    /// over it is nonzero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<String>,
}

impl CoverResult {
    fn yes(certificate: Vec<usize>) -> Self {
        CoverResult {
            covers: true,
            certificate: Some(certificate),
            obstruction: None,
        }
    }

    fn no(obstruction: String) -> Self {
        CoverResult {
            covers: false,
            certificate: None,
            obstruction: Some(obstruction),
        }
    }
}

/// All finite fields of order at most `bound`, smallest first.
pub fn finite_fields(bound: usize) -> Vec<Arc<FinRing>> {
    (2..=bound)
        .filter_map(prime_power)
        .map(|(p, k)| Arc::new(FinRing::gf(p, k).expect("prime power")))
        .collect()
}

pub fn cover_check(
    a: &Arc<FinRing>,
    family: &Family,
    topology: Topology,
    fields: &[Arc<FinRing>],
    budget: &Budget,
) -> Result<CoverResult> {
    match (topology, family) {
        (Topology::Zar, Family::Elements(xs)) => {
            if let Some(&x) = xs.iter().find(|&&x| x >= a.order()) {
                return Err(Error::InvalidFamily(format!("element {x} out of range")));
            }
            Ok(zar_cover(a, xs))
        }
        (Topology::Dom, Family::Ideals(is)) => {
            if is.iter().any(|i| i.mask().len() != a.order()) {
                return Err(Error::InvalidFamily("ideal of a different ring".into()));
            }
            Ok(dom_cover(a, is))
        }
        (Topology::Fin | Topology::Nfin, Family::Homs(hs)) => {
            if let Some(h) = hs.iter().find(|h| **h.source() != **a) {
                return Err(Error::InvalidFamily(format!("member {h:?} does not start at the base")));
            }
            let fin = fin_cover(a, hs);
            if topology == Topology::Fin || !fin.covers {
                return Ok(fin);
            }
            let failure = std::cell::RefCell::new(None);
            let kept = nisnevich_filter(std::slice::from_ref(hs), fields, |k, fam| {
                match fields_lift(a, k, fam, budget) {
                    Ok(None) => true,
                    Ok(Some(h)) => {
                        failure
                            .borrow_mut()
                            .get_or_insert(Ok(format!("hom {:?} to {} does not lift through the family", h.map(), k)));
                        false
                    }
                    Err(e) => {
                        failure.borrow_mut().get_or_insert(Err(e));
                        false
                    }
                }
            });
            match failure.into_inner() {
                Some(Err(e)) => Err(e),
                Some(Ok(msg)) if kept.is_empty() => Ok(CoverResult::no(msg)),
                _ => Ok(fin),
            }
        }
        (t, _) => Err(Error::InvalidFamily(format!(
            "a {t} family must be given as {}",
            match t {
                Topology::Zar => "elements",
                Topology::Dom => "ideals",
                _ => "homs",
            }
        ))),
    }
}

/// First hom `A → k` not factoring through any member, if any.
fn fields_lift(a: &Arc<FinRing>, k: &Arc<FinRing>, fam: &[RingHom], budget: &Budget) -> Result<Option<RingHom>> {
    let mut through = Vec::with_capacity(fam.len());
    for u in fam {
        through.push(enumerate_homs(u.target(), k, budget)?);
    }
    for h in enumerate_homs(a, k, budget)? {
        let lifts = fam.iter().zip(&through).any(|(u, gs)| {
            gs.iter()
                .any(|g| u.map().iter().map(|&y| g.apply(y)).eq(h.map().iter().copied()))
        });
        if !lifts {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// Lexicographically least coefficient vector with `Σ r_i a_i = 1`.
fn zar_cover(a: &FinRing, xs: &[usize]) -> CoverResult {
    let n = a.order();
    let k = xs.len();
    // reach[i][s]: the members i.. can contribute exactly s
    let mut reach = vec![vec![false; n]; k + 1];
    reach[k][a.zero()] = true;
    for i in (0..k).rev() {
        for s in 0..n {
            if !reach[i + 1][s] {
                continue;
            }
            for r in a.elements() {
                reach[i][a.add(a.mul(r, xs[i]), s)] = true;
            }
        }
    }
    if !reach[0][a.one()] {
        let i = Ideal::generated(a, xs);
        return CoverResult::no(format!("the ideal generated by the family is proper: {{{}}}", i.labels(a).join(",")));
    }
    let mut need = a.one();
    let mut coeffs = Vec::with_capacity(k);
    for i in 0..k {
        let r = a
            .elements()
            .find(|&r| reach[i + 1][a.sub(need, a.mul(r, xs[i]))])
            .expect("reachability table is consistent");
        coeffs.push(r);
        need = a.sub(need, a.mul(r, xs[i]));
    }
    CoverResult::yes(coeffs)
}

fn dom_cover(a: &FinRing, is: &[Ideal]) -> CoverResult {
    let meet = is.iter().fold(Ideal::unit(a), |acc, i| acc.intersection(i));
    let rad = nilradical(a);
    let escaped = meet.elements().find(|&x| !rad.contains(x));
    match escaped {
        None => CoverResult::yes(meet.to_vec()),
        Some(x) => CoverResult::no(format!("{} lies in every ideal but is not nilpotent", a.label(x))),
    }
}

fn fin_cover(a: &FinRing, hs: &[RingHom]) -> CoverResult {
    let mut cert = Vec::new();
    for (pi, p) in prime_ideals(a).iter().enumerate() {
        match hs.iter().position(|h| h.extend_ideal(p).is_proper()) {
            Some(i) => cert.push(i),
            None => {
                return CoverResult::no(format!(
                    "every member has empty fibre over prime #{pi} {{{}}}",
                    p.labels(a).join(",")
                ))
            }
        }
    }
    CoverResult::yes(cert)
}

/// Definitional test: every hom to each test ring lifts through one of the
/// given maps (as a factorization `h = g ∘ u_i`).
pub fn lifts_through(a: &Arc<FinRing>, family: &[RingHom], tests: &[Arc<FinRing>], budget: &Budget) -> Result<bool> {
    for k in tests {
        if fields_lift(a, k, family, budget)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The localization maps `A → A[1/a_i]` of a Zariski family.
pub fn zar_family_maps(a: &Arc<FinRing>, xs: &[usize]) -> Vec<RingHom> {
    xs.iter().map(|&x| localize(a, &[x]).projection).collect()
}

/// The quotient maps `A → A/I_i` of a Domain family.
pub fn dom_family_maps(a: &Arc<FinRing>, is: &[Ideal]) -> Vec<RingHom> {
    is.iter().map(|i| crate::finring::quotient(a, i).projection).collect()
}

/// Whether `id_A` factors through some member, decided by hom enumeration.
pub fn self_lifts(a: &Arc<FinRing>, family: &[RingHom], budget: &Budget) -> Result<bool> {
    let id = RingHom::identity(a);
    for u in family {
        for g in enumerate_homs(u.target(), a, budget)? {
            if u.then(&g).map() == id.map() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<FinRing> {
        Arc::new(FinRing::zmod(n).unwrap())
    }

    fn check(a: &Arc<FinRing>, f: Family, t: Topology) -> CoverResult {
        cover_check(a, &f, t, &finite_fields(16), &Budget::default()).unwrap()
    }

    #[test]
    fn zar_z6_two_three() {
        let r = check(&z(6), Family::Elements(vec![2, 3]), Topology::Zar);
        assert!(r.covers);
        assert_eq!(r.certificate, Some(vec![2, 1]));
        assert!(!check(&z(4), Family::Elements(vec![2]), Topology::Zar).covers);
    }

    #[test]
    fn dom_examples() {
        let a = z(4);
        assert!(check(&a, Family::Ideals(vec![Ideal::generated(&a, &[2])]), Topology::Dom).covers);
        assert!(check(&a, Family::Ideals(vec![Ideal::zero(&a)]), Topology::Dom).covers);
        let b = z(6);
        assert!(!check(&b, Family::Ideals(vec![Ideal::generated(&b, &[2])]), Topology::Dom).covers);
    }

    #[test]
    fn empty_families_cover_only_the_zero_ring() {
        for n in [1, 2, 6] {
            let a = z(n);
            for (f, t) in [
                (Family::Elements(vec![]), Topology::Zar),
                (Family::Ideals(vec![]), Topology::Dom),
                (Family::Homs(vec![]), Topology::Fin),
                (Family::Homs(vec![]), Topology::Nfin),
            ] {
                assert_eq!(check(&a, f, t).covers, n == 1, "Z/{n} {t}");
            }
        }
    }

    #[test]
    fn fin_and_nfin_differ() {
        // Z/2 -> F_4 is a finite cover of Z/2 but the identity of F_2 does not lift
        let a = z(2);
        let f4 = Arc::new(FinRing::gf(2, 2).unwrap());
        let u = enumerate_homs(&a, &f4, &Budget::default()).unwrap().remove(0);
        assert!(check(&a, Family::Homs(vec![u.clone()]), Topology::Fin).covers);
        assert!(!check(&a, Family::Homs(vec![u.clone()]), Topology::Nfin).covers);
        let id = RingHom::identity(&a);
        assert!(check(&a, Family::Homs(vec![u, id]), Topology::Nfin).covers);
    }

    #[test]
    fn wrong_shape_is_rejected() {
        let a = z(6);
        let err = cover_check(&a, &Family::Elements(vec![1]), Topology::Dom, &[], &Budget::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidFamily(_)));
    }

    #[test]
    fn field_catalogue() {
        let orders: Vec<usize> = finite_fields(16).iter().map(|f| f.order()).collect();
        assert_eq!(orders, vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16]);
    }
}
