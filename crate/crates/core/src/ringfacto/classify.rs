use std::sync::Arc;

use serde::Serialize;

use crate::finring::{is_nilpotent, localize, zero_divisor_pair, FinRing};

use super::factor::{integral_elements, is_integrally_closed};

/// Outcome of one structural test; failures carry the elements that break it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Verdict {
    fn yes() -> Self {
        Verdict {
            holds: true,
            witness: None,
            reason: None,
        }
    }

    fn no(witness: Vec<usize>, reason: impl Into<String>) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
            reason: Some(reason.into()),
        }
    }

    fn zero_ring() -> Self {
        Verdict::no(vec![], "zero ring")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingClassification {
    pub is_field: Verdict,
    pub is_fat_field: Verdict,
    pub is_local: Verdict,
    pub is_domain: Verdict,
    pub is_integrally_closed_domain: Verdict,
}

pub fn classify_ring(a: &Arc<FinRing>) -> RingClassification {
    if a.is_zero_ring() {
        return RingClassification {
            is_field: Verdict::zero_ring(),
            is_fat_field: Verdict::zero_ring(),
            is_local: Verdict::zero_ring(),
            is_domain: Verdict::zero_ring(),
            is_integrally_closed_domain: Verdict::zero_ring(),
        };
    }
    let is_field = match a.elements().find(|&x| x != a.zero() && !a.is_unit(x)) {
        None => Verdict::yes(),
        Some(x) => Verdict::no(vec![x], "nonzero non-unit"),
    };
    let is_fat_field = match a.elements().find(|&x| !a.is_unit(x) && !is_nilpotent(a, x)) {
        None => Verdict::yes(),
        Some(x) => Verdict::no(vec![x], "neither nilpotent nor invertible"),
    };
    let is_local = match a
        .elements()
        .map(|x| (x, a.sub(a.one(), x)))
        .find(|&(x, y)| !a.is_unit(x) && !a.is_unit(y))
    {
        None => Verdict::yes(),
        Some((x, y)) => Verdict::no(vec![x, y], "x + y = 1 with neither invertible"),
    };
    let is_domain = match zero_divisor_pair(a) {
        None => Verdict::yes(),
        Some((x, y)) => Verdict::no(vec![x, y], "zero divisors"),
    };
    let is_integrally_closed_domain = if !is_domain.holds {
        Verdict::no(is_domain.witness.clone().unwrap_or_default(), "not a domain")
    } else {
        // embed into the fraction field and test closedness there
        let nonzero: Vec<usize> = a.elements().filter(|&x| x != a.zero()).collect();
        let frac = localize(a, &nonzero);
        let emb = &frac.projection;
        if !emb.is_injective() {
            Verdict::no(frac.kernel.to_vec(), "does not embed in its fraction field")
        } else if is_integrally_closed(emb) {
            Verdict::yes()
        } else {
            let image = emb.image_mask();
            let missing: Vec<usize> = integral_elements(emb)
                .iter()
                .enumerate()
                .filter(|(y, w)| w.is_some() && !image[*y])
                .map(|(y, _)| y)
                .collect();
            Verdict::no(missing, "integral fractions outside the ring")
        }
    };
    RingClassification {
        is_field,
        is_fat_field,
        is_local,
        is_domain,
        is_integrally_closed_domain,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify(r: FinRing) -> RingClassification {
        classify_ring(&Arc::new(r))
    }

    #[test]
    fn z4() {
        let c = classify(FinRing::zmod(4).unwrap());
        assert!(c.is_fat_field.holds && c.is_local.holds);
        assert!(!c.is_domain.holds);
        assert_eq!(c.is_domain.witness, Some(vec![2, 2]));
    }

    #[test]
    fn z6_witnesses() {
        let c = classify(FinRing::zmod(6).unwrap());
        assert_eq!(c.is_fat_field.witness, Some(vec![2]));
        assert_eq!(c.is_local.witness, Some(vec![3, 4]));
        assert!(!c.is_domain.holds);
    }

    #[test]
    fn f4_everything() {
        let c = classify(FinRing::gf(2, 2).unwrap());
        for v in [c.is_field, c.is_fat_field, c.is_local, c.is_domain, c.is_integrally_closed_domain] {
            assert!(v.holds);
        }
    }

    #[test]
    fn zero_ring_fails_all() {
        let c = classify(FinRing::zmod(1).unwrap());
        for v in [c.is_field, c.is_fat_field, c.is_local, c.is_domain, c.is_integrally_closed_domain] {
            assert!(!v.holds);
        }
    }

    #[test]
    fn integrally_closed_domains_are_fields() {
        for n in 1..=30 {
            let c = classify(FinRing::zmod(n).unwrap());
            assert_eq!(c.is_integrally_closed_domain.holds, c.is_field.holds, "Z/{n}");
        }
    }
}
