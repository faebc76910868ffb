//! Factorisation systems, classifiers and covering families on finite rings.

mod classify;
mod cover;
mod factor;
mod points;
mod universe;

pub use classify::{classify_ring, RingClassification, Verdict};
pub use cover::{
    cover_check, dom_family_maps, finite_fields, lifts_through, self_lifts, zar_family_maps, CoverResult, Family, Topology,
};
pub use factor::{
    conservativity_witness, int_intclo_factorize, integral_elements, is_conservative, is_integral, is_integrally_closed,
    is_localization, loc_cons_factorize, surj_mono_factorize, triple_factorize, unit_preimage, Factorization,
    IntegralWitness, RingSystem, TripleFactorization,
};
pub use points::{points_of, Point};
pub use universe::RingUniverse;
