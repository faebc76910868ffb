//! Finite commutative rings given by Cayley tables.

mod desc;
mod hom;
mod ideal;
mod ops;
mod ring;

pub use desc::{ElemRef, HomDesc, RingDesc};
pub use hom::{
    canonical_form, canonical_isomorphism, canonical_ring, enumerate_homs, find_isomorphism, is_isomorphic, CanonicalForm,
    RingHom,
};
pub use ideal::{all_ideals, quotient, zero_divisor_pair, Ideal, Quotient};
pub use ops::{
    idempotents, is_nilpotent, is_prime_ideal, localize, multiplicative_closure, nilpotents, nilradical,
    primitive_idempotents, prime_ideals, quotient_is_domain, residue_field, units, units_and_nilpotents,
    verify_localization, Localization,
};
pub use ring::{prime_power, FinRing};
