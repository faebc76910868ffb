//! (Epi, Mono) factorizations for finite G-sets and vector spaces.

mod gset;
mod vect;

pub use gset::*;
pub use vect::*;
