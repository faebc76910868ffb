//! Executable factorisation systems on finite structures: categories given
//! by tables, finite commutative rings, truncated simplicial sets, finite
//! G-sets and vector spaces over finite fields.

pub mod budget;
pub mod catalogue;
pub mod catfib;
pub mod error;
pub mod finring;
pub mod orth;
pub mod poset;
pub mod ringfacto;
pub mod ringspec;
pub mod sset;
pub mod suites;
pub mod toposx;

pub use budget::Budget;
pub use error::{Error, Result};
