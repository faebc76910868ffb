//! Finite categories, lifting squares, orthogonality and the
//! factorisation-system verifier used as a backstop by the other modules.

mod fincat;
mod functor;
mod lifting;
mod nisnevich;
mod system;

pub use fincat::{CategoryDesc, FinCat, Morphism, MorphismDesc};
pub use functor::{enumerate_functors, find_isomorphism, Functor, FunctorDesc};
pub use lifting::{enumerate_lifts, is_orthogonal, orthogonality_witness, squares, LiftingSquare};
pub use nisnevich::nisnevich_filter;
pub use system::{pushout, verify_system, AxiomResult, AxiomStatus, SystemReport};

pub mod axioms {
    pub use super::system::{
        FACTORIZATION, INTERSECTION_ISOS, LEFT_CODIAGONAL, LEFT_COMPOSITION, MIDDLE_UNIQUE, ORTHOGONALITY,
        RIGHT_CANCELLATION, RIGHT_COMPOSITION,
    };
}
