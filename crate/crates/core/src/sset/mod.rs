mod desc;
mod map;
pub mod operator;
mod simplicial;
mod spec;

pub use desc::*;
pub use map::*;
pub use operator::*;
pub use simplicial::*;
pub use spec::*;
