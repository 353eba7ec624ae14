//! Exact quantum invariants of 2-complexes given by group presentations, of their
//! 4-dimensional thickenings, and of the boundary 3-manifolds, computed over the
//! class-0 SL(2) category at an odd prime `p >= 5`.
//!
//! Two independent routes are provided: a cabled Kauffman-bracket evaluator on
//! framed braid closures ([`skein`]) and closed forms through integer homology
//! ([`homology`]).

pub mod category;
pub mod cyclo;
pub mod homology;
pub mod linkdiag;
pub mod presentation;
pub mod skein;

pub use category::CategoryData;
pub use cyclo::{FieldElem, PLocalRational, RingElem};
pub use linkdiag::{BraidWord, FramedLink};
pub use presentation::{Presentation, Word};
