//! Higher-rank graphs: presentations by colored skeletons and factorization
//! squares, the standard constructions, fundamental-groupoid analysis,
//! orbit-space windows and the Ã₂-group word calculus.

pub mod a2;
pub mod catalog;
pub mod connectivity;
pub mod constructions;
pub mod degree;
pub mod error;
pub mod groupoid;
pub mod kgraph;
pub mod lazy;
pub mod orbit;
pub mod presentation;

pub use degree::Degree;
pub use error::{Error, Result};
pub use kgraph::{validate_presentation, KGraph, Morphism, ValidationReport};
pub use presentation::{Edge, Presentation, Square};
