//! Graph constructions: groups and cocycles, skew products, products and
//! pullbacks, crossed products, isomorphism testing.

pub mod cocycle;
pub mod group;
pub mod iso;
pub mod products;
pub mod skew;
