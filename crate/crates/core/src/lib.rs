//! Matroids, Bergman fans and combinatorial Cremona maps.

pub mod bitset;
pub mod cli;
pub mod cremona;
pub mod field;
pub mod generators;
pub mod fan;
pub mod linalg;
pub mod matroid;

pub use bitset::ElementSet;
pub use matroid::{Flat, GroundSet, Matroid, MatroidError};
