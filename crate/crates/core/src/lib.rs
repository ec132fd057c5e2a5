//! Enumeration and cataloguing of small matroids.
//!
//! Matroids on up to 15 elements are stored by their hyperplanes. Single-element
//! extensions come from modular cuts of the lattice of flats, and isomorph
//! rejection uses a canonical labelling of the element/hyperplane incidence graph.

pub mod canon;
pub mod catalogue;
pub mod enumerate;
pub mod error;
pub mod johnson;
pub mod lattice;
pub mod mask;
pub mod matroid;
pub mod named;
pub mod props;

pub use error::{Error, Result};
pub use mask::SubsetMask;
pub use matroid::{Connectivity, FlatsByRank, Matroid};
