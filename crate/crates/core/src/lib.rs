//! Generalized triangulations of 4-manifolds: construction, local moves,
//! canonical signatures, homology, census enumeration, and classification
//! up to PL-homeomorphism by random walks in the Pachner graph.

pub mod algebra;
pub mod census;
pub mod classify;
pub mod isosig;
pub mod moves;
pub mod perm;
pub mod search;
pub mod tri;

pub use perm::{Perm, Perm3, Perm4, Perm5};
pub use tri::{Gluing, Slot, TriError, Triangulation, Triangulation2, Triangulation3, Triangulation4};
