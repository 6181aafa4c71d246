//! Exact integer algebra: Smith normal form, simplicial homology, edge-path
//! presentations of the fundamental group with Tietze simplification, and
//! the 3-sphere / 3-ball recognition built on them.

mod group;
mod homology;
mod matrix;
mod recognition;
mod tietze;

pub use group::{GroupPresentation, Word};
pub use homology::{AbelianGroup, HomologyVector};
pub use matrix::{smith_normal_form, IntMatrix, SmithForm};
pub use recognition::{check_3manifold, recognize_b3, recognize_s3, Recognition, RecognitionBudget, RecognitionError};
pub use tietze::{cyclic_reduce, free_reduce, invert, replay, simplify_presentation, simplify_traced, Simplified, TietzeStep};
