use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tri::{Triangulation2, Triangulation3};

use super::homology::AbelianGroup;
use super::tietze::simplify_presentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Recognition {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecognitionBudget {
    /// Tietze steps spent on the fundamental group.
    pub tietze_steps: usize,
}

impl Default for RecognitionBudget {
    fn default() -> Self {
        RecognitionBudget { tietze_steps: 2000 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecognitionError {
    #[error("not a 3-manifold triangulation: {0}")]
    NotA3Manifold(&'static str),
}

/// Checks that `t` is a valid connected 3-manifold triangulation: edges are
/// not reversed onto themselves and every vertex link is a sphere (interior)
/// or a disc (boundary).
pub fn check_3manifold(t: &Triangulation3) -> Result<(), RecognitionError> {
    if !t.is_connected() {
        return Err(RecognitionError::NotA3Manifold("disconnected"));
    }
    let sk = t.skeleton();
    if !sk.is_valid() {
        return Err(RecognitionError::NotA3Manifold("invalid edge or triangle"));
    }
    for v in 0..sk.count(0) {
        let l: Triangulation2 = t.vertex_link(v);
        let chi = l.euler_characteristic();
        let ok = if l.is_closed() { chi == 2 } else { chi == 1 && boundary_circles(&l) == 1 };
        if !ok {
            return Err(RecognitionError::NotA3Manifold("vertex link is neither a sphere nor a disc"));
        }
    }
    Ok(())
}

fn boundary_circles(l: &Triangulation2) -> usize {
    l.boundary_triangulation::<2>().map_or(0, |b| b.components().len())
}

/// Decides whether a closed 3-manifold triangulation is the 3-sphere. A
/// trivial fundamental group certifies a homotopy sphere, hence the sphere;
/// a homology mismatch rules it out. Anything else is `Unknown`.
pub fn recognize_s3(t: &Triangulation3, budget: RecognitionBudget) -> Result<Recognition, RecognitionError> {
    if !t.is_closed() {
        return Err(RecognitionError::NotA3Manifold("has boundary"));
    }
    check_3manifold(t)?;
    if !t.is_orientable() {
        return Ok(Recognition::No);
    }
    recognize_simply_connected(t, budget)
}

/// The bounded counterpart of [`recognize_s3`]: a valid 3-manifold with one
/// 2-sphere boundary component and trivial fundamental group is the ball.
pub fn recognize_b3(t: &Triangulation3, budget: RecognitionBudget) -> Result<Recognition, RecognitionError> {
    let Some(bdry) = t.boundary_triangulation::<3>() else {
        return Err(RecognitionError::NotA3Manifold("closed"));
    };
    check_3manifold(t)?;
    if bdry.components().len() != 1 || bdry.euler_characteristic() != 2 || !t.is_orientable() {
        return Ok(Recognition::No);
    }
    recognize_simply_connected(t, budget)
}

fn recognize_simply_connected(t: &Triangulation3, budget: RecognitionBudget) -> Result<Recognition, RecognitionError> {
    let g = simplify_presentation(&t.fundamental_group(), budget.tietze_steps);
    if g.is_trivial() {
        return Ok(Recognition::Yes);
    }
    let h = t.homology_groups();
    if h[1..].iter().any(|x| !x.is_trivial()) || h[0] != AbelianGroup::free(1) {
        return Ok(Recognition::No);
    }
    Ok(Recognition::Unknown)
}
