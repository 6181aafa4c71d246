//! Local moves on 4-dimensional triangulations.
//!
//! Every move is addressed by a [`MoveDescriptor`]: a kind, the id of the
//! face it acts on in the skeleton's canonical order, and the simplex and
//! vertex mask of that face's first embedding. Applying the same descriptor
//! to the same gluing table always gives the same result.

mod collapse;
mod pachner;
mod twozero;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tri::Triangulation4;

pub use collapse::collapse_edge_unchecked;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    P15,
    P24,
    P33,
    P42,
    P51,
    /// 2-0 move about an edge.
    ZE,
    /// 2-0 move about a triangle.
    ZT,
    /// Edge collapse.
    CE,
}

impl MoveKind {
    pub const ALL: [MoveKind; 8] = [
        MoveKind::P15,
        MoveKind::P24,
        MoveKind::P33,
        MoveKind::P42,
        MoveKind::P51,
        MoveKind::ZE,
        MoveKind::ZT,
        MoveKind::CE,
    ];

    pub const PACHNER: [MoveKind; 5] = [MoveKind::P15, MoveKind::P24, MoveKind::P33, MoveKind::P42, MoveKind::P51];

    /// Dimension of the face the move acts on.
    pub fn face_dim(self) -> usize {
        match self {
            MoveKind::P15 => 4,
            MoveKind::P24 => 3,
            MoveKind::P33 | MoveKind::ZT => 2,
            MoveKind::P42 | MoveKind::ZE | MoveKind::CE => 1,
            MoveKind::P51 => 0,
        }
    }

    /// Change in the number of pentachora.
    pub fn size_delta(self) -> isize {
        match self {
            MoveKind::P15 => 4,
            MoveKind::P24 => 2,
            MoveKind::P33 => 0,
            MoveKind::P42 => -2,
            MoveKind::P51 => -4,
            MoveKind::ZE | MoveKind::ZT => -2,
            // Depends on the edge degree.
            MoveKind::CE => 0,
        }
    }

    pub fn is_invertible(self) -> bool {
        matches!(self, MoveKind::P15 | MoveKind::P24 | MoveKind::P33 | MoveKind::P42 | MoveKind::P51)
    }

    fn pachner_k(self) -> Option<usize> {
        match self {
            MoveKind::P15 => Some(4),
            MoveKind::P24 => Some(3),
            MoveKind::P33 => Some(2),
            MoveKind::P42 => Some(1),
            MoveKind::P51 => Some(0),
            _ => None,
        }
    }

    fn from_pachner_k(k: usize) -> MoveKind {
        [MoveKind::P51, MoveKind::P42, MoveKind::P33, MoveKind::P24, MoveKind::P15][k]
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoveDescriptor {
    pub kind: MoveKind,
    /// Face id in the skeleton order (a pentachoron index for P15).
    pub target: usize,
    /// `[simplex, vertex mask]` of the target's first embedding.
    pub replay_data: [usize; 2],
}

impl fmt::Display for MoveDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}[{}:{:05b}]", self.kind, self.target, self.replay_data[0], self.replay_data[1])
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("move {0} is not applicable")]
    InapplicableMove(MoveDescriptor),
    #[error("{0} moves have no recorded inverse")]
    NotInvertible(MoveKind),
}

/// Descriptor for the face `target` of the given kind, if it exists.
pub fn descriptor(t: &Triangulation4, kind: MoveKind, target: usize) -> Option<MoveDescriptor> {
    let d = kind.face_dim();
    let replay_data = if d == 4 {
        if target >= t.size() {
            return None;
        }
        [target, 0b11111]
    } else {
        let sk = t.skeleton();
        if target >= sk.count(d) {
            return None;
        }
        let e = sk.face(d, target).embeddings[0];
        [e.simplex, e.mask(d) as usize]
    };
    Some(MoveDescriptor { kind, target, replay_data })
}

fn pins_match(t: &Triangulation4, m: &MoveDescriptor) -> bool {
    descriptor(t, m.kind, m.target).is_some_and(|d| d.replay_data == m.replay_data)
}

/// Whether `m` can be applied to `t`. For edge collapses and 2-0 moves this
/// includes the post-hoc invariant guard, so it is as expensive as applying
/// the move.
pub fn is_applicable(t: &Triangulation4, m: &MoveDescriptor) -> bool {
    apply_move(t, m).is_ok()
}

fn cheap_check(t: &Triangulation4, kind: MoveKind, target: usize) -> bool {
    match kind {
        MoveKind::ZE => twozero::plan_edge(t, target).is_some(),
        MoveKind::ZT => twozero::plan_triangle(t, target).is_some(),
        MoveKind::CE => collapse::precheck(t, target),
        k => pachner::plan(t, k.pachner_k().unwrap(), target).is_some(),
    }
}

/// All applicable moves of the requested kinds, grouped by kind in the
/// order given and by target id within a kind.
pub fn enumerate_moves(t: &Triangulation4, kinds: &[MoveKind]) -> Vec<MoveDescriptor> {
    let mut out = Vec::new();
    for &kind in kinds {
        let d = kind.face_dim();
        let count = if d == 4 { t.size() } else { t.skeleton().count(d) };
        for target in 0..count {
            let ok = if matches!(kind, MoveKind::CE | MoveKind::ZE | MoveKind::ZT) {
                descriptor(t, kind, target).is_some_and(|m| is_applicable(t, &m))
            } else {
                cheap_check(t, kind, target)
            };
            if ok {
                out.push(descriptor(t, kind, target).unwrap());
            }
        }
    }
    out
}

/// Targets of one kind that pass the local checks, without the invariant
/// guard of edge collapses and 2-0 moves; applying one of those may still
/// fail. Used by the random walks, where guarding every candidate up front
/// would be wasteful.
pub fn candidate_targets(t: &Triangulation4, kind: MoveKind) -> Vec<usize> {
    let d = kind.face_dim();
    let count = if d == 4 { t.size() } else { t.skeleton().count(d) };
    (0..count).filter(|&x| cheap_check(t, kind, x)).collect()
}

pub fn apply_move(t: &Triangulation4, m: &MoveDescriptor) -> Result<Triangulation4, MoveError> {
    let err = || MoveError::InapplicableMove(*m);
    if !pins_match(t, m) {
        return Err(err());
    }
    match m.kind {
        MoveKind::ZE => twozero::plan_edge(t, m.target).and_then(|p| twozero::apply_checked(t, &p)).ok_or_else(err),
        MoveKind::ZT => twozero::plan_triangle(t, m.target).and_then(|p| twozero::apply_checked(t, &p)).ok_or_else(err),
        MoveKind::CE => collapse::collapse_checked(t, m.target).ok_or_else(err),
        k => {
            let plan = pachner::plan(t, k.pachner_k().unwrap(), m.target).ok_or_else(err)?;
            Ok(pachner::apply(t, &plan).0)
        }
    }
}

/// Applies a Pachner move and returns the descriptor that undoes it.
pub fn apply_with_inverse(t: &Triangulation4, m: &MoveDescriptor) -> Result<(Triangulation4, MoveDescriptor), MoveError> {
    let Some(k) = m.kind.pachner_k() else {
        return Err(MoveError::NotInvertible(m.kind));
    };
    if !pins_match(t, m) {
        return Err(MoveError::InapplicableMove(*m));
    }
    let plan = pachner::plan(t, k, m.target).ok_or(MoveError::InapplicableMove(*m))?;
    let (out, created) = pachner::apply(t, &plan);
    let kind = MoveKind::from_pachner_k(4 - k);
    let target = if kind.face_dim() == 4 { created.0 } else { out.skeleton().class_of(created.0, created.1) };
    let inv = descriptor(&out, kind, target).expect("created face exists");
    Ok((out, inv))
}

/// Descriptor on `after` that undoes `m`, which was applied to `before`.
pub fn inverse_descriptor(before: &Triangulation4, m: &MoveDescriptor, after: &Triangulation4) -> Result<MoveDescriptor, MoveError> {
    let (out, inv) = apply_with_inverse(before, m)?;
    if out != *after {
        return Err(MoveError::InapplicableMove(*m));
    }
    Ok(inv)
}
