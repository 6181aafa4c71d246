use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::classify::{Certificate, Checkpoint};
use crate::isosig::{canonical_sig, decode_sig, IsoSig};
use crate::moves::{apply_move, enumerate_moves, MoveDescriptor, MoveKind};
use crate::tri::Triangulation4;

use super::{SearchError, TraversalLimits};

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome")]
pub enum TraversalOutcome {
    Connected { certificate: Certificate, visited: usize },
    /// Every triangulation reachable within the size bound was visited.
    Separated { visited: usize },
    /// A budget ran out first.
    Exhausted { visited: usize },
}

/// Visits the component of `t0` in the Pachner graph restricted to sizes up
/// to `|t0| + excess_height`, smallest (size, signature) first.
pub fn exhaustive_traverse(
    t0: &Triangulation4,
    limits: &TraversalLimits,
    targets: &HashSet<IsoSig>,
) -> Result<TraversalOutcome, SearchError> {
    let start = canonical_sig(t0)?;
    if targets.contains(&start) {
        return Ok(TraversalOutcome::Connected { certificate: Certificate::empty(start), visited: 1 });
    }
    let bound = t0.size() + limits.excess_height;
    let mut parent: HashMap<IsoSig, Option<(IsoSig, MoveDescriptor)>> = HashMap::new();
    let mut frontier = BTreeSet::new();
    let mut bytes = 0usize;
    parent.insert(start.clone(), None);
    frontier.insert((t0.size(), start.clone()));
    while let Some((_, sig)) = frontier.pop_first() {
        let t = decode_sig(sig.as_str())?;
        for m in enumerate_moves(&t, &MoveKind::PACHNER) {
            if (t.size() as isize + m.kind.size_delta()) as usize > bound {
                continue;
            }
            let next = apply_move(&t, &m).expect("enumerated moves apply");
            let s = canonical_sig(&next)?;
            if parent.contains_key(&s) {
                continue;
            }
            bytes += 2 * s.as_str().len() + 96;
            parent.insert(s.clone(), Some((sig.clone(), m)));
            if targets.contains(&s) {
                let certificate = chain(&parent, s);
                return Ok(TraversalOutcome::Connected { certificate, visited: parent.len() });
            }
            if parent.len() >= limits.node_budget || bytes >= limits.memory_budget {
                return Ok(TraversalOutcome::Exhausted { visited: parent.len() });
            }
            frontier.insert((next.size(), s));
        }
    }
    Ok(TraversalOutcome::Separated { visited: parent.len() })
}

fn chain(parent: &HashMap<IsoSig, Option<(IsoSig, MoveDescriptor)>>, end: IsoSig) -> Certificate {
    let mut sigs = vec![end.clone()];
    let mut steps = Vec::new();
    let mut cur = end.clone();
    while let Some(Some((p, m))) = parent.get(&cur) {
        steps.push(*m);
        sigs.push(p.clone());
        cur = p.clone();
    }
    steps.reverse();
    sigs.reverse();
    // Each step is addressed against the canonical labeling of its source.
    let checkpoints =
        (1..steps.len()).map(|i| Checkpoint { after: i, sig: sigs[i].clone() }).collect();
    Certificate { from: cur, to: end, steps, checkpoints }
}
