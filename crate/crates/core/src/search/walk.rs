use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{Certificate, Trail};
use crate::isosig::IsoSig;
use crate::moves::{candidate_targets, descriptor, MoveKind};
use crate::tri::Triangulation4;

use super::{SearchError, WalkParams};

#[derive(Clone, Debug)]
pub enum WalkOutcome {
    /// The walk reached a known signature of the starting size.
    Hit { sig: IsoSig, cert: Certificate },
    /// No known signature was reached; `last` is the final state.
    Miss { last: Triangulation4, cert: Certificate },
}

impl WalkOutcome {
    pub fn certificate(&self) -> &Certificate {
        match self {
            WalkOutcome::Hit { cert, .. } | WalkOutcome::Miss { cert, .. } => cert,
        }
    }

    pub fn is_hit(&self) -> bool {
        matches!(self, WalkOutcome::Hit { .. })
    }
}

/// Probability of choosing a growing move at size `size`.
pub fn beta(alpha: f64, n_hat: usize, size: usize) -> f64 {
    let z = alpha * (n_hat as f64 - size as f64);
    // Logistic function, written to avoid overflow at both ends.
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Random walk that grows with 2-4 moves, shrinks with 2-0 moves and mixes
/// with 3-3 moves, biased towards size `params.n_hat`. Whenever the walk is
/// back at the starting size its signature is looked up with `known`.
pub fn usds_walk(t0: &Triangulation4, params: &WalkParams, known: &(dyn Fn(&IsoSig) -> bool + Sync)) -> WalkOutcome {
    usds_walk_to(t0, params, &[t0.size()], known)
}

/// As [`usds_walk`], but looks signatures up whenever the size is one of
/// `sizes` (the sizes the known triangulations have).
pub fn usds_walk_to(
    t0: &Triangulation4,
    params: &WalkParams,
    sizes: &[usize],
    known: &(dyn Fn(&IsoSig) -> bool + Sync),
) -> WalkOutcome {
    let mut trail = Trail::start(t0).expect("walk start must be connected");
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let deadline = Instant::now() + params.time_limit();
    let hit = walk_on(&mut trail, sizes, params, params.s, &mut rng, deadline, known);
    let cert = trail.clone().finish();
    match hit {
        Some(sig) => WalkOutcome::Hit { sig, cert },
        None => WalkOutcome::Miss { last: trail.state().clone(), cert },
    }
}

enum Branch {
    Mix,
    Grow,
    Shrink,
}

/// Makes one random move. Returns false if nothing applies anywhere.
fn random_step(trail: &mut Trail, params: &WalkParams, rng: &mut ChaCha8Rng) -> bool {
    let mut order = Vec::with_capacity(3);
    if rng.gen::<f64>() < params.x {
        order.push(Branch::Mix);
    }
    if rng.gen::<f64>() < beta(params.alpha, params.n_hat, trail.state().size()) {
        order.extend([Branch::Grow, Branch::Shrink]);
    } else {
        order.extend([Branch::Shrink, Branch::Grow]);
    }
    for b in order {
        let mut options: Vec<(MoveKind, usize)> = match b {
            Branch::Mix => tagged(trail.state(), &[MoveKind::P33]),
            Branch::Grow => tagged(trail.state(), &[MoveKind::P24]),
            Branch::Shrink => tagged(trail.state(), &[MoveKind::ZE, MoveKind::ZT]),
        };
        // 2-0 candidates can still be refused by the invariant guard.
        while !options.is_empty() {
            let (kind, target) = options.swap_remove(rng.gen_range(0..options.len()));
            let m = descriptor(trail.state(), kind, target).expect("target exists");
            if trail.apply(m).is_ok() {
                return true;
            }
        }
    }
    false
}

fn tagged(t: &Triangulation4, kinds: &[MoveKind]) -> Vec<(MoveKind, usize)> {
    kinds.iter().flat_map(|&k| candidate_targets(t, k).into_iter().map(move |x| (k, x))).collect()
}

pub(crate) fn walk_on(
    trail: &mut Trail,
    sizes: &[usize],
    params: &WalkParams,
    steps: u64,
    rng: &mut ChaCha8Rng,
    deadline: Instant,
    known: &(dyn Fn(&IsoSig) -> bool + Sync),
) -> Option<IsoSig> {
    for i in 0..steps {
        if i % 64 == 0 && Instant::now() >= deadline {
            break;
        }
        if !random_step(trail, params, rng) {
            return None;
        }
        if sizes.contains(&trail.state().size()) {
            let sig = trail.checkpoint();
            if known(&sig) {
                return Some(sig);
            }
        }
    }
    None
}

/// Brings the vertex count to `v` with 1-5 moves or random edge collapses,
/// running short walks when no collapse is available.
pub fn adjust_vertex_number(
    t0: &Triangulation4,
    v: usize,
    params: &WalkParams,
) -> Result<(Triangulation4, Certificate), SearchError> {
    if v == 0 {
        return Err(SearchError::ZeroVertices);
    }
    let mut trail = Trail::start(t0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let deadline = Instant::now() + params.time_limit();
    let mut walked = 0u64;
    loop {
        let f0 = trail.state().skeleton().count(0);
        if f0 == v {
            break;
        }
        if f0 < v {
            let m = descriptor(trail.state(), MoveKind::P15, 0).expect("non-empty");
            trail.apply(m).expect("1-5 moves always apply");
            continue;
        }
        let mut edges = candidate_targets(trail.state(), MoveKind::CE);
        edges.shuffle(&mut rng);
        let collapsed = edges.into_iter().any(|e| {
            let m = descriptor(trail.state(), MoveKind::CE, e).unwrap();
            trail.apply(m).is_ok()
        });
        if collapsed {
            continue;
        }
        if Instant::now() >= deadline || walked >= params.s {
            return Err(SearchError::Timeout(walked));
        }
        walk_on(&mut trail, &[], params, 16, &mut rng, deadline, &|_| false);
        walked += 16;
    }
    let t = trail.state().clone();
    Ok((t, trail.finish()))
}

/// Applies size-reducing moves (5-1, 4-2, then 2-0) until none is left.
pub fn greedy_simplify(t0: &Triangulation4) -> Result<(Triangulation4, Certificate), SearchError> {
    let mut trail = Trail::start(t0)?;
    'outer: loop {
        for kind in [MoveKind::P51, MoveKind::P42, MoveKind::ZE, MoveKind::ZT] {
            for x in candidate_targets(trail.state(), kind) {
                let m = descriptor(trail.state(), kind, x).unwrap();
                if trail.apply(m).is_ok() {
                    continue 'outer;
                }
            }
        }
        break;
    }
    let t = trail.state().clone();
    Ok((t, trail.finish()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_limits() {
        assert_eq!(beta(0.0, 6, 100), 0.5);
        assert!(beta(1.0, 6, 2) > 0.98);
        assert!(beta(1.0, 6, 1000) < 1e-100);
        assert!(beta(1.0, 1000, 6) > 1.0 - 1e-12);
        assert!(beta(0.5, 6, 4) > beta(0.5, 6, 5));
    }
}
