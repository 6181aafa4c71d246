use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cert::Certificate;
use super::registry::ClassRegistry;
use crate::isosig::{decode_sig, IsoSig, SigError};
use crate::search::{adjust_vertex_number, usds_walk_to, WalkOutcome, WalkParams};
use crate::tri::Triangulation4;

/// Invariants shared by PL-homeomorphic triangulations; classification
/// runs separately on each part.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PartKey {
    pub chi: i64,
    pub homology: String,
    pub orientable: bool,
}

pub fn group_by_invariants(sigs: &[IsoSig]) -> Result<BTreeMap<PartKey, Vec<IsoSig>>, SigError> {
    let keys: Vec<PartKey> = sigs
        .par_iter()
        .map(|s| {
            let t = decode_sig(s.as_str())?;
            Ok(PartKey { chi: t.euler_characteristic(), homology: t.homology().to_string(), orientable: t.is_orientable() })
        })
        .collect::<Result<_, SigError>>()?;
    let mut parts: BTreeMap<PartKey, Vec<IsoSig>> = BTreeMap::new();
    for (k, s) in keys.into_iter().zip(sigs) {
        parts.entry(k).or_default().push(s.clone());
    }
    Ok(parts)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifyParams {
    /// Walks of steps 3 and 4.
    pub walk: WalkParams,
    /// Walks from the representatives of the classes left after step 4.
    pub relaxed: WalkParams,
    /// Representative rounds repeat while more than `k` classes remain.
    pub k: usize,
    /// How many relaxed rounds to try before giving up.
    pub relaxed_rounds: usize,
    /// Include wall-clock timings in the report. Off by default so that
    /// reports are reproducible byte for byte.
    pub timings: bool,
}

impl Default for ClassifyParams {
    fn default() -> Self {
        ClassifyParams {
            walk: WalkParams::default(),
            relaxed: WalkParams { x: 0.7, alpha: 0.4, n_hat: 10, s: 300_000, seed: 0, timeout: 600.0 },
            k: 10,
            relaxed_rounds: 4,
            timings: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassEntry {
    /// Least member signature.
    pub representative: IsoSig,
    pub size: usize,
    pub members: Vec<IsoSig>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub step1_s: f64,
    pub step2_s: f64,
    pub per_merge_s: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub part_key: Option<PartKey>,
    pub vertex_target: usize,
    pub classes: Vec<ClassEntry>,
    /// Number of successful merges per round: adjusted walks, then each
    /// representative round, then each relaxed round.
    pub merges: Vec<usize>,
    #[serde(skip)]
    pub certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

/// Seed of the walk for member `i` in phase `phase`.
fn seed(base: u64, phase: u64, i: usize) -> u64 {
    base ^ (phase.wrapping_mul(0x9e37_79b9_7f4a_7c15)) ^ (i as u64).wrapping_mul(0xbf58_476d_1ce4_e5b9)
}

struct Adjusted {
    t: Triangulation4,
    cert: Certificate,
}

/// Runs one batch of walks from a snapshot of the registry and commits the
/// hits in member order. Returns the number of merges.
fn walk_batch(
    reg: &mut ClassRegistry,
    starts: &[usize],
    adjusted: &[Option<Adjusted>],
    sizes: &[usize],
    params: &WalkParams,
    phase: u64,
    per_merge: &mut Vec<f64>,
    clock: Instant,
) -> usize {
    let roots: Vec<usize> = (0..reg.len()).map(|i| reg.root(i)).collect();
    let index: HashMap<&IsoSig, usize> = reg.members().iter().enumerate().map(|(i, s)| (s, i)).collect();
    let hits: Vec<Option<(usize, Certificate)>> = starts
        .par_iter()
        .map(|&i| {
            let a = adjusted[i].as_ref()?;
            let mine = roots[i];
            let known = |s: &IsoSig| index.get(s).is_some_and(|&j| roots[j] != mine);
            let p = params.with_seed(seed(params.seed, phase, i));
            match usds_walk_to(&a.t, &p, &sizes, &known) {
                WalkOutcome::Hit { sig, cert } => {
                    let full = a.cert.clone().then(cert).ok()?;
                    Some((index[&sig], full))
                }
                WalkOutcome::Miss { .. } => None,
            }
        })
        .collect();
    let mut merged = 0;
    for (&i, hit) in starts.iter().zip(hits) {
        let Some((j, cert)) = hit else { continue };
        let (a, b) = (reg.members()[i].clone(), reg.members()[j].clone());
        match reg.merge(&a, &b, cert) {
            Ok(true) => {
                merged += 1;
                per_merge.push(clock.elapsed().as_secs_f64());
            }
            Ok(false) => {}
            Err(e) => log::warn!("discarding certificate {a} -> {b}: {e}"),
        }
    }
    merged
}

/// Sorts one part of a census into PL classes by connecting members with
/// random walks, committing only verified certificates.
pub fn run_main_algorithm(census: &[IsoSig], params: &ClassifyParams) -> Result<ClassificationReport, super::ClassifyError> {
    let start = Instant::now();
    let mut reg = ClassRegistry::new(census)?;
    let tris: Vec<Triangulation4> =
        census.par_iter().map(|s| decode_sig(s.as_str())).collect::<Result<_, SigError>>()?;
    let v = tris.iter().map(|t| t.skeleton().count(0)).min().unwrap_or(1);
    // Walks look for members at the sizes members have.
    let mut sizes: Vec<usize> = tris.iter().map(|t| t.size()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let mut per_merge = Vec::new();
    let mut merges = Vec::new();

    // Step 1: bring every member to v vertices.
    let adjusted: Vec<Option<Adjusted>> = tris
        .par_iter()
        .enumerate()
        .map(|(i, t)| {
            let p = params.walk.with_seed(seed(params.walk.seed, 0, i));
            match adjust_vertex_number(t, v, &p) {
                Ok((t, cert)) => Some(Adjusted { t, cert }),
                Err(e) => {
                    log::warn!("vertex adjustment failed for {}: {e}", census[i]);
                    None
                }
            }
        })
        .collect();
    let all: Vec<usize> = (0..census.len()).collect();
    let step1 = start.elapsed().as_secs_f64();
    log::info!("step 1: adjusted {} members to {v} vertices in {step1:.2}s", census.len());

    // Step 3(b): walk from every member to another member.
    let clock = Instant::now();
    if reg.class_count() > 1 {
        merges.push(walk_batch(&mut reg, &all, &adjusted, &sizes, &params.walk, 1, &mut per_merge, clock));
    } else {
        merges.push(0);
    }
    // Step 4: one walk per class representative, repeated while more than
    // `k` classes are left and the previous round made progress.
    let mut phase = 2;
    loop {
        if reg.class_count() <= 1 {
            break;
        }
        let reps = representatives(&reg, &adjusted);
        let m = walk_batch(&mut reg, &reps, &adjusted, &sizes, &params.walk, phase, &mut per_merge, clock);
        merges.push(m);
        phase += 1;
        if m == 0 || reg.class_count() <= params.k {
            break;
        }
    }
    let step2 = clock.elapsed().as_secs_f64();
    log::info!("step 2: {} classes after {step2:.2}s", reg.class_count());

    // Steps 5 and 6: relaxed walks from the representatives of the classes
    // that are left.
    let mut round = 0;
    let mut tail = Vec::new();
    let clock = Instant::now();
    while reg.class_count() > 1 && round < params.relaxed_rounds {
        let reps = representatives(&reg, &adjusted);
        let m = walk_batch(&mut reg, &reps, &adjusted, &sizes, &params.relaxed, 1000 + round as u64, &mut tail, clock);
        log::info!("relaxed round {round}: {m} merges, {} classes", reg.class_count());
        merges.push(m);
        round += 1;
    }
    per_merge.extend(tail);

    let classes = reg
        .classes()
        .into_iter()
        .map(|c| ClassEntry {
            representative: reg.members()[c[0]].clone(),
            size: c.len(),
            members: c.iter().map(|&i| reg.members()[i].clone()).collect(),
        })
        .collect();
    Ok(ClassificationReport {
        part_key: None,
        vertex_target: v,
        classes,
        merges,
        certificates: reg.certificates().to_vec(),
        timings: params.timings.then_some(Timings { step1_s: step1, step2_s: step2, per_merge_s: per_merge }),
    })
}

/// One walk start per class: the registry representative, or the first
/// member whose vertex adjustment succeeded if the representative's failed.
fn representatives(reg: &ClassRegistry, adjusted: &[Option<Adjusted>]) -> Vec<usize> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for i in 0..reg.len() {
        let root = reg.root(i);
        if seen.contains(&root) {
            continue;
        }
        let rep = reg.index_of(reg.representative(i)).unwrap();
        let pick = if adjusted[rep].is_some() {
            Some(rep)
        } else {
            (0..reg.len()).find(|&j| reg.root(j) == root && adjusted[j].is_some())
        };
        seen.insert(root);
        out.extend(pick);
    }
    out
}
