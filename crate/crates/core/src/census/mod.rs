//! Census of closed orientable 4-manifold triangulations of a given size.

mod graphs;
mod search;
mod uf;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::HomologyVector;
use crate::isosig::{canonical_sig, IsoSig};
use crate::tri::{DualGraph, Manifoldness, Triangulation4};

pub use graphs::enumerate_dual_graphs;
use search::{facet_assignment, GluingSearch};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("a closed triangulation needs an even number of pentachora, got {0}")]
    OddSize(usize),
    #[error("census size must be positive")]
    Empty,
}

/// What to enumerate. Only closed, connected, orientable triangulations are
/// supported, so those flags are fixed.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CensusSpec {
    pub size: usize,
    pub orientable_only: bool,
    pub closed_only: bool,
    pub connected_only: bool,
    /// Turn off partial-gluing pruning (for cross-checking small sizes).
    #[serde(skip)]
    pub prune: bool,
}

impl CensusSpec {
    pub fn new(size: usize) -> Result<Self, CensusError> {
        if size == 0 {
            return Err(CensusError::Empty);
        }
        if size % 2 == 1 {
            return Err(CensusError::OddSize(size));
        }
        Ok(CensusSpec { size, orientable_only: true, closed_only: true, connected_only: true, prune: true })
    }

    pub fn unpruned(mut self) -> Self {
        self.prune = false;
        self
    }
}

/// Every complete orientable gluing of `g` that survives pruning, in search
/// order. Validity of vertex links is not checked here.
pub fn enumerate_gluings(g: &DualGraph, spec: &CensusSpec) -> Vec<Triangulation4> {
    let arcs = facet_assignment(g);
    let mut out = Vec::new();
    let mut s = GluingSearch::new(g.node_count(), &arcs, spec.prune, |t| out.push(t));
    s.run(|_| true);
    drop(s);
    out
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CensusSummary {
    pub size: usize,
    pub graphs: usize,
    /// Size of the orientation-compatible search space: 12 choices per arc.
    pub raw_candidates: u64,
    /// Complete gluings actually visited after pruning.
    pub scanned: u64,
    /// Visited gluings that are valid 4-manifold triangulations.
    pub valid: u64,
    pub distinct: usize,
    pub homology_tally: BTreeMap<String, usize>,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub signatures: Vec<IsoSig>,
    /// Candidates whose vertex links could not be recognised.
    pub quarantine: Vec<IsoSig>,
    pub summary: CensusSummary,
}

#[derive(Default)]
struct Partial {
    seen: HashMap<IsoSig, Manifoldness>,
    scanned: u64,
    valid: u64,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.scanned += other.scanned;
        self.valid += other.valid;
        for (k, v) in other.seen {
            self.seen.entry(k).or_insert(v);
        }
        self
    }
}

pub fn build_census(spec: &CensusSpec) -> Census {
    let n = spec.size;
    let graphs = enumerate_dual_graphs(n);
    let units: Vec<(usize, Vec<search::Arc>, usize)> = graphs
        .iter()
        .enumerate()
        .flat_map(|(gi, g)| {
            let arcs = facet_assignment(g);
            let k = GluingSearch::<fn(Triangulation4)>::first_choices(&arcs);
            (0..k).map(move |c| (gi, arcs.clone(), c))
        })
        .collect();

    let total = units
        .par_iter()
        .map(|(_, arcs, c)| {
            let mut part = Partial::default();
            let mut found = Vec::new();
            let mut s = GluingSearch::new(n, arcs, spec.prune, |t| found.push(t));
            s.run(|i| i == *c);
            drop(s);
            for t in found {
                part.scanned += 1;
                let Ok(sig) = canonical_sig(&t) else { continue };
                let m = *part.seen.entry(sig).or_insert_with(|| t.validity_report().is_manifold);
                if m == Manifoldness::Yes {
                    part.valid += 1;
                }
            }
            part
        })
        .reduce(Partial::default, Partial::merge);

    let mut signatures = Vec::new();
    let mut quarantine = Vec::new();
    for (sig, m) in total.seen {
        match m {
            Manifoldness::Yes => signatures.push(sig),
            Manifoldness::Unknown => quarantine.push(sig),
            Manifoldness::No => {}
        }
    }
    signatures.sort();
    quarantine.sort();

    let tallies: Vec<HomologyVector> = signatures
        .par_iter()
        .map(|s| crate::isosig::decode_sig(s.as_str()).expect("own signature").homology())
        .collect();
    let mut homology_tally = BTreeMap::new();
    for h in tallies {
        *homology_tally.entry(h.to_string()).or_insert(0) += 1;
    }

    let summary = CensusSummary {
        size: n,
        graphs: graphs.len(),
        raw_candidates: graphs.len() as u64 * 12u64.pow(n as u32),
        scanned: total.scanned,
        valid: total.valid,
        distinct: signatures.len(),
        homology_tally,
    };
    Census { signatures, quarantine, summary }
}
