use std::collections::HashSet;

use super::*;
use crate::census::{build_census, CensusSpec};
use crate::classify::verify_certificate;
use crate::isosig::{canonical_sig, decode_sig, IsoSig};
use crate::moves::{descriptor, apply_move, MoveKind};
use crate::tri::Triangulation4;

fn census2() -> Vec<Triangulation4> {
    build_census(&CensusSpec::new(2).unwrap())
        .signatures
        .iter()
        .map(|s| decode_sig(s.as_str()).unwrap())
        .collect()
}

fn spheres() -> Vec<Triangulation4> {
    census2().into_iter().filter(|t| t.homology().is_trivial()).collect()
}

fn walk_params() -> WalkParams {
    WalkParams { x: 0.4, alpha: 0.5, n_hat: 6, s: 100_000, seed: 7, timeout: 60.0 }
}

#[test]
fn walk_connects_two_spheres() {
    let s = spheres();
    assert_eq!(s.len(), 6);
    // None of the walk moves changes the vertex count.
    let s: Vec<_> = s.into_iter().filter(|t| t.skeleton().count(0) == 3).collect();
    assert!(s.len() >= 2);
    let target = canonical_sig(&s[1]).unwrap();
    let out = usds_walk(&s[0], &walk_params(), &|x: &IsoSig| *x == target);
    match &out {
        WalkOutcome::Hit { sig, cert } => {
            assert_eq!(*sig, target);
            assert_eq!(cert.to, target);
            assert!(verify_certificate(cert));
        }
        WalkOutcome::Miss { .. } => panic!("walk missed"),
    }
}

#[test]
fn walk_is_reproducible() {
    let s = spheres();
    let p = WalkParams { s: 300, ..walk_params() };
    let a = usds_walk(&s[2], &p, &|_: &IsoSig| false);
    let b = usds_walk(&s[2], &p, &|_: &IsoSig| false);
    assert_eq!(a.certificate(), b.certificate());
    assert!(verify_certificate(a.certificate()));
    let h = s[2].homology();
    if let WalkOutcome::Miss { last, .. } = a {
        assert_eq!(last.homology(), h);
    }
}

#[test]
fn vertex_adjustment() {
    let c = census2();
    let p = walk_params();
    for t in &c {
        let f0 = t.skeleton().count(0);
        let (same, cert) = adjust_vertex_number(t, f0, &p).unwrap();
        assert!(cert.is_empty());
        assert_eq!(canonical_sig(&same).unwrap(), canonical_sig(t).unwrap());

        let (up, cert) = adjust_vertex_number(t, f0 + 2, &p).unwrap();
        assert_eq!(cert.steps.len(), 2);
        assert_eq!(up.size(), t.size() + 8);
        assert!(verify_certificate(&cert));

        if f0 >= 2 {
            let (down, cert) = adjust_vertex_number(t, 1, &p).unwrap();
            assert_eq!(down.skeleton().count(0), 1);
            assert_eq!(down.homology(), t.homology());
            assert!(verify_certificate(&cert));
        }
    }
}

#[test]
fn greedy_undoes_a_subdivision() {
    for t in census2() {
        let (same, cert) = greedy_simplify(&t).unwrap();
        assert!(cert.is_empty(), "a minimal triangulation changed");
        assert_eq!(same.size(), 2);
        let up = apply_move(&t, &descriptor(&t, MoveKind::P15, 1).unwrap()).unwrap();
        let (down, cert) = greedy_simplify(&up).unwrap();
        assert_eq!(canonical_sig(&down).unwrap(), canonical_sig(&t).unwrap());
        assert!(verify_certificate(&cert));
    }
}

#[test]
fn traversal_trivial_cases() {
    let c = census2();
    let start: HashSet<IsoSig> = [canonical_sig(&c[0]).unwrap()].into();
    match exhaustive_traverse(&c[0], &TraversalLimits::default(), &start).unwrap() {
        TraversalOutcome::Connected { certificate, .. } => assert!(certificate.is_empty()),
        o => panic!("{o:?}"),
    }
    let flat = TraversalLimits { excess_height: 0, ..Default::default() };
    for t in &c {
        if crate::moves::candidate_targets(t, MoveKind::P33).is_empty() {
            let out = exhaustive_traverse(t, &flat, &HashSet::new()).unwrap();
            assert!(matches!(out, TraversalOutcome::Separated { visited: 1 }), "{out:?}");
        }
    }
}

#[test]
fn traversal_finds_a_certificate() {
    let s = spheres();
    let p24 = crate::moves::candidate_targets(&s[0], MoveKind::P24)[0];
    let up = apply_move(&s[0], &descriptor(&s[0], MoveKind::P24, p24).unwrap()).unwrap();
    let targets: HashSet<IsoSig> = [canonical_sig(&up).unwrap()].into();
    let limits = TraversalLimits { excess_height: 2, ..Default::default() };
    match exhaustive_traverse(&s[0], &limits, &targets).unwrap() {
        TraversalOutcome::Connected { certificate, .. } => {
            assert!(targets.contains(&certificate.to));
            assert!(verify_certificate(&certificate));
        }
        o => panic!("{o:?}"),
    }
}
