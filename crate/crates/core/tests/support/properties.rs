//! Property checks over census triangulations. Each returns a one-line
//! summary on success and a description of the first counterexample
//! otherwise.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use plclass::algebra::{smith_normal_form, IntMatrix};
use plclass::census::{build_census, enumerate_dual_graphs, enumerate_gluings, CensusSpec};
use plclass::classify::{Certificate, Checkpoint, ClassRegistry};
use plclass::isosig::{canonical_sig, decode_sig, IsoSig};
use plclass::moves::{apply_move, apply_with_inverse, enumerate_moves, MoveDescriptor, MoveKind};
use plclass::{Perm5, Triangulation4};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<String, String>;

pub fn census(n: usize) -> Vec<Triangulation4> {
    let c = build_census(&CensusSpec::new(n).unwrap());
    c.signatures.iter().map(|s| decode_sig(s.as_str()).unwrap()).collect()
}

fn sig(t: &Triangulation4) -> IsoSig {
    canonical_sig(t).unwrap()
}

/// Boundary maps compose to zero on every census member and on every
/// complete orientable gluing of two pentachora with no face identified
/// with itself in reverse, manifold or not.
pub fn boundary_squares_vanish(members: &[Triangulation4]) -> Check {
    let spec = CensusSpec::new(2).unwrap().unpruned();
    let raw: Vec<Triangulation4> = enumerate_dual_graphs(2)
        .iter()
        .flat_map(|g| enumerate_gluings(g, &spec))
        .filter(|t| t.skeleton().is_valid())
        .collect();
    let mut checked = 0;
    for t in members.iter().chain(&raw) {
        for p in 1..4 {
            let prod = t.boundary_matrix(p).mul(&t.boundary_matrix(p + 1));
            if !prod.is_zero() {
                return Err(format!("d{p} d{} != 0 on {:?}", p + 1, canonical_sig(t)));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} products over {} triangulations", members.len() + raw.len()))
}

fn dehn_sommerville(f: &[usize], chi: i64) -> bool {
    let f: Vec<i64> = f.iter().map(|&x| x as i64).collect();
    -2 * f[3] + 5 * f[4] == 0
        && 2 * f[1] - 3 * f[2] + 4 * f[3] - 5 * f[4] == 0
        && f[0] - f[1] + f[2] - f[3] + f[4] == chi
}

struct Invariants {
    chi: i64,
    homology: String,
    orientable: bool,
}

fn invariants(t: &Triangulation4) -> Invariants {
    Invariants { chi: t.euler_characteristic(), homology: t.homology().to_string(), orientable: t.is_orientable() }
}

/// Applies `m` and checks the f-vector and the invariants of the result.
fn check_move(t: &Triangulation4, before: &Invariants, m: &MoveDescriptor) -> Result<(), String> {
    let u = apply_move(t, m).map_err(|e| format!("{m} listed but not applicable: {e}"))?;
    let after = invariants(&u);
    if !dehn_sommerville(&u.f_vector(), after.chi) {
        return Err(format!("{m} on {} gives f-vector {:?}", sig(t), u.f_vector()));
    }
    if after.chi != before.chi || after.homology != before.homology || after.orientable != before.orientable {
        return Err(format!(
            "{m} on {} changes invariants: chi {} -> {}, homology {} -> {}, orientable {} -> {}",
            sig(t),
            before.chi,
            after.chi,
            before.homology,
            after.homology,
            before.orientable,
            after.orientable
        ));
    }
    Ok(())
}

/// Every available move of every kind on every member, and on every state
/// one 1-5 or 2-4 move away from a member (so that the inverse moves and
/// 2-0 moves get exercised too).
pub fn moves_preserve_invariants_exhaustively(members: &[Triangulation4]) -> Check {
    let mut per_kind: BTreeMap<MoveKind, usize> = BTreeMap::new();
    let mut states = Vec::new();
    for t in members {
        states.push(t.clone());
        for m in enumerate_moves(t, &[MoveKind::P15, MoveKind::P24]) {
            states.push(apply_move(t, &m).unwrap());
        }
    }
    for t in &states {
        let before = invariants(t);
        if !dehn_sommerville(&t.f_vector(), before.chi) {
            return Err(format!("{} violates Dehn-Sommerville", sig(t)));
        }
        for m in enumerate_moves(t, &MoveKind::ALL) {
            check_move(t, &before, &m)?;
            *per_kind.entry(m.kind).or_default() += 1;
        }
    }
    let missing: Vec<_> = MoveKind::ALL.iter().filter(|k| !per_kind.contains_key(k)).collect();
    if !missing.is_empty() {
        return Err(format!("move kinds never exercised: {missing:?}"));
    }
    Ok(format!("{} moves on {} states {per_kind:?}", per_kind.values().sum::<usize>(), states.len()))
}

/// `samples` moves drawn uniformly from the available moves of uniformly
/// chosen members.
pub fn moves_preserve_invariants_sampled(members: &[Triangulation4], samples: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cache: HashMap<usize, (Vec<MoveDescriptor>, Invariants)> = HashMap::new();
    let mut per_kind: BTreeMap<MoveKind, usize> = BTreeMap::new();
    for _ in 0..samples {
        let i = rng.gen_range(0..members.len());
        let t = &members[i];
        let (moves, before) = cache.entry(i).or_insert_with(|| (enumerate_moves(t, &MoveKind::ALL), invariants(t)));
        let m = moves.choose(&mut rng).ok_or_else(|| format!("no moves on {}", sig(t)))?;
        check_move(t, before, m)?;
        *per_kind.entry(m.kind).or_default() += 1;
    }
    Ok(format!("{samples} sampled moves {per_kind:?}"))
}

/// Each 1-5, 2-4 and 3-3 move followed by its reported inverse returns to
/// the starting signature.
pub fn round_trips_restore_signatures(members: &[Triangulation4]) -> Check {
    let pairs = [(MoveKind::P15, MoveKind::P51), (MoveKind::P24, MoveKind::P42), (MoveKind::P33, MoveKind::P33)];
    let mut count = [0usize; 3];
    for t in members {
        let s0 = sig(t);
        for (k, (kind, inverse)) in pairs.iter().enumerate() {
            for m in enumerate_moves(t, &[*kind]) {
                let (u, inv) = apply_with_inverse(t, &m).map_err(|e| format!("{m} on {s0}: {e}"))?;
                if inv.kind != *inverse {
                    return Err(format!("{m} on {s0} reports inverse {inv}"));
                }
                let back = apply_move(&u, &inv).map_err(|e| format!("inverse {inv} of {m} on {s0}: {e}"))?;
                if sig(&back) != s0 {
                    return Err(format!("{m} then {inv} on {s0} ends at {}", sig(&back)));
                }
                count[k] += 1;
            }
        }
    }
    Ok(format!("P15/P51 {}, P24/P42 {}, P33/P33 {}", count[0], count[1], count[2]))
}

pub fn relabeling_invariance(members: &[Triangulation4], per_member: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in members {
        let s0 = sig(t);
        let n = t.size();
        for _ in 0..per_member {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let relabel: Vec<Perm5> = (0..n).map(|_| Perm5::from_lex_index(rng.gen_range(0..120)).unwrap()).collect();
            let u = t.relabeled(&order, &relabel);
            if sig(&u) != s0 {
                return Err(format!("relabeling {order:?} {relabel:?} of {s0} gives {}", sig(&u)));
            }
        }
    }
    Ok(format!("{} relabelings", members.len() * per_member))
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// Invariant factors from determinantal divisors: d_k is the gcd of all
/// k x k minors and the k-th factor is d_k / d_{k-1}.
fn minor_gcd_factors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=r.min(c) {
        let mut g = 0i128;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j] as i128).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(BigInt::from(g / prev));
        prev = g;
    }
    out
}

pub fn smith_against_minor_gcd(count: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        // Mostly small entries with some zeros, so that torsion shows up.
        let m: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(-6..=6) }).collect())
            .collect();
        let snf = smith_normal_form(&IntMatrix::from_rows(&m)).diagonal;
        let oracle = minor_gcd_factors(&m);
        if snf != oracle {
            return Err(format!("{m:?}: smith {snf:?}, minors {oracle:?}"));
        }
    }
    Ok(format!("{count} random matrices up to 6x6"))
}

/// Members of a star around `t`: `t` itself and the distinct results of
/// single moves, each with a move from it back to `t`.
struct Star {
    sigs: Vec<IsoSig>,
    back: Vec<Option<MoveDescriptor>>,
    out: Vec<Option<MoveDescriptor>>,
}

fn star(t: &Triangulation4) -> Star {
    let centre = sig(t);
    let t = decode_sig(centre.as_str()).unwrap();
    let mut sigs = vec![centre.clone()];
    let mut back = vec![None];
    let mut out = vec![None];
    for m in enumerate_moves(&t, &[MoveKind::P15, MoveKind::P24, MoveKind::P33]) {
        let s = sig(&apply_move(&t, &m).unwrap());
        if sigs.contains(&s) {
            continue;
        }
        // The way back, addressed against the decoded signature.
        let u = decode_sig(s.as_str()).unwrap();
        let inv = enumerate_moves(&u, &[MoveKind::P51, MoveKind::P42, MoveKind::P33])
            .into_iter()
            .find(|b| sig(&apply_move(&u, b).unwrap()) == centre)
            .expect("every move has an inverse");
        sigs.push(s);
        back.push(Some(inv));
        out.push(Some(m));
    }
    Star { sigs, back, out }
}

impl Star {
    /// Certificate from member `i` to member `j` through the centre.
    fn certificate(&self, i: usize, j: usize) -> Certificate {
        let mut steps = Vec::new();
        let mut checkpoints = Vec::new();
        if let Some(b) = self.back[i] {
            steps.push(b);
            checkpoints.push(Checkpoint { after: 1, sig: self.sigs[0].clone() });
        }
        steps.extend(self.out[j]);
        if i == j {
            return Certificate::empty(self.sigs[i].clone());
        }
        Certificate { from: self.sigs[i].clone(), to: self.sigs[j].clone(), steps, checkpoints }
    }
}

/// Random merge sequences on a registry, compared after every merge with
/// a brute-force partition.
pub fn registry_against_partition_oracle(centre: &Triangulation4, sequences: usize, seed: u64) -> Check {
    let st = star(centre);
    let n = st.sigs.len();
    if n < 8 {
        return Err(format!("star around {} has only {n} members", st.sigs[0]));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut merges = 0;
    for _ in 0..sequences {
        let k = rng.gen_range(1..=n);
        let mut chosen: Vec<usize> = (0..n).collect();
        chosen.shuffle(&mut rng);
        chosen.truncate(k);
        let names: Vec<IsoSig> = chosen.iter().map(|&i| st.sigs[i].clone()).collect();
        let mut reg = ClassRegistry::new(&names).map_err(|e| e.to_string())?;
        let mut label: Vec<usize> = (0..k).collect();
        for _ in 0..rng.gen_range(0..2 * k + 1) {
            let (a, b) = (rng.gen_range(0..k), rng.gen_range(0..k));
            let cert = st.certificate(chosen[a], chosen[b]);
            let rep_b = reg.representative(b).clone();
            let merged = reg.merge(&names[a], &names[b], cert).map_err(|e| format!("merge {a} {b}: {e}"))?;
            let expect = label[a] != label[b];
            if merged != expect {
                return Err(format!("merge {a} -> {b} returned {merged}, oracle says {expect}"));
            }
            let (la, lb) = (label[a], label[b]);
            label.iter_mut().filter(|l| **l == la).for_each(|l| *l = lb);
            if reg.representative(a) != &rep_b {
                return Err("representative does not follow the target class".into());
            }
            let mut distinct = label.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if reg.class_count() != distinct.len() {
                return Err(format!("class count {} vs oracle {}", reg.class_count(), distinct.len()));
            }
            for i in 0..k {
                for j in 0..k {
                    if (reg.root(i) == reg.root(j)) != (label[i] == label[j]) {
                        return Err(format!("members {i} and {j} disagree with the oracle"));
                    }
                }
            }
            merges += 1;
        }
    }
    Ok(format!("{sequences} sequences, {merges} merges over a star of {n} signatures"))
}
