use serde::{Deserialize, Serialize};

use super::group::{GroupPresentation, Word};

/// One rewriting step. Every step is a Tietze transformation (or a
/// composition of them), so the group presented never changes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TietzeStep {
    /// Free and cyclic reduction of every relator, then removal of empty
    /// relators and of relators equal to an earlier one up to rotation and
    /// inversion.
    Reduce,
    /// `relator` contains `generator` exactly once; solve for it, substitute
    /// everywhere, then drop both.
    Eliminate { generator: usize, relator: usize },
    /// Rotate `source` (inverted first if `inverse`) to start at `rotation`;
    /// its first `len` letters occur cyclically in `target` at `at`. Replace
    /// them there by the inverse of the remaining letters.
    Substitute { target: usize, source: usize, inverse: bool, rotation: usize, at: usize, len: usize },
}

#[derive(Clone, Debug)]
pub struct Simplified {
    pub presentation: GroupPresentation,
    pub trace: Vec<TietzeStep>,
}

/// Greedy Tietze simplification. Eliminations that do not lengthen the
/// presentation are preferred, then length-reducing substitutions, then the
/// cheapest lengthening elimination. The best presentation seen, ordered by
/// (total length, generators), is returned along with the steps leading to it.
pub fn simplify_presentation(p: &GroupPresentation, budget: usize) -> GroupPresentation {
    simplify_traced(p, budget).presentation
}

pub fn simplify_traced(p: &GroupPresentation, budget: usize) -> Simplified {
    let mut cur = p.clone();
    let mut trace = Vec::new();
    apply(&mut cur, &TietzeStep::Reduce);
    trace.push(TietzeStep::Reduce);
    let key = |q: &GroupPresentation| (q.total_length(), q.generators);
    let mut best = (key(&cur), cur.clone(), trace.len());
    if key(p) < best.0 {
        best = (key(p), p.clone(), 0);
    }
    let cap = (4 * p.total_length()).max(64);
    for _ in 0..budget {
        if cur.generators == 0 {
            break;
        }
        let Some(step) = choose_step(&cur, cap) else { break };
        apply(&mut cur, &step);
        trace.push(step);
        apply(&mut cur, &TietzeStep::Reduce);
        trace.push(TietzeStep::Reduce);
        if key(&cur) < best.0 {
            best = (key(&cur), cur.clone(), trace.len());
        }
    }
    trace.truncate(best.2);
    Simplified { presentation: best.1, trace }
}

/// Replays a trace; the result must equal the traced output.
pub fn replay(p: &GroupPresentation, trace: &[TietzeStep]) -> Option<GroupPresentation> {
    let mut cur = p.clone();
    for s in trace {
        if !check(&cur, s) {
            return None;
        }
        apply(&mut cur, s);
    }
    Some(cur)
}

fn choose_step(p: &GroupPresentation, cap: usize) -> Option<TietzeStep> {
    let total = p.total_length() as isize;
    let mut occ = vec![0usize; p.generators];
    for &x in p.relators.iter().flatten() {
        occ[x.unsigned_abs() as usize - 1] += 1;
    }
    // (length change, relator length, relator, generator)
    let mut best_elim: Option<(isize, usize, usize, usize)> = None;
    for (ri, r) in p.relators.iter().enumerate() {
        let mut here = vec![0usize; p.generators];
        for &x in r {
            here[x.unsigned_abs() as usize - 1] += 1;
        }
        for g in 0..p.generators {
            if here[g] != 1 {
                continue;
            }
            let others = (occ[g] - 1) as isize;
            let delta = others * (r.len() as isize - 2) - r.len() as isize;
            let cand = (delta, r.len(), ri, g);
            if best_elim.is_none_or(|b| cand < b) {
                best_elim = Some(cand);
            }
        }
    }
    if let Some((delta, _, ri, g)) = best_elim {
        if delta <= 0 {
            return Some(TietzeStep::Eliminate { generator: g, relator: ri });
        }
    }
    if let Some(s) = best_substitution(p) {
        return Some(s);
    }
    match best_elim {
        Some((delta, _, ri, g)) if total + delta <= cap as isize => {
            Some(TietzeStep::Eliminate { generator: g, relator: ri })
        }
        _ => None,
    }
}

/// Longest match of more than half a relator inside another relator.
fn best_substitution(p: &GroupPresentation) -> Option<TietzeStep> {
    let mut best: Option<(isize, TietzeStep)> = None;
    for (si, src) in p.relators.iter().enumerate() {
        let l = src.len();
        if l == 0 {
            continue;
        }
        for inverse in [false, true] {
            let r = if inverse { invert(src) } else { src.clone() };
            for (ti, tgt) in p.relators.iter().enumerate() {
                if ti == si || tgt.len() < l / 2 + 1 {
                    continue;
                }
                let m = tgt.len();
                for rot in 0..l {
                    for at in 0..m {
                        let mut k = 0;
                        while k < l && k < m && r[(rot + k) % l] == tgt[(at + k) % m] {
                            k += 1;
                        }
                        if 2 * k > l {
                            let gain = (2 * k - l) as isize;
                            let step = TietzeStep::Substitute {
                                target: ti,
                                source: si,
                                inverse,
                                rotation: rot,
                                at,
                                len: k,
                            };
                            if best.as_ref().is_none_or(|(g, _)| gain > *g) {
                                best = Some((gain, step));
                            }
                        }
                    }
                }
            }
        }
    }
    best.map(|(_, s)| s)
}

fn check(p: &GroupPresentation, s: &TietzeStep) -> bool {
    match *s {
        TietzeStep::Reduce => true,
        TietzeStep::Eliminate { generator, relator } => {
            generator < p.generators
                && relator < p.relators.len()
                && p.relators[relator].iter().filter(|x| x.unsigned_abs() as usize == generator + 1).count() == 1
        }
        TietzeStep::Substitute { target, source, inverse, rotation, at, len } => {
            if target == source || target >= p.relators.len() || source >= p.relators.len() {
                return false;
            }
            let r = if inverse { invert(&p.relators[source]) } else { p.relators[source].clone() };
            let t = &p.relators[target];
            let (l, m) = (r.len(), t.len());
            l > 0 && m > 0 && rotation < l && at < m && len <= l && len <= m
                && (0..len).all(|k| r[(rotation + k) % l] == t[(at + k) % m])
        }
    }
}

fn apply(p: &mut GroupPresentation, s: &TietzeStep) {
    match *s {
        TietzeStep::Reduce => reduce(p),
        TietzeStep::Eliminate { generator, relator } => {
            let r = p.relators.remove(relator);
            let g = generator as i32 + 1;
            let pos = r.iter().position(|x| x.abs() == g).expect("generator not in relator");
            // r = u g^e v, so g^e = u^-1 v^-1 = (v u)^-1.
            let mut vu: Word = r[pos + 1..].to_vec();
            vu.extend_from_slice(&r[..pos]);
            let value = if r[pos] > 0 { invert(&vu) } else { vu };
            let value_inv = invert(&value);
            for rel in &mut p.relators {
                let mut out = Vec::with_capacity(rel.len());
                for &x in rel.iter() {
                    if x == g {
                        out.extend_from_slice(&value);
                    } else if x == -g {
                        out.extend_from_slice(&value_inv);
                    } else {
                        out.push(x);
                    }
                }
                for x in &mut out {
                    if x.abs() > g {
                        *x -= x.signum();
                    }
                }
                *rel = out;
            }
            p.generators -= 1;
        }
        TietzeStep::Substitute { target, source, inverse, rotation, at, len } => {
            let r = if inverse { invert(&p.relators[source]) } else { p.relators[source].clone() };
            let l = r.len();
            let rest: Word = (len..l).map(|k| r[(rotation + k) % l]).collect();
            let t = &p.relators[target];
            let m = t.len();
            let mut out = invert(&rest);
            out.extend((len..m).map(|k| t[(at + k) % m]));
            p.relators[target] = out;
        }
    }
}

pub fn invert(w: &[i32]) -> Word {
    w.iter().rev().map(|&x| -x).collect()
}

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn cyclic_reduce(w: &[i32]) -> Word {
    let mut v = free_reduce(w);
    let mut lo = 0;
    let mut hi = v.len();
    while hi - lo >= 2 && v[lo] == -v[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    v.truncate(hi);
    v.drain(..lo);
    v
}

/// Least rotation of `w` or its inverse, used to spot duplicate relators.
fn cyclic_key(w: &[i32]) -> Word {
    let mut best: Option<Word> = None;
    for v in [w.to_vec(), invert(w)] {
        for r in 0..v.len().max(1) {
            let mut c = v[r..].to_vec();
            c.extend_from_slice(&v[..r]);
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
        }
    }
    best.unwrap_or_default()
}

fn reduce(p: &mut GroupPresentation) {
    let mut seen = std::collections::HashSet::new();
    let rels = std::mem::take(&mut p.relators);
    for r in rels {
        let r = cyclic_reduce(&r);
        if r.is_empty() {
            continue;
        }
        if seen.insert(cyclic_key(&r)) {
            p.relators.push(r);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_cases() {
        let p = GroupPresentation::new(1, vec![vec![1]]);
        assert!(simplify_presentation(&p, 100).is_trivial());
        let p = GroupPresentation::new(2, vec![vec![2]]);
        assert_eq!(simplify_presentation(&p, 100), GroupPresentation::new(1, vec![]));
    }

    #[test]
    fn euclid_by_substitution() {
        // <a | a^2, a^3> is trivial.
        let p = GroupPresentation::new(1, vec![vec![1, 1], vec![1, 1, 1]]);
        assert!(simplify_presentation(&p, 100).is_trivial());
    }

    #[test]
    fn trace_replays() {
        let p = GroupPresentation::new(3, vec![vec![1, 2, -1, -3], vec![2, 2, 3], vec![3, 1, 1]]);
        let s = simplify_traced(&p, 100);
        assert_eq!(replay(&p, &s.trace), Some(s.presentation.clone()));
        assert!(s.presentation.total_length() <= p.total_length());
    }

    #[test]
    fn cyclic_reduction() {
        assert_eq!(cyclic_reduce(&[2, 1, -1, 3, -2]), vec![3]);
        assert_eq!(cyclic_reduce(&[1, -1]), Vec::<i32>::new());
    }
}
