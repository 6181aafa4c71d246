use crate::perm::{factorial, Perm};
use crate::tri::{Gluing, Triangulation, Triangulation4};

use super::alphabet::{push_size_header, push_value, width_for, Reader};
use super::{IsoSig, SigError};

// Slot codes: 0 boundary, 1 glued to the next unseen simplex by the
// identity, otherwise 2 + target * N! + lex index of the relabeled perm.

/// Canonical slot codes of a connected triangulation.
pub fn canonical_codes<const N: usize>(t: &Triangulation<N>) -> Result<Vec<u32>, SigError> {
    if !t.is_connected() {
        return Err(SigError::Disconnected);
    }
    let perms = Perm::<N>::all();
    let mut best: Option<Vec<u32>> = None;
    let mut scratch = Scratch::new(t.size());
    for start in 0..t.size() {
        for p in &perms {
            if let Some(c) = encode_from(t, start, *p, best.as_deref(), &mut scratch) {
                best = Some(c);
            }
        }
    }
    Ok(best.expect("nonempty triangulation"))
}

struct Scratch<const N: usize> {
    image: Vec<usize>,
    relabel: Vec<Perm<N>>,
    order: Vec<usize>,
}

impl<const N: usize> Scratch<N> {
    fn new(n: usize) -> Self {
        Scratch { image: vec![usize::MAX; n], relabel: vec![Perm::identity(); n], order: Vec::with_capacity(n) }
    }
}

/// Breadth-first encoding from one start; `None` once it is known to
/// exceed `best`. `labeling` maps old vertex labels of `start` to new ones.
fn encode_from<const N: usize>(
    t: &Triangulation<N>,
    start: usize,
    labeling: Perm<N>,
    best: Option<&[u32]>,
    sc: &mut Scratch<N>,
) -> Option<Vec<u32>> {
    let n = t.size();
    let nf = factorial(N) as u32;
    sc.image.iter_mut().for_each(|x| *x = usize::MAX);
    sc.order.clear();
    sc.image[start] = 0;
    sc.relabel[start] = labeling;
    sc.order.push(start);
    let mut codes = Vec::with_capacity(n * N);
    let mut tied = best.is_some();
    let mut k = 0;
    while k < sc.order.len() {
        let s = sc.order[k];
        k += 1;
        let pi = sc.relabel[s];
        let pi_inv = pi.inverse();
        for nf_ in 0..N {
            let f = pi_inv.apply(nf_);
            let code = match t.gluing(s, f) {
                None => 0,
                Some(g) => {
                    if sc.image[g.target] == usize::MAX {
                        sc.image[g.target] = sc.order.len();
                        sc.order.push(g.target);
                        // Choose the target labeling that makes this gluing the identity.
                        sc.relabel[g.target] = pi.compose(&g.perm.inverse());
                        1
                    } else {
                        let rel = sc.relabel[g.target].compose(&g.perm).compose(&pi_inv);
                        2 + sc.image[g.target] as u32 * nf + rel.lex_index() as u32
                    }
                }
            };
            if tied {
                let b = best.unwrap()[codes.len()];
                if code > b {
                    return None;
                }
                if code < b {
                    tied = false;
                }
            }
            codes.push(code);
        }
    }
    if tied {
        // Equal to the current best; keep it.
        return None;
    }
    Some(codes)
}

fn codes_to_text<const N: usize>(n: usize, codes: &[u32]) -> String {
    let mut out = String::with_capacity(2 + codes.len() * 2);
    push_size_header(&mut out, n);
    let w = width_for(1 + n * factorial(N));
    for &c in codes {
        push_value(&mut out, c as usize, w);
    }
    out
}

pub(crate) fn canonical_text<const N: usize>(t: &Triangulation<N>) -> Result<String, SigError> {
    Ok(codes_to_text::<N>(t.size(), &canonical_codes(t)?))
}

/// Canonical signature of a connected 4-dimensional triangulation.
pub fn canonical_sig(t: &Triangulation4) -> Result<IsoSig, SigError> {
    canonical_text(t).map(IsoSig)
}

/// Whether two triangulations are combinatorially isomorphic.
pub fn isomorphic<const N: usize>(a: &Triangulation<N>, b: &Triangulation<N>) -> bool {
    if a.size() != b.size() || a.boundary_facet_count() != b.boundary_facet_count() {
        return false;
    }
    match (a.components().len(), b.components().len()) {
        (1, 1) => canonical_codes(a).ok() == canonical_codes(b).ok(),
        _ => {
            let key = |t: &Triangulation<N>| {
                let mut ks: Vec<Vec<u32>> = t
                    .components()
                    .iter()
                    .map(|c| canonical_codes(&t.restricted(c)).unwrap())
                    .collect();
                ks.sort();
                ks
            };
            key(a) == key(b)
        }
    }
}

pub(crate) fn decode_text<const N: usize>(s: &str) -> Result<Triangulation<N>, SigError> {
    let mut r = Reader::new(s);
    let (n, _) = r.size_header()?;
    if n == 0 {
        return Err(SigError::Malformed("empty triangulation".into()));
    }
    let nf = factorial(N);
    let w = width_for(1 + n * nf);
    let mut t = Triangulation::<N>::new(n).map_err(|e| SigError::Malformed(e.to_string()))?;
    let mut next = 1;
    for s_ in 0..n {
        if s_ >= next {
            return Err(SigError::Malformed("simplex never reached".into()));
        }
        for f in 0..N {
            let code = r.value(w)?;
            let want = match code {
                0 => None,
                1 => {
                    if next >= n {
                        return Err(SigError::Malformed("too many simplices".into()));
                    }
                    next += 1;
                    Some(Gluing { target: next - 1, perm: Perm::identity() })
                }
                c => {
                    let target = (c - 2) / nf;
                    let perm = Perm::from_lex_index((c - 2) % nf)
                        .ok_or_else(|| SigError::Malformed("bad permutation".into()))?;
                    if target >= next {
                        return Err(SigError::Malformed("gluing to an unseen simplex".into()));
                    }
                    Some(Gluing { target, perm })
                }
            };
            match (t.gluing(s_, f), want) {
                (None, None) => {}
                (Some(g), Some(h)) if g == h => {}
                (None, Some(h)) => t
                    .join(s_, f, h.target, h.perm)
                    .map_err(|e| SigError::Malformed(e.to_string()))?,
                _ => return Err(SigError::Malformed("inconsistent gluing".into())),
            }
        }
    }
    if !r.at_end() {
        return Err(SigError::Malformed("trailing characters".into()));
    }
    Ok(t)
}

/// Decodes a native signature. Strings that parse but are not the
/// canonical encoding of what they describe are rejected.
pub fn decode_sig(sig: &str) -> Result<Triangulation4, SigError> {
    let t = decode_text::<5>(sig)?;
    if canonical_text(&t)? != sig {
        return Err(SigError::Malformed("not in canonical form".into()));
    }
    Ok(t)
}

impl<const N: usize> Triangulation<N> {
    /// The sub-triangulation on the given simplices, which must be closed
    /// under gluing (a union of components). Indices follow `simplices`.
    pub fn restricted(&self, simplices: &[usize]) -> Self {
        let mut idx = vec![usize::MAX; self.size()];
        for (i, &s) in simplices.iter().enumerate() {
            idx[s] = i;
        }
        let mut out = Triangulation::<N>::new(simplices.len()).expect("nonempty selection");
        for (i, &s) in simplices.iter().enumerate() {
            for f in 0..N {
                if let Some(g) = self.gluing(s, f) {
                    assert_ne!(idx[g.target], usize::MAX, "selection is not a union of components");
                    out.join(i, f, idx[g.target], g.perm).expect("consistent source");
                }
            }
        }
        out
    }
}
