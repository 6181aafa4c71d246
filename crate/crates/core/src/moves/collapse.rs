//! Edge collapse: every pentachoron containing the edge is crushed by
//! identifying its two facets that miss one endpoint each, merging the
//! endpoints into a single vertex.

use crate::perm::Perm5;
use crate::tri::Triangulation4;

pub(super) fn precheck(t: &Triangulation4, target: usize) -> bool {
    let sk = t.skeleton();
    if target >= sk.count(1) {
        return false;
    }
    let c = sk.face(1, target);
    if !c.valid {
        return false;
    }
    let e = c.embeddings[0];
    let v = e.vertices.images();
    if sk.vertex_of(e.simplex, v[0] as usize) == sk.vertex_of(e.simplex, v[1] as usize) {
        return false;
    }
    let mut seen = vec![false; t.size()];
    for emb in &c.embeddings {
        if std::mem::replace(&mut seen[emb.simplex], true) {
            return false;
        }
    }
    // Something must survive.
    c.degree() < t.size()
}

/// Collapses the edge without the invariant guard. Returns `None` when the
/// crushed facets chain into a cycle or would glue a facet to itself.
pub fn collapse_edge_unchecked(t: &Triangulation4, target: usize) -> Option<Triangulation4> {
    if !precheck(t, target) {
        return None;
    }
    let sk = t.skeleton();
    let n = t.size();
    // Crushed pentachora and their (u, w) endpoint labels.
    let mut ends = vec![None; n];
    for emb in &sk.face(1, target).embeddings {
        let v = emb.vertices.images();
        ends[emb.simplex] = Some((v[0] as usize, v[1] as usize));
    }
    let mut index = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if ends[s].is_none() {
            index[s] = next;
            next += 1;
        }
    }
    let mut out = Triangulation4::with_size(next);
    for s in 0..n {
        if ends[s].is_some() {
            continue;
        }
        for f in 0..5 {
            let Some(g) = t.gluing(s, f) else { continue };
            let mut acc = g.perm;
            let mut cur = g.target;
            let mut steps = 0;
            let end = loop {
                let Some((u, w)) = ends[cur] else {
                    break Some((cur, acc));
                };
                let entry = acc.apply(f);
                let exit = if entry == u {
                    w
                } else if entry == w {
                    u
                } else {
                    return None;
                };
                acc = Perm5::transposition(u, w).compose(&acc);
                debug_assert_eq!(acc.apply(f), exit);
                match t.gluing(cur, exit) {
                    None => break None,
                    Some(h) => {
                        acc = h.perm.compose(&acc);
                        cur = h.target;
                    }
                }
                steps += 1;
                if steps > 2 * n + 2 {
                    return None;
                }
            };
            if let Some((dst, perm)) = end {
                if dst == s && perm.apply(f) == f {
                    return None;
                }
                out.join(index[s], f, index[dst], perm).ok()?;
            }
        }
    }
    Some(out)
}

/// Collapse with the rollback guard: the result must agree with the input
/// on validity, manifoldness, homology, Euler characteristic,
/// orientability and closedness.
pub(super) fn collapse_checked(t: &Triangulation4, target: usize) -> Option<Triangulation4> {
    let out = collapse_edge_unchecked(t, target)?;
    if out.skeleton().is_valid() != t.skeleton().is_valid()
        || out.euler_characteristic() != t.euler_characteristic()
        || out.is_orientable() != t.is_orientable()
        || out.is_closed() != t.is_closed()
        || !out.is_connected()
        || out.homology() != t.homology()
        || out.validity_report().is_manifold != t.validity_report().is_manifold
    {
        return None;
    }
    Some(out)
}
