//! 2-0 moves: two pentachora glued along every facet around an edge (three
//! facets) or a triangle (two facets) form a pillow, which is flattened so
//! that its remaining facets are glued to each other in pairs.

use crate::perm::Perm5;
use crate::tri::Triangulation4;

pub(super) struct Plan {
    p: usize,
    q: usize,
    mu: Perm5,
    /// Local vertices of `p` whose opposite facets get flattened.
    flatten: Vec<usize>,
}

fn facet_mask(v: usize) -> u8 {
    0b11111 & !(1 << v)
}

fn mask_of(vs: &[usize]) -> u8 {
    vs.iter().fold(0, |m, &v| m | (1 << v))
}

/// Common part: a valid interior face of degree 2 in distinct pentachora,
/// which are glued by one map across every facet containing the face.
fn pillow(t: &Triangulation4, dim: usize, target: usize) -> Option<(usize, usize, Perm5, Vec<usize>, Vec<usize>)> {
    let sk = t.skeleton();
    if target >= sk.count(dim) {
        return None;
    }
    let c = sk.face(dim, target);
    if !c.valid || c.on_boundary || c.degree() != 2 {
        return None;
    }
    let (e0, e1) = (c.embeddings[0], c.embeddings[1]);
    let (p, q) = (e0.simplex, e1.simplex);
    if p == q {
        return None;
    }
    let v = e0.vertices.images();
    let inside: Vec<usize> = v[..=dim].iter().map(|&x| x as usize).collect();
    let outside: Vec<usize> = v[dim + 1..].iter().map(|&x| x as usize).collect();
    let mut mu = None;
    for &w in &outside {
        let g = t.gluing(p, w)?;
        if g.target != q || mu.is_some_and(|m| m != g.perm) {
            return None;
        }
        mu = Some(g.perm);
    }
    Some((p, q, mu?, inside, outside))
}

/// Checks a pair of corresponding faces: distinct classes, not both on the
/// boundary.
fn pair_ok(t: &Triangulation4, dim: usize, p: usize, q: usize, mu: Perm5, vs: &[usize]) -> bool {
    let sk = t.skeleton();
    let mask = mask_of(vs);
    let a = sk.class_of(p, mask);
    let b = sk.class_of(q, mu.apply_mask(mask));
    a != b && !(sk.face(dim, a).on_boundary && sk.face(dim, b).on_boundary)
}

/// Each flattened pair must be two distinct tetrahedra, not both on the
/// boundary. Pairs may be glued to each other; `apply` follows such chains.
fn outer_ok(t: &Triangulation4, p: usize, q: usize, mu: Perm5, inside: &[usize]) -> bool {
    let sk = t.skeleton();
    inside.iter().all(|&v| {
        let w = mu.apply(v);
        sk.class_of(p, facet_mask(v)) != sk.class_of(q, facet_mask(w))
            && (t.gluing(p, v).is_some() || t.gluing(q, w).is_some())
    })
}

pub(super) fn plan_edge(t: &Triangulation4, target: usize) -> Option<Plan> {
    let (p, q, mu, inside, outside) = pillow(t, 1, target)?;
    if !outer_ok(t, p, q, mu, &inside) || !pair_ok(t, 2, p, q, mu, &outside) {
        return None;
    }
    Some(Plan { p, q, mu, flatten: inside })
}

pub(super) fn plan_triangle(t: &Triangulation4, target: usize) -> Option<Plan> {
    let (p, q, mu, inside, outside) = pillow(t, 2, target)?;
    if !outer_ok(t, p, q, mu, &inside) || !pair_ok(t, 1, p, q, mu, &outside) {
        return None;
    }
    for &v in &inside {
        if !pair_ok(t, 2, p, q, mu, &[v, outside[0], outside[1]]) {
            return None;
        }
    }
    Some(Plan { p, q, mu, flatten: inside })
}

pub(super) fn apply(t: &Triangulation4, plan: &Plan) -> Option<Triangulation4> {
    let n = t.size();
    let (p, q) = (plan.p, plan.q);
    let mut index = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if s != p && s != q {
            index[s] = next;
            next += 1;
        }
    }
    let mut out = Triangulation4::with_size(n - 2);
    for s in 0..n {
        if index[s] == usize::MAX {
            continue;
        }
        for f in 0..5 {
            if let Some(g) = t.gluing(s, f) {
                if index[g.target] != usize::MAX {
                    out.join(index[s], f, index[g.target], g.perm).expect("consistent source");
                }
            }
        }
    }
    // Folding pairs facet v of p with facet mu(v) of q.
    let fold = |s: usize, f: usize| -> Option<(usize, usize, Perm5)> {
        if s == p && plan.flatten.contains(&f) {
            Some((q, plan.mu.apply(f), plan.mu))
        } else if s == q && plan.flatten.contains(&plan.mu.pre_image(f)) {
            Some((p, plan.mu.pre_image(f), plan.mu.inverse()))
        } else {
            None
        }
    };
    let outer: Vec<(usize, usize)> =
        plan.flatten.iter().flat_map(|&v| [(p, v), (q, plan.mu.apply(v))]).collect();
    let mut reached = vec![false; outer.len()];
    for &(s, f) in &outer {
        let Some(g) = t.gluing(s, f) else { continue };
        if index[g.target] != usize::MAX {
            // Walk from the outside neighbour through folds and gluings
            // inside the pillow until the chain leaves it again.
            let (x, fx) = (g.target, g.perm.apply(f));
            let mut map = g.perm.inverse(); // x-local -> (s)-local
            let (mut cs, mut cf) = (s, f);
            let mut end = None;
            for _ in 0..=outer.len() {
                let i = outer.iter().position(|&o| o == (cs, cf))?;
                reached[i] = true;
                let (ns, nf, phi) = fold(cs, cf)?;
                map = phi.compose(&map);
                let j = outer.iter().position(|&o| o == (ns, nf))?;
                reached[j] = true;
                match t.gluing(ns, nf) {
                    None => {
                        end = Some(None);
                        break;
                    }
                    Some(h) if index[h.target] != usize::MAX => {
                        end = Some(Some((h.target, h.perm.compose(&map))));
                        break;
                    }
                    Some(h) => {
                        map = h.perm.compose(&map);
                        (cs, cf) = (h.target, h.perm.apply(nf));
                    }
                }
            }
            match end? {
                Some((y, perm)) => out.join(index[x], fx, index[y], perm).ok()?,
                None => {}
            }
        }
    }
    // A chain that never leaves the pillow would close up on itself.
    if reached.iter().any(|r| !r) {
        return None;
    }
    Some(out)
}

/// Flattening folds the boundary of the pillow onto itself, which is only a
/// homeomorphism when that boundary sits nicely in the triangulation. The
/// local conditions above do not rule out every bad fold (for instance one
/// that splits off a connected summand), so the result is checked against
/// cheap invariants of the input.
pub(super) fn apply_checked(t: &Triangulation4, plan: &Plan) -> Option<Triangulation4> {
    let out = apply(t, plan)?;
    if !out.is_connected()
        || out.is_closed() != t.is_closed()
        || out.euler_characteristic() != t.euler_characteristic()
        || out.is_orientable() != t.is_orientable()
        || out.skeleton().is_valid() != t.skeleton().is_valid()
        || out.homology() != t.homology()
    {
        return None;
    }
    Some(out)
}
