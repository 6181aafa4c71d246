//! Pachner moves by matching against the boundary of the 5-simplex.
//!
//! Model vertices are `0..6`. A move of index `k` acts on a `k`-face
//! `A = {0..k}`; the old pentachora are `P_b = V \ {b}` for `b` in
//! `B = {k+1..5}` and are replaced by `Q_a = V \ {a}` for `a` in `A`.

use crate::perm::Perm5;
use crate::tri::Triangulation4;

pub(super) struct Plan {
    k: usize,
    /// Indexed by `b - k - 1`: the pentachoron playing `P_b` and its map
    /// from local vertex to model vertex.
    old: Vec<(usize, [u8; 5])>,
}

/// Local labels of `Q_a` are `V \ {a}` in increasing order.
fn psi(a: usize) -> [u8; 5] {
    let mut out = [0u8; 5];
    let mut i = 0;
    for v in 0..6u8 {
        if v as usize != a {
            out[i] = v;
            i += 1;
        }
    }
    out
}

fn psi_inv(a: usize, m: u8) -> usize {
    debug_assert_ne!(m as usize, a);
    if (m as usize) < a {
        m as usize
    } else {
        m as usize - 1
    }
}

pub(super) fn plan(t: &Triangulation4, k: usize, target: usize) -> Option<Plan> {
    let (start, rho) = if k == 4 {
        if target >= t.size() {
            return None;
        }
        (target, Perm5::identity())
    } else {
        let sk = t.skeleton();
        if target >= sk.count(k) {
            return None;
        }
        let c = sk.face(k, target);
        if !c.valid || c.on_boundary || c.degree() != 5 - k {
            return None;
        }
        let e = c.embeddings[0];
        (e.simplex, e.vertices)
    };
    let mut phi0 = [0u8; 5];
    for (i, &v) in rho.images().iter().enumerate() {
        phi0[v as usize] = i as u8;
    }
    let slots = 5 - k;
    let mut old: Vec<Option<(usize, [u8; 5])>> = vec![None; slots];
    let mut role = vec![usize::MAX; t.size()];
    old[slots - 1] = Some((start, phi0));
    role[start] = 5;
    let mut queue = vec![5usize];
    while let Some(b) = queue.pop() {
        let (s, phi) = old[b - k - 1].unwrap();
        for f in 0..5 {
            let m = phi[f] as usize;
            if m <= k {
                continue;
            }
            // Facet V \ {b, m} of P_b must meet P_m along its facet opposite b.
            let g = t.gluing(s, f)?;
            let tf = g.perm.apply(f);
            let mut phi_t = [0u8; 5];
            for x in 0..5 {
                phi_t[x] = if x == tf { b as u8 } else { phi[g.perm.pre_image(x)] };
            }
            match old[m - k - 1] {
                Some((s2, phi2)) => {
                    if s2 != g.target || phi2 != phi_t {
                        return None;
                    }
                }
                None => {
                    if role[g.target] != usize::MAX {
                        return None;
                    }
                    role[g.target] = m;
                    old[m - k - 1] = Some((g.target, phi_t));
                    queue.push(m);
                }
            }
        }
    }
    let old: Option<Vec<_>> = old.into_iter().collect();
    Some(Plan { k, old: old? })
}

/// Returns the new triangulation and `(simplex, mask)` of the face created
/// by the move (the model face `B`), located in the first new pentachoron.
pub(super) fn apply(t: &Triangulation4, plan: &Plan) -> (Triangulation4, (usize, u8)) {
    let k = plan.k;
    let n = t.size();
    let mut role = vec![usize::MAX; n];
    for (i, &(s, _)) in plan.old.iter().enumerate() {
        role[s] = i + k + 1;
    }
    let mut index = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if role[s] == usize::MAX {
            index[s] = next;
            next += 1;
        }
    }
    let first_new = next;
    let total = first_new + k + 1;
    let mut out = Triangulation4::with_size(total);
    let join = |out: &mut Triangulation4, s: usize, f: usize, tgt: usize, p: Perm5| {
        out.join(s, f, tgt, p).expect("Pachner move produced an inconsistent gluing");
    };
    for s in 0..n {
        if role[s] != usize::MAX {
            continue;
        }
        for f in 0..5 {
            if let Some(g) = t.gluing(s, f) {
                if role[g.target] == usize::MAX {
                    join(&mut out, index[s], f, index[g.target], g.perm);
                }
            }
        }
    }
    // New pentachora among themselves.
    let psis: Vec<[u8; 5]> = (0..=k).map(psi).collect();
    for a in 0..=k {
        for a2 in a + 1..=k {
            let f = psi_inv(a, a2 as u8);
            let mut img = [0u8; 5];
            for x in 0..5 {
                let m = psis[a][x];
                img[x] = if m as usize == a2 { psi_inv(a2, a as u8) } else { psi_inv(a2, m) } as u8;
            }
            join(&mut out, first_new + a, f, first_new + a2, Perm5::from_images_unchecked(img));
        }
    }
    // Outer facets: facet of P_b opposite a becomes facet of Q_a opposite b.
    let lambda = |b: usize, a: usize| -> Perm5 {
        let phi = plan.old[b - k - 1].1;
        let f = phi.iter().position(|&m| m as usize == a).unwrap();
        let mut img = [0u8; 5];
        for x in 0..5 {
            img[x] = if x == f { psi_inv(a, b as u8) } else { psi_inv(a, phi[x]) } as u8;
        }
        Perm5::from_images_unchecked(img)
    };
    for b in k + 1..6 {
        let (s, phi) = plan.old[b - k - 1];
        for a in 0..=k {
            let f = phi.iter().position(|&m| m as usize == a).unwrap();
            let Some(g) = t.gluing(s, f) else { continue };
            let lam = lambda(b, a);
            let nf = lam.apply(f);
            let src = first_new + a;
            if role[g.target] == usize::MAX {
                join(&mut out, src, nf, index[g.target], g.perm.compose(&lam.inverse()));
            } else {
                let b2 = role[g.target];
                let a2 = plan.old[b2 - k - 1].1[g.perm.apply(f)] as usize;
                debug_assert!(a2 <= k);
                let p = lambda(b2, a2).compose(&g.perm).compose(&lam.inverse());
                join(&mut out, src, nf, first_new + a2, p);
            }
        }
    }
    let mask = (k + 1..6).fold(0u8, |m, b| m | (1 << psi_inv(0, b as u8)));
    (out, (first_new, mask))
}
