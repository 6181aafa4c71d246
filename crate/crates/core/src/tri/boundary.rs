use std::collections::HashMap;

use crate::perm::Perm;

use super::{Gluing, Triangulation};

impl<const N: usize> Triangulation<N> {
    /// Boundary facets as a closed-up triangulation one dimension down.
    /// Boundary simplex `i` is the `i`-th boundary facet in slot order, with
    /// its vertices the facet's local vertices in ascending order.
    ///
    /// Returns `None` when there is no boundary. `M` must be `N - 1`.
    pub fn boundary_triangulation<const M: usize>(&self) -> Option<Triangulation<M>> {
        assert_eq!(M + 1, N, "boundary dimension mismatch");
        let mut slots = Vec::new();
        for s in 0..self.size() {
            for f in 0..N {
                if self.gluing(s, f).is_none() {
                    slots.push((s, f));
                }
            }
        }
        if slots.is_empty() {
            return None;
        }
        let index: HashMap<(usize, usize), usize> =
            slots.iter().enumerate().map(|(i, &sf)| (sf, i)).collect();
        let mut out = Triangulation::<M>::with_size(slots.len());
        for (i, &(s, f)) in slots.iter().enumerate() {
            let verts = facet_vertices::<N>(f);
            for (j, &g) in verts.iter().enumerate() {
                // Walk around the ridge opposite f and g until the next
                // boundary facet.
                let mut cur = s;
                let mut map = Perm::<N>::identity();
                let (mut came, mut exit) = (f, g);
                let mut guard = 0;
                let (t, b, a) = loop {
                    match self.gluing(cur, exit) {
                        None => break (cur, exit, came),
                        Some(gl) => {
                            map = gl.perm.compose(&map);
                            let ncame = gl.perm.apply(exit);
                            let nexit = gl.perm.apply(came);
                            cur = gl.target;
                            came = ncame;
                            exit = nexit;
                        }
                    }
                    guard += 1;
                    assert!(guard <= N * self.size() + 1, "ridge walk did not terminate");
                };
                let k = index[&(t, b)];
                let tverts = facet_vertices::<N>(b);
                let mut img = [0u8; M];
                for (x, &u) in verts.iter().enumerate() {
                    let there = if u == g { a } else { map.apply(u) };
                    img[x] = tverts.iter().position(|&w| w == there).unwrap() as u8;
                }
                out.set_raw(i, j, Some(Gluing { target: k, perm: Perm::from_images_unchecked(img) }));
            }
        }
        debug_assert!(out.check_involution().is_ok());
        Some(out)
    }
}

fn facet_vertices<const N: usize>(f: usize) -> Vec<usize> {
    (0..N).filter(|&v| v != f).collect()
}
