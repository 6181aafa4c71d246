use crate::perm::Perm;

use super::Triangulation;

impl<const N: usize> Triangulation<N> {
    /// Link of vertex class `v`: one `(N-2)`-simplex per corner of a simplex
    /// at `v`, glued along the faces inherited from facet gluings through
    /// that corner. Link simplex `i` corresponds to embedding `i` of `v`, and
    /// its vertex `j` to local vertex `vertices[j + 1]` of that embedding.
    ///
    /// `M` must be `N - 1`.
    pub fn vertex_link<const M: usize>(&self, v: usize) -> Triangulation<M> {
        assert_eq!(M + 1, N, "link dimension mismatch");
        let sk = self.skeleton();
        let class = sk.face(0, v);
        let mut link = Triangulation::<M>::with_size(class.degree());
        for (i, emb) in class.embeddings.iter().enumerate() {
            let rho = emb.vertices.images();
            for j in 0..M {
                let local_facet = rho[j + 1] as usize;
                let Some(g) = self.gluing(emb.simplex, local_facet) else {
                    continue;
                };
                let corner = g.perm.apply(rho[0] as usize);
                let r = sk.locate(g.target, 1 << corner);
                let other = class.embeddings[r.embedding as usize].vertices;
                let mut img = [0u8; M];
                for k in 0..M {
                    let there = g.perm.apply(rho[k + 1] as usize);
                    img[k] = (other.pre_image(there) - 1) as u8;
                }
                link.set_raw(
                    i,
                    j,
                    Some(super::Gluing {
                        target: r.embedding as usize,
                        perm: Perm::from_images_unchecked(img),
                    }),
                );
            }
        }
        debug_assert!(link.check_involution().is_ok());
        link
    }
}

#[cfg(test)]
mod tests {
    use crate::perm::Perm5;
    use crate::tri::{Triangulation3, Triangulation4};

    #[test]
    fn corner_of_a_simplex() {
        let t = Triangulation4::new(1).unwrap();
        let l: Triangulation3 = t.vertex_link(0);
        assert_eq!(l.size(), 1);
        assert_eq!(l.boundary_facet_count(), 4);
    }

    #[test]
    fn link_size_matches_degree_and_closes() {
        let mut t = Triangulation4::new(2).unwrap();
        for f in 0..5 {
            t.join(0, f, 1, Perm5::identity()).unwrap();
        }
        // Two pentachora glued by the identity on every facet: the standard
        // 2-pentachoron 4-sphere with 5 vertices.
        let total: usize = (0..t.skeleton().count(0))
            .map(|v| {
                let l: Triangulation3 = t.vertex_link(v);
                assert!(l.is_closed());
                assert_eq!(l.size(), t.skeleton().face(0, v).degree());
                l.size()
            })
            .sum();
        assert_eq!(total, 5 * t.size());
    }
}
