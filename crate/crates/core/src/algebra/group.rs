use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::tri::Triangulation;

use super::homology::AbelianGroup;
use super::matrix::IntMatrix;

/// Generator `i` is written `i + 1`, its inverse `-(i + 1)`.
pub type Word = Vec<i32>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Self {
        let p = GroupPresentation { generators, relators };
        debug_assert!(p.is_well_formed());
        p
    }

    pub fn is_well_formed(&self) -> bool {
        self.relators
            .iter()
            .flatten()
            .all(|&x| x != 0 && (x.unsigned_abs() as usize) <= self.generators)
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Vec::len).sum()
    }

    /// No generators at all. A presentation of the trivial group may still
    /// fail this test if simplification got stuck.
    pub fn is_trivial(&self) -> bool {
        self.generators == 0
    }

    pub fn abelianization(&self) -> AbelianGroup {
        let mut m = IntMatrix::zeros(self.relators.len(), self.generators);
        for (i, r) in self.relators.iter().enumerate() {
            for &x in r {
                m.add_to(i, x.unsigned_abs() as usize - 1, x.signum() as i64);
            }
        }
        AbelianGroup::from_relations(self.generators, &m)
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gen = |i: usize| -> String {
            if self.generators <= 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("g{i}")
            }
        };
        let gens: Vec<String> = (0..self.generators).map(gen).collect();
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| {
                        let g = gen(x.unsigned_abs() as usize - 1);
                        if x < 0 {
                            format!("{g}^-1")
                        } else {
                            g
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

impl<const N: usize> Triangulation<N> {
    /// Edge-path presentation of the fundamental group: generators are the
    /// edges outside a breadth-first spanning tree grown from vertex 0, and
    /// every triangle contributes one relator. The triangulation must be
    /// connected.
    pub fn fundamental_group(&self) -> GroupPresentation {
        assert!(N >= 3, "fundamental group needs a 2-skeleton");
        let sk = self.skeleton();
        let nv = sk.count(0);
        let ne = sk.count(1);
        // Endpoints of each edge in its class order.
        let ends: Vec<(usize, usize)> = sk
            .edges()
            .iter()
            .map(|c| {
                let e = c.embeddings[0];
                let v = e.vertices.images();
                (sk.vertex_of(e.simplex, v[0] as usize), sk.vertex_of(e.simplex, v[1] as usize))
            })
            .collect();
        let mut in_tree = vec![false; ne];
        let mut seen = vec![false; nv];
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (e, &(a, b)) in ends.iter().enumerate() {
            incident[a].push(e);
            if b != a {
                incident[b].push(e);
            }
        }
        if nv > 0 {
            seen[0] = true;
            let mut queue = VecDeque::from([0usize]);
            while let Some(v) = queue.pop_front() {
                for &e in &incident[v] {
                    let (a, b) = ends[e];
                    let w = if a == v { b } else { a };
                    if !seen[w] {
                        seen[w] = true;
                        in_tree[e] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut gen_of = vec![0i32; ne];
        let mut generators = 0;
        for e in 0..ne {
            if !in_tree[e] {
                generators += 1;
                gen_of[e] = generators as i32;
            }
        }
        let mut relators = Vec::new();
        {
            let triangles: Vec<(usize, [u8; 3])> = if N == 3 {
                (0..self.size()).map(|s| (s, [0, 1, 2])).collect()
            } else {
                sk.faces(2)
                    .iter()
                    .map(|c| {
                        let e = c.embeddings[0];
                        let v = e.vertices.images();
                        (e.simplex, [v[0], v[1], v[2]])
                    })
                    .collect()
            };
            for (s, [x, y, z]) in triangles {
                let mut w = Vec::with_capacity(3);
                for (a, b) in [(x, y), (y, z), (z, x)] {
                    let mask = (1u8 << a) | (1u8 << b);
                    let (class, emb) = sk.embedding_of(s, mask);
                    let g = gen_of[class];
                    if g != 0 {
                        let forward = emb.vertices.images()[0] == a;
                        w.push(if forward { g } else { -g });
                    }
                }
                relators.push(w);
            }
        }
        GroupPresentation::new(generators, relators)
    }

    /// Presentation read off the dual graph: generators are facet gluings
    /// outside a spanning tree and every codimension-two face with no
    /// boundary facet around it contributes one relator. This is the
    /// fundamental group with vertices (and any non-manifold lower faces)
    /// removed, so for ideal triangulations it matches the truncated
    /// manifold. The triangulation must be connected.
    pub fn dual_fundamental_group(&self) -> GroupPresentation {
        let n = self.size();
        let mut in_tree = vec![[false; N]; n];
        let mut seen = vec![false; n];
        if n > 0 {
            seen[0] = true;
            let mut queue = VecDeque::from([0usize]);
            while let Some(s) = queue.pop_front() {
                for f in 0..N {
                    if let Some(g) = self.gluing(s, f) {
                        if !seen[g.target] {
                            seen[g.target] = true;
                            in_tree[s][f] = true;
                            in_tree[g.target][g.perm.apply(f)] = true;
                            queue.push_back(g.target);
                        }
                    }
                }
            }
        }
        // Generator crossing facet f of s, oriented from the smaller slot.
        let mut gen_of = vec![[0i32; N]; n];
        let mut generators = 0;
        for s in 0..n {
            for f in 0..N {
                let Some(g) = self.gluing(s, f) else { continue };
                let back = (g.target, g.perm.apply(f));
                if in_tree[s][f] || back < (s, f) {
                    continue;
                }
                generators += 1;
                gen_of[s][f] = generators as i32;
                if back != (s, f) {
                    gen_of[back.0][back.1] = -(generators as i32);
                }
            }
        }
        let mut visited = vec![[[false; N]; N]; n];
        let mut relators = Vec::new();
        for s in 0..n {
            for a in 0..N {
                for b in a + 1..N {
                    if visited[s][a][b] {
                        continue;
                    }
                    let (mut cur, mut came, mut exit) = (s, a, b);
                    let mut word = Vec::new();
                    let closed = loop {
                        visited[cur][came][exit] = true;
                        visited[cur][exit][came] = true;
                        let Some(g) = self.gluing(cur, exit) else { break false };
                        if gen_of[cur][exit] != 0 {
                            word.push(gen_of[cur][exit]);
                        }
                        (cur, came, exit) = (g.target, g.perm.apply(exit), g.perm.apply(came));
                        if (cur, came, exit) == (s, a, b) {
                            break true;
                        }
                    };
                    if closed {
                        relators.push(word);
                        continue;
                    }
                    // Hit the boundary: mark the rest of the chain the other way.
                    let (mut cur, mut came, mut exit) = (s, b, a);
                    while let Some(g) = self.gluing(cur, exit) {
                        (cur, came, exit) = (g.target, g.perm.apply(exit), g.perm.apply(came));
                        visited[cur][came][exit] = true;
                        visited[cur][exit][came] = true;
                    }
                }
            }
        }
        GroupPresentation::new(generators, relators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm5;
    use crate::tri::Triangulation4;

    #[test]
    fn sphere_group_abelianizes_trivially() {
        let mut t = Triangulation4::new(2).unwrap();
        for f in 0..5 {
            t.join(0, f, 1, Perm5::identity()).unwrap();
        }
        let g = t.fundamental_group();
        assert!(g.abelianization().is_trivial());
        assert_eq!(g.relators.len(), t.skeleton().count(2));
    }

    #[test]
    fn abelianization_of_small_groups() {
        let p = GroupPresentation::new(2, vec![vec![1, 1], vec![1, 2, -1, -2]]);
        assert_eq!(p.abelianization(), AbelianGroup { rank: 1, torsion: vec![2] });
        assert_eq!(p.to_string(), "< a, b | a a, a b a^-1 b^-1 >");
    }

    #[test]
    fn dual_group_of_a_solid_torus_boundary() {
        use crate::isosig::import_external_sig;
        use crate::tri::Triangulation3;
        let t = import_external_sig("cHIbbb0bRbpb").unwrap();
        let b: Triangulation3 = t.boundary_triangulation().unwrap();
        assert_eq!(b.dual_fundamental_group().abelianization(), AbelianGroup::free(1));
        // The untruncated complex cones off the torus.
        assert!(b.fundamental_group().abelianization().is_trivial());
    }

    #[test]
    fn dual_and_edge_groups_agree_on_closed_manifolds() {
        let mut t = Triangulation4::new(2).unwrap();
        for f in 0..5 {
            t.join(0, f, 1, Perm5::identity()).unwrap();
        }
        assert!(t.dual_fundamental_group().abelianization().is_trivial());
    }
}
