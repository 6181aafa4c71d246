use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::perm::Perm;
use crate::tri::Triangulation;

use super::matrix::{smith_normal_form, IntMatrix};

/// A finitely generated abelian group `Z^rank + Z_t1 + … + Z_tk`, with each
/// torsion coefficient dividing the next.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Cokernel of an integer matrix viewed as relations on its rows.
    pub(crate) fn from_relations(generators: usize, relations: &IntMatrix) -> Self {
        let snf = smith_normal_form(relations);
        AbelianGroup { rank: generators - snf.rank(), torsion: torsion_u64(&snf.torsion()) }
    }
}

fn torsion_u64(t: &[BigInt]) -> Vec<u64> {
    t.iter().map(|x| u64::try_from(x).expect("torsion coefficient exceeds u64")).collect()
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        parts.extend(std::iter::repeat_n("Z".to_string(), self.rank));
        parts.extend(self.torsion.iter().map(|t| format!("Z_{t}")));
        write!(f, "{}", parts.join("+"))
    }
}

/// `(H1, H2, H3)` of a 4-dimensional triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HomologyVector(pub [AbelianGroup; 3]);

impl HomologyVector {
    pub fn h(&self, p: usize) -> &AbelianGroup {
        &self.0[p - 1]
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(AbelianGroup::is_trivial)
    }
}

impl fmt::Display for HomologyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}, {}", self.0[0], self.0[1], self.0[2])
    }
}

impl<const N: usize> Triangulation<N> {
    /// Matrix of the boundary map from `p`-chains to `(p-1)`-chains, for
    /// `1 <= p <= N-1`. Rows are `(p-1)`-faces and columns `p`-faces, both in
    /// skeleton order; each face carries the orientation of its vertex order
    /// in the first embedding (top simplices use their own labels).
    pub fn boundary_matrix(&self, p: usize) -> IntMatrix {
        assert!(p >= 1 && p < N, "boundary map index out of range");
        let sk = self.skeleton();
        let rows = sk.count(p - 1);
        let top = p == N - 1;
        let cols = if top { self.size() } else { sk.count(p) };
        let mut m = IntMatrix::zeros(rows, cols);
        for col in 0..cols {
            let (simplex, verts) = if top {
                (col, Perm::<N>::identity())
            } else {
                let e = sk.face(p, col).embeddings[0];
                (e.simplex, e.vertices)
            };
            let v = &verts.images()[..=p];
            for j in 0..=p {
                let sub: Vec<u8> = v.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &x)| x).collect();
                let mask = sub.iter().fold(0u8, |a, &x| a | (1 << x));
                let (class, emb) = sk.embedding_of(simplex, mask);
                let order = &emb.vertices.images()[..p];
                // Sign of the permutation taking `sub` to the class order.
                let sign = relative_sign(&sub, order);
                let s = if j % 2 == 0 { sign } else { -sign };
                m.add_to(class, col, s);
            }
        }
        m
    }

    /// Integral homology groups `H_0 … H_{N-1}`.
    pub fn homology_groups(&self) -> Vec<AbelianGroup> {
        let d = N - 1;
        let sk = self.skeleton();
        let dims: Vec<usize> = (0..=d).map(|p| if p == d { self.size() } else { sk.count(p) }).collect();
        // forms[p] = SNF of ∂_p, for p = 1..=d.
        let forms: Vec<_> = (1..=d).map(|p| smith_normal_form(&self.boundary_matrix(p))).collect();
        (0..=d)
            .map(|p| {
                let rank_out = if p == 0 { 0 } else { forms[p - 1].rank() };
                let (rank_in, torsion) = if p == d {
                    (0, Vec::new())
                } else {
                    (forms[p].rank(), torsion_u64(&forms[p].torsion()))
                };
                AbelianGroup { rank: dims[p] - rank_out - rank_in, torsion }
            })
            .collect()
    }
}

impl Triangulation<5> {
    pub fn homology(&self) -> HomologyVector {
        let h = self.homology_groups();
        HomologyVector([h[1].clone(), h[2].clone(), h[3].clone()])
    }
}

fn relative_sign(a: &[u8], b: &[u8]) -> i64 {
    let pos: Vec<usize> = a.iter().map(|x| b.iter().position(|y| y == x).expect("face mismatch")).collect();
    let mut inv = 0;
    for i in 0..pos.len() {
        for j in i + 1..pos.len() {
            if pos[i] > pos[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}
