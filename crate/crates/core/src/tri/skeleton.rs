use crate::perm::{subsets, Perm};

use super::Triangulation;

/// One appearance of a face class inside a simplex. `vertices[0..=dim]` are
/// the simplex-local vertices of the face listed in the class's vertex order;
/// the remaining images list the other local vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceEmbedding<const N: usize> {
    pub simplex: usize,
    pub vertices: Perm<N>,
}

impl<const N: usize> FaceEmbedding<N> {
    pub fn mask(&self, dim: usize) -> u8 {
        self.vertices.images()[..=dim].iter().fold(0u8, |m, &v| m | (1 << v))
    }
}

#[derive(Clone, Debug)]
pub struct FaceClass<const N: usize> {
    pub dim: usize,
    pub embeddings: Vec<FaceEmbedding<N>>,
    pub on_boundary: bool,
    /// False when the face is identified with itself under a non-identity
    /// map of its own vertices (an edge reversed onto itself, a triangle
    /// rotated or reflected onto itself, …).
    pub valid: bool,
}

impl<const N: usize> FaceClass<N> {
    pub fn degree(&self) -> usize {
        self.embeddings.len()
    }
}

/// Where a `(simplex, vertex subset)` pair lands in the skeleton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceRef {
    pub class: u32,
    pub embedding: u32,
}

/// Face classes of every dimension below the top one, ordered by the first
/// `(simplex, lexicographic vertex subset)` at which they occur.
#[derive(Clone, Debug)]
pub struct Skeleton<const N: usize> {
    faces: Vec<Vec<FaceClass<N>>>,
    // Indexed by simplex * 2^N + vertex mask.
    lookup: Vec<FaceRef>,
}

const NO_FACE: FaceRef = FaceRef { class: u32::MAX, embedding: u32::MAX };

impl<const N: usize> Skeleton<N> {
    pub(crate) fn compute(t: &Triangulation<N>) -> Self {
        let n = t.size();
        let mut lookup = vec![NO_FACE; n << N];
        let mut faces = Vec::with_capacity(N - 1);
        for dim in 0..N - 1 {
            let masks = subsets(N, dim + 1);
            let mut classes: Vec<FaceClass<N>> = Vec::new();
            for s in 0..n {
                for &mask in &masks {
                    if lookup[(s << N) | mask as usize].class != u32::MAX {
                        continue;
                    }
                    let class_id = classes.len() as u32;
                    classes.push(trace_class(t, s, mask, dim, class_id, &mut lookup));
                }
            }
            faces.push(classes);
        }
        Skeleton { faces, lookup }
    }

    /// Number of classes of the given dimension.
    pub fn count(&self, dim: usize) -> usize {
        self.faces[dim].len()
    }

    pub fn faces(&self, dim: usize) -> &[FaceClass<N>] {
        &self.faces[dim]
    }

    pub fn face(&self, dim: usize, id: usize) -> &FaceClass<N> {
        &self.faces[dim][id]
    }

    pub fn vertices(&self) -> &[FaceClass<N>] {
        &self.faces[0]
    }

    pub fn edges(&self) -> &[FaceClass<N>] {
        &self.faces[1]
    }

    /// Class and embedding of the face spanned by `mask` in `simplex`.
    #[inline]
    pub fn locate(&self, simplex: usize, mask: u8) -> FaceRef {
        self.lookup[(simplex << N) | mask as usize]
    }

    #[inline]
    pub fn class_of(&self, simplex: usize, mask: u8) -> usize {
        self.locate(simplex, mask).class as usize
    }

    pub fn embedding_of(&self, simplex: usize, mask: u8) -> (usize, FaceEmbedding<N>) {
        let r = self.locate(simplex, mask);
        let dim = mask.count_ones() as usize - 1;
        (r.class as usize, self.faces[dim][r.class as usize].embeddings[r.embedding as usize])
    }

    pub fn is_valid(&self) -> bool {
        self.faces.iter().all(|cls| cls.iter().all(|c| c.valid))
    }

    pub fn vertex_of(&self, simplex: usize, local: usize) -> usize {
        self.class_of(simplex, 1 << local)
    }
}

fn trace_class<const N: usize>(
    t: &Triangulation<N>,
    s: usize,
    mask: u8,
    dim: usize,
    class_id: u32,
    lookup: &mut [FaceRef],
) -> FaceClass<N> {
    // First embedding: face vertices ascending, then the rest ascending.
    let mut img = [0u8; N];
    let mut k = 0;
    for v in 0..N as u8 {
        if mask & (1 << v) != 0 {
            img[k] = v;
            k += 1;
        }
    }
    for v in 0..N as u8 {
        if mask & (1 << v) == 0 {
            img[k] = v;
            k += 1;
        }
    }
    let first = FaceEmbedding { simplex: s, vertices: Perm::from_images_unchecked(img) };
    let mut class = FaceClass { dim, embeddings: vec![first], on_boundary: false, valid: true };
    lookup[(s << N) | mask as usize] = FaceRef { class: class_id, embedding: 0 };

    let mut i = 0;
    while i < class.embeddings.len() {
        let emb = class.embeddings[i];
        i += 1;
        let emask = emb.mask(dim);
        for f in 0..N {
            if emask & (1 << f) != 0 {
                continue;
            }
            let Some(g) = t.gluing(emb.simplex, f) else {
                class.on_boundary = true;
                continue;
            };
            let verts = g.perm.compose(&emb.vertices);
            let nmask = g.perm.apply_mask(emask);
            let key = (g.target << N) | nmask as usize;
            let r = lookup[key];
            if r.class == u32::MAX {
                lookup[key] = FaceRef { class: class_id, embedding: class.embeddings.len() as u32 };
                class.embeddings.push(FaceEmbedding { simplex: g.target, vertices: verts });
            } else {
                debug_assert_eq!(r.class, class_id);
                let other = class.embeddings[r.embedding as usize].vertices;
                if other.images()[..=dim] != verts.images()[..=dim] {
                    class.valid = false;
                }
            }
        }
    }
    class
}
