//! Generalized triangulations: simplices whose facets are glued in pairs.
//!
//! The type is generic over the number of vertices per simplex, so
//! `Triangulation<5>` is a 4-dimensional triangulation built from pentachora,
//! `Triangulation<4>` a 3-dimensional one (used for vertex links) and
//! `Triangulation<3>` a surface (used for links inside those).

mod boundary;
mod dual;
mod link;
mod skeleton;
mod validity;

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::perm::Perm;

pub use dual::DualGraph;
pub use skeleton::{FaceClass, FaceEmbedding, FaceRef, Skeleton};
pub use validity::{LinkKind, Manifoldness, ValidityReport};

pub type Triangulation4 = Triangulation<5>;
pub type Triangulation3 = Triangulation<4>;
pub type Triangulation2 = Triangulation<3>;

/// One half of a facet identification: facet `f` of the owning simplex is
/// glued to facet `perm(f)` of `target`, with vertex `i` going to `perm(i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing<const N: usize> {
    pub target: usize,
    pub perm: Perm<N>,
}

/// A facet of a particular simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub simplex: usize,
    pub facet: usize,
}

impl Slot {
    pub fn new(simplex: usize, facet: usize) -> Self {
        Slot { simplex, facet }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriError {
    #[error("a triangulation needs at least one simplex")]
    Empty,
    #[error("slot ({simplex}, {facet}) is out of range")]
    SlotOutOfRange { simplex: usize, facet: usize },
    #[error("gluing permutation does not carry facet {facet} of simplex {simplex} onto a facet")]
    BadPermutation { simplex: usize, facet: usize },
    #[error("facet {facet} of simplex {simplex} would be glued to itself")]
    SelfGluing { simplex: usize, facet: usize },
    #[error("slot ({simplex}, {facet}) is already glued differently")]
    InconsistentGluing { simplex: usize, facet: usize },
}

#[derive(Clone)]
pub struct Triangulation<const N: usize> {
    adj: Vec<[Option<Gluing<N>>; N]>,
    skeleton: OnceLock<Arc<Skeleton<N>>>,
}

impl<const N: usize> Triangulation<N> {
    /// Dimension of the triangulation (one less than vertices per simplex).
    pub const DIM: usize = N - 1;

    /// `size` unglued simplices.
    pub fn new(size: usize) -> Result<Self, TriError> {
        if size == 0 {
            return Err(TriError::Empty);
        }
        Ok(Self::with_size(size))
    }

    pub(crate) fn with_size(size: usize) -> Self {
        Triangulation { adj: vec![[None; N]; size], skeleton: OnceLock::new() }
    }

    /// Builds a triangulation from a list of half-gluings. Registering one
    /// side of an identification registers its inverse as well; listing both
    /// sides is allowed as long as they agree.
    pub fn build(
        size: usize,
        gluings: impl IntoIterator<Item = (Slot, Gluing<N>)>,
    ) -> Result<Self, TriError> {
        let mut t = Self::new(size)?;
        for (slot, g) in gluings {
            t.join(slot.simplex, slot.facet, g.target, g.perm)?;
        }
        Ok(t)
    }

    pub fn size(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn gluing(&self, simplex: usize, facet: usize) -> Option<Gluing<N>> {
        self.adj[simplex][facet]
    }

    /// Glues facet `facet` of `simplex` to `target` via `perm`, registering
    /// the inverse identification too.
    pub(crate) fn join(
        &mut self,
        simplex: usize,
        facet: usize,
        target: usize,
        perm: Perm<N>,
    ) -> Result<(), TriError> {
        let n = self.size();
        if simplex >= n || facet >= N {
            return Err(TriError::SlotOutOfRange { simplex, facet });
        }
        if target >= n {
            return Err(TriError::SlotOutOfRange { simplex: target, facet: perm.apply(facet) });
        }
        let tf = perm.apply(facet);
        if target == simplex && tf == facet {
            return Err(TriError::SelfGluing { simplex, facet });
        }
        let fwd = Gluing { target, perm };
        let back = Gluing { target: simplex, perm: perm.inverse() };
        match self.adj[simplex][facet] {
            Some(g) if g != fwd => return Err(TriError::InconsistentGluing { simplex, facet }),
            _ => {}
        }
        match self.adj[target][tf] {
            Some(g) if g != back => {
                return Err(TriError::InconsistentGluing { simplex: target, facet: tf })
            }
            _ => {}
        }
        self.adj[simplex][facet] = Some(fwd);
        self.adj[target][tf] = Some(back);
        self.skeleton = OnceLock::new();
        Ok(())
    }

    pub(crate) fn set_raw(&mut self, simplex: usize, facet: usize, g: Option<Gluing<N>>) {
        self.adj[simplex][facet] = g;
        self.skeleton = OnceLock::new();
    }

    /// Checks the involution contract at every slot.
    pub fn check_involution(&self) -> Result<(), TriError> {
        for s in 0..self.size() {
            for f in 0..N {
                if let Some(g) = self.adj[s][f] {
                    let tf = g.perm.apply(f);
                    if g.target >= self.size() {
                        return Err(TriError::SlotOutOfRange { simplex: s, facet: f });
                    }
                    if g.target == s && tf == f {
                        return Err(TriError::SelfGluing { simplex: s, facet: f });
                    }
                    let back = self.adj[g.target][tf];
                    if back != Some(Gluing { target: s, perm: g.perm.inverse() }) {
                        return Err(TriError::InconsistentGluing { simplex: s, facet: f });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn skeleton(&self) -> &Skeleton<N> {
        self.skeleton.get_or_init(|| Arc::new(Skeleton::compute(self)))
    }

    pub fn boundary_facet_count(&self) -> usize {
        self.adj.iter().flat_map(|row| row.iter()).filter(|g| g.is_none()).count()
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_facet_count() == 0
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Simplex indices grouped by connected component, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let s = comp[i];
                i += 1;
                for g in self.adj[s].iter().flatten() {
                    if !seen[g.target] {
                        seen[g.target] = true;
                        comp.push(g.target);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Face counts `(f_0, …, f_{N-1})`.
    pub fn f_vector(&self) -> Vec<usize> {
        let sk = self.skeleton();
        let mut f: Vec<usize> = (0..N - 1).map(|d| sk.count(d)).collect();
        f.push(self.size());
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Decides orientability by propagating a ±1 orientation per simplex:
    /// a gluing with permutation `σ` between simplices of orientations `a`
    /// and `b` is consistent iff `sign(σ) = -a·b`.
    pub fn is_orientable(&self) -> bool {
        self.orientation().is_some()
    }

    /// A consistent orientation (one sign per simplex), if any exists.
    pub fn orientation(&self) -> Option<Vec<i8>> {
        let n = self.size();
        let mut sign = vec![0i8; n];
        for start in 0..n {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut stack = vec![start];
            while let Some(s) = stack.pop() {
                for g in self.adj[s].iter().flatten() {
                    let want = -(sign[s] as i32) * g.perm.sign();
                    let want = want as i8;
                    if sign[g.target] == 0 {
                        sign[g.target] = want;
                        stack.push(g.target);
                    } else if sign[g.target] != want {
                        return None;
                    }
                }
            }
        }
        Some(sign)
    }

    /// Relabels simplices (`order[new] = old`) and applies a vertex
    /// relabeling per old simplex (`relabel[old]` maps old labels to new
    /// ones). The result is combinatorially isomorphic to `self`.
    pub fn relabeled(&self, order: &[usize], relabel: &[Perm<N>]) -> Self {
        let n = self.size();
        assert_eq!(order.len(), n);
        let mut new_index = vec![usize::MAX; n];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let mut out = Self::with_size(n);
        for old in 0..n {
            for f in 0..N {
                if let Some(g) = self.adj[old][f] {
                    let nf = relabel[old].apply(f);
                    let perm = relabel[g.target].compose(&g.perm).compose(&relabel[old].inverse());
                    out.adj[new_index[old]][nf] = Some(Gluing { target: new_index[g.target], perm });
                }
            }
        }
        out
    }

    /// Raw gluing table, for serialization and tests.
    pub fn gluing_table(&self) -> &[[Option<Gluing<N>>; N]] {
        &self.adj
    }

    /// Disjoint union with another triangulation; `other`'s simplices follow.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let off = self.size();
        let mut out = self.clone();
        out.skeleton = OnceLock::new();
        for row in &other.adj {
            let mut r = *row;
            for g in r.iter_mut().flatten() {
                g.target += off;
            }
            out.adj.push(r);
        }
        out
    }
}

impl<const N: usize> PartialEq for Triangulation<N> {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl<const N: usize> Eq for Triangulation<N> {}

impl<const N: usize> fmt::Debug for Triangulation<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Triangulation<{}> with {} simplices", N, self.size())?;
        for (s, row) in self.adj.iter().enumerate() {
            write!(f, "  {s}:")?;
            for g in row {
                match g {
                    None => write!(f, " bdry")?,
                    Some(g) => write!(f, " {}({})", g.target, g.perm)?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm5;

    #[test]
    fn single_pentachoron_is_all_boundary() {
        let t = Triangulation4::new(1).unwrap();
        assert_eq!(t.boundary_facet_count(), 5);
        assert_eq!(t.f_vector(), vec![5, 10, 10, 5, 1]);
        assert!(!t.is_closed());
        assert!(t.is_orientable());
    }

    #[test]
    fn join_registers_inverse() {
        let p = Perm5::from_images([1, 0, 2, 3, 4]).unwrap();
        let t = Triangulation4::build(2, [(Slot::new(0, 2), Gluing { target: 1, perm: p })]).unwrap();
        assert_eq!(t.gluing(1, 2), Some(Gluing { target: 0, perm: p.inverse() }));
        t.check_involution().unwrap();
    }

    #[test]
    fn inconsistent_gluing_is_rejected() {
        let id = Perm5::identity();
        let mut t = Triangulation4::new(3).unwrap();
        t.join(0, 0, 1, id).unwrap();
        assert_eq!(t.join(2, 0, 1, id), Err(TriError::InconsistentGluing { simplex: 1, facet: 0 }));
        assert_eq!(t.join(0, 0, 2, id), Err(TriError::InconsistentGluing { simplex: 0, facet: 0 }));
        // Re-registering the same gluing from the other side is fine.
        t.join(1, 0, 0, id).unwrap();
    }

    #[test]
    fn self_gluing_is_rejected() {
        let mut t = Triangulation4::new(1).unwrap();
        assert_eq!(t.join(0, 3, 0, Perm5::identity()), Err(TriError::SelfGluing { simplex: 0, facet: 3 }));
        // Two different facets of one pentachoron may be glued.
        t.join(0, 3, 0, Perm5::transposition(3, 4)).unwrap();
    }

    #[test]
    fn orientation_parity() {
        let id = Perm5::identity();
        let mut t = Triangulation4::new(2).unwrap();
        for f in 0..5 {
            t.join(0, f, 1, id).unwrap();
        }
        // Identity gluings are even, so the two pentachora need opposite signs.
        assert_eq!(t.orientation(), Some(vec![1, -1]));
        // An even self-gluing of one pentachoron cannot be oriented.
        let mut u = Triangulation4::new(1).unwrap();
        u.join(0, 0, 0, Perm5::from_images([1, 0, 3, 2, 4]).unwrap()).unwrap();
        assert!(!u.is_orientable());
    }
}
