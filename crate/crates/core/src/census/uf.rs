//! Union-find with group-valued potentials and rollback, used to track how
//! edges and triangles are identified while gluings are being chosen.

pub(crate) trait Group: Copy + Eq {
    fn id() -> Self;
    /// `self ∘ other`.
    fn mul(self, other: Self) -> Self;
    fn inv(self) -> Self;
}

impl Group for bool {
    fn id() -> Self {
        false
    }
    fn mul(self, other: Self) -> Self {
        self ^ other
    }
    fn inv(self) -> Self {
        self
    }
}

impl Group for crate::perm::Perm3 {
    fn id() -> Self {
        Self::identity()
    }
    fn mul(self, other: Self) -> Self {
        self.compose(&other)
    }
    fn inv(self) -> Self {
        self.inverse()
    }
}

enum Undo {
    Link { child: u32, root: u32 },
    Add { root: u32, delta: i32 },
}

/// Each class also carries a counter (summed over its members) and a ring
/// of its members.
pub(crate) struct PotentialUf<G> {
    parent: Vec<u32>,
    size: Vec<u32>,
    // Maps a node's coordinates to its parent's.
    pot: Vec<G>,
    count: Vec<i32>,
    ring: Vec<u32>,
    history: Vec<Undo>,
}

impl<G: Group> PotentialUf<G> {
    pub(crate) fn new(n: usize, count: i32) -> Self {
        PotentialUf {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            pot: vec![G::id(); n],
            count: vec![count; n],
            ring: (0..n as u32).collect(),
            history: Vec::new(),
        }
    }

    /// Root of `x` and the map from `x` coordinates to root coordinates.
    pub(crate) fn find(&self, mut x: u32) -> (u32, G) {
        let mut p = G::id();
        while self.parent[x as usize] != x {
            p = self.pot[x as usize].mul(p);
            x = self.parent[x as usize];
        }
        (x, p)
    }

    /// Records that coordinates of `a` map to those of `b` by `rel`. Returns
    /// false if `a` and `b` were already identified by a different map.
    pub(crate) fn unite(&mut self, a: u32, b: u32, rel: G) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa == pb.mul(rel);
        }
        // ra coordinates -> rb coordinates.
        let link = pb.mul(rel).mul(pa.inv());
        let (child, root, p) = if self.size[ra as usize] <= self.size[rb as usize] {
            (ra, rb, link)
        } else {
            (rb, ra, link.inv())
        };
        self.parent[child as usize] = root;
        self.pot[child as usize] = p;
        self.size[root as usize] += self.size[child as usize];
        self.count[root as usize] += self.count[child as usize];
        self.ring.swap(child as usize, root as usize);
        self.history.push(Undo::Link { child, root });
        true
    }

    /// Adds `delta` to the counter of the class of `x` and returns the new
    /// value.
    pub(crate) fn add(&mut self, x: u32, delta: i32) -> i32 {
        let (root, _) = self.find(x);
        self.count[root as usize] += delta;
        self.history.push(Undo::Add { root, delta });
        self.count[root as usize]
    }

    pub(crate) fn size_of(&self, root: u32) -> u32 {
        self.size[root as usize]
    }

    /// Members of the class containing `x`.
    pub(crate) fn members(&self, x: u32) -> impl Iterator<Item = u32> + '_ {
        let mut cur = Some(x);
        std::iter::from_fn(move || {
            let c = cur?;
            let n = self.ring[c as usize];
            cur = (n != x).then_some(n);
            Some(c)
        })
    }

    pub(crate) fn mark(&self) -> usize {
        self.history.len()
    }

    pub(crate) fn rollback(&mut self, mark: usize) {
        while self.history.len() > mark {
            match self.history.pop().unwrap() {
                Undo::Link { child, root } => {
                    self.ring.swap(child as usize, root as usize);
                    self.count[root as usize] -= self.count[child as usize];
                    self.size[root as usize] -= self.size[child as usize];
                    self.parent[child as usize] = child;
                    self.pot[child as usize] = G::id();
                }
                Undo::Add { root, delta } => self.count[root as usize] -= delta,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_conflict_and_rollback() {
        let mut uf = PotentialUf::<bool>::new(3, 1);
        assert!(uf.unite(0, 1, true));
        let m = uf.mark();
        assert!(uf.unite(1, 2, true));
        assert!(!uf.unite(0, 2, true));
        assert!(uf.unite(0, 2, false));
        assert_eq!(uf.members(2).count(), 3);
        assert_eq!(uf.add(1, -1), 2);
        uf.rollback(m);
        assert_eq!(uf.members(0).collect::<Vec<_>>().len(), 2);
        assert_eq!(uf.members(2).collect::<Vec<_>>(), vec![2]);
        assert!(uf.unite(0, 2, true));
    }
}
