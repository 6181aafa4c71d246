use super::Triangulation;

/// Face-pairing multigraph: one node per top simplex, one arc per gluing.
/// Loops (two facets of one simplex glued together) are allowed and count
/// twice towards the degree of their node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualGraph {
    nodes: usize,
    // Sorted, each arc stored as (min, max).
    arcs: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn new(nodes: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut arcs: Vec<_> = arcs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        arcs.sort_unstable();
        DualGraph { nodes, arcs }
    }

    /// Builds a graph from a symmetric multiplicity matrix, where the
    /// diagonal entry counts loops.
    pub fn from_matrix(m: &[Vec<u8>]) -> Self {
        let n = m.len();
        let mut arcs = Vec::new();
        for i in 0..n {
            for j in i..n {
                for _ in 0..m[i][j] {
                    arcs.push((i, j));
                }
            }
        }
        DualGraph { nodes: n, arcs }
    }

    pub fn of<const N: usize>(t: &Triangulation<N>) -> Self {
        let mut arcs = Vec::new();
        for s in 0..t.size() {
            for f in 0..N {
                if let Some(g) = t.gluing(s, f) {
                    let tf = g.perm.apply(f);
                    if (s, f) < (g.target, tf) {
                        arcs.push((s, g.target));
                    }
                }
            }
        }
        Self::new(t.size(), arcs)
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.arcs.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.nodes).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.nodes).all(|v| self.degree(v) == k)
    }

    pub fn loops(&self, v: usize) -> usize {
        self.arcs.iter().filter(|&&(a, b)| a == v && b == v).count()
    }

    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; self.nodes]; self.nodes];
        for &(a, b) in &self.arcs {
            m[a][b] += 1;
            if a != b {
                m[b][a] += 1;
            }
        }
        m
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes == 0 {
            return true;
        }
        let mut seen = vec![false; self.nodes];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.arcs {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Isomorphism-invariant form: the lexicographically least upper
    /// triangle of the multiplicity matrix over all node orderings. Brute
    /// force, meant for the handful of nodes in a census.
    pub fn canonical_form(&self) -> Vec<u8> {
        let m = self.matrix();
        let n = self.nodes;
        let mut best: Option<Vec<u8>> = None;
        let mut order: Vec<usize> = (0..n).collect();
        permute(&mut order, 0, &mut |ord| {
            let mut code = Vec::with_capacity(n * (n + 1) / 2);
            for i in 0..n {
                for j in i..n {
                    code.push(m[ord[i]][ord[j]]);
                }
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        });
        best.unwrap_or_default()
    }

    /// The isomorphic graph whose upper-triangle code is [`canonical_form`].
    ///
    /// [`canonical_form`]: DualGraph::canonical_form
    pub fn canonical(&self) -> DualGraph {
        let code = self.canonical_form();
        let n = self.nodes;
        let mut m = vec![vec![0u8; n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                m[i][j] = code[k];
                m[j][i] = code[k];
                k += 1;
            }
        }
        DualGraph::from_matrix(&m)
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.nodes == other.nodes
            && self.arcs.len() == other.arcs.len()
            && self.canonical_form() == other.canonical_form()
    }
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

impl<const N: usize> Triangulation<N> {
    pub fn dual_graph(&self) -> DualGraph {
        DualGraph::of(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm5;
    use crate::tri::Triangulation4;

    #[test]
    fn single_simplex_has_no_arcs() {
        let g = Triangulation4::new(1).unwrap().dual_graph();
        assert_eq!((g.node_count(), g.arc_count()), (1, 0));
    }

    #[test]
    fn fivefold_arc() {
        let mut t = Triangulation4::new(2).unwrap();
        for f in 0..5 {
            t.join(0, f, 1, Perm5::identity()).unwrap();
        }
        let g = t.dual_graph();
        assert_eq!(g.arcs(), &[(0, 1); 5]);
        assert!(g.is_regular(5));
    }

    #[test]
    fn canonical_form_ignores_node_order() {
        let a = DualGraph::new(3, [(0, 0), (0, 1), (1, 2), (2, 2)]);
        let b = DualGraph::new(3, [(2, 2), (2, 0), (0, 1), (1, 1)]);
        assert!(a.is_isomorphic(&b));
        let c = DualGraph::new(3, [(0, 0), (0, 1), (0, 2), (1, 2)]);
        assert!(!a.is_isomorphic(&c));
    }
}
