use std::collections::BTreeSet;

use crate::tri::DualGraph;

/// All connected 5-regular multigraphs (loops allowed, a loop counting twice
/// towards the degree) on `n` nodes, up to isomorphism, each in canonical
/// labeling and sorted by canonical code.
pub fn enumerate_dual_graphs(n: usize) -> Vec<DualGraph> {
    assert!(n >= 1);
    let mut m = vec![vec![0u8; n]; n];
    let mut rem = vec![5u8; n];
    let mut found = BTreeSet::new();
    fill(0, 0, &mut m, &mut rem, &mut found);
    found.into_iter().map(|code| from_code(n, &code)).collect()
}

fn fill(i: usize, j: usize, m: &mut Vec<Vec<u8>>, rem: &mut Vec<u8>, found: &mut BTreeSet<Vec<u8>>) {
    let n = m.len();
    if i == n {
        let g = DualGraph::from_matrix(m);
        if g.is_connected() {
            found.insert(g.canonical_form());
        }
        return;
    }
    if j == n {
        // Row i must be saturated before moving on.
        if rem[i] == 0 {
            fill(i + 1, i + 1, m, rem, found);
        }
        return;
    }
    if i == j {
        // Loop counts are non-increasing along the diagonal; every graph has
        // such a labeling.
        let cap = if i > 0 { m[i - 1][i - 1] } else { 2 };
        for l in (0..=cap.min(rem[i] / 2)).rev() {
            m[i][i] = l;
            rem[i] -= 2 * l;
            fill(i, j + 1, m, rem, found);
            rem[i] += 2 * l;
        }
        m[i][i] = 0;
        return;
    }
    let max = rem[i].min(rem[j]);
    for k in (0..=max).rev() {
        m[i][j] = k;
        m[j][i] = k;
        rem[i] -= k;
        rem[j] -= k;
        fill(i, j + 1, m, rem, found);
        rem[i] += k;
        rem[j] += k;
    }
    m[i][j] = 0;
    m[j][i] = 0;
}

fn from_code(n: usize, code: &[u8]) -> DualGraph {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_nodes() {
        let gs = enumerate_dual_graphs(2);
        assert_eq!(gs.len(), 3);
        // Loop/cross-arc profiles per node: (0 loops, 5 arcs), (1, 3), (2, 1).
        let mut profiles: Vec<(usize, usize)> = gs.iter().map(|g| (g.loops(0), g.arc_count() - g.loops(0) - g.loops(1))).collect();
        profiles.sort();
        assert_eq!(profiles, vec![(0, 5), (1, 3), (2, 1)]);
        assert!(gs.iter().all(|g| g.is_regular(5)));
    }

    #[test]
    fn four_nodes() {
        assert_eq!(enumerate_dual_graphs(4).len(), 26);
    }
}
