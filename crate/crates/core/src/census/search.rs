use crate::perm::{Perm3, Perm5};
use crate::tri::{DualGraph, Triangulation4};

use super::uf::PotentialUf;

/// One arc with its facet slots: facet `fa` of `a` is glued to facet `fb`
/// of `b`, and `a` is reached before (or equals) `b` in the search order.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Arc {
    pub a: usize,
    pub fa: usize,
    pub b: usize,
    pub fb: usize,
}

/// Orders arcs so every arc touches an already reached node, taking arcs
/// between reached nodes first, and assigns each node's facets in order.
pub(crate) fn facet_assignment(g: &DualGraph) -> Vec<Arc> {
    let n = g.node_count();
    let mut reached = vec![false; n];
    reached[0] = true;
    let mut used = vec![false; g.arc_count()];
    let mut next_facet = vec![0usize; n];
    let mut out = Vec::with_capacity(g.arc_count());
    for _ in 0..g.arc_count() {
        let arcs = g.arcs();
        let pick = (0..arcs.len())
            .find(|&i| !used[i] && reached[arcs[i].0] && reached[arcs[i].1])
            .or_else(|| (0..arcs.len()).find(|&i| !used[i] && (reached[arcs[i].0] || reached[arcs[i].1])))
            .expect("dual graph is connected");
        used[pick] = true;
        let (x, y) = arcs[pick];
        let (a, b) = if reached[x] { (x, y) } else { (y, x) };
        reached[b] = true;
        let fa = next_facet[a];
        next_facet[a] += 1;
        let fb = next_facet[b];
        next_facet[b] += 1;
        out.push(Arc { a, fa, b, fb });
    }
    debug_assert!(next_facet.iter().all(|&k| k == 5));
    out
}

/// Perm5 arithmetic on lex indices.
struct PermTable {
    compose: Vec<[u8; 120]>,
    inverse: [u8; 120],
}

impl PermTable {
    fn new() -> Self {
        let all = Perm5::all();
        let mut compose = vec![[0u8; 120]; 120];
        let mut inverse = [0u8; 120];
        for (i, p) in all.iter().enumerate() {
            debug_assert_eq!(p.lex_index(), i);
            inverse[i] = p.inverse().lex_index() as u8;
            for (j, q) in all.iter().enumerate() {
                compose[i][j] = p.compose(q).lex_index() as u8;
            }
        }
        PermTable { compose, inverse }
    }
}

/// How an automorphism of the facet pairing moves one arc: the gluing on
/// arc `src` becomes `left ∘ p ∘ right` (inverted if `flip`) on the arc
/// this entry is stored under.
#[derive(Clone, Copy, Debug)]
struct ArcImage {
    src: u16,
    left: u8,
    right: u8,
    flip: bool,
}

/// Non-identity automorphisms of the facet pairing given by `arcs`: a
/// relabeling of pentachora together with a vertex relabeling of each that
/// maps glued facet pairs to glued facet pairs. Each is returned as its
/// action on arcs, indexed by image arc.
fn pairing_automorphisms(n: usize, arcs: &[Arc]) -> Vec<Vec<ArcImage>> {
    let mut partner = vec![[(0usize, 0usize); 5]; n];
    for arc in arcs {
        partner[arc.a][arc.fa] = (arc.b, arc.fb);
        partner[arc.b][arc.fb] = (arc.a, arc.fa);
    }
    let all = Perm5::all();
    let mut found = Vec::new();
    let mut sigma = vec![usize::MAX; n];
    let mut tau = vec![Perm5::identity(); n];
    let mut used = vec![false; n];
    for s0 in 0..n {
        for t0 in &all {
            sigma[0] = s0;
            tau[0] = *t0;
            used[s0] = true;
            if consistent(0, &partner, &sigma, &tau) {
                extend(&partner, &all, &mut sigma, &mut tau, &mut used, &mut found);
            }
            used[s0] = false;
            sigma[0] = usize::MAX;
        }
    }
    let slot_arc = |s: usize, f: usize| {
        arcs.iter()
            .position(|a| (a.a, a.fa) == (s, f) || (a.b, a.fb) == (s, f))
            .map(|j| (j, (arcs[j].a, arcs[j].fa) != (s, f)))
            .unwrap()
    };
    found
        .into_iter()
        .filter(|(sg, tu)| !(sg.iter().enumerate().all(|(i, &x)| i == x) && tu.iter().all(|t| t.is_identity())))
        .map(|(sg, tu)| {
            let mut img = vec![ArcImage { src: 0, left: 0, right: 0, flip: false }; arcs.len()];
            for (j, arc) in arcs.iter().enumerate() {
                let (k, flip) = slot_arc(sg[arc.a], tu[arc.a].apply(arc.fa));
                img[k] = ArcImage {
                    src: j as u16,
                    left: tu[arc.b].lex_index() as u8,
                    right: tu[arc.a].inverse().lex_index() as u8,
                    flip,
                };
            }
            img
        })
        .collect()
}

fn consistent(t: usize, partner: &[[(usize, usize); 5]], sigma: &[usize], tau: &[Perm5]) -> bool {
    (0..5).all(|f| {
        let (t2, g2) = partner[t][f];
        sigma[t2] == usize::MAX || partner[sigma[t]][tau[t].apply(f)] == (sigma[t2], tau[t2].apply(g2))
    })
}

fn extend(
    partner: &[[(usize, usize); 5]],
    all: &[Perm5],
    sigma: &mut Vec<usize>,
    tau: &mut Vec<Perm5>,
    used: &mut Vec<bool>,
    found: &mut Vec<(Vec<usize>, Vec<Perm5>)>,
) {
    let n = sigma.len();
    // An unassigned pentachoron next to an assigned one.
    let next = (0..n)
        .filter(|&s| sigma[s] != usize::MAX)
        .flat_map(|s| (0..5).map(move |f| (s, f)))
        .find(|&(s, f)| sigma[partner[s][f].0] == usize::MAX);
    let Some((s, f)) = next else {
        found.push((sigma.clone(), tau.clone()));
        return;
    };
    let (t, g) = partner[s][f];
    let (u, h) = partner[sigma[s]][tau[s].apply(f)];
    if used[u] {
        return;
    }
    sigma[t] = u;
    used[u] = true;
    for p in all.iter().filter(|p| p.apply(g) == h) {
        tau[t] = *p;
        if consistent(t, partner, sigma, tau) {
            extend(partner, all, sigma, tau, used, found);
        }
    }
    used[u] = false;
    sigma[t] = usize::MAX;
}

const EDGES: [(usize, usize); 10] = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

fn edge_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    EDGES.iter().position(|&e| e == (i, j)).unwrap()
}

fn triangle_index(mask: u8) -> usize {
    crate::perm::subsets(5, 3).iter().position(|&m| m == mask).unwrap()
}

/// Which edges and triangles a gluing identifies, as indices local to the
/// two pentachora, with the relative orientation of each pair.
struct Effect {
    edges: [(u8, u8, bool); 6],
    tris: [(u8, u8, Perm3); 4],
}

impl Effect {
    fn new(fa: usize, p: Perm5) -> Effect {
        let mut edges = [(0, 0, false); 6];
        let on_facet = EDGES.iter().filter(|&&(i, j)| i != fa && j != fa);
        for (slot, &(i, j)) in edges.iter_mut().zip(on_facet) {
            let (x, y) = (p.apply(i), p.apply(j));
            *slot = (edge_index(i, j) as u8, edge_index(x, y) as u8, x > y);
        }
        let mut tris = [(0, 0, Perm3::identity()); 4];
        let on_facet = crate::perm::subsets(5, 3).into_iter().filter(|m| m & (1 << fa) == 0);
        for (slot, ma) in tris.iter_mut().zip(on_facet) {
            let tri: Vec<usize> = (0..5).filter(|&v| ma & (1 << v) != 0).collect();
            let img = [p.apply(tri[0]), p.apply(tri[1]), p.apply(tri[2])];
            let mut sorted = img;
            sorted.sort_unstable();
            let mut rel = [0u8; 3];
            for x in 0..3 {
                rel[x] = sorted.iter().position(|&v| v == img[x]).unwrap() as u8;
            }
            let mb = p.apply_mask(ma);
            *slot = (triangle_index(ma) as u8, triangle_index(mb) as u8, Perm3::from_images_unchecked(rel));
        }
        Effect { edges, tris }
    }
}

pub(crate) struct Stats {
    pub nodes: u64,
    pub leaves: u64,
}

/// Depth-first search over the gluing permutations of one dual graph.
/// `emit` receives every complete, orientable gluing whose edges and
/// triangles are all valid (or every complete gluing when `prune` is off).
pub(crate) struct GluingSearch<'a, F: FnMut(Triangulation4)> {
    n: usize,
    arcs: &'a [Arc],
    prune: bool,
    sign: Vec<i32>,
    chosen: Vec<Perm5>,
    edges: PotentialUf<bool>,
    tris: PotentialUf<Perm3>,
    // Per (fa, fb): permutations sending fa to fb, with their index into
    // `effects`.
    candidates: Vec<Vec<(Perm5, usize)>>,
    effects: Vec<Effect>,
    tri_index: [usize; 32],
    table: PermTable,
    autos: Vec<Vec<ArcImage>>,
    chosen_idx: Vec<u8>,
    emit: F,
    pub stats: Stats,
}

impl<'a, F: FnMut(Triangulation4)> GluingSearch<'a, F> {
    pub(crate) fn new(n: usize, arcs: &'a [Arc], prune: bool, emit: F) -> Self {
        let all = Perm5::all();
        let mut candidates = vec![Vec::new(); 25];
        let mut effects = Vec::with_capacity(5 * all.len());
        for fa in 0..5 {
            for p in &all {
                candidates[fa * 5 + p.apply(fa)].push((*p, effects.len()));
                effects.push(Effect::new(fa, *p));
            }
        }
        let mut tri_index = [usize::MAX; 32];
        for m in crate::perm::subsets(5, 3) {
            tri_index[m as usize] = triangle_index(m);
        }
        GluingSearch {
            n,
            arcs,
            prune,
            sign: vec![0; n],
            chosen: vec![Perm5::identity(); arcs.len()],
            edges: PotentialUf::new(10 * n, 3),
            tris: PotentialUf::new(10 * n, 0),
            candidates,
            effects,
            tri_index,
            table: PermTable::new(),
            autos: if prune { pairing_automorphisms(n, arcs) } else { Vec::new() },
            chosen_idx: vec![0; arcs.len()],
            emit,
            stats: Stats { nodes: 0, leaves: 0 },
        }
    }

    /// Runs the search with the first arc restricted to candidates whose
    /// index satisfies `first` (used to split work).
    pub(crate) fn run(&mut self, first: impl Fn(usize) -> bool) {
        self.sign[self.arcs[0].a] = 1;
        self.step(0, &first);
    }

    /// Number of choices for the first arc.
    pub(crate) fn first_choices(arcs: &[Arc]) -> usize {
        let a = arcs[0];
        if a.a == a.b {
            12
        } else {
            24
        }
    }

    fn step(&mut self, i: usize, first: &dyn Fn(usize) -> bool) {
        self.stats.nodes += 1;
        if i == self.arcs.len() {
            self.leaf();
            return;
        }
        let arc = self.arcs[i];
        let sa = self.sign[arc.a];
        let sb = self.sign[arc.b];
        let key = arc.fa * 5 + arc.fb;
        let mut k = 0;
        for ci in 0..self.candidates[key].len() {
            let (p, fx) = self.candidates[key][ci];
            // Orientation: sign(p) = -sa * sb.
            if sb != 0 && p.sign() != -sa * sb {
                continue;
            }
            let idx = k;
            k += 1;
            if i == 0 && !first(idx) {
                continue;
            }
            let set_sign = sb == 0;
            if set_sign {
                self.sign[arc.b] = -sa * p.sign();
            }
            let (me, mt) = (self.edges.mark(), self.tris.mark());
            if !self.prune || self.glue(arc, fx) {
                self.chosen[i] = p;
                self.chosen_idx[i] = (fx % 120) as u8;
                if self.is_minimal(i + 1) {
                    self.step(i + 1, first);
                }
            }
            self.edges.rollback(me);
            self.tris.rollback(mt);
            if set_sign {
                self.sign[arc.b] = 0;
            }
        }
    }

    fn glue(&mut self, arc: Arc, fx: usize) -> bool {
        let (s, t) = (10 * arc.a as u32, 10 * arc.b as u32);
        let fx = &self.effects[fx];
        for &(a, b, flip) in &fx.edges {
            if !self.edges.unite(s + a as u32, t + b as u32, flip) {
                return false;
            }
        }
        for &(a, b, rel) in &fx.tris {
            if !self.tris.unite(s + a as u32, t + b as u32, rel) {
                return false;
            }
        }
        // Both glued facets contain each of the six edges once.
        for &(a, _, _) in &fx.edges {
            if self.edges.add(s + a as u32, -2) == 0 && !self.edge_link_is_sphere(s + a as u32) {
                return false;
            }
        }
        true
    }

    /// Whether no automorphism of the facet pairing is already known to
    /// map the first `assigned` gluings to a lexicographically smaller
    /// sequence. Complete gluings that pass are the least in their orbit,
    /// so every isomorphism class still has a representative.
    fn is_minimal(&self, assigned: usize) -> bool {
        let t = &self.table;
        for img in &self.autos {
            for (j, a) in img.iter().enumerate() {
                if a.src as usize >= assigned || j >= assigned {
                    break;
                }
                let p = self.chosen_idx[a.src as usize] as usize;
                let mut q = t.compose[t.compose[a.left as usize][p] as usize][a.right as usize];
                if a.flip {
                    q = t.inverse[q as usize];
                }
                let mine = self.chosen_idx[j];
                if q < mine {
                    return false;
                }
                if q > mine {
                    break;
                }
            }
        }
        true
    }

    /// For an edge class whose every surrounding facet is glued: its link
    /// is a closed surface with one triangle per embedding, and it must be
    /// a 2-sphere.
    fn edge_link_is_sphere(&self, e: u32) -> bool {
        let (root, _) = self.edges.find(e);
        let faces = self.edges.size_of(root) as usize;
        let mut corners: Vec<(u32, u8)> = Vec::with_capacity(3 * faces);
        for m in self.edges.members(root) {
            let s = m as usize / 10;
            let (i, j) = EDGES[m as usize % 10];
            for k in (0..5).filter(|&k| k != i && k != j) {
                let mask = (1u8 << i) | (1 << j) | (1 << k);
                let tri = (10 * s + self.tri_index[mask as usize]) as u32;
                let (r, pot) = self.tris.find(tri);
                let pos = [i, j, k].iter().filter(|&&x| x < k).count();
                corners.push((r, pot.apply(pos) as u8));
            }
        }
        corners.sort_unstable();
        corners.dedup();
        // V - E + F with E = 3F/2.
        2 * corners.len() == 4 + faces
    }

    fn leaf(&mut self) {
        self.stats.leaves += 1;
        let mut t = Triangulation4::with_size(self.n);
        for (arc, p) in self.arcs.iter().zip(&self.chosen) {
            if t.join(arc.a, arc.fa, arc.b, *p).is_err() {
                return;
            }
        }
        (self.emit)(t);
    }
}
