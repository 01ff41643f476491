//! Canonical forms of vertex-colored graphs by color refinement and
//! individualization, with the lexicographically least certificate over
//! the search tree.
//!
//! A leaf is ranked by the sequence of node invariants along its path and
//! then by its relabeled adjacency; branches whose invariant prefix already
//! loses to the best leaf are cut, and automorphisms found from equal
//! leaves prune sibling branches in the same orbit.

use crate::bits::Bits;

/// Simple undirected graph with an initial color per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    colors: Vec<u32>,
    adj: Vec<Bits>,
}

impl LabeledGraph {
    pub fn new(colors: Vec<u32>) -> Self {
        assert!(colors.len() <= Bits::CAPACITY, "graph too large");
        let n = colors.len();
        Self {
            colors,
            adj: vec![Bits::new(); n],
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert_ne!(a, b, "loops are not supported");
        self.adj[a].insert(b);
        self.adj[b].insert(a);
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn neighbors(&self, v: usize) -> &Bits {
        &self.adj[v]
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut colors = vec![0; self.len()];
        for (v, &p) in perm.iter().enumerate() {
            colors[p] = self.colors[v];
        }
        let mut g = Self::new(colors);
        for v in 0..self.len() {
            for u in self.adj[v].iter().filter(|&u| u > v) {
                g.add_edge(perm[v], perm[u]);
            }
        }
        g
    }
}

/// Canonical certificate: the graph relabeled by a canonical labeling,
/// encoded as bytes (vertex count, colors, upper-triangle adjacency bits).
pub fn canonical_form(g: &LabeledGraph) -> Vec<u8> {
    let lab = canonical_labeling(g);
    encode(g, &lab)
}

/// `lab[i]` is the vertex placed at position `i`.
pub fn canonical_labeling(g: &LabeledGraph) -> Vec<usize> {
    let n = g.len();
    if n == 0 {
        return Vec::new();
    }
    // initial ordered partition by color value
    let mut palette: Vec<u32> = g.colors.clone();
    palette.sort_unstable();
    palette.dedup();
    let cells: Vec<u32> = g
        .colors
        .iter()
        .map(|c| palette.binary_search(c).unwrap() as u32)
        .collect();
    let mut search = Search {
        g,
        best: None,
        first: None,
        autos: Vec::new(),
    };
    search.node(cells, Vec::new(), Vec::new());
    search.best.expect("search reaches a leaf").lab
}

fn encode(g: &LabeledGraph, lab: &[usize]) -> Vec<u8> {
    let n = g.len();
    let mut out = Vec::with_capacity(4 + 4 * n + n * n / 16 + 1);
    out.extend_from_slice(&(n as u32).to_be_bytes());
    for &v in lab {
        out.extend_from_slice(&g.colors[v].to_be_bytes());
    }
    for word in cert_words(g, lab) {
        out.extend_from_slice(&word.to_be_bytes());
    }
    out
}

/// Upper-triangle adjacency of the relabeled graph, packed row by row.
fn cert_words(g: &LabeledGraph, lab: &[usize]) -> Vec<u64> {
    let n = lab.len();
    let mut words = vec![0u64; (n * n.saturating_sub(1) / 2).div_ceil(64)];
    let mut bit = 0usize;
    for i in 0..n {
        let row = &g.adj[lab[i]];
        for &vj in &lab[i + 1..] {
            if row.contains(vj) {
                words[bit / 64] |= 1 << (63 - bit % 64);
            }
            bit += 1;
        }
    }
    words
}

struct Leaf {
    inv: Vec<u64>,
    cert: Vec<u64>,
    lab: Vec<usize>,
}

struct Search<'a> {
    g: &'a LabeledGraph,
    best: Option<Leaf>,
    first: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

fn fnv(h: u64, x: u64) -> u64 {
    let mut h = h;
    for b in x.to_le_bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    h
}

impl Search<'_> {
    /// Iterated 1-dimensional refinement of an ordered partition (cell
    /// ordinals per vertex); returns an isomorphism-invariant summary.
    fn refine(&self, cells: &mut [u32]) -> u64 {
        let n = cells.len();
        let mut order: Vec<usize> = (0..n).collect();
        let mut sigs: Vec<Vec<u32>> = vec![Vec::new(); n];
        loop {
            let before = cells.iter().max().map_or(0, |&m| m + 1);
            for v in 0..n {
                let s = &mut sigs[v];
                s.clear();
                s.push(cells[v]);
                s.extend(self.g.adj[v].iter().map(|u| cells[u]));
                s[1..].sort_unstable();
            }
            order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
            let mut next = 0u32;
            let mut new_cells = vec![0u32; n];
            for (i, &v) in order.iter().enumerate() {
                if i > 0 && sigs[v] != sigs[order[i - 1]] {
                    next += 1;
                }
                new_cells[v] = next;
            }
            cells.copy_from_slice(&new_cells);
            if next + 1 == before {
                break;
            }
        }
        let mut h = 0xcbf2_9ce4_8422_2325u64;
        for (i, &v) in order.iter().enumerate() {
            if i == 0 || sigs[v] != sigs[order[i - 1]] {
                h = fnv(h, sigs[v].len() as u64);
                for &x in &sigs[v] {
                    h = fnv(h, u64::from(x));
                }
            } else {
                h = fnv(h, u64::MAX);
            }
        }
        h
    }

    fn node(&mut self, mut cells: Vec<u32>, prefix: Vec<usize>, mut inv: Vec<u64>) {
        inv.push(self.refine(&mut cells));
        if let Some(best) = &self.best {
            let l = inv.len().min(best.inv.len());
            if inv[..l] > best.inv[..l] {
                return;
            }
        }
        let n = cells.len();
        let num_cells = cells.iter().max().map_or(0, |&m| m as usize + 1);
        if num_cells == n {
            self.leaf(&cells, inv);
            return;
        }
        let mut sizes = vec![0usize; num_cells];
        for &c in &cells {
            sizes[c as usize] += 1;
        }
        let target = (0..num_cells)
            .filter(|&c| sizes[c] > 1)
            .min_by_key(|&c| (sizes[c], c))
            .unwrap() as u32;
        let members: Vec<usize> = (0..n).filter(|&v| cells[v] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &members {
            if !explored.is_empty() && self.same_orbit(&prefix, &explored, v) {
                continue;
            }
            explored.push(v);
            let child: Vec<u32> = cells
                .iter()
                .enumerate()
                .map(|(u, &c)| {
                    if c > target || (c == target && u != v) {
                        c + 1
                    } else {
                        c
                    }
                })
                .collect();
            let mut p = prefix.clone();
            p.push(v);
            self.node(child, p, inv.clone());
        }
    }

    /// Whether `v` is in the orbit of an explored vertex under the known
    /// automorphisms that fix `prefix` pointwise.
    fn same_orbit(&self, prefix: &[usize], explored: &[usize], v: usize) -> bool {
        let gens: Vec<&Vec<usize>> = self
            .autos
            .iter()
            .filter(|g| prefix.iter().all(|&p| g[p] == p))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let n = self.g.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for g in gens {
            for (a, &b) in g.iter().enumerate() {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == rv)
    }

    fn leaf(&mut self, cells: &[u32], inv: Vec<u64>) {
        let n = cells.len();
        let mut lab = vec![0usize; n];
        for (v, &c) in cells.iter().enumerate() {
            lab[c as usize] = v;
        }
        let cert = cert_words(self.g, &lab);
        let leaf = Leaf { inv, cert, lab };
        for other in [&self.first, &self.best].into_iter().flatten() {
            if other.cert == leaf.cert && other.lab != leaf.lab {
                // other.lab[i] and leaf.lab[i] play the same role
                let mut gamma = vec![0usize; n];
                for i in 0..n {
                    gamma[leaf.lab[i]] = other.lab[i];
                }
                self.autos.push(gamma);
                break;
            }
        }
        if self.first.is_none() {
            self.first = Some(Leaf {
                inv: leaf.inv.clone(),
                cert: leaf.cert.clone(),
                lab: leaf.lab.clone(),
            });
        }
        let better = match &self.best {
            None => true,
            Some(b) => (&leaf.inv, &leaf.cert) < (&b.inv, &b.cert),
        };
        if better {
            self.best = Some(leaf);
        }
    }
}

/// Lowercase hex of a byte string.
pub fn to_hex(bytes: &[u8]) -> String {
    use std::fmt::Write;
    bytes.iter().fold(String::with_capacity(2 * bytes.len()), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cycle(n: usize) -> LabeledGraph {
        let mut g = LabeledGraph::new(vec![0; n]);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    fn hypercube_graph(d: usize) -> LabeledGraph {
        let mut g = LabeledGraph::new(vec![0; 1 << d]);
        for (a, b) in crate::cube::edges(d) {
            g.add_edge(a, b);
        }
        g
    }

    /// Brute force over all permutations for tiny graphs.
    fn brute_min(g: &LabeledGraph) -> Vec<u8> {
        crate::cube::permutations(g.len())
            .iter()
            .map(|p| encode(g, p))
            .min()
            .unwrap()
    }

    #[test]
    fn invariant_under_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [cycle(6), hypercube_graph(3), hypercube_graph(4)] {
            let key = canonical_form(&g);
            for _ in 0..20 {
                let mut perm: Vec<usize> = (0..g.len()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_form(&g.permuted(&perm)), key);
            }
        }
    }

    #[test]
    fn distinguishes_non_isomorphic_regular_graphs() {
        // C6 versus two triangles: same degree sequence, refinement alone
        // cannot split them
        let mut two = LabeledGraph::new(vec![0; 6]);
        for (a, b) in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)] {
            two.add_edge(a, b);
        }
        assert_ne!(canonical_form(&cycle(6)), canonical_form(&two));
    }

    #[test]
    fn colors_matter() {
        let mut a = cycle(4);
        a.colors[0] = 1;
        let mut b = cycle(4);
        b.colors[2] = 1;
        let mut c = cycle(4);
        c.colors[0] = 1;
        c.colors[1] = 1;
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_ne!(canonical_form(&a), canonical_form(&c));
        assert_ne!(canonical_form(&a), canonical_form(&cycle(4)));
    }

    #[test]
    fn equality_matches_brute_force_isomorphism() {
        // all graphs on 5 vertices with up to 4 edges from a fixed pool:
        // equal keys iff equal brute-force minimum encodings
        let pool: Vec<(usize, usize)> = (0..5)
            .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
            .collect();
        let mut graphs = Vec::new();
        for mask in 0u32..1 << pool.len() {
            if mask.count_ones() > 4 || mask % 7 != 0 {
                continue;
            }
            let mut g = LabeledGraph::new(vec![0; 5]);
            for (i, &(a, b)) in pool.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g.add_edge(a, b);
                }
            }
            graphs.push(g);
        }
        let keys: Vec<_> = graphs.iter().map(canonical_form).collect();
        let brute: Vec<_> = graphs.iter().map(brute_min).collect();
        for i in 0..graphs.len() {
            for j in 0..graphs.len() {
                assert_eq!(keys[i] == keys[j], brute[i] == brute[j]);
            }
        }
    }

    #[test]
    fn hex_is_lowercase() {
        assert_eq!(to_hex(&[0, 171, 16]), "00ab10");
    }
}
