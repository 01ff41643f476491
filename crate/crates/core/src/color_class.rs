//! Color classes: vertex-edge graphs of slices with cube vertices colored
//! white and edge crossings colored black, up to color-preserving
//! isomorphism. Enumerated from realizable `{+, 0, -}` labelings of the cube
//! graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::bits::Bits;
use crate::canon::{canonical_form, to_hex, LabeledGraph};
use crate::cube::{CubeSpec, VertexGroup, VertexSet};
use crate::linalg::{int, RationalVector};
use crate::lp::{strict_feasible, ConstraintSystem};
use crate::slice::{build_slice, Hyperplane, Slice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Minus,
    Zero,
    Plus,
}

impl Label {
    pub fn from_sign(s: i8) -> Self {
        match s.signum() {
            -1 => Label::Minus,
            0 => Label::Zero,
            _ => Label::Plus,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Label::Minus => -1,
            Label::Zero => 0,
            Label::Plus => 1,
        }
    }

    pub fn swapped(self) -> Self {
        Label::from_sign(-self.sign())
    }

    fn symbol(self) -> char {
        match self {
            Label::Minus => '-',
            Label::Zero => '0',
            Label::Plus => '+',
        }
    }
}

/// A `{+, 0, -}` label for every vertex of `C_d`, indexed like the cube's
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling {
    d: usize,
    labels: Vec<Label>,
}

impl Labeling {
    pub fn new(d: usize, labels: Vec<Label>) -> Self {
        assert_eq!(labels.len(), 1 << d, "one label per cube vertex");
        Self { d, labels }
    }

    pub fn from_signs(d: usize, signs: &[i8]) -> Self {
        Self::new(d, signs.iter().map(|&s| Label::from_sign(s)).collect())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn get(&self, v: usize) -> Label {
        self.labels[v]
    }

    pub fn side(&self, l: Label) -> Vec<usize> {
        (0..self.labels.len()).filter(|&v| self.labels[v] == l).collect()
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.labels.iter().try_for_each(|l| write!(f, "{}", l.symbol()))
    }
}

fn neighbors(d: usize, v: usize) -> impl Iterator<Item = usize> {
    (0..d).map(move |j| v ^ (1 << j))
}

/// Whether the vertices in `set` induce a connected subgraph of the cube
/// graph (the empty set counts as connected).
pub fn is_connected(d: usize, set: &[usize]) -> bool {
    let Some(&first) = set.first() else {
        return true;
    };
    let members: BTreeSet<usize> = set.iter().copied().collect();
    let mut seen = BTreeSet::from([first]);
    let mut stack = vec![first];
    while let Some(v) = stack.pop() {
        for u in neighbors(d, v) {
            if members.contains(&u) && seen.insert(u) {
                stack.push(u);
            }
        }
    }
    seen.len() == members.len()
}

/// All 4-cycles of the cube graph, each in cyclic order.
pub fn cube_squares(d: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let (a, b) = (1 << i, 1 << j);
            for v in 0..1usize << d {
                if v & (a | b) == 0 {
                    out.push([v, v | a, v | a | b, v | b]);
                }
            }
        }
    }
    out
}

/// A set of square labelings closed under the dihedral symmetries of the
/// 4-cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenSquares {
    patterns: BTreeSet<[Label; 4]>,
}

impl ForbiddenSquares {
    fn from_patterns(base: &[[Label; 4]]) -> Self {
        let mut patterns = BTreeSet::new();
        for p in base {
            for r in 0..4 {
                let rot = [p[r], p[(r + 1) % 4], p[(r + 2) % 4], p[(r + 3) % 4]];
                patterns.insert(rot);
                patterns.insert([rot[3], rot[2], rot[1], rot[0]]);
            }
        }
        Self { patterns }
    }

    /// The three patterns `+0+0`, `000+` and `-+-+` of the classical list.
    pub fn classical() -> Self {
        use Label::*;
        Self::from_patterns(&[
            [Plus, Zero, Plus, Zero],
            [Zero, Zero, Zero, Plus],
            [Minus, Plus, Minus, Plus],
        ])
    }

    /// The classical patterns together with `-0-0` and `000-`.
    pub fn with_sign_swaps() -> Self {
        use Label::*;
        Self::from_patterns(&[
            [Plus, Zero, Plus, Zero],
            [Zero, Zero, Zero, Plus],
            [Minus, Plus, Minus, Plus],
            [Minus, Zero, Minus, Zero],
            [Zero, Zero, Zero, Minus],
        ])
    }

    pub fn contains(&self, p: &[Label; 4]) -> bool {
        self.patterns.contains(p)
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Whether no square of the cube carries a forbidden pattern.
    pub fn passes(&self, l: &Labeling, squares: &[[usize; 4]]) -> bool {
        squares
            .iter()
            .all(|sq| !self.contains(&sq.map(|v| l.get(v))))
    }
}

/// `f(a) + f(c) = f(b) + f(d)` holds for every affine `f` on a square, so a
/// square labeling is realizable iff some reals with those signs satisfy it.
pub fn square_is_realizable(p: &[Label; 4]) -> bool {
    let s = p.map(Label::sign);
    let (lhs, rhs) = ([s[0], s[2]], [s[1], s[3]]);
    // the sign of a sum of two numbers with signs x, y; None when either
    // sign is possible
    let sum = |x: i8, y: i8| -> Option<i8> {
        if x == 0 || y == 0 || x == y {
            Some(x + y)
        } else {
            None
        }
    };
    match (sum(lhs[0], lhs[1]), sum(rhs[0], rhs[1])) {
        (Some(a), Some(b)) => a.signum() == b.signum(),
        _ => true,
    }
}

/// Necessary conditions for realizability: both strict sides induce
/// connected subgraphs, every `0` is adjacent to a `+` unless there is no
/// `+` at all, and no square is forbidden.
pub fn satisfies_combinatorial_conditions(l: &Labeling, forbidden: &ForbiddenSquares) -> bool {
    let d = l.d();
    let plus = l.side(Label::Plus);
    let zeros_ok = plus.is_empty()
        || l
            .side(Label::Zero)
            .iter()
            .all(|&v| neighbors(d, v).any(|u| l.get(u) == Label::Plus));
    is_connected(d, &plus)
        && is_connected(d, &l.side(Label::Minus))
        && zeros_ok
        && forbidden.passes(l, &cube_squares(d))
}

/// Cone of hyperplanes `(w, a)` realizing a labeling: `<v, w> + a` vanishes
/// on the zeros and has the prescribed sign elsewhere.
fn labeling_system(cube: &CubeSpec, labels: impl Iterator<Item = (usize, Label)>) -> ConstraintSystem {
    let mut sys = ConstraintSystem::new(cube.d() + 1);
    for (v, l) in labels {
        // affine vertices carry the height coordinate already
        let row = RationalVector::from_ints(&cube.vertex(v));
        match l {
            Label::Zero => sys.push_equality(row),
            Label::Plus => sys.push_strict(row),
            Label::Minus => sys.push_strict(row.neg()),
        }
    }
    sys
}

/// Hyperplane `<w, x> + a = 0` realizing `l`, if the cone of realizing
/// hyperplanes has nonempty relative interior.
pub fn realizable(l: &Labeling) -> Option<Hyperplane> {
    let cube = CubeSpec::affine(l.d());
    let sys = labeling_system(&cube, l.labels().iter().copied().enumerate());
    let x = strict_feasible(&sys).into_witness()?;
    let e = x.into_entries();
    let a = -e[l.d()].clone();
    Hyperplane::new(RationalVector::new(e[..l.d()].to_vec()), a)
}

/// Vertex-edge graph of a slice with its coloring (`true` = white, a cube
/// vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    adjacency: Vec<Bits>,
    white: Vec<bool>,
}

impl ColoredGraph {
    pub fn new(n: usize, edges: &[(usize, usize)], white: Vec<bool>) -> Self {
        assert_eq!(white.len(), n);
        let mut adjacency = vec![Bits::new(); n];
        for &(a, b) in edges {
            adjacency[a].insert(b);
            adjacency[b].insert(a);
        }
        Self { adjacency, white }
    }

    pub fn len(&self) -> usize {
        self.white.len()
    }

    pub fn is_empty(&self) -> bool {
        self.white.is_empty()
    }

    pub fn is_white(&self, v: usize) -> bool {
        self.white[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, nb) in self.adjacency.iter().enumerate() {
            out.extend(nb.iter().filter(|&b| b > a).map(|b| (a, b)));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = Bits::from_indices([0]);
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for u in self.adjacency[v].iter() {
                if !seen.contains(u) {
                    seen.insert(u);
                    stack.push(u);
                }
            }
        }
        seen.len() == self.len()
    }

    /// Color bits, `1` for white.
    pub fn color_string(&self) -> String {
        self.white.iter().map(|&w| if w { '1' } else { '0' }).collect()
    }

    fn labeled(&self, with_colors: bool) -> LabeledGraph {
        let colors = self
            .white
            .iter()
            .map(|&w| u32::from(with_colors && !w))
            .collect();
        let mut g = LabeledGraph::new(colors);
        for (a, b) in self.edges() {
            g.add_edge(a, b);
        }
        g
    }
}

pub fn colored_graph(s: &Slice) -> ColoredGraph {
    ColoredGraph::new(s.num_vertices(), &s.graph_edges(), s.is_cube_vertex())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorClassKey(Vec<u8>);

impl fmt::Display for ColorClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_hex(&self.0))
    }
}

pub fn colored_canonical_key(g: &ColoredGraph) -> ColorClassKey {
    ColorClassKey(canonical_form(&g.labeled(true)))
}

/// Canonical form of the graph with colors forgotten.
pub fn uncolored_canonical_key(g: &ColoredGraph) -> ColorClassKey {
    ColorClassKey(canonical_form(&g.labeled(false)))
}

#[derive(Debug, Clone)]
pub struct ColorClass {
    pub key: ColorClassKey,
    pub graph: ColoredGraph,
    pub slice: Slice,
    pub labeling: Labeling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorClassOptions {
    /// Prune with [`ForbiddenSquares::with_sign_swaps`]. Never changes the
    /// output; the cone check alone decides realizability.
    pub square_filter: bool,
}

impl Default for ColorClassOptions {
    fn default() -> Self {
        Self {
            square_filter: true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ColorClassStats {
    /// Orbits of candidate `+` sides.
    pub plus_sides: usize,
    /// Labelings reaching the final cone check.
    pub cone_checks: usize,
    /// Branches cut by the square filter.
    pub square_rejections: usize,
    pub realizable: usize,
}

/// Orbit representatives of the vertex sets that can be the `+` side of a
/// realizable labeling with at most half the vertices on it: sets cut off
/// by a hyperplane. Every such set of size `m + 1` extends one of size `m`
/// by a neighbor, so they are grown level by level.
pub fn plus_sides(d: usize) -> Vec<VertexSet> {
    let cube = CubeSpec::affine(d);
    let group = VertexGroup::new(d);
    let n = cube.num_vertices();
    let mut out = Vec::new();
    let mut level = vec![VertexSet::from_indices([0])];
    while !level.is_empty() {
        out.extend(level.iter().copied());
        if level[0].len() == n / 2 {
            break;
        }
        let mut next = BTreeSet::new();
        for s in &level {
            for v in s.iter() {
                for u in neighbors(d, v) {
                    if s.contains(u) {
                        continue;
                    }
                    let mut t = *s;
                    t.insert(u);
                    let c = group.canonical(t);
                    if next.contains(&c) {
                        continue;
                    }
                    let labels = (0..n).map(|x| {
                        (x, if c.contains(x) { Label::Plus } else { Label::Minus })
                    });
                    if strict_feasible(&labeling_system(&cube, labels)).is_feasible() {
                        next.insert(c);
                    }
                }
            }
        }
        level = next.into_iter().collect();
    }
    out
}

struct Search<'a> {
    cube: CubeSpec,
    squares: Vec<[usize; 4]>,
    /// squares through each vertex
    squares_at: Vec<Vec<usize>>,
    forbidden: Option<&'a ForbiddenSquares>,
    stats: ColorClassStats,
    found: Vec<Labeling>,
}

impl Search<'_> {
    fn feasible(&self, labels: &[Option<Label>]) -> bool {
        let sys = labeling_system(
            &self.cube,
            labels
                .iter()
                .enumerate()
                .filter_map(|(v, l)| l.map(|l| (v, l))),
        );
        strict_feasible(&sys).is_feasible()
    }

    fn squares_ok(&self, labels: &[Option<Label>], v: usize) -> bool {
        let Some(f) = self.forbidden else { return true };
        self.squares_at[v].iter().all(|&i| {
            let sq = self.squares[i];
            match (labels[sq[0]], labels[sq[1]], labels[sq[2]], labels[sq[3]]) {
                (Some(a), Some(b), Some(c), Some(e)) => !f.contains(&[a, b, c, e]),
                _ => true,
            }
        })
    }

    /// Assign `-` or `0` to `boundary[i..]`, pruning with the square filter
    /// and with feasibility of the partial cone.
    fn extend(&mut self, labels: &mut Vec<Option<Label>>, boundary: &[usize], i: usize) {
        if i == boundary.len() {
            self.stats.cone_checks += 1;
            let l = Labeling::new(
                self.cube.d(),
                labels.iter().map(|l| l.expect("complete")).collect(),
            );
            if realizable(&l).is_some() {
                self.stats.realizable += 1;
                self.found.push(l);
            }
            return;
        }
        let v = boundary[i];
        for choice in [Label::Minus, Label::Zero] {
            labels[v] = Some(choice);
            if !self.squares_ok(labels, v) {
                self.stats.square_rejections += 1;
                continue;
            }
            if i + 1 < boundary.len() && !self.feasible(labels) {
                continue;
            }
            self.extend(labels, boundary, i + 1);
        }
        labels[v] = None;
    }
}

/// All realizable labelings produced by the graph search, one `+` side per
/// symmetry orbit, plus the facet labeling.
pub fn realizable_labelings(d: usize, opts: ColorClassOptions) -> (Vec<Labeling>, ColorClassStats) {
    let cube = CubeSpec::affine(d);
    let n = cube.num_vertices();
    let squares = cube_squares(d);
    let mut squares_at = vec![Vec::new(); n];
    for (i, sq) in squares.iter().enumerate() {
        for &v in sq {
            squares_at[v].push(i);
        }
    }
    let forbidden = ForbiddenSquares::with_sign_swaps();
    let mut search = Search {
        cube,
        squares,
        squares_at,
        forbidden: opts.square_filter.then_some(&forbidden),
        stats: ColorClassStats::default(),
        found: Vec::new(),
    };
    let sides = plus_sides(d);
    search.stats.plus_sides = sides.len();
    for s in sides {
        let boundary: Vec<usize> = (0..n)
            .filter(|&v| !s.contains(v) && neighbors(d, v).any(|u| s.contains(u)))
            .collect();
        let mut labels: Vec<Option<Label>> = (0..n)
            .map(|v| {
                if s.contains(v) {
                    Some(Label::Plus)
                } else if boundary.contains(&v) {
                    None
                } else {
                    Some(Label::Minus)
                }
            })
            .collect();
        search.extend(&mut labels, &boundary, 0);
    }
    // the supporting hyperplane of a facet: no `+` side at all
    let facet: Vec<Label> = (0..n)
        .map(|v| if v & 1 == 1 { Label::Zero } else { Label::Minus })
        .collect();
    let facet = Labeling::new(d, facet);
    if realizable(&facet).is_some() {
        search.stats.realizable += 1;
        search.found.push(facet);
    }
    (search.found, search.stats)
}

/// One representative per color class of slices of `C_d`, sorted by vertex
/// count and then key.
pub fn enumerate_color_classes(d: usize, opts: ColorClassOptions) -> (Vec<ColorClass>, ColorClassStats) {
    let cube = CubeSpec::affine(d);
    let (labelings, stats) = realizable_labelings(d, opts);
    let mut classes: BTreeMap<(usize, ColorClassKey), ColorClass> = BTreeMap::new();
    for l in labelings {
        let h = realizable(&l).expect("labeling was accepted");
        let Some(slice) = build_slice(&cube, &h) else { continue };
        let graph = colored_graph(&slice);
        let key = colored_canonical_key(&graph);
        classes
            .entry((graph.len(), key.clone()))
            .or_insert(ColorClass {
                key,
                graph,
                slice,
                labeling: l,
            });
    }
    (classes.into_values().collect(), stats)
}

/// The labeling of `C_3` that passes the classical necessary conditions but
/// is not realizable: zeros at `(1,1,-1)`, `(-1,-1,1)`, `(-1,1,1)`, all
/// other vertices `-`.
pub fn three_zero_counterexample() -> Labeling {
    let zeros = [[1, 1, -1], [-1, -1, 1], [-1, 1, 1]].map(|c| crate::cube::vertex_index(&c));
    Labeling::new(
        3,
        (0..8)
            .map(|v| if zeros.contains(&v) { Label::Zero } else { Label::Minus })
            .collect(),
    )
}

/// Hyperplane `<w, x> = a` from integer data, for examples and tests.
pub fn hyperplane(w: &[i64], a: i64) -> Hyperplane {
    Hyperplane::new(RationalVector::from_ints(w), int(a)).expect("nonzero normal")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph_of(w: &[i64], a: i64) -> ColoredGraph {
        colored_graph(&build_slice(&CubeSpec::affine(w.len()), &hyperplane(w, a)).unwrap())
    }

    #[test]
    fn polygon_colorings() {
        let hex = graph_of(&[1, 1, 1], 0);
        assert_eq!(hex.len(), 6);
        assert!((0..6).all(|v| !hex.is_white(v) && hex.degree(v) == 2));
        let tri = graph_of(&[1, 1, 1], 2);
        assert_eq!(tri.edges().len(), 3);
        // through exactly the vertex (-1,1,1)
        let pent = graph_of(&[3, 2, 2], 1);
        assert_eq!(pent.len(), 5);
        assert_eq!((0..5).filter(|&v| pent.is_white(v)).count(), 1);
    }

    #[test]
    fn squares_distinguished_by_color() {
        let black = graph_of(&[0, 0, 1], 0);
        let white = graph_of(&[0, 0, 1], 1);
        assert_eq!(white.color_string(), "1111");
        assert_ne!(colored_canonical_key(&black), colored_canonical_key(&white));
        assert_eq!(uncolored_canonical_key(&black), uncolored_canonical_key(&white));
    }

    #[test]
    fn forbidden_squares_are_unrealizable() {
        let f = ForbiddenSquares::with_sign_swaps();
        use Label::*;
        assert!(f.contains(&[Plus, Zero, Plus, Zero]));
        assert!(f.contains(&[Zero, Plus, Zero, Zero]));
        assert!(!f.contains(&[Minus; 4]));
        let all = [Minus, Zero, Plus];
        for a in all {
            for b in all {
                for c in all {
                    for e in all {
                        let p = [a, b, c, e];
                        if f.contains(&p) {
                            assert!(!square_is_realizable(&p), "{p:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn counterexample_passes_conditions_but_not_the_cone() {
        let l = three_zero_counterexample();
        assert!(satisfies_combinatorial_conditions(&l, &ForbiddenSquares::classical()));
        assert!(realizable(&l).is_none());
    }

    #[test]
    fn facet_and_corner_labelings() {
        let facet = Labeling::from_signs(3, &[-1, 0, -1, 0, -1, 0, -1, 0]);
        assert!(realizable(&facet).is_some());
        let mut corner = vec![-1i8; 8];
        corner[7] = 1;
        assert!(realizable(&Labeling::from_signs(3, &corner)).is_some());
    }

    #[test]
    fn twelve_classes_in_dimension_three() {
        let (classes, _) = enumerate_color_classes(3, ColorClassOptions::default());
        assert_eq!(classes.len(), 12);
    }
}
