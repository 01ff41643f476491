//! The cube `[-1,1]^d`, its symmetry group `B_d`, vertex-set orbits and the
//! restriction/lift machinery for flats of the vertex arrangement.
//!
//! Vertex `i` has coordinate `j` equal to `+1` iff bit `j` of `i` is set, so
//! vertex 0 is `(-1,...,-1)`. In affine mode each vertex gets a trailing
//! height coordinate `1`.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{int, Rational, RationalMatrix, RationalVector};

/// Largest supported dimension; vertex sets are 128-bit masks.
pub const MAX_DIM: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubeError {
    #[error("cube dimension {0} outside 1..={MAX_DIM}")]
    Dimension(usize),
    #[error("restricted column of vertex {0} is zero")]
    ZeroColumn(usize),
    #[error("restriction chain is inconsistent at step {0}")]
    InconsistentChain(usize),
    #[error("invalid signed permutation {0:?}")]
    Permutation(Vec<i32>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Central,
    Affine,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Central => "central",
            Mode::Affine => "affine",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubeSpec {
    d: usize,
    mode: Mode,
}

impl CubeSpec {
    pub fn new(d: usize, mode: Mode) -> Result<Self, CubeError> {
        if d == 0 || d > MAX_DIM {
            return Err(CubeError::Dimension(d));
        }
        Ok(Self { d, mode })
    }

    pub fn affine(d: usize) -> Self {
        Self::new(d, Mode::Affine).expect("dimension in range")
    }

    pub fn central(d: usize) -> Self {
        Self::new(d, Mode::Central).expect("dimension in range")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn ambient_dim(&self) -> usize {
        match self.mode {
            Mode::Central => self.d,
            Mode::Affine => self.d + 1,
        }
    }

    pub fn num_vertices(&self) -> usize {
        1 << self.d
    }

    /// Integer coordinates of vertex `i` in the ambient space of the mode.
    pub fn vertex(&self, i: usize) -> Vec<i64> {
        let mut v = cube_vertex(self.d, i);
        if self.mode == Mode::Affine {
            v.push(1);
        }
        v
    }

    pub fn vertex_vector(&self, i: usize) -> RationalVector {
        RationalVector::from_ints(&self.vertex(i))
    }

    /// The vertex matrix: one column per vertex in binary order.
    pub fn vertices(&self) -> RationalMatrix {
        let cols: Vec<RationalVector> = (0..self.num_vertices())
            .map(|i| self.vertex_vector(i))
            .collect();
        RationalMatrix::from_columns(self.ambient_dim(), &cols)
    }

    /// Index of the antipodal vertex `-v`.
    pub fn antipode(&self, i: usize) -> usize {
        !i & (self.num_vertices() - 1)
    }
}

/// Coordinates of vertex `i` of `C_d` (no height).
pub fn cube_vertex(d: usize, i: usize) -> Vec<i64> {
    (0..d).map(|j| if i >> j & 1 == 1 { 1 } else { -1 }).collect()
}

/// Index of the cube vertex with the given `±1` coordinates.
pub fn vertex_index(coords: &[i64]) -> usize {
    coords
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .fold(0, |acc, (j, _)| acc | 1 << j)
}

/// Edges as vertex pairs `(i, j)` with `i < j`, differing in one coordinate.
pub fn edges(d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(d << d.saturating_sub(1));
    for i in 0..1usize << d {
        for j in 0..d {
            if i >> j & 1 == 0 {
                out.push((i, i | 1 << j));
            }
        }
    }
    out
}

/// A cube facet `x_coord = sign`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub coord: usize,
    pub sign: i8,
}

impl Facet {
    pub fn contains_vertex(&self, i: usize) -> bool {
        (i >> self.coord & 1 == 1) == (self.sign > 0)
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign > 0 { '+' } else { '-' };
        write!(f, "F{s}{}", self.coord + 1)
    }
}

/// The `2d` facets, ordered `(1,-), (1,+), (2,-), ...`.
pub fn facets(d: usize) -> Vec<Facet> {
    (0..d)
        .flat_map(|coord| [-1, 1].map(|sign| Facet { coord, sign }))
        .collect()
}

/// Element of the hyperoctahedral group `B_d`: `images[i] = π(i+1)` with
/// values in `±1..±d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    images: Vec<i32>,
}

impl SignedPermutation {
    pub fn new(images: Vec<i32>) -> Result<Self, CubeError> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &x in &images {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > d || seen[a - 1] {
                return Err(CubeError::Permutation(images));
            }
            seen[a - 1] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            images: (1..=d as i32).collect(),
        }
    }

    pub fn from_parts(perm: &[usize], flips: usize) -> Self {
        Self {
            images: perm
                .iter()
                .enumerate()
                .map(|(i, &p)| {
                    let v = p as i32 + 1;
                    if flips >> i & 1 == 1 {
                        -v
                    } else {
                        v
                    }
                })
                .collect(),
        }
    }

    pub fn d(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    /// `π(v) = (v_π(1), ..., v_π(d))` with `v_{-i} = -v_i`; a trailing
    /// height coordinate is left fixed.
    pub fn act(&self, v: &RationalVector) -> RationalVector {
        let d = self.d();
        assert!(
            v.dim() == d || v.dim() == d + 1,
            "vector length does not match the group"
        );
        let mut out: Vec<Rational> = self
            .images
            .iter()
            .map(|&x| {
                let c = &v[x.unsigned_abs() as usize - 1];
                if x < 0 {
                    -c
                } else {
                    c.clone()
                }
            })
            .collect();
        if v.dim() == d + 1 {
            out.push(v[d].clone());
        }
        RationalVector::new(out)
    }

    pub fn act_ints(&self, v: &[i64]) -> Vec<i64> {
        let d = self.d();
        let mut out: Vec<i64> = self
            .images
            .iter()
            .map(|&x| {
                let c = v[x.unsigned_abs() as usize - 1];
                if x < 0 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        out.extend_from_slice(&v[d..]);
        out
    }

    /// Image of a vertex index.
    pub fn act_vertex(&self, i: usize) -> usize {
        let mut out = 0;
        for (k, &x) in self.images.iter().enumerate() {
            let bit = i >> (x.unsigned_abs() as usize - 1) & 1;
            let bit = if x < 0 { bit ^ 1 } else { bit };
            out |= bit << k;
        }
        out
    }

    pub fn compose(&self, other: &Self) -> Self {
        // (self ∘ other)(v) = self(other(v)); coordinate k of self(w) reads
        // w at images[k], and w = other(v) reads v at other.images[...]
        Self {
            images: self
                .images
                .iter()
                .map(|&x| {
                    let y = other.images[x.unsigned_abs() as usize - 1];
                    if x < 0 {
                        -y
                    } else {
                        y
                    }
                })
                .collect(),
        }
    }
}

/// All permutations of `0..d` in lexicographic order.
pub fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..d).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// Every element of `B_d`, `2^d d!` of them.
pub fn signed_permutations(d: usize) -> Vec<SignedPermutation> {
    let perms = permutations(d);
    let mut out = Vec::with_capacity(perms.len() << d);
    for p in &perms {
        for flips in 0..1usize << d {
            out.push(SignedPermutation::from_parts(p, flips));
        }
    }
    out
}

/// A set of cube vertices as a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(pub u128);

impl VertexSet {
    pub fn empty() -> Self {
        Self(0)
    }

    pub fn from_indices(it: impl IntoIterator<Item = usize>) -> Self {
        Self(it.into_iter().fold(0, |m, i| m | 1 << i))
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        })
    }

    pub fn union(&self, other: &Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0 & !other.0 == 0
    }
}

/// Orbit canonicalization of vertex sets under `B_d`.
///
/// The canonical member is the lexicographically smallest sorted index
/// list. Since the smallest member of any optimal image is vertex 0, only
/// the flips that send an element of the permuted set to 0 can win, so each
/// coordinate permutation is combined with `|S|` flip masks rather than
/// all `2^d`.
#[derive(Debug, Clone)]
pub struct VertexGroup {
    d: usize,
    /// `perm_tables[p][i]`: image of vertex `i` under the `p`-th coordinate
    /// permutation (no flips).
    perm_tables: Vec<Vec<u8>>,
}

impl VertexGroup {
    pub fn new(d: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&d));
        let perm_tables = permutations(d)
            .iter()
            .map(|p| {
                let g = SignedPermutation::from_parts(p, 0);
                (0..1usize << d).map(|i| g.act_vertex(i) as u8).collect()
            })
            .collect();
        Self { d, perm_tables }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.perm_tables.len() << self.d
    }

    /// Mask with vertex `i` stored at bit `127 - i`, so that comparing
    /// masks as integers reverses the lexicographic order of sorted lists
    /// of equal length.
    fn reversed(set_elems: impl Iterator<Item = usize>) -> u128 {
        set_elems.fold(0u128, |m, i| m | 1u128 << (127 - i))
    }

    /// Lexicographically smallest image of `s`.
    pub fn canonical(&self, s: VertexSet) -> VertexSet {
        if s.is_empty() {
            return s;
        }
        let elems: Vec<usize> = s.iter().collect();
        let mut best = 0u128;
        let mut image = Vec::with_capacity(elems.len());
        for table in &self.perm_tables {
            image.clear();
            image.extend(elems.iter().map(|&i| table[i] as usize));
            for &t in &image {
                let m = Self::reversed(image.iter().map(|&x| x ^ t));
                if m > best {
                    best = m;
                }
            }
        }
        VertexSet(best.reverse_bits())
    }

    /// Size of the set stabilizer of `s` in `B_d`.
    pub fn stabilizer_order(&self, s: VertexSet) -> usize {
        if s.is_empty() {
            return self.order();
        }
        let elems: Vec<usize> = s.iter().collect();
        let mut count = 0;
        for table in &self.perm_tables {
            let image: Vec<usize> = elems.iter().map(|&i| table[i] as usize).collect();
            // the flip must send table[first] to some element of s
            for target in s.iter() {
                let t = image[0] ^ target;
                if image.iter().all(|&x| s.contains(x ^ t)) {
                    count += 1;
                }
            }
        }
        count
    }
}

/// An ordered tuple of linearly independent cube vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexTuple {
    pub vertices: Vec<usize>,
    pub span_dim: usize,
}

impl VertexTuple {
    pub fn new(spec: &CubeSpec, vertices: Vec<usize>) -> Result<Self, CubeError> {
        let rank = vertex_rank(spec, &vertices);
        if rank != vertices.len() {
            let bad = vertices.last().copied().unwrap_or(0);
            return Err(CubeError::ZeroColumn(bad));
        }
        Ok(Self {
            span_dim: rank,
            vertices,
        })
    }

    pub fn as_set(&self) -> VertexSet {
        VertexSet::from_indices(self.vertices.iter().copied())
    }
}

/// Rank of the ambient vectors of the given vertices.
pub fn vertex_rank(spec: &CubeSpec, vertices: &[usize]) -> usize {
    let rows: Vec<Vec<i128>> = vertices
        .iter()
        .map(|&i| spec.vertex(i).into_iter().map(i128::from).collect())
        .collect();
    crate::linalg::bareiss::int_rank(&rows)
}

/// Span membership test against a fixed set of vertices: a vertex lies in
/// the span iff it is orthogonal to an integer basis of the complement.
#[derive(Debug, Clone)]
struct SpanTest {
    complement: Vec<Vec<i64>>,
}

impl SpanTest {
    fn new(spec: &CubeSpec, vertices: &[usize]) -> Self {
        let n = spec.ambient_dim();
        let rows: Vec<Vec<Rational>> = vertices
            .iter()
            .map(|&i| spec.vertex(i).into_iter().map(int).collect())
            .collect();
        let kernel = if rows.is_empty() {
            RationalMatrix::identity(n).columns()
        } else {
            RationalMatrix::from_rows(n, rows).kernel_basis()
        };
        let complement = kernel
            .iter()
            .map(|k| {
                k.primitive()
                    .iter()
                    .map(|x| i64::try_from(x).expect("small kernel entries"))
                    .collect()
            })
            .collect();
        Self { complement }
    }

    fn contains(&self, v: &[i64]) -> bool {
        self.complement
            .iter()
            .all(|k| k.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() == 0)
    }
}

/// All cube vertices in the linear span of `vertices`.
pub fn closure(spec: &CubeSpec, vertices: &[usize]) -> VertexSet {
    let test = SpanTest::new(spec, vertices);
    VertexSet::from_indices((0..spec.num_vertices()).filter(|&i| test.contains(&spec.vertex(i))))
}

/// Greedy lexicographic basis of a vertex set.
pub fn greedy_basis(spec: &CubeSpec, set: VertexSet) -> Vec<usize> {
    let mut basis = Vec::new();
    for i in set.iter() {
        basis.push(i);
        if vertex_rank(spec, &basis) < basis.len() {
            basis.pop();
        }
    }
    basis
}

/// One representative tuple per `B_d`-orbit of linearly independent vertex
/// sets of each size `1..=max_size`. Each representative is the
/// lexicographically smallest member of its orbit, listed in increasing
/// order.
pub fn orbit_reps_vertex_tuples(spec: &CubeSpec, max_size: usize) -> Vec<VertexTuple> {
    let group = VertexGroup::new(spec.d());
    let max_size = max_size.min(spec.ambient_dim());
    let mut out = Vec::new();
    let mut level = vec![VertexSet::empty()];
    for size in 1..=max_size {
        let mut next = std::collections::BTreeSet::new();
        for s in &level {
            let members: Vec<usize> = s.iter().collect();
            let test = SpanTest::new(spec, &members);
            for v in 0..spec.num_vertices() {
                if s.contains(v) || test.contains(&spec.vertex(v)) {
                    continue;
                }
                let mut t = *s;
                t.insert(v);
                next.insert(group.canonical(t));
            }
        }
        level = next.into_iter().collect();
        out.extend(level.iter().map(|s| VertexTuple {
            vertices: s.iter().collect(),
            span_dim: size,
        }));
    }
    out
}

/// A flat of the vertex arrangement, identified by the closed set of cube
/// vertices it is orthogonal to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    pub rank: usize,
    pub vertices: VertexSet,
    /// Lexicographically greedy basis, used for the restriction chain.
    pub basis: VertexTuple,
}

/// One representative per `B_d`-orbit of flats of rank `1..=max_rank`,
/// each the canonical (lexicographically smallest) closed vertex set.
pub fn flat_orbit_reps(spec: &CubeSpec, max_rank: usize) -> Vec<Flat> {
    let group = VertexGroup::new(spec.d());
    let max_rank = max_rank.min(spec.ambient_dim());
    let mut out = Vec::new();
    let mut level = vec![VertexSet::empty()];
    for rank in 1..=max_rank {
        let mut next = std::collections::BTreeSet::new();
        for s in &level {
            let basis = greedy_basis(spec, *s);
            let mut covered = *s;
            for v in 0..spec.num_vertices() {
                if covered.contains(v) {
                    continue;
                }
                let mut gens = basis.clone();
                gens.push(v);
                let c = closure(spec, &gens);
                covered = covered.union(&c);
                next.insert(group.canonical(c));
            }
        }
        level = next.into_iter().collect();
        out.extend(level.iter().map(|s| {
            let basis = greedy_basis(spec, *s);
            Flat {
                rank,
                vertices: *s,
                basis: VertexTuple {
                    span_dim: basis.len(),
                    vertices: basis,
                },
            }
        }));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionStep {
    /// Cube vertex whose column was restricted.
    pub vertex: usize,
    /// Row index removed, relative to the matrix before this step.
    pub pivot_row: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RestrictionChain {
    pub steps: Vec<RestrictionStep>,
}

/// Restricts column `col` of `a`: eliminates the first row `k` where the
/// column is nonzero and drops the column, per
/// `A'_{ij} = A_{ij} - A_{i,col} A_{kj} / A_{k,col}`.
pub fn restrict(a: &RationalMatrix, col: usize) -> Result<(RationalMatrix, usize), CubeError> {
    let k = (0..a.rows())
        .find(|&i| !a.get(i, col).is_zero())
        .ok_or(CubeError::ZeroColumn(col))?;
    let pivot = a.get(k, col).clone();
    let rows: Vec<Vec<Rational>> = (0..a.rows())
        .filter(|&i| i != k)
        .map(|i| {
            let f = a.get(i, col) / &pivot;
            (0..a.cols())
                .filter(|&j| j != col)
                .map(|j| a.get(i, j) - &f * a.get(k, j))
                .collect()
        })
        .collect();
    Ok((RationalMatrix::from_rows(a.cols() - 1, rows), k))
}

/// Restriction of one column vector by a step that used `restricted` as
/// the eliminated column with pivot row `k`.
fn restrict_vector(c: &[Rational], restricted: &[Rational], k: usize) -> Vec<Rational> {
    let f = &c[k] / &restricted[k];
    c.iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(i, x)| x - &f * &restricted[i])
        .collect()
}

/// The vertex matrix restricted to the orthogonal complement of a tuple.
#[derive(Debug, Clone)]
pub struct Restriction {
    /// Remaining columns, one per cube vertex not in the tuple.
    pub matrix: RationalMatrix,
    /// Cube vertex of each remaining column.
    pub columns: Vec<usize>,
    /// Original ambient coordinate of each remaining row.
    pub coords: Vec<usize>,
    pub chain: RestrictionChain,
    /// The restricted tuple column at each step (before its removal).
    pivot_columns: Vec<Vec<Rational>>,
}

impl Restriction {
    pub fn new(spec: &CubeSpec, tuple: &[usize]) -> Result<Self, CubeError> {
        let mut matrix = spec.vertices();
        let mut columns: Vec<usize> = (0..spec.num_vertices()).collect();
        let mut coords: Vec<usize> = (0..spec.ambient_dim()).collect();
        let mut chain = RestrictionChain::default();
        let mut pivot_columns = Vec::new();
        for &v in tuple {
            let col = columns
                .iter()
                .position(|&c| c == v)
                .ok_or(CubeError::ZeroColumn(v))?;
            let column: Vec<Rational> = matrix.column(col).into_entries();
            let (next, k) = restrict(&matrix, col).map_err(|_| CubeError::ZeroColumn(v))?;
            matrix = next;
            columns.remove(col);
            coords.remove(k);
            chain.steps.push(RestrictionStep {
                vertex: v,
                pivot_row: k,
            });
            pivot_columns.push(column);
        }
        Ok(Self {
            matrix,
            columns,
            coords,
            chain,
            pivot_columns,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Lift a point of the restricted space back to the ambient space.
    pub fn lift(&self, p: &RationalVector) -> Result<RationalVector, CubeError> {
        lift_with_columns(p, &self.chain, &self.pivot_columns)
    }
}

/// Lifts `p` through `chain`, recomputing the restricted tuple columns
/// from the original tuple vectors `originals` (in chain order).
pub fn lift(
    p: &RationalVector,
    chain: &RestrictionChain,
    originals: &[RationalVector],
) -> Result<RationalVector, CubeError> {
    if originals.len() != chain.steps.len() {
        return Err(CubeError::InconsistentChain(0));
    }
    let mut pivot_columns: Vec<Vec<Rational>> = Vec::with_capacity(originals.len());
    for (s, v) in originals.iter().enumerate() {
        let mut c = v.entries().to_vec();
        for (t, step) in chain.steps[..s].iter().enumerate() {
            if c.len() != pivot_columns[t].len() || step.pivot_row >= c.len() {
                return Err(CubeError::InconsistentChain(t));
            }
            c = restrict_vector(&c, &pivot_columns[t], step.pivot_row);
        }
        pivot_columns.push(c);
    }
    lift_with_columns(p, chain, &pivot_columns)
}

fn lift_with_columns(
    p: &RationalVector,
    chain: &RestrictionChain,
    pivot_columns: &[Vec<Rational>],
) -> Result<RationalVector, CubeError> {
    let mut x = p.entries().to_vec();
    for (s, step) in chain.steps.iter().enumerate().rev() {
        let col = &pivot_columns[s];
        let k = step.pivot_row;
        if col.len() != x.len() + 1 || k >= col.len() || col[k].is_zero() {
            return Err(CubeError::InconsistentChain(s));
        }
        // solve <col, x̂> = 0 for the reinserted coordinate
        let rest = col
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .zip(&x)
            .fold(Rational::zero(), |acc, ((_, c), xi)| acc + c * xi);
        x.insert(k, -rest / &col[k]);
    }
    Ok(RationalVector::new(x))
}

/// Returns `true` if `p` is orthogonal to every vector of `vs`.
pub fn orthogonal_to_all(p: &RationalVector, vs: &[RationalVector]) -> bool {
    vs.iter().all(|v| v.dot(p).is_zero())
}
