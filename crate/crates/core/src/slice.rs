//! Hyperplane sections of the cube: vertices, facets, incidence and the
//! face lattice.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bits::Bits;
use crate::cube::{cube_vertex, edges, facets, vertex_rank, CubeSpec, Facet, Mode};
use crate::linalg::bareiss::{big_rank, int_rank};
use crate::linalg::{integer_row, Rational, RationalVector};

/// The hyperplane `{x : <w, x> = a}` in cube coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    w: RationalVector,
    a: Rational,
}

impl Hyperplane {
    /// `None` when `w` is zero.
    pub fn new(w: RationalVector, a: Rational) -> Option<Self> {
        if w.is_zero() {
            return None;
        }
        Some(Self { w, a })
    }

    pub fn central(w: RationalVector) -> Option<Self> {
        Self::new(w, Rational::zero())
    }

    pub fn from_ints(w: &[i64], a: i64) -> Option<Self> {
        Self::new(
            RationalVector::from_ints(w),
            Rational::from_integer(BigInt::from(a)),
        )
    }

    /// Converts an ambient normal `u` of the vertex arrangement: in affine
    /// mode `w = (u_1..u_d)` and `a = -u_{d+1}`, in central mode `w = u`.
    pub fn from_ambient(cube: &CubeSpec, u: &RationalVector) -> Option<Self> {
        assert_eq!(u.dim(), cube.ambient_dim());
        let d = cube.d();
        match cube.mode() {
            Mode::Central => Self::central(u.clone()),
            Mode::Affine => Self::new(
                RationalVector::new(u.entries()[..d].to_vec()),
                -u[d].clone(),
            ),
        }
    }

    pub fn w(&self) -> &RationalVector {
        &self.w
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn is_central(&self) -> bool {
        self.a.is_zero()
    }

    pub fn dim(&self) -> usize {
        self.w.dim()
    }

    /// Primitive integer form `(w_1..w_d, a)`, scaled by a positive factor.
    pub fn integer_form(&self) -> (Vec<BigInt>, BigInt) {
        let mut row = self.w.entries().to_vec();
        row.push(self.a.clone());
        let mut ints = integer_row(&row);
        crate::linalg::ring::primitive(&mut ints);
        let a = ints.pop().unwrap();
        (ints, a)
    }

    /// Ambient normal in the given mode (inverse of [`Self::from_ambient`]),
    /// as primitive integers.
    pub fn ambient_normal(&self, mode: Mode) -> Vec<BigInt> {
        let (mut w, a) = self.integer_form();
        if mode == Mode::Affine {
            w.push(-a);
        }
        w
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<({}), x> = {}", self.w, self.a)
    }
}

/// Where a slice vertex comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    /// A cube vertex lying on the hyperplane ("white").
    Cube(usize),
    /// The crossing with the relative interior of the edge `(i, j)` ("black").
    Edge(usize, usize),
}

impl VertexKind {
    pub fn is_cube_vertex(&self) -> bool {
        matches!(self, VertexKind::Cube(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceVertex {
    pub coords: RationalVector,
    pub kind: VertexKind,
    /// Homogeneous integer coordinates `(n_1..n_d, m)` with `x = n/m`,
    /// `m > 0`, gcd 1.
    homogeneous: Vec<BigInt>,
}

impl SliceVertex {
    fn new(numer: Vec<BigInt>, den: BigInt, kind: VertexKind) -> Self {
        let mut h = numer;
        h.push(den);
        crate::linalg::ring::primitive(&mut h);
        let den = h.last().unwrap().clone();
        let coords = RationalVector::new(
            h[..h.len() - 1]
                .iter()
                .map(|n| Rational::new(n.clone(), den.clone()))
                .collect(),
        );
        Self {
            coords,
            kind,
            homogeneous: h,
        }
    }

    pub fn homogeneous(&self) -> &[BigInt] {
        &self.homogeneous
    }

    pub fn is_on_facet(&self, f: Facet) -> bool {
        let den = self.homogeneous.last().unwrap();
        let x = &self.homogeneous[f.coord];
        if f.sign > 0 {
            x == den
        } else {
            *x == -den
        }
    }
}

/// A face of a slice: its vertex set and dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    pub vertices: Bits,
    pub dim: usize,
}

/// A `(d-1)`-dimensional section `C_d ∩ H`.
#[derive(Debug, Clone)]
pub struct Slice {
    d: usize,
    hyperplane: Hyperplane,
    vertices: Vec<SliceVertex>,
    /// Cube facets whose intersection is a facet of the slice; one label
    /// per distinct vertex set.
    facets: Vec<Facet>,
    /// Vertex set of each facet.
    incidence: Vec<Bits>,
    f_vector: Vec<usize>,
    k: usize,
}

impl Slice {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn hyperplane(&self) -> &Hyperplane {
        &self.hyperplane
    }

    pub fn vertices(&self) -> &[SliceVertex] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_cube_vertex(&self) -> Vec<bool> {
        self.vertices.iter().map(|v| v.kind.is_cube_vertex()).collect()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn incidence(&self) -> &[Bits] {
        &self.incidence
    }

    /// `true` iff vertex `v` lies on facet `f`.
    pub fn incident(&self, v: usize, f: usize) -> bool {
        self.incidence[f].contains(v)
    }

    pub fn f_vector(&self) -> &[usize] {
        &self.f_vector
    }

    /// Rank of the cube vertices contained in the hyperplane.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn facet_count_profile(&self) -> usize {
        self.facets.len()
    }

    /// All nonempty proper faces, ordered by dimension then vertex set.
    pub fn faces(&self) -> Vec<Face> {
        let mut seen: HashSet<Bits> = HashSet::new();
        let mut stack: Vec<Bits> = Vec::new();
        for f in &self.incidence {
            if seen.insert(*f) {
                stack.push(*f);
            }
        }
        while let Some(face) = stack.pop() {
            for f in &self.incidence {
                let meet = face.and(f);
                if !meet.is_empty() && seen.insert(meet) {
                    stack.push(meet);
                }
            }
        }
        let mut out: Vec<Face> = seen
            .into_iter()
            .map(|vertices| Face {
                dim: self.rank_of(&vertices) - 1,
                vertices,
            })
            .collect();
        out.sort_by(|a, b| a.dim.cmp(&b.dim).then(a.vertices.cmp(&b.vertices)));
        out
    }

    /// Rank of the homogeneous coordinates of a vertex subset.
    pub fn rank_of(&self, set: &Bits) -> usize {
        let rows: Vec<Vec<BigInt>> = set
            .iter()
            .map(|i| self.vertices[i].homogeneous.clone())
            .collect();
        let small: Option<Vec<Vec<i128>>> = rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_i128()).collect())
            .collect();
        match small {
            Some(r) => int_rank(&r),
            None => big_rank(rows),
        }
    }

    /// Edges of the slice (its 1-faces) as sorted vertex pairs: `u` and `v`
    /// are adjacent iff no other vertex lies on every facet through both.
    pub fn graph_edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        let all = Bits::from_indices(0..n);
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let common = self
                    .incidence
                    .iter()
                    .filter(|f| f.contains(u) && f.contains(v))
                    .fold(all, |acc, f| acc.and(f));
                if common.len() == 2 {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Vertex-facet incidence as a 0/1 matrix (rows vertices).
    pub fn incidence_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.vertices.len())
            .map(|v| {
                self.incidence
                    .iter()
                    .map(|f| u8::from(f.contains(v)))
                    .collect()
            })
            .collect()
    }
}

/// Sign of `<w, v> - a` at each cube vertex, from the integer form.
fn vertex_values(d: usize, w: &[BigInt], a: &BigInt) -> Vec<BigInt> {
    (0..1usize << d)
        .map(|i| {
            cube_vertex(d, i)
                .iter()
                .zip(w)
                .fold(-a.clone(), |acc, (&c, wi)| {
                    if c > 0 {
                        acc + wi
                    } else {
                        acc - wi
                    }
                })
        })
        .collect()
}

/// Builds `C_d ∩ H` in the given mode, or `None` when the intersection is
/// not `(d-1)`-dimensional. In central mode `H` must pass through 0.
pub fn build_slice(cube: &CubeSpec, h: &Hyperplane) -> Option<Slice> {
    let d = cube.d();
    assert_eq!(h.dim(), d, "hyperplane dimension does not match the cube");
    if cube.mode() == Mode::Central {
        assert!(h.is_central(), "central mode needs a linear hyperplane");
    }
    let (w, a) = h.integer_form();
    let values = vertex_values(d, &w, &a);
    let mut vertices = Vec::new();
    for (i, val) in values.iter().enumerate() {
        if val.is_zero() {
            let numer = cube_vertex(d, i).into_iter().map(BigInt::from).collect();
            vertices.push(SliceVertex::new(numer, BigInt::one(), VertexKind::Cube(i)));
        }
    }
    for (u, v) in edges(d) {
        let (fu, fv) = (&values[u], &values[v]);
        if fu.is_zero() || fv.is_zero() || fu.is_positive() == fv.is_positive() {
            continue;
        }
        let j = (u ^ v).trailing_zeros() as usize;
        // x_j = (f_u + f_v) / (f_u - f_v) on the edge from u (x_j = -1)
        let mut den: BigInt = fu - fv;
        let mut num_j: BigInt = fu + fv;
        if den.is_negative() {
            den = -den;
            num_j = -num_j;
        }
        let numer = cube_vertex(d, u)
            .into_iter()
            .enumerate()
            .map(|(i, c)| if i == j { num_j.clone() } else { &den * c })
            .collect();
        vertices.push(SliceVertex::new(numer, den, VertexKind::Edge(u, v)));
    }
    vertices.sort_by(|x, y| x.coords.cmp(&y.coords));
    let all = Bits::from_indices(0..vertices.len());
    assert!(vertices.len() <= Bits::CAPACITY, "too many slice vertices");

    let mut slice = Slice {
        d,
        hyperplane: h.clone(),
        vertices,
        facets: Vec::new(),
        incidence: Vec::new(),
        f_vector: Vec::new(),
        k: 0,
    };
    if slice.rank_of(&all) != d {
        return None;
    }
    let mut seen = HashSet::new();
    for f in facets(d) {
        let on = Bits::from_indices(
            slice
                .vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| v.is_on_facet(f))
                .map(|(i, _)| i),
        );
        if on.is_empty() || slice.rank_of(&on) != d - 1 {
            continue;
        }
        if seen.insert(on) {
            slice.facets.push(f);
            slice.incidence.push(on);
        }
    }
    let mut f_vector = vec![0; d - 1];
    for face in slice.faces() {
        f_vector[face.dim] += 1;
    }
    slice.f_vector = f_vector;
    let on_h: Vec<usize> = slice
        .vertices
        .iter()
        .filter_map(|v| match v.kind {
            VertexKind::Cube(i) => Some(i),
            VertexKind::Edge(..) => None,
        })
        .collect();
    slice.k = vertex_rank(cube, &on_h);
    Some(slice)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slice(mode: Mode, w: &[i64], a: i64) -> Option<Slice> {
        let cube = CubeSpec::new(w.len(), mode).unwrap();
        build_slice(&cube, &Hyperplane::from_ints(w, a).unwrap())
    }

    fn cyclic_in_order(s: &Slice, order: &[Facet]) -> bool {
        let n = order.len();
        let pos: Vec<usize> = s
            .facets()
            .iter()
            .map(|f| order.iter().position(|g| g == f).unwrap())
            .collect();
        let mut pairs = HashSet::new();
        for v in 0..s.num_vertices() {
            let mut on: Vec<usize> = (0..s.facets().len())
                .filter(|&f| s.incident(v, f))
                .map(|f| pos[f])
                .collect();
            on.sort();
            if on.len() != 2 {
                return false;
            }
            let (a, b) = (on[0], on[1]);
            if !(b == a + 1 || (a == 0 && b == n - 1)) {
                return false;
            }
            pairs.insert((a, b));
        }
        pairs.len() == n
    }

    fn fac(coord: usize, sign: i8) -> Facet {
        Facet { coord: coord - 1, sign }
    }

    #[test]
    fn central_hexagon() {
        let s = slice(Mode::Central, &[1, 1, 1], 0).unwrap();
        assert_eq!(s.num_vertices(), 6);
        assert_eq!(s.f_vector(), &[6, 6]);
        assert_eq!(s.k(), 0);
        assert_eq!(s.facet_count_profile(), 6);
        let order = [fac(1, 1), fac(2, -1), fac(3, 1), fac(1, -1), fac(2, 1), fac(3, -1)];
        assert!(cyclic_in_order(&s, &order));
    }

    #[test]
    fn tilted_hexagon() {
        let s = slice(Mode::Central, &[4, -2, -3], 0).unwrap();
        let order = [fac(1, 1), fac(2, 1), fac(3, -1), fac(1, -1), fac(2, -1), fac(3, 1)];
        assert!(cyclic_in_order(&s, &order));
    }

    #[test]
    fn quadrilaterals() {
        let s = slice(Mode::Central, &[0, 0, 1], 0).unwrap();
        assert_eq!(s.num_vertices(), 4);
        assert_eq!(s.k(), 0);
        assert_eq!(s.facet_count_profile(), 4);
        assert!(cyclic_in_order(&s, &[fac(1, 1), fac(2, 1), fac(1, -1), fac(2, -1)]));
        let t = slice(Mode::Affine, &[0, 2, 2], 1).unwrap();
        assert!(cyclic_in_order(&t, &[fac(1, 1), fac(2, 1), fac(1, -1), fac(3, 1)]));
    }

    #[test]
    fn corner_is_degenerate() {
        assert!(slice(Mode::Affine, &[1, 1, 1], 3).is_none());
        assert!(slice(Mode::Affine, &[1, 1, 1], 4).is_none());
        // supporting an edge
        assert!(slice(Mode::Affine, &[1, 1, 0], 2).is_none());
    }

    #[test]
    fn facet_hyperplane_gives_the_facet() {
        let s = slice(Mode::Affine, &[1, 0, 0, 0], 1).unwrap();
        assert_eq!(s.f_vector(), &[8, 12, 6]);
        assert_eq!(s.k(), 4);
    }

    #[test]
    fn five_cube_diagonal_slice() {
        let s = slice(Mode::Central, &[1, 1, 1, 1, 1], 0).unwrap();
        assert_eq!(s.num_vertices(), 30);
        assert_eq!(s.k(), 0);
        // every crossing is an edge midpoint
        for v in s.vertices() {
            assert!(matches!(v.kind, VertexKind::Edge(..)));
            let zeros = v.coords.entries().iter().filter(|c| c.is_zero()).count();
            assert_eq!(zeros, 1);
        }
    }

    #[test]
    fn four_cube_f_vectors() {
        assert_eq!(slice(Mode::Central, &[1, 1, 1, 0], 0).unwrap().f_vector(), &[12, 18, 8]);
        assert_eq!(slice(Mode::Central, &[1, 0, 0, 0], 0).unwrap().f_vector(), &[8, 12, 6]);
        assert_eq!(slice(Mode::Central, &[1, 1, 1, 0], 0).unwrap().facet_count_profile(), 8);
    }

    #[test]
    fn euler_relation_on_samples() {
        for (w, a) in [
            (vec![1, 2, 3, 4], 1),
            (vec![1, 1, 1, 1], 0),
            (vec![3, -1, 2, 5], 2),
            (vec![1, 1, 1, 1, 1], 1),
            (vec![2, 3, 5, 7, 11], 4),
        ] {
            let s = slice(Mode::Affine, &w, a).unwrap();
            let alt: i64 = s
                .f_vector()
                .iter()
                .enumerate()
                .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
                .sum();
            let n = (w.len() - 1) as u32;
            assert_eq!(alt, 1 - (-1i64).pow(n), "{w:?}");
        }
    }

    #[test]
    fn ambient_round_trip() {
        let cube = CubeSpec::affine(3);
        let u = RationalVector::from_ints(&[2, 4, 6, -2]);
        let h = Hyperplane::from_ambient(&cube, &u).unwrap();
        assert_eq!(h.a(), &Rational::from_integer(BigInt::from(2)));
        let n = h.ambient_normal(Mode::Affine);
        assert_eq!(n, [1, 2, 3, -1].map(BigInt::from).to_vec());
        assert!(Hyperplane::from_ambient(&cube, &RationalVector::from_ints(&[0, 0, 0, 1])).is_none());
    }
}
