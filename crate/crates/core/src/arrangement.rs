//! Chambers of central hyperplane arrangements, found by an exact
//! adjacency walk: every sign flip of a known chamber is tested with the
//! slack LP, and feasible flips are new chambers.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cube::{CubeError, CubeSpec, Restriction, VertexTuple};
use crate::linalg::{Rational, RationalVector};
use crate::lp::max_slack_i128;

/// A central arrangement with pairwise non-parallel, nonzero normals.
#[derive(Debug, Clone)]
pub struct ArrangementSpec {
    ambient_dim: usize,
    /// Primitive integer normals, first nonzero entry positive.
    normals: Vec<Vec<i128>>,
    /// For each normal, the input indices merged into it and the sign
    /// relating each input to the stored normal.
    provenance: Vec<Vec<(usize, i8)>>,
    /// Input indices that were zero vectors.
    zero: Vec<usize>,
}

impl ArrangementSpec {
    /// Merges parallel and opposite inputs and drops zero inputs, keeping
    /// provenance. Normals are ordered by first appearance.
    pub fn build(ambient_dim: usize, inputs: &[RationalVector]) -> Self {
        let mut index: HashMap<Vec<i128>, usize> = HashMap::new();
        let mut normals = Vec::new();
        let mut provenance: Vec<Vec<(usize, i8)>> = Vec::new();
        let mut zero = Vec::new();
        for (i, v) in inputs.iter().enumerate() {
            assert_eq!(v.dim(), ambient_dim, "normal has wrong length");
            if v.is_zero() {
                zero.push(i);
                continue;
            }
            let mut p: Vec<i128> = v
                .primitive()
                .iter()
                .map(|x| x.to_i128().expect("normal entries fit in i128"))
                .collect();
            let lead = *p.iter().find(|x| **x != 0).unwrap();
            let orientation: i8 = if lead < 0 { -1 } else { 1 };
            if lead < 0 {
                p.iter_mut().for_each(|x| *x = -*x);
            }
            let next = normals.len();
            let slot = *index.entry(p.clone()).or_insert(next);
            if slot == next {
                normals.push(p);
                provenance.push(Vec::new());
            }
            provenance[slot].push((i, orientation));
        }
        Self {
            ambient_dim,
            normals,
            provenance,
            zero,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[Vec<i128>] {
        &self.normals
    }

    pub fn normal_vector(&self, i: usize) -> RationalVector {
        RationalVector::new(
            self.normals[i]
                .iter()
                .map(|&x| Rational::from_integer(BigInt::from(x)))
                .collect(),
        )
    }

    pub fn provenance(&self) -> &[Vec<(usize, i8)>] {
        &self.provenance
    }

    pub fn zero_inputs(&self) -> &[usize] {
        &self.zero
    }

    /// Sign of every input vector at a point of the chamber `s`: inputs
    /// that were zero get 0.
    pub fn input_signs(&self, s: &SignVector, inputs: usize) -> Vec<i8> {
        let mut out = vec![0i8; inputs];
        for (c, prov) in self.provenance.iter().enumerate() {
            let sc = s.sign(c);
            for &(i, o) in prov {
                out[i] = sc * o;
            }
        }
        out
    }

    fn oriented_rows(&self, s: &SignVector) -> Vec<Vec<i128>> {
        self.normals
            .iter()
            .enumerate()
            .map(|(i, n)| {
                if s.is_positive(i) {
                    n.clone()
                } else {
                    n.iter().map(|x| -x).collect()
                }
            })
            .collect()
    }

    /// Slack-maximizing witness of the sign vector, if it is a chamber.
    pub fn realize(&self, s: &SignVector) -> Option<RationalVector> {
        if self.normals.is_empty() {
            return Some(RationalVector::from_ints(&vec![1; self.ambient_dim]));
        }
        max_slack_i128(&self.oriented_rows(s))
    }

    /// Sign vector of a point that lies on none of the hyperplanes.
    pub fn sign_of(&self, x: &RationalVector) -> SignVector {
        let mut s = SignVector::all_negative(self.len());
        for (i, n) in self.normals.iter().enumerate() {
            let v = n
                .iter()
                .zip(x.entries())
                .fold(Rational::zero(), |acc, (a, b)| acc + b * Rational::from_integer(BigInt::from(*a)));
            assert!(!v.is_zero(), "point lies on hyperplane {i}");
            if v.is_positive() {
                s.set_positive(i);
            }
        }
        s
    }

    /// First chamber: all-positive if realizable, else the chamber of the
    /// moment-curve point `(1, t, t^2, ...)` for an integer `t` exceeding
    /// every root of the polynomials `<n_i, (1, t, t^2, ...)>`.
    pub fn start_chamber(&self) -> Chamber {
        let all = SignVector::all_positive(self.len());
        if let Some(w) = self.realize(&all) {
            return Chamber {
                sign: all,
                witness: w,
                flat: None,
            };
        }
        let bound = self
            .normals
            .iter()
            .map(|n| n.iter().map(|x| x.unsigned_abs()).sum::<u128>())
            .max()
            .unwrap_or(0);
        let t = BigInt::from(bound) + 1;
        let mut pow = BigInt::from(1);
        let mut ray = Vec::with_capacity(self.ambient_dim);
        for _ in 0..self.ambient_dim {
            ray.push(Rational::from_integer(pow.clone()));
            pow *= &t;
        }
        let s = self.sign_of(&RationalVector::new(ray));
        let w = self.realize(&s).expect("generic point lies in a chamber");
        Chamber {
            sign: s,
            witness: w,
            flat: None,
        }
    }
}

/// Signs over the normals of an arrangement, bit set for `+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    bits: u128,
    len: u8,
}

impl SignVector {
    pub fn all_positive(len: usize) -> Self {
        assert!(len <= 128);
        let bits = if len == 128 { u128::MAX } else { (1u128 << len) - 1 };
        Self {
            bits,
            len: len as u8,
        }
    }

    pub fn all_negative(len: usize) -> Self {
        assert!(len <= 128);
        Self {
            bits: 0,
            len: len as u8,
        }
    }

    pub fn from_signs(signs: &[i8]) -> Self {
        let mut s = Self::all_negative(signs.len());
        for (i, &x) in signs.iter().enumerate() {
            if x > 0 {
                s.set_positive(i);
            }
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn sign(&self, i: usize) -> i8 {
        if self.is_positive(i) {
            1
        } else {
            -1
        }
    }

    pub fn set_positive(&mut self, i: usize) {
        self.bits |= 1 << i;
    }

    pub fn flip(&self, i: usize) -> Self {
        Self {
            bits: self.bits ^ 1 << i,
            len: self.len,
        }
    }

    pub fn negate(&self) -> Self {
        Self {
            bits: self.bits ^ Self::all_positive(self.len()).bits,
            len: self.len,
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.len()).map(|i| self.sign(i)).collect()
    }
}

impl std::fmt::Display for SignVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.is_positive(i) { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// A maximal open cell with an exact interior point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub sign: SignVector,
    /// Interior point; for cells on a flat, lifted to the ambient space.
    pub witness: RationalVector,
    pub flat: Option<VertexTuple>,
}

/// Walks the chamber graph, expanding one chamber of each antipodal pair.
fn walk(spec: &ArrangementSpec, mut visit: impl FnMut(&SignVector, Option<&RationalVector>)) {
    let start = spec.start_chamber();
    let mut seen: HashSet<u128> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.sign.bits);
    visit(&start.sign, Some(&start.witness));
    let neg = start.sign.negate();
    if seen.insert(neg.bits) {
        visit(&neg, Some(&start.witness.neg()));
    }
    queue.push_back(start.sign);
    while let Some(s) = queue.pop_front() {
        for i in 0..spec.len() {
            let t = s.flip(i);
            if seen.contains(&t.bits) {
                continue;
            }
            let Some(w) = spec.realize(&t) else { continue };
            seen.insert(t.bits);
            visit(&t, Some(&w));
            let nt = t.negate();
            if seen.insert(nt.bits) {
                visit(&nt, Some(&w.neg()));
            }
            queue.push_back(t);
        }
    }
}

/// Every chamber with a witness, sorted by sign vector.
pub fn enumerate_chambers(spec: &ArrangementSpec) -> Vec<Chamber> {
    let mut out = Vec::new();
    walk(spec, |s, w| {
        out.push(Chamber {
            sign: *s,
            witness: w.expect("walk supplies witnesses").clone(),
            flat: None,
        })
    });
    out.sort_by_key(|c| c.sign);
    out
}

pub fn count_chambers(spec: &ArrangementSpec) -> usize {
    let mut n = 0;
    walk(spec, |_, _| n += 1);
    n
}

/// One chamber per orbit of a symmetry group of the arrangement, where
/// `key` maps any sign vector to a complete orbit invariant (equal keys iff
/// the vectors are related by the group). Orbit representatives are the
/// first chambers reached; results are sorted by key.
pub fn enumerate_chamber_orbits<K, F>(spec: &ArrangementSpec, key: F) -> Vec<(K, Chamber)>
where
    K: Ord + Clone,
    F: Fn(&SignVector) -> K,
{
    let start = spec.start_chamber();
    let mut reps: BTreeMap<K, Chamber> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let add = |reps: &mut BTreeMap<K, Chamber>, queue: &mut VecDeque<K>, c: Chamber| {
        let k = key(&c.sign);
        if !reps.contains_key(&k) {
            reps.insert(k.clone(), c);
            queue.push_back(k);
        }
    };
    let neg = Chamber {
        sign: start.sign.negate(),
        witness: start.witness.neg(),
        flat: None,
    };
    add(&mut reps, &mut queue, start);
    add(&mut reps, &mut queue, neg);
    while let Some(k) = queue.pop_front() {
        let s = reps[&k].sign;
        for i in 0..spec.len() {
            let t = s.flip(i);
            if reps.contains_key(&key(&t)) {
                continue;
            }
            let Some(w) = spec.realize(&t) else { continue };
            let nt = Chamber {
                sign: t.negate(),
                witness: w.neg(),
                flat: None,
            };
            add(
                &mut reps,
                &mut queue,
                Chamber {
                    sign: t,
                    witness: w,
                    flat: None,
                },
            );
            add(&mut reps, &mut queue, nt);
        }
    }
    reps.into_iter().collect()
}

/// The restricted arrangement of a flat, with its restriction data.
#[derive(Debug, Clone)]
pub struct FlatArrangement {
    pub tuple: VertexTuple,
    pub restriction: Restriction,
    pub arrangement: ArrangementSpec,
}

impl FlatArrangement {
    pub fn new(cube: &CubeSpec, tuple: &VertexTuple) -> Result<Self, CubeError> {
        let restriction = Restriction::new(cube, &tuple.vertices)?;
        let arrangement =
            ArrangementSpec::build(restriction.dim(), &restriction.matrix.columns());
        Ok(Self {
            tuple: tuple.clone(),
            restriction,
            arrangement,
        })
    }

    /// Sign of `<x, v>` for every cube vertex `v` at the chamber `s`.
    pub fn vertex_signs(&self, cube: &CubeSpec, s: &SignVector) -> Vec<i8> {
        let per_column = self
            .arrangement
            .input_signs(s, self.restriction.columns.len());
        let mut out = vec![0i8; cube.num_vertices()];
        for (c, &v) in self.restriction.columns.iter().enumerate() {
            out[v] = per_column[c];
        }
        out
    }

    pub fn lift(&self, c: Chamber) -> Chamber {
        let witness = self
            .restriction
            .lift(&c.witness)
            .expect("restriction chain is consistent");
        Chamber {
            sign: c.sign,
            witness,
            flat: Some(self.tuple.clone()),
        }
    }
}

/// Chambers of the arrangement restricted to the flat spanned by `tuple`,
/// with witnesses lifted to the ambient space of the cube.
pub fn enumerate_cells_on_flat(
    cube: &CubeSpec,
    tuple: &VertexTuple,
) -> Result<Vec<Chamber>, CubeError> {
    let flat = FlatArrangement::new(cube, tuple)?;
    Ok(enumerate_chambers(&flat.arrangement)
        .into_iter()
        .map(|c| flat.lift(c))
        .collect())
}

/// The master arrangement of the cube: one hyperplane per vertex.
pub fn master_arrangement(cube: &CubeSpec) -> ArrangementSpec {
    let cols: Vec<RationalVector> = (0..cube.num_vertices())
        .map(|i| cube.vertex_vector(i))
        .collect();
    ArrangementSpec::build(cube.ambient_dim(), &cols)
}

/// Whether `<x, n>` has the sign recorded in `s` for every normal.
pub fn verify_chamber(spec: &ArrangementSpec, s: &SignVector, x: &RationalVector) -> bool {
    spec.normals.iter().enumerate().all(|(i, n)| {
        let v = n
            .iter()
            .zip(x.entries())
            .fold(Rational::zero(), |acc, (a, b)| acc + b * Rational::from_integer(BigInt::from(*a)));
        if s.is_positive(i) {
            v.is_positive()
        } else {
            v.is_negative()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::Mode;

    fn vecs(rows: &[&[i64]]) -> Vec<RationalVector> {
        rows.iter().map(|r| RationalVector::from_ints(r)).collect()
    }

    #[test]
    fn dedup_of_central_vertex_normals() {
        let spec = master_arrangement(&CubeSpec::central(4));
        assert_eq!(spec.len(), 8);
        let affine = master_arrangement(&CubeSpec::affine(3));
        assert_eq!(affine.len(), 8);
    }

    #[test]
    fn dedup_of_the_worked_restriction() {
        let cols = vecs(&[&[-2, 0], &[2, 0], &[0, 2], &[-2, 2], &[2, 2], &[0, 2]]);
        let spec = ArrangementSpec::build(2, &cols);
        assert_eq!(spec.len(), 4);
        assert_eq!(count_chambers(&spec), 8);
    }

    #[test]
    fn two_lines_give_four_chambers() {
        let spec = ArrangementSpec::build(2, &vecs(&[&[1, 0], &[0, 1]]));
        let ch = enumerate_chambers(&spec);
        assert_eq!(ch.len(), 4);
        for c in &ch {
            assert!(verify_chamber(&spec, &c.sign, &c.witness));
        }
    }

    #[test]
    fn single_hyperplane_on_a_line() {
        let spec = ArrangementSpec::build(1, &vecs(&[&[3]]));
        assert_eq!(count_chambers(&spec), 2);
    }

    #[test]
    fn zero_inputs_are_dropped() {
        let spec = ArrangementSpec::build(2, &vecs(&[&[0, 0], &[1, 1], &[-2, -2]]));
        assert_eq!(spec.len(), 1);
        assert_eq!(spec.zero_inputs(), &[0]);
        assert_eq!(spec.provenance()[0], vec![(1, 1), (2, -1)]);
    }

    #[test]
    fn master_chambers_of_the_affine_three_cube() {
        let spec = master_arrangement(&CubeSpec::affine(3));
        let ch = enumerate_chambers(&spec);
        assert_eq!(ch.len(), 104);
        let signs: HashSet<_> = ch.iter().map(|c| c.sign).collect();
        for c in &ch {
            assert!(signs.contains(&c.sign.negate()));
            assert!(verify_chamber(&spec, &c.sign, &c.witness));
        }
    }

    #[test]
    fn cells_on_flats_of_the_affine_three_cube() {
        let cube = CubeSpec::new(3, Mode::Affine).unwrap();
        let t = VertexTuple::new(&cube, vec![0]).unwrap();
        assert_eq!(enumerate_cells_on_flat(&cube, &t).unwrap().len(), 32);
        let t = VertexTuple::new(&cube, vec![0, 3]).unwrap();
        let cells = enumerate_cells_on_flat(&cube, &t).unwrap();
        assert_eq!(cells.len(), 8);
        for c in &cells {
            for &v in &t.vertices {
                assert!(cube.vertex_vector(v).dot(&c.witness).is_zero());
            }
        }
    }
}
