//! Classification of all slices of a cube up to combinatorial type.
//!
//! Cells of the vertex arrangement are enumerated flat by flat, one flat per
//! `B_d`-orbit and one cell per `B_d`-orbit inside it. Cells are identified
//! up to symmetry by their Chow vector `sum_v sign(v) * v`: the signs of a
//! linear functional on the cube vertices are determined by this vector, so
//! its `B_d`-orbit is a complete invariant of the cell orbit.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::arrangement::{
    enumerate_chamber_orbits, enumerate_chambers, master_arrangement, Chamber, FlatArrangement,
};
use crate::combtype::{canonical_key, CanonicalKey, TypeRegistry};
use crate::cube::{
    edges, flat_orbit_reps, signed_permutations, CubeSpec, Flat, Mode, VertexGroup, VertexSet,
};
use crate::linalg::RationalVector;
use crate::slice::{build_slice, Hyperplane, Slice};

/// Complete invariant of a cell under the cube's symmetry group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitKey(Vec<i64>);

/// `sum_v signs[v] * v`, with the height coordinate appended in affine mode.
pub fn chow_vector(cube: &CubeSpec, signs: &[i8]) -> Vec<i64> {
    let mut chi = vec![0i64; cube.ambient_dim()];
    for (i, &s) in signs.iter().enumerate() {
        if s != 0 {
            for (c, x) in chi.iter_mut().zip(cube.vertex(i)) {
                *c += s as i64 * x;
            }
        }
    }
    chi
}

/// Sorted absolute values of the cube coordinates, then the height.
pub fn orbit_key(cube: &CubeSpec, chi: &[i64]) -> OrbitKey {
    let d = cube.d();
    let mut key: Vec<i64> = chi[..d].iter().map(|x| x.abs()).collect();
    key.sort_unstable();
    key.extend_from_slice(&chi[d..]);
    OrbitKey(key)
}

/// Order of the stabilizer of `chi` in `B_d` (the height is fixed).
pub fn chow_stabilizer_order(d: usize, chi: &[i64]) -> u64 {
    let mut mult: BTreeMap<i64, u64> = BTreeMap::new();
    for x in &chi[..d] {
        *mult.entry(x.abs()).or_default() += 1;
    }
    let fact = |n: u64| (1..=n).product::<u64>();
    mult.iter()
        .map(|(&a, &m)| if a == 0 { fact(m) << m } else { fact(m) })
        .product()
}

/// Cell census of one flat orbit. Rank 0 is the whole space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatCells {
    pub rank: usize,
    pub vertices: VertexSet,
    /// Order of the flat's stabilizer in `B_d`.
    pub stabilizer: u64,
    pub orbits: usize,
    /// Number of cells on this one flat.
    pub cells: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[derive(Default)]
pub struct ClassifyOptions {
    pub generic_only: bool,
    /// Largest rank of vertices a slice may contain; defaults to the
    /// largest rank that still leaves a hyperplane.
    pub max_k: Option<usize>,
}


#[derive(Debug, Clone)]
pub struct ClassificationRun {
    pub spec: CubeSpec,
    pub generic_only: bool,
    pub max_k: usize,
    pub registry: TypeRegistry,
    pub per_k_types: BTreeMap<usize, BTreeSet<CanonicalKey>>,
    pub flats: Vec<FlatCells>,
}

struct FlatOutcome {
    cells: FlatCells,
    slices: Vec<(CanonicalKey, Slice)>,
}

fn slice_of(cube: &CubeSpec, witness: &RationalVector) -> Option<Slice> {
    let h = Hyperplane::from_ambient(cube, witness)?;
    build_slice(cube, &h)
}

fn process_orbits(
    cube: &CubeSpec,
    rank: usize,
    vertices: VertexSet,
    stabilizer: u64,
    reps: Vec<(Vec<i64>, Chamber)>,
) -> FlatOutcome {
    let cells = reps
        .iter()
        .map(|(chi, _)| stabilizer / chow_stabilizer_order(cube.d(), chi))
        .sum();
    let slices = reps
        .iter()
        .filter_map(|(_, c)| slice_of(cube, &c.witness))
        .map(|s| (canonical_key(&s), s))
        .collect();
    FlatOutcome {
        cells: FlatCells {
            rank,
            vertices,
            stabilizer,
            orbits: reps.len(),
            cells,
        },
        slices,
    }
}

/// One `(chow vector, chamber)` per orbit of chambers of `fa`.
fn orbit_reps_on(cube: &CubeSpec, fa: &FlatArrangement) -> Vec<(Vec<i64>, Chamber)> {
    enumerate_chamber_orbits(&fa.arrangement, |s| {
        orbit_key(cube, &chow_vector(cube, &fa.vertex_signs(cube, s)))
    })
    .into_iter()
    .map(|(_, c)| {
        let chi = chow_vector(cube, &fa.vertex_signs(cube, &c.sign));
        (chi, fa.lift(c))
    })
    .collect()
}

fn master_outcome(cube: &CubeSpec, group: &VertexGroup) -> FlatOutcome {
    let master = master_arrangement(cube);
    let n = cube.num_vertices();
    let signs = |s: &_| master.input_signs(s, n);
    let reps = enumerate_chamber_orbits(&master, |s| orbit_key(cube, &chow_vector(cube, &signs(s))))
        .into_iter()
        .map(|(_, c)| (chow_vector(cube, &signs(&c.sign)), c))
        .collect();
    process_orbits(cube, 0, VertexSet::empty(), group.order() as u64, reps)
}

fn flat_outcome(cube: &CubeSpec, group: &VertexGroup, flat: &Flat) -> FlatOutcome {
    let fa = FlatArrangement::new(cube, &flat.basis).expect("flat basis is independent");
    let reps = orbit_reps_on(cube, &fa);
    let stab = group.stabilizer_order(flat.vertices) as u64;
    process_orbits(cube, flat.rank, flat.vertices, stab, reps)
}

/// Largest rank of a proper flat: the rank of a line.
pub fn default_max_k(cube: &CubeSpec) -> usize {
    cube.ambient_dim() - 1
}

fn effective_max_k(cube: &CubeSpec, opts: ClassifyOptions) -> usize {
    if opts.generic_only {
        0
    } else {
        opts.max_k
            .unwrap_or_else(|| default_max_k(cube))
            .min(default_max_k(cube))
    }
}

fn outcomes(cube: &CubeSpec, max_k: usize) -> Vec<FlatOutcome> {
    let group = VertexGroup::new(cube.d());
    let flats = if max_k == 0 {
        Vec::new()
    } else {
        flat_orbit_reps(cube, max_k)
    };
    let mut out = vec![master_outcome(cube, &group)];
    out.par_extend(flats.par_iter().map(|f| flat_outcome(cube, &group, f)));
    out
}

/// The slice of one cell per symmetry orbit of cells (on every flat up to
/// the requested rank), in enumeration order.
pub fn cell_orbit_slices(cube: &CubeSpec, opts: ClassifyOptions) -> Vec<Slice> {
    outcomes(cube, effective_max_k(cube, opts))
        .into_iter()
        .flat_map(|o| o.slices.into_iter().map(|(_, s)| s))
        .collect()
}

/// Enumerate all slice types of `cube`. Work on distinct flats runs on the
/// current rayon pool; the result does not depend on the pool size.
pub fn classify(cube: &CubeSpec, opts: ClassifyOptions) -> ClassificationRun {
    let max_k = effective_max_k(cube, opts);
    let outcomes = outcomes(cube, max_k);

    let central = cube.mode() == Mode::Central;
    let mut registry = TypeRegistry::new();
    let mut per_k_types: BTreeMap<usize, BTreeSet<CanonicalKey>> = BTreeMap::new();
    let mut cells = Vec::with_capacity(outcomes.len());
    for o in outcomes {
        for (key, s) in o.slices {
            per_k_types.entry(s.k()).or_default().insert(key.clone());
            let is_central = central || s.hyperplane().is_central();
            registry.insert_keyed(key, s, is_central);
        }
        cells.push(o.cells);
    }
    ClassificationRun {
        spec: *cube,
        generic_only: opts.generic_only,
        max_k,
        registry,
        per_k_types,
        flats: cells,
    }
}

impl ClassificationRun {
    pub fn num_types(&self) -> usize {
        self.registry.len()
    }

    pub fn per_k_counts(&self) -> Vec<usize> {
        (0..=self.max_k)
            .map(|k| self.per_k_types.get(&k).map_or(0, BTreeSet::len))
            .collect()
    }

    /// Types at each `k` that occur at no smaller `k`.
    pub fn per_k_new(&self) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        (0..=self.max_k)
            .map(|k| {
                let here = self.per_k_types.get(&k).cloned().unwrap_or_default();
                let new = here.difference(&seen).count();
                seen.extend(here);
                new
            })
            .collect()
    }

    /// Vertex count -> number of types.
    pub fn vertex_count_distribution(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for e in self.registry.entries() {
            *h.entry(e.num_vertices()).or_default() += 1;
        }
        h
    }

    /// Cells of the whole arrangement (the master chambers).
    pub fn master_cells(&self) -> u64 {
        self.flats[0].cells
    }

    /// Distinct per-flat cell counts for flats of the given rank.
    pub fn cells_per_flat(&self, rank: usize) -> BTreeSet<u64> {
        self.flats
            .iter()
            .filter(|f| f.rank == rank)
            .map(|f| f.cells)
            .collect()
    }
}

/// The central hyperplane through no vertex that cuts the most edges:
/// normal `(1, ..., 1)` for odd `d`, `(1, ..., 1, 0)` for even `d`.
pub fn max_vertex_construction(d: usize) -> Hyperplane {
    let mut w = vec![1i64; d];
    if d.is_multiple_of(2) {
        w[d - 1] = 0;
    }
    Hyperplane::from_ints(&w, 0).expect("nonzero normal")
}

/// `ceil(d/2) * binom(d, ceil(d/2))`.
pub fn max_vertex_count(d: usize) -> u64 {
    let h = d.div_ceil(2) as u64;
    let binom = (1..=h).fold(1u64, |acc, i| acc * (d as u64 + 1 - i) / i);
    h * binom
}

#[derive(Debug, Clone)]
pub struct IntersectionCheck {
    pub k1: usize,
    pub k2: usize,
    pub common: Vec<CanonicalKey>,
    pub is_cube_only: bool,
}

#[derive(Debug, Clone)]
pub struct CubeConstruction {
    pub k: usize,
    pub hyperplane: Hyperplane,
    pub slice_k: usize,
    pub f_vector: Vec<usize>,
    pub is_cube: bool,
}

#[derive(Debug, Clone)]
pub struct CentralIntersectionReport {
    pub d: usize,
    pub cube_key: CanonicalKey,
    pub pairs: Vec<IntersectionCheck>,
    pub constructions: Vec<CubeConstruction>,
}

impl CentralIntersectionReport {
    pub fn conjecture_holds(&self) -> bool {
        self.pairs.iter().all(|p| p.is_cube_only)
    }

    pub fn constructions_hold(&self) -> bool {
        self.constructions.iter().all(|c| c.is_cube && c.slice_k == c.k)
    }
}

/// Central hyperplanes whose slices are lower-dimensional cubes through
/// vertices of each rank `k < d`: `x_1 = 0` for `k = 0`, otherwise the normal
/// `(-(d-k), 1, ..., 1, 0, ..., 0)` with `d - k` ones.
pub fn cube_slice_normal(d: usize, k: usize) -> Vec<i64> {
    let mut u = vec![0i64; d];
    if k == 0 {
        u[0] = 1;
    } else {
        u[0] = -((d - k) as i64);
        for x in &mut u[1..=d - k] {
            *x = 1;
        }
    }
    u
}

/// Pairwise intersections of the per-`k` type sets of a central run, plus
/// the cube constructions at every `k`.
pub fn check_central_intersection_conjecture(run: &ClassificationRun) -> CentralIntersectionReport {
    let cube = run.spec;
    assert_eq!(cube.mode(), Mode::Central, "needs a central run");
    let d = cube.d();
    let slice_for = |u: &[i64]| {
        build_slice(&cube, &Hyperplane::from_ints(u, 0).expect("nonzero")).expect("slices the cube")
    };
    let cube_key = canonical_key(&slice_for(&cube_slice_normal(d, 0)));
    let ks: Vec<usize> = run.per_k_types.keys().copied().collect();
    let mut pairs = Vec::new();
    for (i, &k1) in ks.iter().enumerate() {
        for &k2 in &ks[i + 1..] {
            let common: Vec<CanonicalKey> = run.per_k_types[&k1]
                .intersection(&run.per_k_types[&k2])
                .cloned()
                .collect();
            let is_cube_only = common.len() == 1 && common[0] == cube_key;
            pairs.push(IntersectionCheck {
                k1,
                k2,
                common,
                is_cube_only,
            });
        }
    }
    let constructions = (0..d)
        .map(|k| {
            let u = cube_slice_normal(d, k);
            let s = slice_for(&u);
            CubeConstruction {
                k,
                hyperplane: s.hyperplane().clone(),
                slice_k: s.k(),
                f_vector: s.f_vector().to_vec(),
                is_cube: canonical_key(&s) == cube_key,
            }
        })
        .collect();
    CentralIntersectionReport {
        d,
        cube_key,
        pairs,
        constructions,
    }
}

#[derive(Debug, Clone)]
pub struct EdgeCriterionReport {
    pub chambers: usize,
    pub classes_by_edges: usize,
    pub classes_by_key: usize,
    /// Whether the two partitions of the chambers coincide.
    pub agree: bool,
}

/// Lexicographically smallest image of an edge set under `B_d`.
fn canonical_edge_set(d: usize, cut: &[(usize, usize)], group: &[crate::cube::SignedPermutation]) -> Vec<(usize, usize)> {
    group
        .iter()
        .map(|g| {
            let mut img: Vec<(usize, usize)> = cut
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (g.act_vertex(a), g.act_vertex(b));
                    (x.min(y), x.max(y))
                })
                .collect();
            img.sort_unstable();
            img
        })
        .min()
        .unwrap_or_else(|| {
            debug_assert!(d > 0);
            cut.to_vec()
        })
}

/// Groups the generic central chambers of `C_d` once by the symmetry class
/// of the set of cut edges and once by combinatorial type, and compares the
/// two partitions. Exhaustive; intended for small `d`.
pub fn check_generic_central_edge_criterion(d: usize) -> EdgeCriterionReport {
    let cube = CubeSpec::central(d);
    let master = master_arrangement(&cube);
    let group = signed_permutations(d);
    let all_edges = edges(d);
    let chambers = enumerate_chambers(&master);
    let mut by_edges: BTreeMap<Vec<(usize, usize)>, usize> = BTreeMap::new();
    let mut by_key: BTreeMap<CanonicalKey, usize> = BTreeMap::new();
    let mut labels = Vec::with_capacity(chambers.len());
    for c in &chambers {
        let signs = master.input_signs(&c.sign, cube.num_vertices());
        let cut: Vec<(usize, usize)> = all_edges
            .iter()
            .copied()
            .filter(|&(a, b)| signs[a] != signs[b])
            .collect();
        let e = canonical_edge_set(d, &cut, &group);
        let s = slice_of(&cube, &c.witness).expect("generic chambers slice the cube");
        let k = canonical_key(&s);
        let n = by_edges.len();
        let ei = *by_edges.entry(e).or_insert(n);
        let n = by_key.len();
        let ki = *by_key.entry(k).or_insert(n);
        labels.push((ei, ki));
    }
    let mut e2k: BTreeMap<usize, usize> = BTreeMap::new();
    let mut k2e: BTreeMap<usize, usize> = BTreeMap::new();
    let agree = labels.iter().all(|&(e, k)| {
        *e2k.entry(e).or_insert(k) == k && *k2e.entry(k).or_insert(e) == e
    });
    EdgeCriterionReport {
        chambers: chambers.len(),
        classes_by_edges: by_edges.len(),
        classes_by_key: by_key.len(),
        agree,
    }
}

#[derive(Debug, Clone)]
pub struct VertexGapReport {
    pub d: usize,
    /// `(vertex count, attained)` for every count up to the maximum.
    pub counts: Vec<(usize, bool)>,
    /// No power of two `2^i <= 2d - 3` is attained.
    pub power_of_two_predicate: bool,
}

impl VertexGapReport {
    pub fn attained(&self) -> BTreeSet<usize> {
        self.counts.iter().filter(|c| c.1).map(|c| c.0).collect()
    }
}

pub fn vertex_gap_report(run: &ClassificationRun) -> VertexGapReport {
    let d = run.spec.d();
    let hist = run.vertex_count_distribution();
    let max = hist.keys().copied().max().unwrap_or(0);
    let counts = (1..=max).map(|n| (n, hist.contains_key(&n))).collect();
    let power_of_two_predicate = (0..)
        .map(|i| 1usize << i)
        .take_while(|&p| p <= 2 * d - 3)
        .all(|p| !hist.contains_key(&p));
    VertexGapReport {
        d,
        counts,
        power_of_two_predicate,
    }
}
