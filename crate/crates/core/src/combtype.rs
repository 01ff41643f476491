//! Combinatorial types of slices: canonical keys of vertex-facet incidence
//! graphs and a registry that deduplicates slices by type.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;

use crate::canon::{canonical_form, to_hex, LabeledGraph};
use crate::slice::Slice;

/// Canonical form of a vertex-facet incidence graph. Equal keys iff the
/// incidence structures are isomorphic (vertex side mapped to vertex side).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        Self(bytes)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_hex(&self.0))
    }
}

/// Bipartite graph with slice vertices colored 0 and facets colored 1.
pub fn incidence_graph(s: &Slice) -> LabeledGraph {
    let nv = s.num_vertices();
    let nf = s.facets().len();
    let mut colors = vec![0u32; nv];
    colors.extend(std::iter::repeat_n(1, nf));
    let mut g = LabeledGraph::new(colors);
    for (f, on) in s.incidence().iter().enumerate() {
        for v in on.iter() {
            g.add_edge(v, nv + f);
        }
    }
    g
}

pub fn canonical_key(s: &Slice) -> CanonicalKey {
    CanonicalKey(canonical_form(&incidence_graph(s)))
}

/// Deterministic preference between representatives: smaller `k`, then the
/// lexicographically smaller primitive integer hyperplane `(w, a)`.
fn rep_order(s: &Slice) -> (usize, Vec<BigInt>, BigInt) {
    let (w, a) = s.hyperplane().integer_form();
    (s.k(), w, a)
}

#[derive(Debug, Clone)]
pub struct TypeEntry {
    pub key: CanonicalKey,
    pub f_vector: Vec<usize>,
    /// Preferred representative over all `k`.
    pub representative: Slice,
    /// Preferred representative for each `k` at which the type occurs.
    pub by_k: BTreeMap<usize, Slice>,
    /// Values of `k` (in this registry's mode) at which the type is
    /// realized by a hyperplane through the center of the cube.
    pub central_ks: BTreeSet<usize>,
}

impl TypeEntry {
    pub fn min_k(&self) -> usize {
        *self.by_k.keys().next().expect("entry has a slice")
    }

    pub fn num_vertices(&self) -> usize {
        self.f_vector[0]
    }

    pub fn is_central(&self) -> bool {
        !self.central_ks.is_empty()
    }

    fn absorb(&mut self, s: Slice, central: bool) {
        if central {
            self.central_ks.insert(s.k());
        }
        if rep_order(&s) < rep_order(&self.representative) {
            self.representative = s.clone();
        }
        match self.by_k.entry(s.k()) {
            Entry::Vacant(e) => {
                e.insert(s);
            }
            Entry::Occupied(mut e) => {
                if rep_order(&s) < rep_order(e.get()) {
                    e.insert(s);
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertOutcome {
    Inserted,
    Duplicate,
}

/// Types bucketed by f-vector; iteration is ordered by f-vector, then key.
#[derive(Debug, Clone, Default)]
pub struct TypeRegistry {
    buckets: BTreeMap<Vec<usize>, BTreeMap<CanonicalKey, TypeEntry>>,
}

impl TypeRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, s: Slice, central: bool) -> InsertOutcome {
        let key = canonical_key(&s);
        self.insert_keyed(key, s, central)
    }

    /// Insert with a precomputed key; the f-vector bucket is consulted
    /// first and keys are only compared within it.
    pub fn insert_keyed(&mut self, key: CanonicalKey, s: Slice, central: bool) -> InsertOutcome {
        let bucket = self.buckets.entry(s.f_vector().to_vec()).or_default();
        match bucket.entry(key) {
            Entry::Occupied(mut e) => {
                e.get_mut().absorb(s, central);
                InsertOutcome::Duplicate
            }
            Entry::Vacant(e) => {
                let key = e.key().clone();
                let central_ks = if central { BTreeSet::from([s.k()]) } else { BTreeSet::new() };
                let mut by_k = BTreeMap::new();
                by_k.insert(s.k(), s.clone());
                e.insert(TypeEntry {
                    key,
                    f_vector: s.f_vector().to_vec(),
                    representative: s,
                    by_k,
                    central_ks,
                });
                InsertOutcome::Inserted
            }
        }
    }

    /// Merge another registry of the same mode; metadata of shared types
    /// is combined.
    pub fn merge(&mut self, other: TypeRegistry) {
        for (_, bucket) in other.buckets {
            for (key, entry) in bucket {
                for (k, s) in entry.by_k {
                    let central = entry.central_ks.contains(&k);
                    self.insert_keyed(key.clone(), s, central);
                }
                let mine = self
                    .buckets
                    .get_mut(&entry.f_vector)
                    .and_then(|b| b.get_mut(&key))
                    .expect("just inserted");
                mine.central_ks.extend(entry.central_ks);
            }
        }
    }

    /// Record the central realizations found by a central-mode run of the
    /// same cube in this affine registry. A central slice through vertices
    /// of linear rank `k > 0` contains them with affine rank `k + 1`.
    pub fn mark_central(&mut self, central: &TypeRegistry) {
        for c in central.entries() {
            let Some(entry) = self
                .buckets
                .get_mut(&c.f_vector)
                .and_then(|b| b.get_mut(&c.key))
            else {
                continue;
            };
            entry
                .central_ks
                .extend(c.by_k.keys().map(|&k| if k == 0 { 0 } else { k + 1 }));
        }
    }

    pub fn contains(&self, f_vector: &[usize], key: &CanonicalKey) -> bool {
        self.buckets
            .get(f_vector)
            .is_some_and(|b| b.contains_key(key))
    }

    pub fn get(&self, key: &CanonicalKey) -> Option<&TypeEntry> {
        self.entries().find(|e| &e.key == key)
    }

    pub fn len(&self) -> usize {
        self.buckets.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn entries(&self) -> impl Iterator<Item = &TypeEntry> {
        self.buckets.values().flat_map(|b| b.values())
    }

    pub fn f_vectors(&self) -> Vec<Vec<usize>> {
        self.entries().map(|e| e.f_vector.clone()).collect()
    }
}
