//! One PASS/FAIL line per acceptance criterion. Criteria whose
//! reference values are internally inconsistent fail with exactly the
//! mismatches listed in `KNOWN`; anything else fails the target.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cube_slices::arrangement::{enumerate_chambers, ArrangementSpec};
use cube_slices::canon::canonical_form;
use cube_slices::classifier::{
    check_central_intersection_conjecture, check_generic_central_edge_criterion, classify,
    max_vertex_construction, ClassificationRun, ClassifyOptions,
};
use cube_slices::color_class::{
    enumerate_color_classes, realizable, satisfies_combinatorial_conditions,
    three_zero_counterexample, ColorClassOptions, ForbiddenSquares,
};
use cube_slices::combtype::{incidence_graph, CanonicalKey, TypeRegistry};
use cube_slices::cube::{CubeSpec, Mode};
use cube_slices::linalg::RationalVector;
use cube_slices::report::{self, emit, Emit, RunConfig};
use cube_slices::slice::build_slice;

/// Mismatches against the reference tables that are inconsistent with the
/// same tables elsewhere; see the notes in the README.
const KNOWN: &[&str] = &[
    "affine d=3 types at k=0: expected 3, got 4",
    "affine d=3 new types at k=1: expected 1, got 0",
    "affine d=4 types at k=4: expected 6, got 5",
    "C_4 central mark missing from table: [8, 12, 6] at k=3",
    "C_4 central mark missing from table: [6, 12, 8] at k=4",
    // the table lists the distinct values; several flat orbits share one
    "d=3 column 2 per orbit: expected [6, 8], got [6, 6, 8]",
    "d=3 column 3 per orbit: expected [2], got [2, 2, 2]",
    "d=4 column 2 per orbit: expected [32, 60], got [32, 32, 60, 60]",
    "d=4 column 3 per orbit: expected [6, 8, 10], got [6, 6, 8, 8, 10, 10]",
    "d=4 column 4 per orbit: expected [2], got [2, 2, 2, 2, 2, 2]",
];

#[derive(Default)]
struct Verdict {
    notes: Vec<String>,
    mismatches: Vec<String>,
}

impl Verdict {
    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn expect<T: PartialEq + Display>(&mut self, what: impl Display, expected: T, actual: T) {
        if expected != actual {
            self.mismatches
                .push(format!("{what}: expected {expected}, got {actual}"));
        }
    }

    fn require(&mut self, what: impl Display, ok: bool) {
        if !ok {
            self.mismatches.push(format!("{what}"));
        }
    }

    fn within(&mut self, what: impl Display, t: Duration, limit: Duration) {
        self.note(format!("{what} {:.2}s", t.as_secs_f64()));
        self.require(
            format!("{what} took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs()),
            t <= limit,
        );
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let x = f();
    (x, t.elapsed())
}

fn all_k() -> ClassifyOptions {
    ClassifyOptions::default()
}

fn generic() -> ClassifyOptions {
    ClassifyOptions {
        generic_only: true,
        max_k: None,
    }
}

const MINUTE: Duration = Duration::from_secs(60);
const STRETCH: Duration = Duration::from_secs(2 * 3600);

/// Full runs shared between criteria.
struct Runs {
    affine: BTreeMap<usize, ClassificationRun>,
    central: BTreeMap<usize, ClassificationRun>,
    times: BTreeMap<(Mode, usize), Duration>,
}

impl Runs {
    fn compute() -> Self {
        let mut runs = Runs {
            affine: BTreeMap::new(),
            central: BTreeMap::new(),
            times: BTreeMap::new(),
        };
        for d in 3..=5 {
            let (r, t) = timed(|| classify(&CubeSpec::affine(d), all_k()));
            runs.times.insert((Mode::Affine, d), t);
            runs.affine.insert(d, r);
        }
        for d in 3..=6 {
            let (r, t) = timed(|| classify(&CubeSpec::central(d), all_k()));
            runs.times.insert((Mode::Central, d), t);
            runs.central.insert(d, r);
        }
        // central flags for C_4
        let central4 = &runs.central[&4].registry;
        runs.affine.get_mut(&4).unwrap().registry.mark_central(central4);
        runs
    }
}

fn affine_totals(runs: &Runs) -> Verdict {
    let mut v = Verdict::default();
    for (d, n, limit) in [(3, 4, Duration::from_secs(5)), (4, 30, 2 * MINUTE), (5, 344, STRETCH)] {
        v.expect(format!("affine d={d} types"), n, runs.affine[&d].num_types());
        v.within(format!("affine d={d}"), runs.times[&(Mode::Affine, d)], limit);
    }
    v
}

fn central_totals(runs: &Runs) -> Verdict {
    let mut v = Verdict::default();
    for (d, n, limit) in [(3, 2, MINUTE), (4, 6, MINUTE), (5, 23, MINUTE), (6, 133, STRETCH)] {
        v.expect(format!("central d={d} types"), n, runs.central[&d].num_types());
        v.within(format!("central d={d}"), runs.times[&(Mode::Central, d)], limit);
    }
    v
}

fn generic_totals() -> Verdict {
    let mut v = Verdict::default();
    for (d, n) in [(2, 1), (3, 4), (4, 12), (5, 58)] {
        let (r, t) = timed(|| classify(&CubeSpec::affine(d), generic()));
        v.expect(format!("generic affine d={d}"), n, r.num_types());
        v.within(format!("generic affine d={d}"), t, STRETCH);
    }
    for (d, n) in [(2, 1), (3, 2), (4, 3), (5, 7), (6, 21)] {
        let (r, t) = timed(|| classify(&CubeSpec::central(d), generic()));
        v.expect(format!("generic central d={d}"), n, r.num_types());
        v.within(format!("generic central d={d}"), t, STRETCH);
    }
    v
}

fn per_k(runs: &Runs) -> Verdict {
    let mut v = Verdict::default();
    let rows: [(Mode, usize, &[usize], &[usize]); 5] = [
        (Mode::Affine, 3, &[3, 3, 2, 2], &[1, 0, 0]),
        (Mode::Affine, 4, &[12, 14, 14, 10, 6], &[7, 6, 4, 1]),
        (Mode::Central, 3, &[2, 1, 1], &[0, 0]),
        (Mode::Central, 4, &[3, 2, 2, 2], &[1, 1, 1]),
        (Mode::Central, 5, &[7, 6, 6, 5, 3], &[5, 5, 4, 2]),
    ];
    for (mode, d, types, new) in rows {
        let run = match mode {
            Mode::Affine => &runs.affine[&d],
            Mode::Central => &runs.central[&d],
        };
        let (got, got_new) = (run.per_k_counts(), run.per_k_new());
        v.expect(format!("{mode} d={d} k range"), types.len(), got.len());
        for (k, (&e, &g)) in types.iter().zip(&got).enumerate() {
            v.expect(format!("{mode} d={d} types at k={k}"), e, g);
        }
        for (k, (&e, &g)) in new.iter().zip(&got_new[1..]).enumerate() {
            v.expect(format!("{mode} d={d} new types at k={}", k + 1), e, g);
        }
        v.note(format!("{mode} d={d} {got:?} new {:?}", &got_new[1..]));
    }
    v
}

fn chamber_counts(runs: &Runs) -> Verdict {
    let mut v = Verdict::default();
    let rows: [(usize, &[&[u64]]); 2] = [
        (3, &[&[104], &[32], &[6, 8], &[2]]),
        (4, &[&[1882], &[370], &[32, 60], &[6, 8, 10], &[2]]),
    ];
    for (d, row) in rows {
        let run = &runs.affine[&d];
        v.expect(format!("d={d} column 0"), row[0][0], run.master_cells());
        for (r, col) in row.iter().enumerate().skip(1) {
            let mut cells: Vec<u64> = run
                .flats
                .iter()
                .filter(|f| f.rank == r)
                .map(|f| f.cells)
                .collect();
            cells.sort_unstable();
            v.expect(format!("d={d} column {r} per orbit"), format!("{col:?}"), format!("{cells:?}"));
            let distinct: BTreeSet<u64> = cells.iter().copied().collect();
            let listed: BTreeSet<u64> = col.iter().copied().collect();
            v.expect(format!("d={d} column {r} values"), format!("{listed:?}"), format!("{distinct:?}"));
            v.note(format!("d={d} column {r}: {} flat orbits, values {distinct:?}", cells.len()));
        }
    }
    v.expect("d=5 column 0", 94572, runs.affine[&5].master_cells());
    v
}

fn four_cube_table(runs: &Runs) -> Verdict {
    let mut v = Verdict::default();
    let run = &runs.affine[&4];
    v.expect("C_4 types", 30, run.num_types());
    let published = report::reference::four_cube_columns();
    for (k, column) in published.iter().enumerate() {
        let scope = if k == 0 { emit::Scope::Generic } else { emit::Scope::Rank(k) };
        let mut ours: Vec<Vec<usize>> = emit::scope_entries(run, scope)
            .into_iter()
            .map(|(e, _)| e.f_vector.clone())
            .collect();
        ours.sort();
        let theirs: Vec<Vec<usize>> = column.iter().map(|(f, _)| f.clone()).collect();
        v.expect(format!("C_4 column k={k}"), format!("{theirs:?}"), format!("{ours:?}"));
    }
    let expected_marks: BTreeSet<(usize, Vec<usize>, usize)> = [
        (0, vec![8, 12, 6], 1),
        (0, vec![12, 18, 8], 2),
        (2, vec![8, 12, 6], 1),
        (2, vec![10, 16, 8], 1),
        (3, vec![8, 14, 8], 1),
        (4, vec![8, 12, 6], 1),
    ]
    .into();
    let mut ours: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    for e in run.registry.entries() {
        for &k in &e.central_ks {
            *ours.entry((k, e.f_vector.clone())).or_default() += 1;
        }
    }
    let ours: BTreeSet<(usize, Vec<usize>, usize)> =
        ours.into_iter().map(|((k, f), n)| (k, f, n)).collect();
    for (k, f, n) in expected_marks.difference(&ours) {
        v.mismatches
            .push(format!("C_4 central mark not found: {f:?} x{n} at k={k}"));
    }
    for (k, f, _) in ours.difference(&expected_marks) {
        v.mismatches
            .push(format!("C_4 central mark missing from table: {f:?} at k={k}"));
    }
    v
}

fn max_vertex() -> Verdict {
    let mut v = Verdict::default();
    for (d, n) in [(3, 6), (4, 12), (5, 30), (6, 60)] {
        let (s, t) = timed(|| build_slice(&CubeSpec::central(d), &max_vertex_construction(d)));
        let Some(s) = s else {
            v.require(format!("d={d} construction slices the cube"), false);
            continue;
        };
        v.expect(format!("d={d} vertices"), n, s.num_vertices());
        v.expect(format!("d={d} k"), 0, s.k());
        v.within(format!("d={d} construction"), t, Duration::from_secs(1));
    }
    v
}

fn color_classes() -> Verdict {
    let mut v = Verdict::default();
    for (d, n, limit) in [(3, 12, Duration::from_secs(5)), (4, 61, 5 * MINUTE), (5, 484, STRETCH)] {
        let ((classes, _), t) = timed(|| enumerate_color_classes(d, ColorClassOptions::default()));
        v.expect(format!("d={d} classes"), n, classes.len());
        v.within(format!("color classes d={d}"), t, limit);
    }
    let l = three_zero_counterexample();
    v.require(
        "three-zero labeling passes the combinatorial conditions",
        satisfies_combinatorial_conditions(&l, &ForbiddenSquares::classical()),
    );
    v.require("three-zero labeling rejected by the cone check", realizable(&l).is_none());
    v
}

fn random_arrangements(rng: &mut ChaCha8Rng) -> (usize, usize) {
    let mut agree = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=6);
        let normals: Vec<Vec<i64>> = (0..m)
            .map(|_| loop {
                let x: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
                if x.iter().any(|&c| c != 0) {
                    break x;
                }
            })
            .collect();
        let inputs: Vec<RationalVector> = normals.iter().map(|x| RationalVector::from_ints(x)).collect();
        let chambers = enumerate_chambers(&ArrangementSpec::build(n, &inputs));
        if chambers.len() == common::whitney_chambers(&normals) {
            agree += 1;
        }
    }
    (agree, 200)
}

fn properties(runs: &Runs) -> Verdict {
    let mut v = Verdict::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    let (agree, total) = random_arrangements(&mut rng);
    v.expect("random arrangements matching the chamber oracle", total, agree);

    let mut relabelings = 0;
    let mut unstable = 0;
    for e in runs.affine[&4].registry.entries() {
        for s in e.by_k.values() {
            let g = incidence_graph(s);
            let mut perm: Vec<usize> = (0..g.len()).collect();
            for _ in 0..100 {
                perm.shuffle(&mut rng);
                relabelings += 1;
                if CanonicalKey::from_bytes(canonical_form(&g.permuted(&perm))) != e.key {
                    unstable += 1;
                }
            }
        }
    }
    v.expect("keys changed by relabeling", 0, unstable);
    v.note(format!("{relabelings} relabelings"));

    let mut euler_bad = 0;
    let mut checked = 0;
    for run in runs.affine.values().chain(runs.central.values()) {
        let d = run.spec.d();
        for e in run.registry.entries() {
            let alt: i64 = e
                .f_vector
                .iter()
                .enumerate()
                .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
                .sum();
            checked += 1;
            if alt != if d % 2 == 0 { 2 } else { 0 } {
                euler_bad += 1;
            }
        }
    }
    v.expect("f-vectors violating Euler", 0, euler_bad);
    v.note(format!("{checked} f-vectors"));

    let mut facet_bad = 0;
    for d in 2..=5 {
        let run = classify(&CubeSpec::central(d), all_k());
        for e in run.registry.entries() {
            for s in e.by_k.values() {
                let f = s.facet_count_profile();
                if f != 2 * d && f != 2 * d - 2 {
                    facet_bad += 1;
                }
            }
        }
    }
    v.expect("central slices with other facet counts", 0, facet_bad);

    for d in [3, 4] {
        let r = check_generic_central_edge_criterion(d);
        v.require(format!("edge criterion partition at d={d}"), r.agree);
    }

    for d in [3, 4] {
        let keys = |square_filter| {
            enumerate_color_classes(d, ColorClassOptions { square_filter })
                .0
                .into_iter()
                .map(|c| c.key)
                .collect::<Vec<_>>()
        };
        v.require(format!("square filter changes nothing at d={d}"), keys(true) == keys(false));
    }

    let identical = (|| -> anyhow::Result<bool> {
        let dirs = [tempfile::tempdir()?, tempfile::tempdir()?];
        let mut outputs = Vec::new();
        for (dir, workers) in dirs.iter().zip([1, 4]) {
            let mut c = RunConfig::new(4, Mode::Affine);
            c.workers = workers;
            c.out_dir = dir.path().to_path_buf();
            c.emit = [Emit::F, Emit::U, Emit::S, Emit::Histogram, Emit::Tables].into();
            let files = report::run(&c)?.files;
            let mut contents = Vec::new();
            for f in files {
                contents.push((f.file_name().map(|n| n.to_owned()), std::fs::read(&f)?));
            }
            outputs.push(contents);
        }
        Ok(outputs[0] == outputs[1])
    })();
    v.require("files identical for 1 and 4 workers", matches!(identical, Ok(true)));
    v
}

fn intersections(runs: &Runs) -> Verdict {
    let mut v = Verdict::default();
    for d in 3..=5 {
        let r = check_central_intersection_conjecture(&runs.central[&d]);
        v.require(format!("d={d} pairwise intersections are the cube"), r.conjecture_holds());
        v.require(format!("d={d} cube slices through each rank"), r.constructions_hold());
        v.note(format!("d={d} {} pairs", r.pairs.len()));
    }
    // the construction at d=4, k=2 against the face oracle
    let f = common::f_vector_oracle(&[-2, 1, 1, 0], 0);
    v.expect("d=4 k=2 cube slice", "[8, 12, 6]".to_string(), format!("{f:?}"));
    let mut reg = TypeRegistry::new();
    for u in [[-2i64, 1, 1, 0], [1, 0, 0, 0]] {
        if let Some(s) = common::slice_of(&u, 0) {
            reg.insert(s, true);
        }
    }
    v.expect("d=4 cube constructions share a type", 1, reg.len());
    v
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn main() -> ExitCode {
    let (runs, t) = timed(Runs::compute);
    println!("shared runs computed in {:.1}s", t.as_secs_f64());
    let criteria: Vec<Criterion> = vec![
        ("affine type counts", Box::new(|| affine_totals(&runs))),
        ("central type counts", Box::new(|| central_totals(&runs))),
        ("generic type counts", Box::new(generic_totals)),
        ("per-k breakdowns", Box::new(|| per_k(&runs))),
        ("chamber counts per flat", Box::new(|| chamber_counts(&runs))),
        ("C_4 f-vectors with central marks", Box::new(|| four_cube_table(&runs))),
        ("max-vertex constructions", Box::new(max_vertex)),
        ("color classes", Box::new(color_classes)),
        ("property suites", Box::new(|| properties(&runs))),
        ("central intersections", Box::new(|| intersections(&runs))),
    ];
    let mut unexpected = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (v, t) = timed(check);
        let status = if v.mismatches.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} {} {name} ({:.1}s)", i + 1, t.as_secs_f64());
        for n in &v.notes {
            println!("    {n}");
        }
        for m in &v.mismatches {
            let known = KNOWN.contains(&m.as_str());
            if !known {
                unexpected += 1;
            }
            println!("    mismatch{}: {m}", if known { " (known table inconsistency)" } else { "" });
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected mismatches");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
