//! Runs driven by a [`RunConfig`]: classification, file output and
//! cross-checks against reference counts.

pub mod emit;
pub mod reference;

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::classifier::{
    check_central_intersection_conjecture, check_generic_central_edge_criterion, classify,
    max_vertex_construction, max_vertex_count, vertex_gap_report, ClassificationRun,
    ClassifyOptions,
};
use crate::color_class::{enumerate_color_classes, ColorClass, ColorClassOptions};
use crate::cube::{CubeSpec, Mode};
use crate::slice::build_slice;

use emit::{FileKind, Scope};

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("invalid configuration: {0}")]
    Config(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Emit {
    F,
    U,
    S,
    Graphs,
    Histogram,
    Tables,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Tables,
    Conjectures,
    Thm22,
    ColorClasses,
    Oeis,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown item `{0}`")]
pub struct UnknownItem(pub String);

impl FromStr for Emit {
    type Err = UnknownItem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "f" => Emit::F,
            "u" => Emit::U,
            "s" => Emit::S,
            "graphs" => Emit::Graphs,
            "histogram" => Emit::Histogram,
            "tables" => Emit::Tables,
            _ => return Err(UnknownItem(s.into())),
        })
    }
}

impl FromStr for Check {
    type Err = UnknownItem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "tables" => Check::Tables,
            "conjectures" => Check::Conjectures,
            "thm22" => Check::Thm22,
            "colorclasses" => Check::ColorClasses,
            "oeis" => Check::Oeis,
            _ => return Err(UnknownItem(s.into())),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub dim: usize,
    pub mode: Mode,
    pub generic_only: bool,
    pub max_k: Option<usize>,
    pub workers: usize,
    pub out_dir: PathBuf,
    pub emit: BTreeSet<Emit>,
    pub checks: BTreeSet<Check>,
}

impl RunConfig {
    pub fn new(dim: usize, mode: Mode) -> Self {
        Self {
            dim,
            mode,
            generic_only: false,
            max_k: None,
            workers: 1,
            out_dir: PathBuf::from("."),
            emit: BTreeSet::new(),
            checks: BTreeSet::new(),
        }
    }

    pub fn validate(&self) -> Result<CubeSpec, ReportError> {
        if self.workers == 0 {
            return Err(ReportError::Config("workers must be at least 1".into()));
        }
        CubeSpec::new(self.dim, self.mode).map_err(|e| ReportError::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported without a verdict.
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
}

impl CheckOutcome {
    fn compare<T: fmt::Debug + PartialEq>(check: &str, name: &str, expected: T, actual: T) -> Self {
        let status = if expected == actual {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            check: check.into(),
            name: name.into(),
            status,
            expected: format!("{expected:?}"),
            actual: format!("{actual:?}"),
        }
    }

    fn holds(check: &str, name: &str, ok: bool, actual: String) -> Self {
        Self {
            check: check.into(),
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected: "true".into(),
            actual,
        }
    }

    fn info(check: &str, name: &str, actual: String) -> Self {
        Self {
            check: check.into(),
            name: name.into(),
            status: Status::Info,
            expected: String::new(),
            actual,
        }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        };
        write!(f, "{tag} {}/{}: {}", self.check, self.name, self.actual)?;
        if self.status == Status::Fail {
            write!(f, " (expected {})", self.expected)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub num_types: usize,
    pub outcomes: Vec<CheckOutcome>,
    pub files: Vec<PathBuf>,
}

impl RunReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| o.failed())
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

fn write_file(dir: &Path, name: &str, contents: &str, files: &mut Vec<PathBuf>) -> Result<(), ReportError> {
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|source| ReportError::Io {
        path: path.clone(),
        source,
    })?;
    files.push(path);
    Ok(())
}

/// Totals, per-`k` breakdowns and cell counts against the reference tables.
pub fn check_tables(run: &ClassificationRun) -> Vec<CheckOutcome> {
    let (d, mode) = (run.spec.d(), run.spec.mode());
    let mut out = Vec::new();
    if let Some(n) = reference::type_count(d, mode, run.generic_only) {
        out.push(CheckOutcome::compare("tables", "types", n, run.num_types()));
    }
    if run.generic_only {
        return out;
    }
    if let Some((per_k, new)) = reference::per_k(d, mode) {
        if run.max_k + 1 == per_k.len() {
            out.push(CheckOutcome::compare("tables", "types_per_k", per_k.to_vec(), run.per_k_counts()));
            out.push(CheckOutcome::compare("tables", "new_per_k", new.to_vec(), run.per_k_new()[1..].to_vec()));
        }
    }
    // the central arrangement of C_d is the affine one of C_{d-1}
    let ref_d = if mode == Mode::Central { d - 1 } else { d };
    if let Some(rows) = reference::cells_by_rank(ref_d) {
        let mut actual = vec![BTreeSet::from([run.master_cells()])];
        actual.extend((1..rows.len()).map(|r| run.cells_per_flat(r)));
        if run.max_k + 1 >= rows.len() {
            out.push(CheckOutcome::compare("tables", "cells_per_flat", rows, actual));
        }
    }
    if d == 4 && mode == Mode::Affine && run.max_k == 4 {
        out.extend(check_four_cube_columns(run));
    }
    out
}

/// f-vectors by `k` for `C_4`, first as plain multisets, then with the
/// central marks. `run` must carry central flags.
pub fn check_four_cube_columns(run: &ClassificationRun) -> Vec<CheckOutcome> {
    let published = reference::four_cube_columns();
    let ours: Vec<Vec<(Vec<usize>, bool)>> = (0..=4)
        .map(|k| {
            let scope = if k == 0 { Scope::Generic } else { Scope::Rank(k) };
            let mut col: Vec<(Vec<usize>, bool)> = emit::scope_entries(run, scope)
                .into_iter()
                .map(|(e, _)| (e.f_vector.clone(), e.central_ks.contains(&k)))
                .collect();
            col.sort();
            col
        })
        .collect();
    let strip = |cols: &[Vec<(Vec<usize>, bool)>]| -> Vec<Vec<Vec<usize>>> {
        cols.iter()
            .map(|c| c.iter().map(|(f, _)| f.clone()).collect())
            .collect()
    };
    let marks = |cols: &[Vec<(Vec<usize>, bool)>]| -> Vec<(usize, Vec<usize>)> {
        let mut m: Vec<(usize, Vec<usize>)> = cols
            .iter()
            .enumerate()
            .flat_map(|(k, c)| c.iter().filter(|e| e.1).map(move |e| (k, e.0.clone())))
            .collect();
        m.sort();
        m
    };
    let distinct_types = run.num_types();
    vec![
        CheckOutcome::compare("tables", "four_cube_types", 30, distinct_types),
        CheckOutcome::compare("tables", "four_cube_f_vectors", strip(&published), strip(&ours)),
        CheckOutcome::compare("tables", "four_cube_central_marks", marks(&published), marks(&ours)),
    ]
}

/// Vertex-count bound, and the conjectures relevant to the run's mode.
pub fn check_conjectures(run: &ClassificationRun) -> Vec<CheckOutcome> {
    let cube = run.spec;
    let d = cube.d();
    let mut out = Vec::new();
    let h = max_vertex_construction(d);
    let s = build_slice(&CubeSpec::affine(d), &h).expect("central hyperplane slices the cube");
    out.push(CheckOutcome::compare(
        "conjectures",
        "max_vertex_construction",
        (max_vertex_count(d) as usize, 0),
        (s.num_vertices(), s.k()),
    ));
    let hist = run.vertex_count_distribution();
    if let Some(&max) = hist.keys().next_back() {
        out.push(CheckOutcome::compare(
            "conjectures",
            "max_vertex_count",
            max_vertex_count(d) as usize,
            max,
        ));
        let ks: BTreeSet<usize> = run
            .registry
            .entries()
            .filter(|e| e.num_vertices() == max)
            .flat_map(|e| e.by_k.keys().copied())
            .collect();
        out.push(CheckOutcome::compare("conjectures", "max_vertex_only_generic", BTreeSet::from([0]), ks));
    }
    match cube.mode() {
        Mode::Central => {
            if let Some(generic) = run.per_k_types.get(&0) {
                let facets: BTreeSet<usize> = run
                    .registry
                    .entries()
                    .filter(|e| generic.contains(&e.key))
                    .map(|e| e.representative.facets().len())
                    .collect();
                let ok = facets.iter().all(|&f| f == 2 * d - 2 || f == 2 * d);
                out.push(CheckOutcome::holds(
                    "conjectures",
                    "generic_central_facet_counts",
                    ok,
                    format!("{facets:?}"),
                ));
            }
            if !run.generic_only {
                let rep = check_central_intersection_conjecture(run);
                let bad: Vec<(usize, usize, usize)> = rep
                    .pairs
                    .iter()
                    .filter(|p| !p.is_cube_only)
                    .map(|p| (p.k1, p.k2, p.common.len()))
                    .collect();
                out.push(CheckOutcome::holds(
                    "conjectures",
                    "pairwise_intersections_are_the_cube",
                    rep.conjecture_holds(),
                    format!("{} pairs, violations {bad:?}", rep.pairs.len()),
                ));
                let cons: Vec<(usize, usize, bool)> = rep
                    .constructions
                    .iter()
                    .map(|c| (c.k, c.slice_k, c.is_cube))
                    .collect();
                out.push(CheckOutcome::holds(
                    "conjectures",
                    "cube_slice_through_each_rank",
                    rep.constructions_hold(),
                    format!("{cons:?}"),
                ));
            }
        }
        Mode::Affine => {
            let gap = vertex_gap_report(run);
            out.push(CheckOutcome::info(
                "conjectures",
                "power_of_two_vertex_counts",
                format!(
                    "predicate {} attained {:?}",
                    gap.power_of_two_predicate,
                    gap.attained()
                ),
            ));
        }
    }
    out
}

pub fn check_edge_criterion(d: usize) -> Vec<CheckOutcome> {
    if d > 4 {
        return vec![CheckOutcome::info("thm22", "edge_criterion", format!("skipped for d = {d}"))];
    }
    let rep = check_generic_central_edge_criterion(d);
    let mut out = vec![CheckOutcome::holds(
        "thm22",
        "edge_classes_match_types",
        rep.agree && rep.classes_by_edges == rep.classes_by_key,
        format!(
            "{} chambers, {} edge classes, {} types",
            rep.chambers, rep.classes_by_edges, rep.classes_by_key
        ),
    )];
    if let Some(n) = reference::type_count(d, Mode::Central, true) {
        out.push(CheckOutcome::compare("thm22", "generic_central_types", n, rep.classes_by_key));
    }
    out
}

pub fn check_color_classes(d: usize, classes: &[ColorClass]) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    match reference::color_classes(d) {
        Some(n) => out.push(CheckOutcome::compare("colorclasses", "count", n, classes.len())),
        None => out.push(CheckOutcome::info("colorclasses", "count", classes.len().to_string())),
    }
    let bad = classes
        .iter()
        .filter(|c| (0..c.graph.len()).any(|v| !c.graph.is_white(v) && c.graph.degree(v) != d - 1))
        .count();
    out.push(CheckOutcome::compare("colorclasses", "black_vertex_degree", 0, bad));
    out
}

/// Cells of the full arrangement and of a one-vertex flat against the
/// integer sequences they are known to follow.
pub fn check_oeis_run(run: &ClassificationRun) -> Vec<CheckOutcome> {
    let d = run.spec.d();
    let n = if run.spec.mode() == Mode::Central { d - 1 } else { d };
    let mut out = Vec::new();
    if let Some(&t) = reference::THRESHOLD_FUNCTIONS.get(n) {
        out.push(CheckOutcome::compare("oeis", "threshold_functions", t, run.master_cells()));
    }
    if let (Some(r), true) = (reference::resonance(n), run.max_k >= 1) {
        out.push(CheckOutcome::compare(
            "oeis",
            "resonance_arrangement",
            BTreeSet::from([r]),
            run.cells_per_flat(1),
        ));
    }
    out
}

/// [`check_oeis_run`] for affine cubes of dimension `3..=d_max`.
pub fn check_oeis(d_max: usize) -> Vec<CheckOutcome> {
    (3..=d_max)
        .flat_map(|d| {
            let run = classify(
                &CubeSpec::affine(d),
                ClassifyOptions {
                    generic_only: false,
                    max_k: Some(1),
                },
            );
            check_oeis_run(&run)
        })
        .collect()
}

/// Classify, write the requested files and run the requested checks.
pub fn run(config: &RunConfig) -> Result<RunReport, ReportError> {
    let cube = config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()?;
    pool.install(|| run_in_pool(config, cube))
}

fn run_in_pool(config: &RunConfig, cube: CubeSpec) -> Result<RunReport, ReportError> {
    let opts = ClassifyOptions {
        generic_only: config.generic_only,
        max_k: config.max_k,
    };
    let mut run = classify(&cube, opts);
    // central realizability of affine types comes from the central run
    let central = if cube.mode() == Mode::Affine && !config.generic_only {
        let c = classify(&CubeSpec::central(cube.d()), ClassifyOptions::default());
        run.registry.mark_central(&c.registry);
        Some(c)
    } else {
        None
    };
    let mut report = RunReport {
        num_types: run.num_types(),
        ..RunReport::default()
    };
    let needs_dir = !config.emit.is_empty();
    if needs_dir {
        std::fs::create_dir_all(&config.out_dir).map_err(|source| ReportError::Io {
            path: config.out_dir.clone(),
            source,
        })?;
    }
    let dir = config.out_dir.as_path();
    let d = cube.d();
    for kind in FileKind::ALL {
        let wanted = match kind {
            FileKind::FVector => Emit::F,
            FileKind::Normal => Emit::U,
            FileKind::Vertices => Emit::S,
        };
        if config.emit.contains(&wanted) {
            for scope in emit::scopes(&run) {
                let name = emit::file_name(d, cube.mode(), kind, scope);
                write_file(dir, &name, &emit::render_types(&run, kind, scope), &mut report.files)?;
            }
        }
    }
    if config.emit.contains(&Emit::Histogram) {
        let (a, c) = match cube.mode() {
            Mode::Affine => (Some(&run), central.as_ref()),
            Mode::Central => (None, Some(&run)),
        };
        let name = format!("{d}cube{}_histogram.csv", if cube.mode() == Mode::Central { "c" } else { "" });
        write_file(dir, &name, &emit::render_histogram(a, c), &mut report.files)?;
    }
    if config.emit.contains(&Emit::Tables) {
        let name = format!("{d}cube{}tables.txt", if cube.mode() == Mode::Central { "c" } else { "" });
        write_file(dir, &name, &emit::render_tables(&run), &mut report.files)?;
    }
    let classes = if config.emit.contains(&Emit::Graphs) || config.checks.contains(&Check::ColorClasses) {
        Some(enumerate_color_classes(d, ColorClassOptions::default()).0)
    } else {
        None
    };
    if let (true, Some(classes)) = (config.emit.contains(&Emit::Graphs), &classes) {
        write_file(dir, &format!("{d}cubeGraphs.txt"), &emit::render_color_classes(classes), &mut report.files)?;
        write_file(
            dir,
            &format!("{d}cubeGraphVerts.txt"),
            &emit::render_color_class_vertices(classes),
            &mut report.files,
        )?;
    }
    for check in &config.checks {
        let outcomes = match check {
            Check::Tables => check_tables(&run),
            Check::Conjectures => check_conjectures(&run),
            Check::Thm22 => check_edge_criterion(d),
            Check::ColorClasses => check_color_classes(d, classes.as_deref().unwrap_or_default()),
            Check::Oeis => check_oeis_run(&run),
        };
        report.outcomes.extend(outcomes);
    }
    Ok(report)
}
