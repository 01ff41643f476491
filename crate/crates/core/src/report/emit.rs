//! Text renderings of runs: type files, color-class files, histograms and
//! tables.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::classifier::ClassificationRun;
use crate::color_class::ColorClass;
use crate::combtype::TypeEntry;
use crate::cube::Mode;
use crate::linalg::format_rational;
use crate::slice::Slice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FileKind {
    FVector,
    Normal,
    Vertices,
}

impl FileKind {
    pub const ALL: [FileKind; 3] = [FileKind::FVector, FileKind::Normal, FileKind::Vertices];

    fn letter(self) -> char {
        match self {
            FileKind::FVector => 'f',
            FileKind::Normal => 'u',
            FileKind::Vertices => 's',
        }
    }
}

/// Which types a file lists: the generic ones, those through vertices of a
/// given rank, or all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Scope {
    Generic,
    Rank(usize),
    Total,
}

impl Scope {
    fn suffix(self) -> String {
        match self {
            Scope::Generic => "int".into(),
            Scope::Rank(k) => format!("{k}v"),
            Scope::Total => "tot".into(),
        }
    }
}

pub fn file_name(d: usize, mode: Mode, kind: FileKind, scope: Scope) -> String {
    let c = if mode == Mode::Central { "c" } else { "" };
    format!("{d}cube{}{c}{}.txt", kind.letter(), scope.suffix())
}

pub fn f_vector_line(f: &[usize]) -> String {
    let parts: Vec<String> = f.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn normal_line(s: &Slice, mode: Mode) -> String {
    let parts: Vec<String> = s
        .hyperplane()
        .ambient_normal(mode)
        .iter()
        .map(|x| x.to_string())
        .collect();
    parts.join(" ")
}

pub fn vertices_line(s: &Slice) -> String {
    let parts: Vec<String> = s
        .vertices()
        .iter()
        .map(|v| {
            let c: Vec<String> = v.coords.entries().iter().map(format_rational).collect();
            c.join(" ")
        })
        .collect();
    parts.join(";")
}

/// The scopes a run can fill.
pub fn scopes(run: &ClassificationRun) -> Vec<Scope> {
    let mut out = vec![Scope::Generic];
    if !run.generic_only {
        out.extend((1..=run.max_k).map(Scope::Rank));
        out.push(Scope::Total);
    }
    out
}

/// Entries of a scope in registry order, each with the representative
/// slice for that scope.
pub fn scope_entries(run: &ClassificationRun, scope: Scope) -> Vec<(&TypeEntry, &Slice)> {
    run.registry
        .entries()
        .filter_map(|e| match scope {
            Scope::Total => Some((e, &e.representative)),
            Scope::Generic => e.by_k.get(&0).map(|s| (e, s)),
            Scope::Rank(k) => e.by_k.get(&k).map(|s| (e, s)),
        })
        .collect()
}

pub fn render_types(run: &ClassificationRun, kind: FileKind, scope: Scope) -> String {
    let mode = run.spec.mode();
    let mut out = String::new();
    for (e, s) in scope_entries(run, scope) {
        let line = match kind {
            FileKind::FVector => f_vector_line(&e.f_vector),
            FileKind::Normal => normal_line(s, mode),
            FileKind::Vertices => vertices_line(s),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// `vertex count;edges;colors` with edges as `a-b` pairs and colors as
/// bits, `1` for a cube vertex.
pub fn color_class_line(c: &ColorClass) -> String {
    let edges: Vec<String> = c
        .graph
        .edges()
        .iter()
        .map(|(a, b)| format!("{a}-{b}"))
        .collect();
    format!("{};{};{}", c.graph.len(), edges.join(" "), c.graph.color_string())
}

pub fn render_color_classes(classes: &[ColorClass]) -> String {
    classes.iter().map(|c| color_class_line(c) + "\n").collect()
}

pub fn render_color_class_vertices(classes: &[ColorClass]) -> String {
    classes.iter().map(|c| vertices_line(&c.slice) + "\n").collect()
}

pub const HISTOGRAM_HEADER: &str = "vertex_count,affine_all,affine_generic,central_all,central_generic";

/// Vertex-count histogram of one or two runs of the same cube.
pub fn render_histogram(affine: Option<&ClassificationRun>, central: Option<&ClassificationRun>) -> String {
    let series = |run: Option<&ClassificationRun>, generic: bool| -> Option<BTreeMap<usize, usize>> {
        let run = run?;
        if run.generic_only && !generic {
            return None;
        }
        let mut h = BTreeMap::new();
        for e in run.registry.entries() {
            if !generic || e.by_k.contains_key(&0) {
                *h.entry(e.num_vertices()).or_default() += 1;
            }
        }
        Some(h)
    };
    let cols = [
        series(affine, false),
        series(affine, true),
        series(central, false),
        series(central, true),
    ];
    let mut counts: Vec<usize> = cols.iter().flatten().flat_map(|h| h.keys().copied()).collect();
    counts.sort_unstable();
    counts.dedup();
    let mut out = String::from(HISTOGRAM_HEADER);
    out.push('\n');
    for n in counts {
        let _ = write!(out, "{n}");
        for c in &cols {
            match c {
                Some(h) => {
                    let _ = write!(out, ",{}", h.get(&n).copied().unwrap_or(0));
                }
                None => out.push(','),
            }
        }
        out.push('\n');
    }
    out
}

pub fn render_tables(run: &ClassificationRun) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} slices of the {}-cube: {} types",
        run.spec.mode(),
        run.spec.d(),
        run.num_types()
    );
    let _ = writeln!(out, "types per k: {:?}", run.per_k_counts());
    let _ = writeln!(out, "new per k:   {:?}", run.per_k_new());
    let _ = writeln!(out, "cells of the full arrangement: {}", run.master_cells());
    for rank in 1..=run.max_k {
        let _ = writeln!(out, "cells per flat of rank {rank}: {:?}", run.cells_per_flat(rank));
    }
    for k in 0..=run.max_k {
        let mut fs: Vec<(Vec<usize>, bool)> = scope_entries(run, if k == 0 { Scope::Generic } else { Scope::Rank(k) })
            .into_iter()
            .map(|(e, _)| (e.f_vector.clone(), e.central_ks.contains(&k)))
            .collect();
        fs.sort();
        let cells: Vec<String> = fs
            .iter()
            .map(|(f, c)| format!("{}{}", f_vector_line(f), if *c { "*" } else { "" }))
            .collect();
        let _ = writeln!(out, "k={k}: {}", cells.join(" "));
    }
    out
}
