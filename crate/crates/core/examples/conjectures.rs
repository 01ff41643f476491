//! Structural checks on a classification: shared types between ranks of
//! central runs, the edge criterion for generic central slices, and the
//! attained vertex counts of affine slices.
//!
//! cargo run --release --example conjectures -- 5

use cube_slices::classifier::{
    check_central_intersection_conjecture, check_generic_central_edge_criterion, classify,
    vertex_gap_report, ClassifyOptions,
};
use cube_slices::cube::CubeSpec;

fn main() -> anyhow::Result<()> {
    let d: usize = std::env::args().nth(1).as_deref().unwrap_or("4").parse()?;

    let central = classify(&CubeSpec::central(d), ClassifyOptions::default());
    let rep = check_central_intersection_conjecture(&central);
    for p in &rep.pairs {
        println!("k={} and k={}: {} shared types, cube only: {}", p.k1, p.k2, p.common.len(), p.is_cube_only);
    }
    for c in &rep.constructions {
        println!("k={}: {} gives {:?} at k={} (cube: {})", c.k, c.hyperplane, c.f_vector, c.slice_k, c.is_cube);
    }

    if d <= 4 {
        let e = check_generic_central_edge_criterion(d);
        println!(
            "{} generic chambers: {} edge classes, {} types, same partition: {}",
            e.chambers, e.classes_by_edges, e.classes_by_key, e.agree
        );
    }

    let affine = classify(&CubeSpec::affine(d), ClassifyOptions::default());
    let gap = vertex_gap_report(&affine);
    let missing: Vec<usize> = gap.counts.iter().filter(|c| !c.1).map(|c| c.0).collect();
    println!("vertex counts attained: {:?}", gap.attained());
    println!("missing: {missing:?}; no small power of two: {}", gap.power_of_two_predicate);
    Ok(())
}
