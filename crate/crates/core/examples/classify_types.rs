//! Classify all slices of a cube and print the per-k breakdown.
//!
//! cargo run --release --example classify_types -- 4 affine

use std::time::Instant;

use cube_slices::classifier::{classify, ClassifyOptions};
use cube_slices::cube::{CubeSpec, Mode};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: usize = args.next().as_deref().unwrap_or("4").parse()?;
    let mode = match args.next().as_deref() {
        Some("central") => Mode::Central,
        _ => Mode::Affine,
    };
    let generic_only = args.next().as_deref() == Some("generic");
    let cube = CubeSpec::new(d, mode)?;
    let t = Instant::now();
    let run = classify(&cube, ClassifyOptions { generic_only, max_k: None });
    println!("{mode} d={d}: {} types in {:.2?}", run.num_types(), t.elapsed());
    println!("per k:  {:?}", run.per_k_counts());
    println!("new:    {:?}", run.per_k_new());
    println!("master cells: {}", run.master_cells());
    for rank in 1..=run.max_k {
        println!("cells per flat of rank {rank}: {:?}", run.cells_per_flat(rank));
    }
    for (n, c) in run.vertex_count_distribution() {
        println!("{n:>4} vertices: {c}");
    }
    Ok(())
}
