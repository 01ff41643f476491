//! Count color classes of slices of C_d from realizable vertex labelings.
//!
//! cargo run --release --example color_classes -- 4

use std::time::Instant;

use cube_slices::color_class::{enumerate_color_classes, ColorClassOptions};

fn main() -> anyhow::Result<()> {
    let d: usize = std::env::args().nth(1).as_deref().unwrap_or("4").parse()?;
    let square_filter = std::env::args().nth(2).as_deref() != Some("nofilter");
    let t = Instant::now();
    let (classes, stats) = enumerate_color_classes(d, ColorClassOptions { square_filter });
    println!("d={d}: {} color classes in {:.2?}", classes.len(), t.elapsed());
    println!("{stats:?}");
    let mut by_size = std::collections::BTreeMap::<usize, usize>::new();
    for c in &classes {
        *by_size.entry(c.graph.len()).or_default() += 1;
    }
    for (n, c) in by_size {
        println!("{n:>4} vertices: {c}");
    }
    Ok(())
}
