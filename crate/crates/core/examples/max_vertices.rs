//! The central slice with the most vertices, for a range of dimensions.
//!
//! cargo run --release --example max_vertices -- 8

use cube_slices::classifier::{max_vertex_construction, max_vertex_count};
use cube_slices::cube::CubeSpec;
use cube_slices::slice::build_slice;

fn main() -> anyhow::Result<()> {
    let top: usize = std::env::args().nth(1).as_deref().unwrap_or("7").parse()?;
    for d in 2..=top {
        let h = max_vertex_construction(d);
        let s = build_slice(&CubeSpec::central(d), &h).expect("central hyperplanes slice the cube");
        println!(
            "d={d}: {h} has {} vertices (bound {}), k = {}, f = {:?}",
            s.num_vertices(),
            max_vertex_count(d),
            s.k(),
            s.f_vector()
        );
    }
    Ok(())
}
