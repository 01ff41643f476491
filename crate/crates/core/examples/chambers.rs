//! Chambers of the arrangement of hyperplanes orthogonal to the cube's
//! vertices, with one exact witness per chamber.
//!
//! cargo run --example chambers -- 3

use cube_slices::arrangement::{count_chambers, enumerate_chambers, master_arrangement, verify_chamber};
use cube_slices::cube::CubeSpec;

fn main() -> anyhow::Result<()> {
    let d: usize = std::env::args().nth(1).as_deref().unwrap_or("3").parse()?;
    let cube = CubeSpec::affine(d);
    let spec = master_arrangement(&cube);
    println!(
        "{} hyperplanes in dimension {}, {} chambers",
        spec.len(),
        spec.ambient_dim(),
        count_chambers(&spec)
    );
    if d <= 3 {
        for c in enumerate_chambers(&spec) {
            assert!(verify_chamber(&spec, &c.sign, &c.witness));
            let signs: String = spec
                .input_signs(&c.sign, cube.num_vertices())
                .iter()
                .map(|&s| if s > 0 { '+' } else { '-' })
                .collect();
            println!("{signs}  ({})", c.witness);
        }
    }
    Ok(())
}
