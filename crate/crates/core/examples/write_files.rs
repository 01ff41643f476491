//! Write the type files, histogram and tables of one run into a directory
//! and compare against the reference counts.
//!
//! cargo run --release --example write_files -- 4 out/

use cube_slices::cube::Mode;
use cube_slices::report::{run, Check, Emit, RunConfig};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: usize = args.next().as_deref().unwrap_or("4").parse()?;
    let out = args.next().unwrap_or_else(|| "slices-out".into());
    let mut config = RunConfig::new(d, Mode::Affine);
    config.out_dir = out.into();
    config.emit = [Emit::F, Emit::U, Emit::S, Emit::Histogram, Emit::Tables].into();
    config.checks = [Check::Tables, Check::Oeis].into();
    let report = run(&config)?;
    for f in &report.files {
        println!("wrote {}", f.display());
    }
    for o in &report.outcomes {
        println!("{o}");
    }
    Ok(())
}
