use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use cube_slices::cube::Mode;
use cube_slices::report::{run, Check, Emit, RunConfig};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Affine,
    Central,
}

/// Classify hyperplane slices of the cube [-1,1]^d by combinatorial type.
#[derive(Debug, Parser)]
#[command(version)]
struct Cli {
    #[arg(long)]
    dim: usize,
    #[arg(long, value_enum, default_value = "affine")]
    mode: ModeArg,
    /// Only hyperplanes through no cube vertex.
    #[arg(long)]
    generic_only: bool,
    /// Largest rank of cube vertices a hyperplane may contain.
    #[arg(long)]
    max_k: Option<usize>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Comma-separated subset of f,u,s,graphs,histogram,tables.
    #[arg(long, value_delimiter = ',')]
    emit: Vec<Emit>,
    /// Comma-separated subset of tables,conjectures,thm22,colorclasses,oeis.
    #[arg(long, value_delimiter = ',')]
    check: Vec<Check>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = RunConfig {
        dim: cli.dim,
        mode: match cli.mode {
            ModeArg::Affine => Mode::Affine,
            ModeArg::Central => Mode::Central,
        },
        generic_only: cli.generic_only,
        max_k: cli.max_k,
        workers: cli.workers,
        out_dir: cli.out_dir,
        emit: cli.emit.into_iter().collect::<BTreeSet<_>>(),
        checks: cli.check.into_iter().collect::<BTreeSet<_>>(),
    };
    match run(&config) {
        Ok(report) => {
            println!("{} {}-cube: {} types", config.mode, config.dim, report.num_types);
            for o in &report.outcomes {
                println!("{o}");
            }
            for f in &report.files {
                println!("wrote {}", f.display());
            }
            let mut failed = false;
            for o in report.failures() {
                failed = true;
                eprintln!("{}", serde_json::to_string(o).expect("serializable"));
            }
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "error": e.to_string() }));
            ExitCode::from(2)
        }
    }
}
