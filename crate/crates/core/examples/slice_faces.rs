//! Cut a cube with one hyperplane and print the section's vertices, facets
//! and face counts.
//!
//! cargo run --example slice_faces -- 1,1,1,0 0

use cube_slices::combtype::canonical_key;
use cube_slices::cube::CubeSpec;
use cube_slices::slice::{build_slice, Hyperplane, VertexKind};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let w: Vec<i64> = args
        .next()
        .unwrap_or_else(|| "1,1,1,0".into())
        .split(',')
        .map(str::parse)
        .collect::<Result<_, _>>()?;
    let a: i64 = args.next().as_deref().unwrap_or("0").parse()?;
    let cube = CubeSpec::affine(w.len());
    let h = Hyperplane::from_ints(&w, a).ok_or_else(|| anyhow::anyhow!("zero normal"))?;
    let s = build_slice(&cube, &h).ok_or_else(|| anyhow::anyhow!("{h} misses the interior"))?;

    println!("{h}: f-vector {:?}, k = {}", s.f_vector(), s.k());
    for (i, v) in s.vertices().iter().enumerate() {
        let from = match v.kind {
            VertexKind::Cube(c) => format!("cube vertex {c}"),
            VertexKind::Edge(p, q) => format!("edge {p}-{q}"),
        };
        println!("  v{i}: ({}) from {from}", v.coords);
    }
    for (f, on) in s.facets().iter().zip(s.incidence()) {
        let vs: Vec<usize> = on.iter().collect();
        println!("  facet {f}: {vs:?}");
    }
    println!("edges: {:?}", s.graph_edges());
    println!("key: {}", canonical_key(&s));
    Ok(())
}
