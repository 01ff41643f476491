//! Decide whether two hyperplanes cut combinatorially equal slices.
//!
//! cargo run --example same_type -- 4,-2,-3 0 4,2,3 0

use cube_slices::combtype::canonical_key;
use cube_slices::cube::CubeSpec;
use cube_slices::slice::{build_slice, Hyperplane, Slice};

fn parse(w: &str, a: &str) -> anyhow::Result<Slice> {
    let w: Vec<i64> = w.split(',').map(str::parse).collect::<Result<_, _>>()?;
    let h = Hyperplane::from_ints(&w, a.parse()?).ok_or_else(|| anyhow::anyhow!("zero normal"))?;
    build_slice(&CubeSpec::affine(w.len()), &h).ok_or_else(|| anyhow::anyhow!("{h} is not a slice"))
}

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let args: Vec<&str> = if args.len() == 4 {
        args.iter().map(String::as_str).collect()
    } else {
        vec!["4,-2,-3", "0", "4,2,3", "0"]
    };
    let (s, t) = (parse(args[0], args[1])?, parse(args[2], args[3])?);
    let (ks, kt) = (canonical_key(&s), canonical_key(&t));
    println!("{:?}  {ks}", s.f_vector());
    println!("{:?}  {kt}", t.f_vector());
    println!("{}", if ks == kt { "same type" } else { "different types" });
    Ok(())
}
