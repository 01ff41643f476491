//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use cube_slices::cube::{CubeSpec, Mode};
use cube_slices::linalg::RationalVector;
use cube_slices::slice::{build_slice, Hyperplane, Slice};

/// Rank of an integer matrix by fraction-free elimination on i128.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            let (a, b) = (m[r][c], m[i][c]);
            let pivot = m[r].clone();
            for (x, p) in m[i].iter_mut().zip(&pivot) {
                *x = *x * a - p * b;
            }
            let g = m[i].iter().fold(0i128, |g, &x| num_gcd(g, x.abs()));
            if g > 1 {
                m[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
    }
    r
}

fn num_gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

/// Distinct hyperplanes among nonzero integer normals.
pub fn distinct_normals(normals: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut seen = BTreeSet::new();
    for n in normals {
        if n.iter().all(|&x| x == 0) {
            continue;
        }
        let g = n.iter().fold(0i128, |g, &x| num_gcd(g, (x as i128).abs())) as i64;
        let mut p: Vec<i64> = n.iter().map(|x| x / g).collect();
        if p.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            p.iter_mut().for_each(|x| *x = -*x);
        }
        seen.insert(p);
    }
    seen.into_iter().collect()
}

/// Chambers of a central arrangement by Whitney's formula
/// `sum over subsets S of (-1)^(|S| - rank S)`.
pub fn whitney_chambers(normals: &[Vec<i64>]) -> usize {
    let h = distinct_normals(normals);
    let mut total: i64 = 0;
    for mask in 0u32..1 << h.len() {
        let sub: Vec<Vec<i64>> = (0..h.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| h[i].clone())
            .collect();
        let e = sub.len() - rank(&sub);
        total += if e.is_multiple_of(2) { 1 } else { -1 };
    }
    total as usize
}

/// f-vector of `C_d ∩ {<w,x> = a}` from the faces of the cube: a cube face
/// `F` crossed by the hyperplane in its relative interior contributes a face
/// of dimension `dim F - 1`, a face inside the hyperplane contributes itself.
pub fn f_vector_oracle(w: &[i64], a: i64) -> Vec<usize> {
    let d = w.len();
    let mut f = vec![0usize; d + 1];
    // each coordinate: 0 free, 1 fixed at -1, 2 fixed at +1
    let mut pattern = vec![0u8; d];
    loop {
        let free: Vec<usize> = (0..d).filter(|&i| pattern[i] == 0).collect();
        let base: i64 = (0..d)
            .map(|i| match pattern[i] {
                1 => -w[i],
                2 => w[i],
                _ => 0,
            })
            .sum::<i64>()
            - a;
        let spread: i64 = free.iter().map(|&i| w[i].abs()).sum();
        let (lo, hi) = (base - spread, base + spread);
        let dim = free.len();
        if lo < 0 && hi > 0 {
            f[dim - 1] += 1;
        } else if lo == 0 && hi == 0 {
            f[dim] += 1;
        }
        // next pattern
        let mut i = 0;
        while i < d && pattern[i] == 2 {
            pattern[i] = 0;
            i += 1;
        }
        if i == d {
            break;
        }
        pattern[i] += 1;
    }
    f.truncate(d - 1);
    f
}

/// Whether the hyperplane meets the interior of the cube.
pub fn cuts_interior(w: &[i64], a: i64) -> bool {
    let s: i64 = w.iter().map(|x| x.abs()).sum();
    s > 0 && -s < a && a < s
}

pub fn slice_of(w: &[i64], a: i64) -> Option<Slice> {
    let h = Hyperplane::new(
        RationalVector::from_ints(w),
        cube_slices::linalg::int(a),
    )?;
    build_slice(&CubeSpec::new(w.len(), Mode::Affine).ok()?, &h)
}

/// Brute-force combinatorial isomorphism: a vertex bijection carrying the
/// facet vertex sets of `a` onto those of `b`.
pub fn isomorphic(a: &Slice, b: &Slice) -> bool {
    if a.f_vector() != b.f_vector() || a.facets().len() != b.facets().len() {
        return false;
    }
    let sets = |s: &Slice| -> Vec<u128> {
        s.incidence()
            .iter()
            .map(|on| on.iter().fold(0u128, |m, v| m | 1 << v))
            .collect()
    };
    let (fa, fb) = (sets(a), sets(b));
    let n = a.num_vertices();
    assert!(n <= 128);
    // common[i][j] = number of facets through both i and j
    let common = |f: &[u128]| -> Vec<Vec<u32>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        f.iter()
                            .filter(|&&m| m >> i & 1 == 1 && m >> j & 1 == 1)
                            .count() as u32
                    })
                    .collect()
            })
            .collect()
    };
    let (ca, cb) = (common(&fa), common(&fb));
    let target: BTreeSet<u128> = fb.iter().copied().collect();

    fn go(
        i: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ca: &[Vec<u32>],
        cb: &[Vec<u32>],
        fa: &[u128],
        target: &BTreeSet<u128>,
    ) -> bool {
        let n = ca.len();
        if i == n {
            return fa.iter().all(|&m| {
                let img = (0..n)
                    .filter(|&v| m >> v & 1 == 1)
                    .fold(0u128, |acc, v| acc | 1 << map[v]);
                target.contains(&img)
            });
        }
        for c in 0..n {
            if used[c] || ca[i][i] != cb[c][c] {
                continue;
            }
            if (0..i).any(|j| ca[i][j] != cb[c][map[j]]) {
                continue;
            }
            used[c] = true;
            map.push(c);
            if go(i + 1, map, used, ca, cb, fa, target) {
                return true;
            }
            map.pop();
            used[c] = false;
        }
        false
    }
    go(0, &mut Vec::new(), &mut vec![false; n], &ca, &cb, &fa, &target)
}
