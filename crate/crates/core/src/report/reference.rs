//! Reference counts used by the cross-checks.

use std::collections::BTreeSet;

use crate::cube::Mode;

/// Number of combinatorial types of slices of `C_d`, `d = 2..=7`.
pub fn type_count(d: usize, mode: Mode, generic: bool) -> Option<usize> {
    let row: [Option<usize>; 6] = match (mode, generic) {
        (Mode::Affine, false) => [Some(1), Some(4), Some(30), Some(344), Some(7346), None],
        (Mode::Affine, true) => [Some(1), Some(4), Some(12), Some(58), Some(554), None],
        (Mode::Central, false) => [1, 2, 6, 23, 133, 1657].map(Some),
        (Mode::Central, true) => [1, 2, 3, 7, 21, 135].map(Some),
    };
    d.checked_sub(2).and_then(|i| row.get(i).copied().flatten())
}

/// Types per `k` and types new at each `k >= 1`.
pub fn per_k(d: usize, mode: Mode) -> Option<(&'static [usize], &'static [usize])> {
    match (mode, d) {
        (Mode::Affine, 3) => Some((&[3, 3, 2, 2], &[1, 0, 0])),
        (Mode::Affine, 4) => Some((&[12, 14, 14, 10, 6], &[7, 6, 4, 1])),
        (Mode::Affine, 5) => Some((&[58, 103, 129, 105, 52, 14], &[81, 96, 73, 31, 5])),
        (Mode::Affine, 6) => Some((
            &[554, 1482, 2296, 2179, 1276, 422, 62],
            &[1376, 2078, 1917, 1066, 319, 36],
        )),
        (Mode::Central, 3) => Some((&[2, 1, 1], &[0, 0])),
        (Mode::Central, 4) => Some((&[3, 2, 2, 2], &[1, 1, 1])),
        (Mode::Central, 5) => Some((&[7, 6, 6, 5, 3], &[5, 5, 4, 2])),
        (Mode::Central, 6) => Some((&[21, 28, 34, 30, 18, 7], &[27, 33, 29, 17, 6])),
        (Mode::Central, 7) => Some((
            &[135, 288, 427, 419, 268, 105, 21],
            &[287, 426, 418, 267, 104, 20],
        )),
        _ => None,
    }
}

/// Threshold functions of `n` variables (OEIS A000609), `n = 0..=9`: the
/// chambers of the vertex arrangement of `C_n` in affine mode.
pub const THRESHOLD_FUNCTIONS: [u64; 10] = [
    2,
    4,
    14,
    104,
    1882,
    94572,
    15028134,
    8378070864,
    17561539552946,
    144130531453121108,
];

/// Chambers of the resonance arrangement (OEIS A034997) for `n = 3..=9`:
/// the cells on a one-vertex flat of `C_n` in affine mode.
pub fn resonance(n: usize) -> Option<u64> {
    const TERMS: [u64; 7] = [
        32,
        370,
        11292,
        1066044,
        347326352,
        419172756930,
        1955230985997140,
    ];
    n.checked_sub(3).and_then(|i| TERMS.get(i).copied())
}

/// Distinct cell counts per flat, by flat rank, for `C_d` in affine mode.
pub fn cells_by_rank(d: usize) -> Option<Vec<BTreeSet<u64>>> {
    let rows: &[&[u64]] = match d {
        3 => &[&[104], &[32], &[6, 8], &[2]],
        4 => &[&[1882], &[370], &[32, 60], &[6, 8, 10], &[2]],
        5 => &[
            &[94572],
            &[11292],
            &[370, 1024, 1296],
            &[32, 60, 96, 98, 128],
            &[6, 8, 10, 12, 14, 16],
            &[2],
        ],
        6 => &[
            &[15028134],
            &[1066044],
            &[11292, 47900, 73632],
            &[370, 1024, 1296, 2258, 2640, 3790, 5040],
            &[32, 60, 96, 98, 128, 144, 146, 180, 200, 220, 264, 288, 312, 336],
            &[6, 8, 10, 12, 14, 16, 18, 20, 22, 24],
            &[2],
        ],
        _ => return None,
    };
    Some(rows.iter().map(|r| r.iter().copied().collect()).collect())
}

/// Color classes of slices of `C_d`.
pub fn color_classes(d: usize) -> Option<usize> {
    match d {
        3 => Some(12),
        4 => Some(61),
        5 => Some(484),
        _ => None,
    }
}

/// f-vectors of the slice types of `C_4` by `k`, with the reference
/// central marks.
pub fn four_cube_columns() -> Vec<Vec<(Vec<usize>, bool)>> {
    let col = |entries: &[(&[usize], usize, usize)]| -> Vec<(Vec<usize>, bool)> {
        let mut out = Vec::new();
        for &(f, plain, central) in entries {
            out.extend(std::iter::repeat_n((f.to_vec(), true), central));
            out.extend(std::iter::repeat_n((f.to_vec(), false), plain));
        }
        out.sort();
        out
    };
    vec![
        col(&[
            (&[4, 6, 4], 1, 0),
            (&[6, 9, 5], 1, 0),
            (&[8, 12, 6], 1, 1),
            (&[10, 15, 7], 3, 0),
            (&[12, 18, 8], 3, 2),
        ]),
        col(&[
            (&[4, 6, 4], 1, 0),
            (&[6, 9, 5], 1, 0),
            (&[7, 11, 6], 1, 0),
            (&[8, 12, 6], 2, 0),
            (&[9, 14, 7], 2, 0),
            (&[10, 15, 7], 3, 0),
            (&[11, 17, 8], 4, 0),
        ]),
        col(&[
            (&[4, 6, 4], 1, 0),
            (&[6, 9, 5], 1, 0),
            (&[7, 11, 6], 1, 0),
            (&[8, 12, 6], 1, 1),
            (&[8, 13, 7], 2, 0),
            (&[9, 14, 7], 2, 0),
            (&[10, 15, 7], 1, 0),
            (&[10, 16, 8], 3, 1),
        ]),
        col(&[
            (&[4, 6, 4], 1, 0),
            (&[6, 9, 5], 1, 0),
            (&[7, 11, 6], 1, 0),
            (&[7, 12, 7], 1, 0),
            (&[8, 12, 6], 1, 0),
            (&[8, 13, 7], 2, 0),
            (&[8, 14, 8], 0, 1),
            (&[9, 15, 8], 2, 0),
        ]),
        col(&[
            (&[4, 6, 4], 1, 0),
            (&[6, 9, 5], 1, 0),
            (&[6, 12, 8], 1, 0),
            (&[7, 12, 7], 1, 0),
            (&[8, 12, 6], 0, 1),
        ]),
    ]
}
