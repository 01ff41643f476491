//! Fraction-free (Bareiss) row reduction over checked integer rings.

use num_bigint::BigInt;

use super::ring::{Checked, ExactInt};

/// Row echelon form produced by Bareiss elimination.
///
/// The first `pivots.len()` rows are the pivot rows; `pivots[i]` is the
/// column of the leading entry of row `i`. Remaining rows are zero.
#[derive(Debug, Clone)]
pub struct Echelon<T> {
    pub rows: Vec<Vec<T>>,
    pub pivots: Vec<usize>,
}

pub fn echelon<T: ExactInt>(mut rows: Vec<Vec<T>>) -> Checked<Echelon<T>> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = T::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (top, bottom) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[col].clone();
        for row in bottom.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..ncols {
                let v = T::mul_sub_mul(&piv, &row[j], &factor, &pivot_row[j])?;
                row[j] = v.div_exact(&prev);
            }
            row[col] = T::zero();
        }
        // rows above the pivot are untouched; entries left of `col` in the
        // remaining rows are already zero
        prev = piv;
        pivots.push(col);
        r += 1;
    }
    Ok(Echelon { rows, pivots })
}

fn widen(rows: &[Vec<i128>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Exact rank of an integer matrix given by rows.
pub fn int_rank(rows: &[Vec<i128>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    match echelon::<i128>(rows.to_vec()) {
        Ok(e) => e.pivots.len(),
        Err(_) => echelon::<BigInt>(widen(rows))
            .expect("bigint arithmetic cannot overflow")
            .pivots
            .len(),
    }
}

/// Exact rank of a big-integer matrix given by rows.
pub fn big_rank(rows: Vec<Vec<BigInt>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    echelon::<BigInt>(rows).expect("bigint arithmetic cannot overflow").pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(int_rank(&[vec![1, 0], vec![0, 1]]), 2);
        assert_eq!(int_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(int_rank(&[vec![0, 0, 0]]), 0);
        assert_eq!(int_rank(&[vec![0, 1, 1], vec![0, 2, 2], vec![1, 0, 0]]), 2);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i128::MAX / 3;
        let rows = vec![vec![big, big - 1, 7], vec![big - 5, big, 3], vec![1, 2, big]];
        assert_eq!(int_rank(&rows), 3);
        let dependent = vec![vec![big, big - 1], vec![big, big - 1]];
        assert_eq!(int_rank(&dependent), 1);
    }
}
