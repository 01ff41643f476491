//! Exact rational vectors and matrices.
//!
//! Elimination runs fraction-free on integer rows (each rational row is
//! scaled by the lcm of its denominators first), so intermediate values are
//! minors of the input and never need to be reduced.

pub mod bareiss;
pub mod ring;

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use bareiss::echelon;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (zero is `0/1`).
pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed rational `{0}`")]
    Rational(String),
    #[error("empty vector")]
    EmptyVector,
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let bad = || ParseError::Rational(s.to_string());
    if s.is_empty() || s.chars().any(char::is_whitespace) {
        return Err(bad());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

fn lcm_of_denominators<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scale a rational row by the lcm of its denominators.
pub fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = lcm_of_denominators(row);
    row.iter()
        .map(|q| q.numer() * (&l / q.denom()))
        .collect()
}

/// Positive multiple of `row` with coprime integer entries.
pub fn primitive_row(row: &[Rational]) -> Vec<BigInt> {
    let mut v = integer_row(row);
    ring::primitive(&mut v);
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        Self(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![Rational::zero(); dim])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self(v.iter().map(|&x| int(x)).collect())
    }

    pub fn from_bigints(v: &[BigInt]) -> Self {
        Self(v.iter().map(|x| Rational::from_integer(x.clone())).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Self) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self(self.0.iter().map(|x| x * s).collect())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Positive multiple with coprime integer entries.
    pub fn primitive(&self) -> Vec<BigInt> {
        primitive_row(&self.0)
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

/// Entries separated by single spaces.
impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{q}")?;
        }
        Ok(())
    }
}

impl FromStr for RationalVector {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let entries = s
            .split(' ')
            .filter(|t| !t.is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        if entries.is_empty() {
            return Err(ParseError::EmptyVector);
        }
        Ok(Self(entries))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds from row vectors; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Self {
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn from_columns(rows: usize, columns: &[RationalVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.dim(), rows);
            for i in 0..rows {
                m.set(i, j, c[i].clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> RationalVector {
        RationalVector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<RationalVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &RationalVector) -> RationalVector {
        assert_eq!(x.dim(), self.cols, "dimension mismatch");
        RationalVector(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(x.entries())
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| integer_row(self.row(i))).collect()
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        bareiss::big_rank(self.integer_rows())
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let (rows, pivots) = rref_rows(self.integer_rows(), self.cols);
        let mut out = Self::zeros(self.rows, self.cols);
        for (i, r) in rows.into_iter().enumerate() {
            for (j, v) in r.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        (out, pivots)
    }

    /// Basis of the right kernel; one vector per non-pivot column.
    pub fn kernel_basis(&self) -> Vec<RationalVector> {
        if self.rows == 0 {
            return (0..self.cols)
                .map(|j| {
                    let mut v = RationalVector::zeros(self.cols);
                    v.0[j] = Rational::one();
                    v
                })
                .collect();
        }
        let (rows, pivots) = rref_rows(self.integer_rows(), self.cols);
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = RationalVector::zeros(self.cols);
            v.0[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v.0[p] = -rows[i][free].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One exact solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &RationalVector) -> Option<RationalVector> {
        assert_eq!(b.dim(), self.rows, "right-hand side has wrong length");
        let augmented: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                integer_row(&r)
            })
            .collect();
        let (rows, pivots) = rref_rows(augmented, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = RationalVector::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x.0[p] = rows[i][self.cols].clone();
        }
        Some(x)
    }
}

/// Bareiss echelon followed by rational back-substitution.
fn rref_rows(int_rows: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let nrows = int_rows.len();
    if nrows == 0 {
        return (Vec::new(), Vec::new());
    }
    let e = echelon::<BigInt>(int_rows).expect("bigint arithmetic cannot overflow");
    let r = e.pivots.len();
    let mut rows: Vec<Vec<Rational>> = e
        .rows
        .into_iter()
        .map(|row| row.into_iter().map(Rational::from_integer).collect())
        .collect();
    for i in 0..r {
        let lead = rows[i][e.pivots[i]].clone();
        for v in rows[i].iter_mut() {
            *v = &*v / &lead;
        }
    }
    for i in (0..r).rev() {
        let p = e.pivots[i];
        let (above, rest) = rows.split_at_mut(i);
        let pivot_row = &rest[0];
        for row in above.iter_mut() {
            let f = row[p].clone();
            if f.is_zero() {
                continue;
            }
            for j in p..cols {
                let delta = &f * &pivot_row[j];
                row[j] -= delta;
            }
        }
    }
    (rows, e.pivots)
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}
