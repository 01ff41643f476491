//! Exact feasibility of homogeneous strict linear systems.
//!
//! A system `<c_i, x> > 0` is decided by maximizing a joint slack `t` with
//! `<c_i, x> >= t` and `-1 <= x_j <= 1`; it is feasible iff the optimum is
//! positive. The simplex runs on an integer tableau with a common
//! denominator (fraction-free exchange steps) and Bland's rule, first on
//! checked `i128` and again on big integers if anything overflows.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::ring::{Checked, ExactInt};
use crate::linalg::{integer_row, Rational, RationalMatrix, RationalVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    ambient_dim: usize,
    /// Each `c` requires `<c, x> = 0`.
    equalities: Vec<RationalVector>,
    /// Each `c` requires `<c, x> > 0`.
    strict: Vec<RationalVector>,
}

impl ConstraintSystem {
    pub fn new(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            equalities: Vec::new(),
            strict: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn equalities(&self) -> &[RationalVector] {
        &self.equalities
    }

    pub fn strict(&self) -> &[RationalVector] {
        &self.strict
    }

    pub fn push_equality(&mut self, c: RationalVector) {
        assert_eq!(c.dim(), self.ambient_dim, "constraint has wrong length");
        self.equalities.push(c);
    }

    pub fn push_strict(&mut self, c: RationalVector) {
        assert_eq!(c.dim(), self.ambient_dim, "constraint has wrong length");
        self.strict.push(c);
    }

    pub fn with_equality(mut self, c: RationalVector) -> Self {
        self.push_equality(c);
        self
    }

    pub fn with_strict(mut self, c: RationalVector) -> Self {
        self.push_strict(c);
        self
    }

    /// Whether `x` satisfies every constraint exactly.
    pub fn is_satisfied_by(&self, x: &RationalVector) -> bool {
        self.equalities.iter().all(|c| c.dot(x).is_zero())
            && self.strict.iter().all(|c| c.dot(x).is_positive())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(RationalVector),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&RationalVector> {
        match self {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }

    pub fn into_witness(self) -> Option<RationalVector> {
        match self {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }
}

/// Decides whether some `x` satisfies all equalities and all strict
/// inequalities, returning the slack-maximizing point if so.
///
/// With equalities present the problem is solved in coordinates of a
/// kernel basis of the equality rows, and the box applies to those.
pub fn strict_feasible(system: &ConstraintSystem) -> Feasibility {
    let n = system.ambient_dim;
    let basis: Option<Vec<RationalVector>> = if system.equalities.is_empty() {
        None
    } else {
        let rows = system
            .equalities
            .iter()
            .map(|c| c.entries().to_vec())
            .collect();
        Some(RationalMatrix::from_rows(n, rows).kernel_basis())
    };
    let reduced_dim = basis.as_ref().map_or(n, Vec::len);
    if system.strict.is_empty() {
        return Feasibility::Feasible(RationalVector::zeros(n));
    }
    if reduced_dim == 0 {
        return Feasibility::Infeasible;
    }
    let rows: Vec<Vec<BigInt>> = system
        .strict
        .iter()
        .map(|c| match &basis {
            None => integer_row(c.entries()),
            Some(k) => {
                let reduced: Vec<Rational> = k.iter().map(|b| c.dot(b)).collect();
                integer_row(&reduced)
            }
        })
        .collect();
    let Some(y) = max_slack_big(&rows) else {
        return Feasibility::Infeasible;
    };
    let x = match &basis {
        None => y,
        Some(k) => {
            let mut x = RationalVector::zeros(n).into_entries();
            for (b, coef) in k.iter().zip(y.entries()) {
                for (xi, bi) in x.iter_mut().zip(b.entries()) {
                    *xi += bi * coef;
                }
            }
            RationalVector::new(x)
        }
    };
    assert!(
        system.is_satisfied_by(&x),
        "simplex witness failed exact verification"
    );
    Feasibility::Feasible(x)
}

/// Dimension of the relatively open solution cone, or `None` when the
/// strict constraints cannot hold inside the equality flat.
pub fn cone_relint_dimension(system: &ConstraintSystem) -> Option<usize> {
    if !strict_feasible(system).is_feasible() {
        return None;
    }
    let rank = if system.equalities.is_empty() {
        0
    } else {
        let rows = system
            .equalities
            .iter()
            .map(|c| c.entries().to_vec())
            .collect();
        RationalMatrix::from_rows(system.ambient_dim, rows).rank()
    };
    Some(system.ambient_dim - rank)
}

/// Slack maximization for integer rows `<c_i, x> > 0`; returns the optimal
/// point when the optimum slack is positive.
pub fn max_slack_i128(rows: &[Vec<i128>]) -> Option<RationalVector> {
    match solve::<i128>(rows) {
        Ok(r) => r.map(|(num, den)| to_rationals(&num, &den)),
        Err(_) => {
            let wide: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            max_slack_big(&wide)
        }
    }
}

/// Feasibility only, on the same optimum as [`max_slack_i128`].
pub fn is_strictly_feasible_i128(rows: &[Vec<i128>]) -> bool {
    match solve::<i128>(rows) {
        Ok(r) => r.is_some(),
        Err(_) => {
            let wide: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            max_slack_big(&wide).is_some()
        }
    }
}

pub fn max_slack_big(rows: &[Vec<BigInt>]) -> Option<RationalVector> {
    solve::<BigInt>(rows)
        .expect("bigint arithmetic cannot overflow")
        .map(|(num, den)| to_rationals(&num, &den))
}

fn to_rationals<T: ExactInt>(num: &[T], den: &T) -> RationalVector {
    let d = den.to_bigint();
    RationalVector::new(
        num.iter()
            .map(|x| Rational::new(x.to_bigint() - &d, d.clone()))
            .collect(),
    )
}

/// Integer tableau in dictionary form: `basic_i = T[i][0]/D + sum_j
/// T[i][j]/D * nonbasic_j`, last row the objective.
struct Tableau<T> {
    t: Vec<Vec<T>>,
    den: T,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
}

impl<T: ExactInt> Tableau<T> {
    fn pivot(&mut self, r: usize, s: usize) -> Checked<()> {
        let p = self.t[r][s].clone();
        let rows = self.t.len();
        let cols = self.t[0].len();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = self.t[i][s].clone();
            for j in 0..cols {
                if j == s {
                    continue;
                }
                let v = T::mul_sub_mul(&self.t[i][j], &p, &f, &self.t[r][j])?;
                self.t[i][j] = v.div_exact(&self.den);
            }
        }
        for j in 0..cols {
            if j != s {
                self.t[r][j] = self.t[r][j].neg()?;
            }
        }
        self.t[r][s] = self.den.clone();
        self.den = p;
        if self.den.is_negative() {
            for row in self.t.iter_mut() {
                for v in row.iter_mut() {
                    *v = v.neg()?;
                }
            }
            self.den = self.den.neg()?;
        }
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[s - 1]);
        Ok(())
    }
}

/// Maximizes the joint slack. Variables are shifted so the box becomes
/// `0 <= y_j <= 2` and the slack `tau = t + m` with `m` the largest row
/// l1-norm, which makes the all-slack basis feasible at the origin.
/// Returns shifted coordinates `y_j` (numerators) and the denominator.
fn solve<T: ExactInt>(rows: &[Vec<T>]) -> Checked<Option<(Vec<T>, T)>> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if n == 0 {
        return Ok(None);
    }
    let mut bound = T::zero();
    for r in rows {
        let mut s = T::zero();
        for c in r {
            s = s.add(&if c.is_negative() { c.neg()? } else { c.clone() })?;
        }
        if s > bound {
            bound = s;
        }
    }
    if bound.is_zero() {
        return Ok(None);
    }
    // variables: 0..n shifted coordinates, n the slack tau, then the
    // m row slacks and n box slacks
    let mut t = Vec::with_capacity(m + n + 1);
    for r in rows {
        let mut line = Vec::with_capacity(n + 2);
        let mut sum = T::zero();
        for c in r {
            sum = sum.add(c)?;
        }
        line.push(bound.sub(&sum)?);
        line.extend(r.iter().cloned());
        line.push(T::from_i64(-1));
        t.push(line);
    }
    for j in 0..n {
        let mut line = vec![T::zero(); n + 2];
        line[0] = T::from_i64(2);
        line[j + 1] = T::from_i64(-1);
        t.push(line);
    }
    let mut obj = vec![T::zero(); n + 2];
    obj[n + 1] = T::one();
    t.push(obj);
    let mut tab = Tableau {
        t,
        den: T::one(),
        basic: (n + 1..n + 1 + m + n).collect(),
        nonbasic: (0..=n).collect(),
    };
    let obj_row = m + n;
    loop {
        // Bland: entering variable of least index with positive reduced cost
        let entering = (1..n + 2)
            .filter(|&j| tab.t[obj_row][j].is_positive())
            .min_by_key(|&j| tab.nonbasic[j - 1]);
        let Some(s) = entering else { break };
        let mut leave: Option<usize> = None;
        for i in 0..obj_row {
            if !tab.t[i][s].is_negative() {
                continue;
            }
            leave = Some(match leave {
                None => i,
                Some(l) => {
                    // compare T[i][0] / -T[i][s] with T[l][0] / -T[l][s]
                    let ord = crate::linalg::ring::cmp_fractions(
                        &tab.t[i][0],
                        &tab.t[i][s].neg()?,
                        &tab.t[l][0],
                        &tab.t[l][s].neg()?,
                    )?;
                    match ord {
                        std::cmp::Ordering::Less => i,
                        std::cmp::Ordering::Equal if tab.basic[i] < tab.basic[l] => i,
                        _ => l,
                    }
                }
            });
        }
        let r = leave.expect("slack is bounded by the box");
        tab.pivot(r, s)?;
    }
    let value = &tab.t[obj_row][0];
    if *value <= bound.mul(&tab.den)? {
        return Ok(None);
    }
    let mut y = vec![T::zero(); n];
    for (i, &b) in tab.basic.iter().enumerate() {
        if b < n {
            y[b] = tab.t[i][0].clone();
        }
    }
    Ok(Some((y, tab.den)))
}
