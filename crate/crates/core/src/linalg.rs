//! Exact linear algebra: reduced row echelon elimination over the Gaussian
//! rationals, with a rational-matrix front end.
//!
//! The pivot rule is fixed and documented: columns are processed left to
//! right in the caller-supplied order (the fixed multidegree order when the
//! unknowns are series coefficients); within a column the first row carrying
//! a nonzero entry is the pivot. Free variables of the particular solution
//! are set to zero, which realizes the kernel-gauge rule used by the
//! first-integral solver.

use crate::rational::GaussianRational;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution {
    /// One exact solution with zero entries on all free coordinates.
    pub particular: Vec<GaussianRational>,
    /// A basis of the kernel, one vector per free column, in column order.
    /// Empty when the kernel was not requested.
    pub kernel_basis: Vec<Vec<GaussianRational>>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome {
    Solution(LinearSolution),
    Infeasible,
}

/// Solves A·x = b exactly. `rows` holds the rows of A; every row must have
/// the same length as every other and `b` must match the row count.
pub fn solve_linear(
    rows: &[Vec<GaussianRational>],
    b: &[GaussianRational],
    want_kernel: bool,
) -> SolveOutcome {
    assert_eq!(rows.len(), b.len(), "row/rhs length mismatch");
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<GaussianRational>> = rows.to_vec();
    let mut rhs: Vec<GaussianRational> = b.to_vec();
    for r in &a {
        assert_eq!(r.len(), ncols, "ragged matrix");
    }

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row = 0usize;
    for col in 0..ncols {
        let Some(pr) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        rhs.swap(row, pr);
        let inv = a[row][col].inv().expect("nonzero pivot");
        for c in col..ncols {
            let v = &a[row][c] * &inv;
            a[row][c] = v;
        }
        rhs[row] = &rhs[row] * &inv;
        for r in 0..a.len() {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..ncols {
                let delta = &factor * &a[row][c];
                a[r][c] -= &delta;
            }
            let delta = &factor * &rhs[row];
            rhs[r] -= &delta;
        }
        pivot_cols.push(col);
        row += 1;
        if row == a.len() {
            break;
        }
    }

    for r in row..a.len() {
        if !rhs[r].is_zero() {
            return SolveOutcome::Infeasible;
        }
    }

    let mut particular = vec![GaussianRational::zero(); ncols];
    for (r, &c) in pivot_cols.iter().enumerate() {
        particular[c] = rhs[r].clone();
    }

    let mut kernel_basis = Vec::new();
    if want_kernel {
        let mut is_pivot = vec![false; ncols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        for free in (0..ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![GaussianRational::zero(); ncols];
            v[free] = GaussianRational::one();
            for (r, &c) in pivot_cols.iter().enumerate() {
                v[c] = a[r][free].clone().neg();
            }
            kernel_basis.push(v);
        }
    }

    SolveOutcome::Solution(LinearSolution { particular, kernel_basis, rank: pivot_cols.len() })
}

use std::ops::Neg;

/// Exact rank of a matrix over Q(i).
pub fn rank(rows: &[Vec<GaussianRational>]) -> usize {
    let b = vec![GaussianRational::zero(); rows.len()];
    match solve_linear(rows, &b, false) {
        SolveOutcome::Solution(s) => s.rank,
        SolveOutcome::Infeasible => unreachable!("homogeneous system"),
    }
}

/// Exact kernel basis of a matrix over Q(i).
pub fn kernel_basis(rows: &[Vec<GaussianRational>]) -> Vec<Vec<GaussianRational>> {
    let b = vec![GaussianRational::zero(); rows.len()];
    match solve_linear(rows, &b, true) {
        SolveOutcome::Solution(s) => s.kernel_basis,
        SolveOutcome::Infeasible => unreachable!("homogeneous system"),
    }
}

/// Exact determinant of a square matrix over Q(i) by fraction elimination.
pub fn determinant(rows: &[Vec<GaussianRational>]) -> GaussianRational {
    let n = rows.len();
    let mut a: Vec<Vec<GaussianRational>> = rows.to_vec();
    for r in &a {
        assert_eq!(r.len(), n, "determinant of a non-square matrix");
    }
    let mut det = GaussianRational::one();
    for col in 0..n {
        let Some(pr) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return GaussianRational::zero();
        };
        if pr != col {
            a.swap(col, pr);
            det = det.neg();
        }
        det *= &a[col][col];
        let inv = a[col][col].inv().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= &delta;
            }
        }
    }
    det
}

#[derive(Clone, Debug, PartialEq)]
pub enum RationalSolveOutcome {
    Solution { particular: Vec<BigRational>, kernel_basis: Vec<Vec<BigRational>> },
    Infeasible,
}

/// Exact rational linear solver: one particular solution (free variables
/// zero) plus a kernel basis, or `Infeasible`.
pub fn solve_rational_linear(
    rows: &[Vec<BigRational>],
    b: &[BigRational],
) -> RationalSolveOutcome {
    let lift = |r: &BigRational| GaussianRational::new(r.clone(), BigRational::zero());
    let a: Vec<Vec<GaussianRational>> =
        rows.iter().map(|row| row.iter().map(lift).collect()).collect();
    let bb: Vec<GaussianRational> = b.iter().map(lift).collect();
    match solve_linear(&a, &bb, true) {
        SolveOutcome::Infeasible => RationalSolveOutcome::Infeasible,
        SolveOutcome::Solution(s) => {
            let drop = |v: Vec<GaussianRational>| -> Vec<BigRational> {
                v.into_iter()
                    .map(|x| {
                        debug_assert!(x.im.is_zero(), "rational system produced complex entry");
                        x.re
                    })
                    .collect()
            };
            RationalSolveOutcome::Solution {
                particular: drop(s.particular),
                kernel_basis: s.kernel_basis.into_iter().map(drop).collect(),
            }
        }
    }
}
