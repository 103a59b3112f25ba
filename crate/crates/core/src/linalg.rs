//! Exact Gaussian elimination over the rationals.
//!
//! Over-determined systems are the normal case: every fit in this crate
//! solves for a handful of unknowns and uses the surplus rows as checks.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    matrix: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    cols: usize,
}

impl LinearSystem {
    pub fn new(matrix: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Result<Self> {
        if matrix.len() != rhs.len() {
            return Err(Error::domain(format!(
                "{} matrix rows but {} right-hand sides",
                matrix.len(),
                rhs.len()
            )));
        }
        let cols = matrix.first().map_or(0, Vec::len);
        if matrix.iter().any(|row| row.len() != cols) {
            return Err(Error::domain("ragged matrix"));
        }
        Ok(Self { matrix, rhs, cols })
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    /// `A·x - b`, row by row.
    pub fn residual(&self, x: &[Rational]) -> Vec<Rational> {
        self.matrix
            .iter()
            .zip(&self.rhs)
            .map(|(row, b)| {
                row.iter()
                    .zip(x)
                    .fold(Rational::zero(), |acc, (a, xi)| acc + a * xi)
                    - b
            })
            .collect()
    }
}

/// Solve `A·x = b` exactly.
///
/// Returns the unique solution when the system is consistent with full
/// column rank. Conflicting rows give [`Error::Inconsistent`]; a consistent
/// system with rank below the column count gives [`Error::Underdetermined`].
pub fn solve_exact(sys: &LinearSystem) -> Result<Vec<Rational>> {
    let rows = sys.rows();
    let cols = sys.cols();
    let mut aug: Vec<Vec<Rational>> = sys
        .matrix
        .iter()
        .zip(&sys.rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    let mut pivots = Vec::with_capacity(cols);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Pivot on the entry with the largest numerator magnitude.
        let Some(p) = (r..rows)
            .filter(|&i| !aug[i][c].is_zero())
            .max_by(|&i, &j| aug[i][c].numer().abs().cmp(&aug[j][c].numer().abs()))
        else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for v in aug[r][c..].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = aug[r].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }

    if let Some(i) = (r..rows).find(|&i| !aug[i][cols].is_zero()) {
        return Err(Error::Inconsistent(format!(
            "row {i} of the reduced system reads 0 = {}",
            aug[i][cols]
        )));
    }
    if pivots.len() < cols {
        return Err(Error::Underdetermined {
            rank: pivots.len(),
            unknowns: cols,
        });
    }
    Ok((0..cols).map(|i| aug[i][cols].clone()).collect())
}
