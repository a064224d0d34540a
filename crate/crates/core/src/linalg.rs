//! Exact dense linear solving.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Solves an `m x (m+1)` homogeneous system whose kernel is one-dimensional,
/// returning the kernel vector with entry `normalization` set to one.
///
/// The normalized column is moved to the right-hand side and the remaining
/// square system is solved by Gaussian elimination, taking the first nonzero
/// entry of each column as pivot. A singular square part is reported as
/// [`Error::SingularSystem`].
pub fn solve_unique<T: Scalar>(matrix: &[Vec<T>], normalization: usize) -> Result<Vec<T>> {
    let m = matrix.len();
    let cols = m + 1;
    if let Some(bad) = matrix.iter().position(|row| row.len() != cols) {
        return Err(Error::MalformedSystem(format!(
            "row {bad} has {} entries, expected {cols}",
            matrix[bad].len()
        )));
    }
    if normalization >= cols {
        return Err(Error::MalformedSystem(format!(
            "normalization index {normalization} out of range for {cols} unknowns"
        )));
    }
    let free: Vec<usize> = (0..cols).filter(|&c| c != normalization).collect();

    // Augmented rows: [A_free | -a_norm].
    let mut rows: Vec<Vec<T>> = matrix
        .iter()
        .map(|row| {
            let mut r: Vec<T> = free.iter().map(|&c| row[c].clone()).collect();
            r.push(-row[normalization].clone());
            r
        })
        .collect();

    for col in 0..m {
        let pivot = (col..m)
            .find(|&r| !rows[r][col].is_zero())
            .ok_or(Error::SingularSystem { column: free[col] })?;
        rows.swap(col, pivot);
        let inv = T::one() / rows[col][col].clone();
        for v in rows[col].iter_mut().skip(col) {
            *v = v.clone() * inv.clone();
        }
        for r in 0..m {
            if r == col || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..=m {
                let sub = factor.clone() * rows[col][c].clone();
                rows[r][c] = rows[r][c].clone() - sub;
            }
        }
    }

    let mut solution = vec![T::zero(); cols];
    solution[normalization] = T::one();
    for (k, &c) in free.iter().enumerate() {
        solution[c] = rows[k][m].clone();
    }
    debug_assert!(matrix.iter().all(|row| {
        row.iter().zip(&solution).fold(T::zero(), |acc, (a, x)| acc + a.clone() * x.clone()).is_zero()
    }));
    Ok(solution)
}
