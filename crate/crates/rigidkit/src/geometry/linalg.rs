//! Exact Gaussian elimination over the rationals.
//!
//! The matrices here are tiny (at most a few thousand rows of dimension-many
//! columns), so plain fraction arithmetic with nonzero pivoting is enough.

use num_traits::{One, Zero};

use super::Rational;

/// Reduces `rows` to reduced row echelon form in place and returns the pivot
/// column indices in order.
pub(crate) fn reduced_row_echelon(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        if !pivot.is_one() {
            for j in c..ncols {
                rows[r][j] = &rows[r][j] / &pivot;
            }
        }
        for i in 0..nrows {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            for j in c..ncols {
                let t = &rows[r][j] * &factor;
                rows[i][j] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of the matrix given as rows.
pub(crate) fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    reduced_row_echelon(&mut rows).len()
}

/// Basis of the right kernel `{ v : M v = 0 }` of the matrix given as rows,
/// one basis vector per free column.
pub(crate) fn kernel(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    debug_assert!(rows.iter().all(|r| r.len() == ncols));
    let pivots = reduced_row_echelon(&mut rows);
    let pivot_set: Vec<bool> = {
        let mut mask = vec![false; ncols];
        for &c in &pivots {
            mask[c] = true;
        }
        mask
    };
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Determinant of a square matrix.
pub(crate) fn determinant(matrix: &[Vec<Rational>]) -> Rational {
    let n = matrix.len();
    debug_assert!(matrix.iter().all(|r| r.len() == n));
    let mut rows: Vec<Vec<Rational>> = matrix.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !rows[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            rows.swap(c, p);
            det = -det;
        }
        let pivot = rows[c][c].clone();
        det *= &pivot;
        for i in (c + 1)..n {
            if rows[i][c].is_zero() {
                continue;
            }
            let factor = &rows[i][c] / &pivot;
            for j in c..n {
                let t = &rows[c][j] * &factor;
                rows[i][j] -= t;
            }
        }
    }
    det
}

/// Inverse of a square matrix, or `None` if singular.
pub(crate) fn invert(matrix: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = matrix.len();
    let mut rows: Vec<Vec<Rational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut augmented = row.clone();
            augmented.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            augmented
        })
        .collect();
    let pivots = reduced_row_echelon(&mut rows);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(rows.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Dimension of the affine span of the given points (all of equal length):
/// the rank of the matrix of differences against the first point.
pub(crate) fn affine_span_dim(points: &[Vec<Rational>]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    rank(rows)
}
