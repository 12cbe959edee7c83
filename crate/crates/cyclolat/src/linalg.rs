//! Exact integer linear algebra: fraction-free determinants and Hermite
//! normal form. Matrices are dense `Vec<Vec<BigInt>>` in row-major order.

use num::{BigInt, Integer, One, Signed, Zero};

/// Determinant of a square integer matrix by Bareiss fraction-free
/// elimination. All intermediate divisions are exact.
pub fn bareiss_determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // Pivot search below row k.
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Row-style Hermite normal form of an integer matrix (rows generate the
/// same lattice as the input rows). Returns the nonzero rows; their count
/// is the rank of the row lattice.
pub fn hermite_normal_form(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        if pivot_row == m.len() {
            break;
        }
        loop {
            // Find row with smallest nonzero |entry| in this column.
            let mut best: Option<usize> = None;
            for i in pivot_row..m.len() {
                if !m[i][col].is_zero()
                    && best.is_none_or(|b| m[i][col].abs() < m[b][col].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(pivot_row, b);
            let mut reduced_all = true;
            for i in pivot_row + 1..m.len() {
                if !m[i][col].is_zero() {
                    let q = m[i][col].div_floor(&m[pivot_row][col]);
                    for j in 0..cols {
                        let t = &q * &m[pivot_row][j];
                        m[i][j] -= t;
                    }
                    if !m[i][col].is_zero() {
                        reduced_all = false;
                    }
                }
            }
            if reduced_all {
                break;
            }
        }
        if !m[pivot_row][col].is_zero() {
            if m[pivot_row][col].is_negative() {
                for j in 0..cols {
                    m[pivot_row][j] = -m[pivot_row][j].clone();
                }
            }
            // Reduce the rows above.
            for i in 0..pivot_row {
                if !m[i][col].is_zero() {
                    let q = m[i][col].div_floor(&m[pivot_row][col]);
                    for j in 0..cols {
                        let t = &q * &m[pivot_row][j];
                        m[i][j] -= t;
                    }
                }
            }
            pivot_row += 1;
        }
    }
    m.truncate(pivot_row);
    m
}
