//! Exact rank and affine dimension over the rationals.
//!
//! Rank is computed by fraction-free Bareiss elimination over `i128` when all
//! entries are integers that fit, with checked arithmetic; any overflow or
//! non-integer input falls back to rational Gaussian elimination. Both paths
//! are exact.

use crate::rat::{to_i128, Rat};
use num::Zero;

/// Exact rank of a rational matrix given as rows.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    if let Some(int_rows) = as_i128(rows) {
        if let Some(r) = rank_bareiss_i128(int_rows) {
            return r;
        }
    }
    rank_gauss(rows.to_vec())
}

fn as_i128(rows: &[Vec<Rat>]) -> Option<Vec<Vec<i128>>> {
    rows.iter()
        .map(|r| r.iter().map(to_i128).collect::<Option<Vec<_>>>())
        .collect()
}

/// Fraction-free elimination; `None` on overflow.
fn rank_bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let m = a.len();
    let n = a[0].len();
    let mut rank = 0;
    let mut prev = 1i128;
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let pivot = (row..m).find(|&i| a[i][col] != 0);
        let Some(p) = pivot else { continue };
        a.swap(row, p);
        let pv = a[row][col];
        for i in row + 1..m {
            for j in col + 1..n {
                let t = pv.checked_mul(a[i][j])?.checked_sub(a[i][col].checked_mul(a[row][j])?)?;
                // Bareiss: the division by the previous pivot is exact.
                a[i][j] = t / prev;
            }
            a[i][col] = 0;
        }
        prev = pv;
        rank += 1;
        row += 1;
    }
    Some(rank)
}

fn rank_gauss(mut a: Vec<Vec<Rat>>) -> usize {
    let m = a.len();
    let n = a[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let Some(p) = (row..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let pv = a[row][col].clone();
        for i in row + 1..m {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &pv;
            for j in col..n {
                let sub = &f * &a[row][j];
                a[i][j] = &a[i][j] - &sub;
            }
        }
        rank += 1;
        row += 1;
    }
    rank
}

/// Dimension of the affine hull of a point set; -1 for the empty set.
pub fn affine_dimension(points: &[Vec<Rat>]) -> isize {
    if points.is_empty() {
        return -1;
    }
    if points.len() == 1 {
        return 0;
    }
    let base = &points[0];
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs) as isize
}
