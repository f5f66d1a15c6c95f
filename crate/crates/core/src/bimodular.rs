//! The bimodular integer-programming formulation of odd-red perfect
//! matching: degree rows plus one parity row `x(R) - 2y = 1`, exhaustive
//! subdeterminant verification at desk scale, and the lift/translate
//! correspondence between faces of the lifted polytope and faces of the
//! matching polytope.

use crate::constraint::Constraint;
use crate::graph::{RedBlueGraph, Vertex};
use crate::rat::{frac, rat, Rat};

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BimodularError {
    #[error("subdeterminant enumeration capped at {0} columns, system has {1}")]
    TooManyColumns(usize, usize),
    #[error("determinant overflow during exhaustive enumeration")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowTag {
    Degree(Vertex),
    Parity,
}

/// Integer system over variables `(x_e for each edge, y)`: one degree row
/// per vertex and one parity row, all right-hand sides 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimodularSystem {
    pub matrix: Vec<Vec<i64>>,
    pub rhs: Vec<i64>,
    pub row_tags: Vec<RowTag>,
}

impl BimodularSystem {
    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, |r| r.len())
    }
}

pub fn build_bimodular_system(h: &RedBlueGraph) -> BimodularSystem {
    let edges = h.graph.edge_list();
    let cols = edges.len() + 1;
    let mut matrix = Vec::with_capacity(h.graph.n + 1);
    let mut row_tags = Vec::with_capacity(h.graph.n + 1);
    for v in 0..h.graph.n {
        let mut row = vec![0i64; cols];
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a == v || b == v {
                row[i] = 1;
            }
        }
        matrix.push(row);
        row_tags.push(RowTag::Degree(v));
    }
    let mut parity = vec![0i64; cols];
    for (i, e) in edges.iter().enumerate() {
        if h.red.contains(e) {
            parity[i] = 1;
        }
    }
    parity[cols - 1] = -2;
    matrix.push(parity);
    row_tags.push(RowTag::Parity);
    let rows = matrix.len();
    BimodularSystem {
        matrix,
        rhs: vec![1; rows],
        row_tags,
    }
}

/// Exact determinant of a small integer matrix by fraction-free elimination.
fn det_i128(rows: &[&[i64]], cols: &[usize]) -> Option<i128> {
    let n = rows.len();
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| cols.iter().map(|&c| r[c] as i128).collect())
        .collect();
    let mut prev: i128 = 1;
    let mut sign = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return Some(0);
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[k][k]
                    .checked_mul(a[i][j])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = t / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

#[derive(Debug, Clone)]
pub struct BimodularityReport {
    pub rank: usize,
    pub checked: usize,
    pub determinant_values: BTreeSet<i128>,
    pub ok: bool,
}

/// Enumerate every maximal square submatrix (size min(rows, cols)) and
/// collect its determinant; the system is bimodular when all values lie in
/// {-2, 0, 2}. Every nonsingular maximal submatrix must pair the parity row
/// with the y column, so each determinant is twice a minor of the (totally
/// unimodular) bipartite incidence matrix. Smaller submatrices can have
/// determinant +-1 even for valid systems, so maximal size is the right
/// granularity here.
pub fn check_bimodularity(
    s: &BimodularSystem,
    col_cap: usize,
) -> Result<BimodularityReport, BimodularError> {
    let cols = s.cols();
    if cols > col_cap {
        return Err(BimodularError::TooManyColumns(col_cap, cols));
    }
    let rat_rows: Vec<Vec<Rat>> = s
        .matrix
        .iter()
        .map(|r| r.iter().map(|&v| rat(v)).collect())
        .collect();
    let r = crate::linalg::rank(&rat_rows);
    let size = s.rows().min(cols);
    let mut values = BTreeSet::new();
    let mut checked = 0usize;
    for row_set in subsets(s.rows(), size) {
        let rows: Vec<&[i64]> = row_set.iter().map(|&i| s.matrix[i].as_slice()).collect();
        for col_set in subsets(cols, size) {
            let d = det_i128(&rows, &col_set).ok_or(BimodularError::Overflow)?;
            values.insert(d);
            checked += 1;
        }
    }
    let ok = values.iter().all(|&d| d == 0 || d == 2 || d == -2);
    Ok(BimodularityReport {
        rank: r,
        checked,
        determinant_values: values,
        ok,
    })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Append the lifted coordinate y = (x(R) - 1) / 2.
pub fn lift_point(x: &[Rat], h: &RedBlueGraph) -> Vec<Rat> {
    let edges = h.graph.edge_list();
    assert_eq!(x.len(), edges.len(), "point/edge mismatch");
    let red_sum: Rat = edges
        .iter()
        .zip(x)
        .filter(|(e, _)| h.red.contains(e))
        .map(|(_, v)| v.clone())
        .sum();
    let mut out = x.to_vec();
    out.push((red_sum - rat(1)) * frac(1, 2));
    out
}

/// Translate a face `a.x + c y = b` of the lifted polytope down to the
/// matching polytope: coefficients a + (c/2) chi^R, right-hand side b + c/2.
pub fn translate_facet(a: &[Rat], c: &Rat, b: &Rat, h: &RedBlueGraph) -> Constraint {
    let edges = h.graph.edge_list();
    assert_eq!(a.len(), edges.len(), "coefficients/edge mismatch");
    let half_c = c * frac(1, 2);
    let coeffs = edges
        .iter()
        .zip(a)
        .map(|(e, v)| {
            if h.red.contains(e) {
                v + &half_c
            } else {
                v.clone()
            }
        })
        .collect();
    Constraint::ge(coeffs, b + half_c)
}

/// Inverse of [`translate_facet`]: lift a constraint `a.x >= b` on the
/// matching polytope to the representation `(a - (c/2) chi^R) . x + c y >=
/// b - c/2` over the lifted polytope, for a chosen y-coefficient `c`.
pub fn lift_facet(a: &[Rat], b: &Rat, c: &Rat, h: &RedBlueGraph) -> (Vec<Rat>, Rat) {
    let edges = h.graph.edge_list();
    let half_c = c * frac(1, 2);
    let coeffs = edges
        .iter()
        .zip(a)
        .map(|(e, v)| {
            if h.red.contains(e) {
                v - &half_c
            } else {
                v.clone()
            }
        })
        .collect();
    (coeffs, b - half_c)
}
