//! Exact convex-hull membership via a phase-1 rational simplex.
//!
//! Decides whether `x` lies in the convex hull of a finite point set. A
//! positive answer carries convex weights; a negative answer carries a
//! separating inequality `a . g >= b` satisfied by every generator and
//! violated by `x`, read off the phase-1 duals.
//!
//! Bland's rule guarantees termination; all arithmetic is rational.

use crate::constraint::{Constraint, Sense};
use crate::rat::Rat;
use num::{One, Signed, Zero};

#[derive(Debug, Clone)]
pub enum Membership {
    Inside { weights: Vec<Rat> },
    Outside { separator: Constraint },
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside { .. })
    }
}

/// Is `x` a convex combination of `points`?
///
/// All points and `x` must share one dimension.
pub fn conv_membership(points: &[Vec<Rat>], x: &[Rat]) -> Membership {
    let d = x.len();
    if points.is_empty() {
        return Membership::Outside {
            separator: Constraint::ge(vec![Rat::zero(); d], Rat::one()),
        };
    }
    for p in points {
        assert_eq!(p.len(), d, "dimension mismatch in conv_membership");
    }
    let m = points.len();
    let rows = d + 1; // d coordinate equations plus the sum-to-one row

    // Row r of the raw system: sum_j A[r][j] lambda_j = b[r], with
    // A[r][j] = points[j][r] (r < d) or 1 (r == d), b = (x, 1).
    // Flip signs so b >= 0, then append one artificial column per row.
    let mut sign = vec![1i32; rows];
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(rows);
    let mut b: Vec<Rat> = Vec::with_capacity(rows);
    for r in 0..rows {
        let raw_b = if r < d { x[r].clone() } else { Rat::one() };
        let mut row: Vec<Rat> = (0..m)
            .map(|j| {
                if r < d {
                    points[j][r].clone()
                } else {
                    Rat::one()
                }
            })
            .collect();
        let mut rb = raw_b;
        if rb.is_negative() {
            sign[r] = -1;
            rb = -rb;
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row.extend((0..rows).map(|k| if k == r { Rat::one() } else { Rat::zero() }));
        a.push(row);
        b.push(rb);
    }

    let ncols = m + rows;
    // Basis starts as the artificials; phase-1 cost is 1 on them, 0 on the
    // real columns.
    let mut basis: Vec<usize> = (m..ncols).collect();
    let cost = |j: usize| -> Rat {
        if j >= m {
            Rat::one()
        } else {
            Rat::zero()
        }
    };

    loop {
        // Reduced costs under the current basis.
        let mut rc: Vec<Rat> = Vec::with_capacity(ncols);
        for j in 0..ncols {
            let mut z = Rat::zero();
            for r in 0..rows {
                if !a[r][j].is_zero() {
                    z += cost(basis[r]) * &a[r][j];
                }
            }
            rc.push(cost(j) - z);
        }
        // Bland: enter the smallest-index improving column.
        let Some(enter) = (0..ncols).find(|&j| rc[j].is_negative()) else {
            // Optimal. Objective = sum of basic artificial values.
            let obj: Rat = (0..rows)
                .map(|r| cost(basis[r]) * &b[r])
                .sum();
            if obj.is_zero() {
                let mut weights = vec![Rat::zero(); m];
                for r in 0..rows {
                    if basis[r] < m {
                        weights[basis[r]] = b[r].clone();
                    }
                }
                return Membership::Inside { weights };
            }
            // Farkas: y_r = 1 - reduced cost of artificial r. Then
            // y . (signed column j) <= 0 for every real column and
            // y . (signed rhs) > 0, which rearranges to the separator
            // (-w) . g >= v for all generators g and (-w) . x < v,
            // where w_r = y_r sign_r (r < d) and v = y_d sign_d.
            let y: Vec<Rat> = (0..rows).map(|r| Rat::one() - &rc[m + r]).collect();
            let coeffs: Vec<Rat> = (0..d)
                .map(|r| -(y[r].clone() * Rat::from_integer(sign[r].into())))
                .collect();
            let rhs = y[d].clone() * Rat::from_integer(sign[d].into());
            return Membership::Outside {
                separator: Constraint::ge(coeffs, rhs),
            };
        };
        // Ratio test, Bland tie-break on smallest basic variable index.
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for r in 0..rows {
            if a[r][enter].is_positive() {
                let ratio = &b[r] / &a[r][enter];
                let better = match &best {
                    None => true,
                    Some(bst) => {
                        ratio < *bst || (ratio == *bst && basis[r] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(r);
                }
            }
        }
        let Some(lr) = leave else {
            // Phase-1 is bounded below by 0; an unbounded ray is impossible.
            unreachable!("phase-1 simplex cannot be unbounded");
        };
        // Pivot on (lr, enter).
        let pv = a[lr][enter].clone();
        for v in a[lr].iter_mut() {
            *v = &*v / &pv;
        }
        b[lr] = &b[lr] / &pv;
        for r in 0..rows {
            if r != lr && !a[r][enter].is_zero() {
                let f = a[r][enter].clone();
                for j in 0..ncols {
                    let sub = &f * &a[lr][j];
                    a[r][j] = &a[r][j] - &sub;
                }
                let sub = &f * &b[lr];
                b[r] = &b[r] - &sub;
            }
        }
        basis[lr] = enter;
    }
}

/// Indices of the points at which `c` is tight.
pub fn tight_set(c: &Constraint, points: &[Vec<Rat>]) -> Vec<usize> {
    points
        .iter()
        .enumerate()
        .filter(|(_, p)| c.is_tight_at(p))
        .map(|(i, _)| i)
        .collect()
}

/// Check the defining properties of a separator returned by
/// [`conv_membership`]: every generator satisfies it and `x` violates it.
pub fn separator_is_valid(sep: &Constraint, points: &[Vec<Rat>], x: &[Rat]) -> bool {
    debug_assert_eq!(sep.sense, Sense::Ge);
    points.iter().all(|p| sep.satisfied_by(p)) && !sep.satisfied_by(x)
}
