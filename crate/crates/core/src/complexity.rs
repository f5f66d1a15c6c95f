//! Matrix view of constraints over doubled complete graphs, equivalent
//! representations obtained by scaling and adding degree constraints, the
//! alternating-sum invariants that force coefficient complexity, and the
//! explicit construction achieving O(n^(2/3)) distinct coefficients.

use crate::constraint::Constraint;
use crate::facets::CInducedSpec;
use crate::graph::norm_edge;
use crate::rat::{rat, to_i128, Rat};
use crate::transfer::{matching_char_vector, TransferContext};
use num::{One, Signed, Zero};
use rand::Rng;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexityError {
    #[error("mu must be nonzero")]
    ZeroMu,
    #[error("matrix has a non-integral entry")]
    NonIntegral,
    #[error("n must be odd and at least 5, got {0}")]
    BadN(usize),
    #[error("lambda must have one entry per doubled vertex ({0} expected)")]
    BadLambdaLength(usize),
}

/// Coefficients of a constraint over a doubled complete graph, as an n x n
/// matrix: rows indexed by plus copies, columns by minus copies, both in
/// canonical vertex order. The diagonal carries the identity edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientMatrix {
    pub n: usize,
    pub entries: Vec<Vec<Rat>>,
}

impl CoefficientMatrix {
    pub fn zero(n: usize) -> Self {
        CoefficientMatrix {
            n,
            entries: vec![vec![Rat::zero(); n]; n],
        }
    }

    pub fn entry(&self, u: usize, v: usize) -> &Rat {
        &self.entries[u][v]
    }

    pub fn is_integral(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(crate::rat::is_integral)
    }

    pub fn max_abs(&self) -> Rat {
        self.entries
            .iter()
            .flatten()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rat::zero)
    }

    pub fn distinct_values(&self) -> BTreeSet<Rat> {
        self.entries.iter().flatten().cloned().collect()
    }

    pub fn distinct_count(&self) -> usize {
        self.distinct_values().len()
    }

    pub fn distinct_count_off_diagonal(&self) -> usize {
        let mut vals = BTreeSet::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v {
                    vals.insert(self.entries[u][v].clone());
                }
            }
        }
        vals.len()
    }

    /// CSV with one row per plus vertex, columns in minus-vertex order.
    pub fn to_csv(&self) -> String {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(crate::rat::rat_to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
            + "\n"
    }
}

/// An equivalent-representation move: scale by `mu` and add `lambda_w` times
/// the degree constraint of each doubled vertex `w`. Indices `0..n` are the
/// plus copies, `n..2n` the minus copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuLambda {
    pub mu: Rat,
    pub lambda: Vec<Rat>,
}

impl MuLambda {
    pub fn identity(n: usize) -> Self {
        MuLambda {
            mu: Rat::one(),
            lambda: vec![Rat::zero(); 2 * n],
        }
    }
}

/// Read the coefficients of a constraint over a doubled complete graph into
/// matrix form. The constraint must use the canonical edge order of
/// `doubled_graph(complete_graph(n))`.
pub fn to_matrix(c: &Constraint, ctx: &TransferContext) -> CoefficientMatrix {
    let n = ctx.base.n;
    let index = ctx.doubled.graph.edge_index();
    assert_eq!(c.coeffs.len(), index.len(), "constraint/host mismatch");
    let mut m = CoefficientMatrix::zero(n);
    for u in 0..n {
        for v in 0..n {
            let e = norm_edge(u, v + n);
            m.entries[u][v] = c.coeffs[*index
                .get(&e)
                .expect("doubled complete graph has all plus-minus edges")]
            .clone();
        }
    }
    m
}

/// Inverse of [`to_matrix`]: rebuild a constraint (with the given right-hand
/// side) from a matrix over the same doubled complete graph.
pub fn from_matrix(m: &CoefficientMatrix, rhs: Rat, ctx: &TransferContext) -> Constraint {
    let n = ctx.base.n;
    assert_eq!(m.n, n);
    let coeffs = ctx
        .doubled
        .graph
        .edge_list()
        .into_iter()
        .map(|(a, b)| m.entries[a][b - n].clone())
        .collect();
    Constraint::ge(coeffs, rhs)
}

/// entry(u, v) -> mu * entry(u, v) + lambda_{u+} + lambda_{v-}.
pub fn apply_mu_lambda(
    m: &CoefficientMatrix,
    t: &MuLambda,
) -> Result<CoefficientMatrix, ComplexityError> {
    if t.mu.is_zero() {
        return Err(ComplexityError::ZeroMu);
    }
    if t.lambda.len() != 2 * m.n {
        return Err(ComplexityError::BadLambdaLength(2 * m.n));
    }
    let mut out = CoefficientMatrix::zero(m.n);
    for u in 0..m.n {
        for v in 0..m.n {
            out.entries[u][v] = &t.mu * &m.entries[u][v] + &t.lambda[u] + &t.lambda[m.n + v];
        }
    }
    Ok(out)
}

/// The right-hand side matching [`apply_mu_lambda`]: mu * b + sum(lambda).
pub fn apply_mu_lambda_rhs(rhs: &Rat, t: &MuLambda) -> Rat {
    let lam_sum: Rat = t.lambda.iter().sum();
    &t.mu * rhs + lam_sum
}

/// Cyclic alternating sum over a vertex sequence u_1..u_t of the base graph:
/// sum of entry(u_i+, u_{i+1}-) minus sum of entry(u_i+, u_i-).
///
/// Every lambda contribution cancels between the two sums, so the value
/// scales exactly by mu under equivalent-representation moves.
pub fn alternating_sum(m: &CoefficientMatrix, seq: &[usize]) -> Rat {
    assert!(seq.len() >= 2, "alternating sum needs at least two vertices");
    let t = seq.len();
    let mut acc = Rat::zero();
    for i in 0..t {
        acc += m.entry(seq[i], seq[(i + 1) % t]);
        acc -= m.entry(seq[i], seq[i]);
    }
    acc
}

/// Integrality report against the lower bounds that every integral
/// equivalent representation of a transformed cycle-induced facet must obey:
/// max |entry| >= (n-4)/2 and distinct entries >= sqrt((n-1)/2).
#[derive(Debug, Clone)]
pub struct ComplexityReport {
    pub max_abs: Rat,
    pub distinct_count: usize,
    pub distinct_count_off_diagonal: usize,
    pub max_bound_ok: bool,
    pub distinct_bound_ok: bool,
}

impl ComplexityReport {
    pub fn lower_bounds_ok(&self) -> bool {
        self.max_bound_ok && self.distinct_bound_ok
    }
}

pub fn check_complexity_bounds(
    m: &CoefficientMatrix,
    n: usize,
) -> Result<ComplexityReport, ComplexityError> {
    if !m.is_integral() {
        return Err(ComplexityError::NonIntegral);
    }
    let max_abs = m.max_abs();
    let distinct = m.distinct_count();
    // max_abs >= (n-4)/2 and distinct^2 >= (n-1)/2, compared exactly.
    let max_bound_ok = max_abs.clone() * rat(2) >= rat(n as i64 - 4);
    let distinct_bound_ok = 2 * (distinct as i64) * (distinct as i64) >= n as i64 - 1;
    Ok(ComplexityReport {
        max_abs,
        distinct_count: distinct,
        distinct_count_off_diagonal: m.distinct_count_off_diagonal(),
        max_bound_ok,
        distinct_bound_ok,
    })
}

/// f_j = (j mod m2) + m1 - (((j mod m2) + j) mod m1).
///
/// Satisfies 0 <= f_j <= m1 + m2, m1 | (f_j + j), and
/// (f_j - j) mod m2 in {0..m1}.
pub fn f_value(j: u64, m1: u64, m2: u64) -> u64 {
    assert!(m1 >= 1 && m2 >= 1);
    let r = j % m2;
    r + m1 - ((r + j) % m1)
}

/// Smallest positive integers with m1^3 >= n and m2^3 >= n^2.
pub fn cube_root_params(n: usize) -> (u64, u64) {
    let n = n as u64;
    let m1 = (1..).find(|m: &u64| m * m * m >= n).unwrap();
    let m2 = (1..).find(|m: &u64| m * m * m >= n * n).unwrap();
    (m1, m2)
}

/// The explicit distinct-entry bound from the counting argument:
/// 2 + 2(m1+m2+1) + (2(n+m1+m2)/m1 + 1) + 2(n+m1+m2)/m2 * (2m1+1),
/// evaluated exactly as a rational.
pub fn distinct_count_bound(n: usize) -> Rat {
    let (m1, m2) = cube_root_params(n);
    let (n, m1, m2) = (n as i64, m1 as i64, m2 as i64);
    let span = rat(2 * (n + m1 + m2));
    rat(2) + rat(2 * (m1 + m2 + 1)) + (&span / rat(m1) + rat(1)) + (&span / rat(m2)) * rat(2 * m1 + 1)
}

/// Cycle positions reordered with step two: position i goes to
/// i*(k+1) mod (2k+1). Under this relabeling the odd-path length between
/// positions i and j becomes the closed form |2k+1 - 2|i'-j'||, which is
/// what the distinct-count analysis works with.
fn step_two_index(i: usize, k: usize) -> usize {
    (i * (k + 1)) % (2 * k + 1)
}

/// The lambda vector achieving O(n^(2/3)) distinct coefficients on the
/// transformed cycle-induced constraint: zero on the copies of s and t, and
/// +-2 f_{sigma(i)} on the copies of the i-th cycle vertex, with f from
/// [`f_value`] at m1 = ceil(n^(1/3)), m2 = ceil(n^(2/3)).
pub fn build_low_complexity_lambda(
    n: usize,
    spec: &CInducedSpec,
) -> Result<MuLambda, ComplexityError> {
    if n < 5 || n % 2 == 0 {
        return Err(ComplexityError::BadN(n));
    }
    assert_eq!(spec.n, n);
    let (m1, m2) = cube_root_params(n);
    let mut lambda = vec![Rat::zero(); 2 * n];
    for (i, &v) in spec.cycle.iter().enumerate() {
        let f = f_value(step_two_index(i, spec.k) as u64, m1, m2) as i64;
        lambda[v] = rat(2 * f);
        lambda[n + v] = rat(-2 * f);
    }
    Ok(MuLambda {
        mu: Rat::one(),
        lambda,
    })
}

/// Do two constraints over the same doubled graph cut out the same face of
/// the odd-red perfect matching polytope? Decided by comparing tight subsets
/// over the full vertex enumeration.
pub fn same_face_check(a: &Constraint, b: &Constraint, ctx: &TransferContext) -> bool {
    let matchings = crate::graph::enumerate_odd_red_perfect_matchings(&ctx.doubled)
        .expect("doubled graph is bipartite");
    matchings.iter().all(|m| {
        let x = matching_char_vector(m, &ctx.doubled.graph);
        a.is_tight_at(&x) == b.is_tight_at(&x)
    })
}

/// Draw a random integral equivalent-representation move: integer mu in
/// 1..=5 and integer lambda entries in [-n, n].
pub fn sample_integral_mu_lambda<R: Rng>(n: usize, rng: &mut R) -> MuLambda {
    let mu = rat(rng.gen_range(1..=5));
    let lambda = (0..2 * n)
        .map(|_| rat(rng.gen_range(-(n as i64)..=n as i64)))
        .collect();
    MuLambda { mu, lambda }
}

/// Best distinct-entry count found by bounded random search over integer
/// lambda entries in [-bound, bound] with mu = 1. Exploratory only: the
/// search is incomplete and the result carries no optimality claim.
pub fn search_low_distinct<R: Rng>(
    m: &CoefficientMatrix,
    bound: i64,
    iterations: usize,
    rng: &mut R,
) -> (MuLambda, usize) {
    let n = m.n;
    let mut best = MuLambda::identity(n);
    let mut best_count = m.distinct_count();
    for _ in 0..iterations {
        let cand = MuLambda {
            mu: Rat::one(),
            lambda: (0..2 * n).map(|_| rat(rng.gen_range(-bound..=bound))).collect(),
        };
        let count = apply_mu_lambda(m, &cand).expect("mu is 1").distinct_count();
        if count < best_count {
            best_count = count;
            best = cand;
        }
    }
    (best, best_count)
}

/// Integer value of an exact rational alternating sum, if integral.
pub fn alternating_sum_i128(m: &CoefficientMatrix, seq: &[usize]) -> Option<i128> {
    to_i128(&alternating_sum(m, seq))
}
