//! Cycle-induced covering constraints for the dominant of the odd cycle
//! polytope of `K_n`, with brute-force validity checking and facet
//! certification through an explicit family of tight cycles.

use crate::constraint::Constraint;
use crate::graph::{complete_graph, enumerate_odd_cycles, norm_edge, Cycle, Graph, Vertex};
use crate::linalg::rank;
use crate::rat::{rat, Rat};
use num::Zero;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FacetError {
    #[error("n must be odd and at least 5, got {0}")]
    BadN(usize),
    #[error("cycle must list n-2 = {expected} distinct vertices, got {got}")]
    BadCycleLength { expected: usize, got: usize },
    #[error("cycle vertices, s and t must partition 0..n")]
    BadPartition,
    #[error("edge ({0}, {1}) does not have both endpoints on the cycle")]
    NotInnerEdge(Vertex, Vertex),
}

/// A `(n-2)`-cycle of `K_n` together with the two leftover vertices.
///
/// The cycle is stored with a fixed starting vertex and direction; the
/// induced constraint depends only on index distances, so the representative
/// does not matter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CInducedSpec {
    pub n: usize,
    pub k: usize,
    pub cycle: Vec<Vertex>,
    pub s: Vertex,
    pub t: Vertex,
}

impl CInducedSpec {
    pub fn new(n: usize, cycle: Vec<Vertex>) -> Result<Self, FacetError> {
        if n < 5 || n % 2 == 0 {
            return Err(FacetError::BadN(n));
        }
        let k = (n - 3) / 2;
        if cycle.len() != n - 2 {
            return Err(FacetError::BadCycleLength {
                expected: n - 2,
                got: cycle.len(),
            });
        }
        let on_cycle: BTreeSet<Vertex> = cycle.iter().copied().collect();
        if on_cycle.len() != n - 2 || on_cycle.iter().any(|&v| v >= n) {
            return Err(FacetError::BadPartition);
        }
        let rest: Vec<Vertex> = (0..n).filter(|v| !on_cycle.contains(v)).collect();
        let [s, t] = rest[..] else {
            return Err(FacetError::BadPartition);
        };
        Ok(CInducedSpec { n, k, cycle, s, t })
    }

    /// Position of a vertex on the cycle, if any.
    pub fn position_of(&self, v: Vertex) -> Option<usize> {
        self.cycle.iter().position(|&w| w == v)
    }

    /// The `i`-th cycle vertex, indices taken cyclically.
    pub fn cycle_vertex(&self, i: usize) -> Vertex {
        self.cycle[i % self.cycle.len()]
    }
}

/// Length of the odd path along the cycle between two cycle vertices: the
/// index distance if odd, its cyclic complement otherwise.
pub fn ell(spec: &CInducedSpec, u: Vertex, v: Vertex) -> Result<usize, FacetError> {
    let (i, j) = match (spec.position_of(u), spec.position_of(v)) {
        (Some(i), Some(j)) if u != v => (i, j),
        _ => return Err(FacetError::NotInnerEdge(u, v)),
    };
    let d = i.abs_diff(j);
    Ok(if d % 2 == 1 { d } else { 2 * spec.k + 1 - d })
}

/// The covering constraint induced by the cycle, over the canonical edge
/// order of `K_n`:
/// 1 on `{s,t}`, `k` on edges leaving the cycle, and the odd-path length on
/// edges among cycle vertices; right-hand side `2k+1`, sense `>=`.
pub fn build_c_induced(spec: &CInducedSpec) -> Constraint {
    let g = complete_graph(spec.n);
    let st = norm_edge(spec.s, spec.t);
    let coeffs: Vec<Rat> = g
        .edge_list()
        .into_iter()
        .map(|(u, v)| {
            if (u, v) == st {
                rat(1)
            } else if u == spec.s || u == spec.t || v == spec.s || v == spec.t {
                rat(spec.k as i64)
            } else {
                rat(ell(spec, u, v).expect("inner edge") as i64)
            }
        })
        .collect();
    Constraint::ge(coeffs, rat((2 * spec.k + 1) as i64))
}

/// Characteristic vector of a cycle in the edge space of `g`.
pub fn cycle_char_vector(c: &Cycle, g: &Graph) -> Vec<Rat> {
    let index = g.edge_index();
    let mut x = vec![Rat::zero(); index.len()];
    for e in c.edge_set() {
        x[*index.get(&e).expect("cycle edge in host graph")] = rat(1);
    }
    x
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Violation(Cycle),
}

/// Brute-force validity over every odd cycle of `K_n`; returns the first
/// violating cycle in canonical order, if any.
pub fn verify_validity(c: &Constraint, n: usize) -> Validity {
    let g = complete_graph(n);
    for cyc in enumerate_odd_cycles(&g, None).expect("no length filter") {
        let x = cycle_char_vector(&cyc, &g);
        if !c.satisfied_by(&x) {
            return Validity::Violation(cyc);
        }
    }
    Validity::Valid
}

/// The explicit tight family: triangles through `s` and/or `t`, chord cycles,
/// and the inducing cycle itself. Exactly `|E(K_n)|` cycles, all tight.
pub fn tight_family(spec: &CInducedSpec) -> Vec<Cycle> {
    let m = spec.cycle.len(); // 2k+1
    let mut out = Vec::new();
    for i in 0..m {
        let vi = spec.cycle_vertex(i);
        let vnext = spec.cycle_vertex(i + 1);
        out.push(Cycle::new(vec![spec.s, spec.t, vi]).canonical());
        out.push(Cycle::new(vec![spec.s, vi, vnext]).canonical());
        out.push(Cycle::new(vec![spec.t, vi, vnext]).canonical());
    }
    // Chord cycles: chord {v_i, v_j} closed by the even path along C, which
    // is the direct arc when the index distance is even and the complement
    // arc otherwise.
    for i in 0..m {
        for j in i + 1..m {
            let d = j - i;
            if d == 1 || d == m - 1 {
                continue; // cycle edge, not a chord
            }
            let verts: Vec<Vertex> = if d % 2 == 0 {
                (i..=j).map(|p| spec.cycle_vertex(p)).collect()
            } else {
                (j..=i + m).map(|p| spec.cycle_vertex(p)).collect()
            };
            out.push(Cycle::new(verts).canonical());
        }
    }
    out.push(Cycle::new(spec.cycle.clone()).canonical());
    out
}

/// Outcome of certifying one cycle-induced constraint as a facet of the
/// dominant of the odd cycle polytope.
#[derive(Debug, Clone)]
pub struct DominantFacetCertificate {
    pub constraint: Constraint,
    pub tight_cycles: Vec<Cycle>,
    /// Linear rank of the tight incidence vectors.
    pub linear_rank: usize,
    /// Affine dimension of the tight incidence vectors (the face dimension).
    pub face_dim: isize,
    /// `|E| - 1`: what the face dimension must be for a facet of the
    /// full-dimensional dominant.
    pub required_face_dim: isize,
    pub valid: bool,
}

impl DominantFacetCertificate {
    pub fn is_facet(&self) -> bool {
        self.valid && self.face_dim == self.required_face_dim
    }
}

/// Certify facetness by exhibiting `|E|` linearly independent tight cycles
/// and checking validity exhaustively.
pub fn certify_dominant_facet(spec: &CInducedSpec) -> DominantFacetCertificate {
    let g = complete_graph(spec.n);
    let constraint = build_c_induced(spec);
    let tight_cycles = tight_family(spec);
    let points: Vec<Vec<Rat>> = tight_cycles
        .iter()
        .map(|c| cycle_char_vector(c, &g))
        .collect();
    debug_assert!(points.iter().all(|x| constraint.is_tight_at(x)));
    let linear_rank = rank(&points);
    let face_dim = crate::linalg::affine_dimension(&points);
    DominantFacetCertificate {
        valid: verify_validity(&constraint, spec.n) == Validity::Valid,
        constraint,
        tight_cycles,
        linear_rank,
        face_dim,
        required_face_dim: g.edges.len() as isize - 1,
    }
}

/// The default cycle spec on `0..n`: cycle `(0, 1, ..., n-3)`, leftovers
/// `n-2` and `n-1`.
pub fn standard_spec(n: usize) -> Result<CInducedSpec, FacetError> {
    CInducedSpec::new(n, (0..n - 2).collect())
}
