//! Transfer of covering constraints from the odd-cycle side of a base graph
//! to the odd-red perfect matching polytope of its doubled graph, plus the
//! expressibility closure used to justify that transferred constraints are
//! facets, and direct certification by enumeration.

use crate::constraint::{Constraint, Sense};
use crate::facets::cycle_char_vector;
use crate::graph::{
    doubled_graph, enumerate_odd_cycles, enumerate_odd_red_perfect_matchings, norm_edge, Cycle,
    Edge, Graph, GraphError, Matching, RedBlueGraph,
};
use crate::linalg::affine_dimension;
use crate::rat::{frac, rat, Rat};
use num::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TransferError {
    #[error("canonical transformation requires nonnegative coefficients")]
    NegativeCoefficient,
    #[error("canonical transformation requires a covering (>=) constraint")]
    NotCovering,
    #[error("|q| = {0} exceeds the expressibility budget k = {1}")]
    BudgetExceeded(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A base graph together with its doubling and the map from base edges to
/// their two red cross copies.
#[derive(Debug, Clone)]
pub struct TransferContext {
    pub base: Graph,
    pub doubled: RedBlueGraph,
    /// base edge -> (forward copy {u+, v-}, backward copy {u-, v+})
    pub edge_map: BTreeMap<Edge, (Edge, Edge)>,
}

impl TransferContext {
    pub fn new(base: Graph) -> Self {
        let n = base.n;
        let doubled = doubled_graph(&base);
        let edge_map = base
            .edges
            .iter()
            .map(|&(u, v)| ((u, v), (norm_edge(u, v + n), norm_edge(v, u + n))))
            .collect();
        TransferContext {
            base,
            doubled,
            edge_map,
        }
    }
}

/// Place each base coefficient on both red copies of its edge and zero on
/// identity edges; right-hand side and sense carry over.
pub fn canonical_transform(
    c: &Constraint,
    ctx: &TransferContext,
) -> Result<Constraint, TransferError> {
    if c.sense != Sense::Ge {
        return Err(TransferError::NotCovering);
    }
    if c.coeffs.iter().any(|v| v.is_negative()) {
        return Err(TransferError::NegativeCoefficient);
    }
    let base_index = ctx.base.edge_index();
    assert_eq!(c.coeffs.len(), base_index.len(), "constraint/base mismatch");
    let n = ctx.base.n;
    let coeffs: Vec<Rat> = ctx
        .doubled
        .graph
        .edge_list()
        .into_iter()
        .map(|(a, b)| {
            if b == a + n {
                Rat::zero() // identity edge
            } else {
                let e = norm_edge(a.min(b), a.max(b) - n);
                c.coeffs[base_index[&e]].clone()
            }
        })
        .collect();
    Ok(Constraint::ge(coeffs, c.rhs.clone()))
}

/// Characteristic vector of a matching in the edge space of `g`.
pub fn matching_char_vector(m: &Matching, g: &Graph) -> Vec<Rat> {
    let index = g.edge_index();
    let mut x = vec![Rat::zero(); index.len()];
    for e in &m.edges {
        x[*index.get(e).expect("matching edge in host graph")] = rat(1);
    }
    x
}

/// Tight odd cycles of a constraint over `g`, in canonical order.
pub fn tight_odd_cycles(g: &Graph, c: &Constraint) -> Result<Vec<Cycle>, GraphError> {
    Ok(enumerate_odd_cycles(g, None)?
        .into_iter()
        .filter(|cyc| c.is_tight_at(&cycle_char_vector(cyc, g)))
        .collect())
}

/// Least fixed point of edge expressibility: starting from `q`, repeatedly
/// add an edge when some tight odd cycle contains it with all of its other
/// edges already in the set.
pub fn expressible_closure(g: &Graph, c: &Constraint, q: &BTreeSet<Edge>) -> BTreeSet<Edge> {
    let tight = tight_odd_cycles(g, c).expect("enumeration over simple graph");
    let cycle_edges: Vec<BTreeSet<Edge>> = tight.iter().map(|cyc| cyc.edge_set()).collect();
    let mut closed: BTreeSet<Edge> = q.iter().map(|&(u, v)| norm_edge(u, v)).collect();
    loop {
        let mut grew = false;
        for edges in &cycle_edges {
            let missing: Vec<&Edge> = edges.iter().filter(|e| !closed.contains(*e)).collect();
            if let [e] = missing[..] {
                closed.insert(*e);
                grew = true;
            }
        }
        if !grew {
            return closed;
        }
    }
}

/// Does a seed set of at most `k` edges express the whole edge set?
pub fn check_k_expressing(
    g: &Graph,
    c: &Constraint,
    k: usize,
    q: &BTreeSet<Edge>,
) -> Result<bool, TransferError> {
    if q.len() > k {
        return Err(TransferError::BudgetExceeded(q.len(), k));
    }
    Ok(expressible_closure(g, c, q) == g.edges)
}

/// Facet certification of a constraint on the odd-red perfect matching
/// polytope, by full enumeration of the polytope's vertices.
#[derive(Debug, Clone)]
pub struct MatchingFacetCertificate {
    pub constraint: Constraint,
    /// Affine dimension of all odd-red perfect matching vectors.
    pub polytope_dim: isize,
    /// Affine dimension of the tight ones.
    pub face_dim: isize,
    pub n_generators: usize,
    pub n_tight: usize,
    /// A matching violating the constraint, if validity fails.
    pub violation: Option<Matching>,
}

impl MatchingFacetCertificate {
    pub fn is_facet(&self) -> bool {
        self.violation.is_none()
            && self.n_tight > 0
            && self.n_tight < self.n_generators
            && self.face_dim == self.polytope_dim - 1
    }
}

/// Enumerate every odd-red perfect matching of the doubled graph, check
/// validity, and compare the affine dimensions of the polytope and the face.
pub fn certify_matching_facet(
    ctx: &TransferContext,
    c: &Constraint,
) -> Result<MatchingFacetCertificate, TransferError> {
    let h = &ctx.doubled;
    let matchings = enumerate_odd_red_perfect_matchings(h)?;
    let mut all_points = Vec::with_capacity(matchings.len());
    let mut tight_points = Vec::new();
    let mut violation = None;
    for m in &matchings {
        let x = matching_char_vector(m, &h.graph);
        if violation.is_none() && !c.satisfied_by(&x) {
            violation = Some(m.clone());
        }
        if c.is_tight_at(&x) {
            tight_points.push(x.clone());
        }
        all_points.push(x);
    }
    Ok(MatchingFacetCertificate {
        constraint: c.clone(),
        polytope_dim: affine_dimension(&all_points),
        face_dim: affine_dimension(&tight_points),
        n_generators: all_points.len(),
        n_tight: tight_points.len(),
        violation,
    })
}

/// The half-half fractional point of a tight odd cycle: the average of the
/// two orientation lifts, i.e. 1/2 on both red copies of every cycle edge
/// and 1 on identity edges of vertices off the cycle.
pub fn half_half_point(cyc: &Cycle, ctx: &TransferContext) -> Vec<Rat> {
    let h = &ctx.doubled;
    let n = ctx.base.n;
    let on_cycle: BTreeSet<usize> = cyc.vertices.iter().copied().collect();
    let cyc_edges = cyc.edge_set();
    h.graph
        .edge_list()
        .into_iter()
        .map(|(a, b)| {
            if b == a + n {
                if on_cycle.contains(&a) {
                    Rat::zero()
                } else {
                    rat(1)
                }
            } else {
                let e = norm_edge(a.min(b), a.max(b) - n);
                if cyc_edges.contains(&e) {
                    frac(1, 2)
                } else {
                    Rat::zero()
                }
            }
        })
        .collect()
}
