//! The label-constraint relaxation of the odd-red perfect matching polytope:
//! parity-admissible vertex labelings, brute-force membership with violated
//! labelings as separation certificates, the 10-vertex non-integrality
//! example, and the max-cut reduction showing separation is hard.

use crate::graph::{doubled_graph_with, ColorConvention, Edge, Graph, RedBlueGraph, Vertex};
use crate::rat::{frac, rat, Rat};
use num::{One, Signed};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabelError {
    #[error("graph has {0} vertices; labeling scan is capped at 24")]
    TooLarge(usize),
    #[error("graph must have an even number of vertices, got {0}")]
    OddVertexCount(usize),
    #[error("point has {got} entries, expected one per edge ({want})")]
    BadPointLength { got: usize, want: usize },
    #[error("graph is not cubic: vertex {0} has degree {1}")]
    NotCubic(Vertex, usize),
    #[error("k = {0} out of range 1..={1}; larger k makes the instance trivial")]
    BadK(usize, usize),
    #[error("max-cut brute force capped at 24 vertices, got {0}")]
    MaxCutTooLarge(usize),
}

/// A 0/1 vertex labeling with `|L^{-1}(1)| = n (mod 2)` where `2n` is the
/// vertex count. Lexicographic order reads vertex 0 first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Labeling {
    pub labels: Vec<u8>,
}

impl Labeling {
    pub fn from_mask(mask: u64, num_vertices: usize) -> Self {
        let labels = (0..num_vertices)
            .map(|v| ((mask >> (num_vertices - 1 - v)) & 1) as u8)
            .collect();
        Labeling { labels }
    }

    pub fn ones(&self) -> usize {
        self.labels.iter().filter(|&&b| b == 1).count()
    }

    pub fn bitstring(&self) -> String {
        self.labels.iter().map(|b| char::from(b'0' + b)).collect()
    }
}

fn admissible_parity(num_vertices: usize) -> usize {
    (num_vertices / 2) % 2
}

/// All parity-admissible labelings, in lexicographic order (vertex 0 most
/// significant). Exactly half of all 0/1 labelings qualify.
pub fn enumerate_labelings(
    h: &RedBlueGraph,
) -> Result<impl Iterator<Item = Labeling> + '_, LabelError> {
    let nv = h.graph.n;
    if nv % 2 != 0 {
        return Err(LabelError::OddVertexCount(nv));
    }
    if nv > 24 {
        return Err(LabelError::TooLarge(nv));
    }
    let parity = admissible_parity(nv);
    Ok((0u64..1 << nv)
        .filter(move |m| (m.count_ones() as usize) % 2 == parity)
        .map(move |m| Labeling::from_mask(m, nv)))
}

/// Blue edges with equal labels plus red edges with unequal labels.
pub fn label_edge_set(h: &RedBlueGraph, l: &Labeling) -> BTreeSet<Edge> {
    h.graph
        .edges
        .iter()
        .copied()
        .filter(|&(u, v)| {
            let same = l.labels[u] == l.labels[v];
            if h.is_red(u, v) {
                !same
            } else {
                same
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QMembership {
    Inside,
    NegativeEntry(Edge),
    DegreeViolation(Vertex),
    /// Lexicographically first labeling whose constraint `x(E_L) >= 1` fails.
    LabelViolation(Labeling),
}

/// Brute-force membership in the label-constraint relaxation: nonnegativity,
/// exact degree equalities, and `x(E_L) >= 1` over every parity-admissible
/// labeling. Cost is one pass over `2^(|V|-1)` labelings.
pub fn q_membership(h: &RedBlueGraph, x: &[Rat]) -> Result<QMembership, LabelError> {
    q_membership_threaded(h, x, 1)
}

pub fn q_membership_threaded(
    h: &RedBlueGraph,
    x: &[Rat],
    threads: usize,
) -> Result<QMembership, LabelError> {
    let nv = h.graph.n;
    if nv % 2 != 0 {
        return Err(LabelError::OddVertexCount(nv));
    }
    if nv > 24 {
        return Err(LabelError::TooLarge(nv));
    }
    let edges = h.graph.edge_list();
    if x.len() != edges.len() {
        return Err(LabelError::BadPointLength {
            got: x.len(),
            want: edges.len(),
        });
    }
    for (e, v) in edges.iter().zip(x) {
        if v.is_negative() {
            return Ok(QMembership::NegativeEntry(*e));
        }
    }
    for v in 0..nv {
        let sum: Rat = edges
            .iter()
            .zip(x)
            .filter(|((a, b), _)| *a == v || *b == v)
            .map(|(_, val)| val.clone())
            .sum();
        if !sum.is_one() {
            return Ok(QMembership::DegreeViolation(v));
        }
    }
    // Scale to a common denominator for an integer-only labeling scan.
    let den: num::BigInt = x
        .iter()
        .fold(num::BigInt::one(), |acc, v| num::integer::lcm(acc, v.denom().clone()));
    let scaled: Option<Vec<i128>> = x
        .iter()
        .map(|v| {
            let n = v.numer() * &den / v.denom();
            crate::rat::to_i128(&Rat::from_integer(n))
        })
        .collect();
    let threshold = crate::rat::to_i128(&Rat::from_integer(den.clone()));
    let (scaled, threshold) = match (scaled, threshold) {
        (Some(s), Some(t)) => (s, t),
        // Denominators beyond i128 are unreachable at desk scale, but keep a
        // slow exact path for completeness.
        _ => return Ok(q_membership_slow(h, x)),
    };
    // Per edge: endpoint bits and redness, for mask arithmetic. Vertex v is
    // bit (nv-1-v) so that increasing masks are lexicographically increasing
    // labelings.
    let edge_data: Vec<(u64, u64, bool, i128)> = edges
        .iter()
        .zip(&scaled)
        .map(|(&(u, v), &val)| {
            (
                1u64 << (nv - 1 - u),
                1u64 << (nv - 1 - v),
                h.is_red(u, v),
                val,
            )
        })
        .collect();
    let parity = admissible_parity(nv) as u32;
    let total: u64 = 1 << nv;
    let threads = threads.max(1).min(16);
    let scan = |lo: u64, hi: u64| -> Option<u64> {
        for mask in lo..hi {
            if mask.count_ones() % 2 != parity {
                continue;
            }
            let mut sum: i128 = 0;
            for &(bu, bv, red, val) in &edge_data {
                let same = (mask & bu != 0) == (mask & bv != 0);
                if same != red {
                    sum += val;
                }
            }
            if sum < threshold {
                return Some(mask);
            }
        }
        None
    };
    let first_violation = if threads == 1 {
        scan(0, total)
    } else {
        let chunk = total.div_ceil(threads as u64);
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads as u64)
                .map(|t| {
                    let scan = &scan;
                    let lo = t * chunk;
                    let hi = ((t + 1) * chunk).min(total);
                    s.spawn(move || scan(lo, hi))
                })
                .collect();
            handles
                .into_iter()
                .filter_map(|h| h.join().expect("scan thread panicked"))
                .min()
        })
    };
    Ok(match first_violation {
        Some(mask) => QMembership::LabelViolation(Labeling::from_mask(mask, nv)),
        None => QMembership::Inside,
    })
}

fn q_membership_slow(h: &RedBlueGraph, x: &[Rat]) -> QMembership {
    let index = h.graph.edge_index();
    for l in enumerate_labelings(h).expect("size checked by caller") {
        let sum: Rat = label_edge_set(h, &l)
            .into_iter()
            .map(|e| x[index[&e]].clone())
            .sum();
        if sum < Rat::one() {
            return QMembership::LabelViolation(l);
        }
    }
    QMembership::Inside
}

/// The 10-vertex, 14-edge bipartite graph with three red edges on which the
/// label relaxation is not integral, together with the fractional point
/// witnessing it: 2/3 on the top-left edge, 1/3 elsewhere.
pub fn build_counterexample() -> (RedBlueGraph, Vec<Rat>) {
    // Vertices 0..4 on one side, 5..9 on the other.
    let blue = [
        (0, 5),
        (0, 6),
        (1, 5),
        (1, 7),
        (2, 6),
        (2, 8),
        (2, 9),
        (3, 7),
        (3, 9),
        (4, 7),
        (4, 8),
    ];
    let red = [(1, 6), (3, 8), (4, 9)];
    let g = Graph::new(10, blue.into_iter().chain(red))
        .expect("simple graph")
        .with_bipartition(0..5, 5..10)
        .expect("bipartite by construction");
    let h = RedBlueGraph::new(g, red).expect("red edges present");
    let x = h
        .graph
        .edge_list()
        .into_iter()
        .map(|e| if e == (0, 5) { frac(2, 3) } else { frac(1, 3) })
        .collect();
    (h, x)
}

/// A max-cut instance lifted to a membership query against the label
/// relaxation of the doubled graph (identity edges red).
#[derive(Debug, Clone)]
pub struct ReductionInstance {
    pub source: Graph,
    pub k: usize,
    pub graph: RedBlueGraph,
    pub x: Vec<Rat>,
    pub alpha: Rat,
}

/// Build the reduction point: alpha = 1/(2(|E|-k+1)), value 1-3*alpha on the
/// red identity edges and alpha on the cross edges. The point always meets
/// the degree constraints; it leaves the relaxation exactly when the source
/// graph has a cut of size at least k.
pub fn reduce_maxcut_to_separation(g: &Graph, k: usize) -> Result<ReductionInstance, LabelError> {
    for v in 0..g.n {
        let d = g.degree(v);
        if d != 3 {
            return Err(LabelError::NotCubic(v, d));
        }
    }
    let m = g.edges.len();
    if k == 0 || k > m - 2 {
        return Err(LabelError::BadK(k, m - 2));
    }
    let alpha = frac(1, 2 * (m as i64 - k as i64 + 1));
    debug_assert!(alpha <= frac(1, 6));
    let doubled = doubled_graph_with(g, ColorConvention::IdentityRed);
    let n = g.n;
    let x = doubled
        .graph
        .edge_list()
        .into_iter()
        .map(|(a, b)| {
            if b == a + n {
                rat(1) - rat(3) * &alpha
            } else {
                alpha.clone()
            }
        })
        .collect();
    Ok(ReductionInstance {
        source: g.clone(),
        k,
        graph: doubled,
        x,
        alpha,
    })
}

/// Max over all bipartitions of the number of crossing edges.
pub fn brute_force_max_cut(g: &Graph) -> Result<usize, LabelError> {
    if g.n > 24 {
        return Err(LabelError::MaxCutTooLarge(g.n));
    }
    if g.n == 0 {
        return Ok(0);
    }
    let edges = g.edge_list();
    let mut best = 0;
    // Fix vertex 0 on one side; complements give the same cut.
    for mask in 0u64..1 << (g.n - 1) {
        let side = mask << 1; // bit v = side of vertex v, vertex 0 on side 0
        let cut = edges
            .iter()
            .filter(|&&(u, v)| (side >> u) & 1 != (side >> v) & 1)
            .count();
        best = best.max(cut);
    }
    Ok(best)
}
