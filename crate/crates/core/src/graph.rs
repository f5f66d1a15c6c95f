//! Graphs, the doubling construction, and desk-scale exhaustive enumeration
//! of perfect matchings and odd cycles.
//!
//! Vertices are 0-indexed integers. For a doubled graph on base vertices
//! `0..n`, the plus copy of `v` is `v` and the minus copy is `v + n`.
//! Edges are unordered pairs normalized to `u < v`; the canonical edge order
//! of a graph is the sorted order of its edge list.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

pub type Vertex = usize;
pub type Edge = (Vertex, Vertex);

pub fn norm_edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    BadVertex(Vertex, Vertex, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("bipartition does not partition the vertex set")]
    BadBipartition,
    #[error("edge ({0}, {1}) does not cross the bipartition")]
    EdgeInsideSide(Vertex, Vertex),
    #[error("red edge ({0}, {1}) is not an edge of the graph")]
    RedNotEdge(Vertex, Vertex),
    #[error("graph has no bipartition")]
    NotBipartite,
    #[error("matching is not perfect")]
    MatchingNotPerfect,
    #[error("cycle has even length")]
    EvenCycle,
    #[error("even length filter {0} requested for odd cycle enumeration")]
    EvenLengthFilter(usize),
    #[error("vertex {0} is not on the cycle")]
    NotOnCycle(Vertex),
    #[error("graph is not cubic: vertex {0} has degree {1}")]
    NotCubic(Vertex, usize),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
}

/// A simple undirected graph, optionally with a bipartition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub edges: BTreeSet<Edge>,
    pub bipartition: Option<(BTreeSet<Vertex>, BTreeSet<Vertex>)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let edges: BTreeSet<Edge> = edges.into_iter().map(|(u, v)| norm_edge(u, v)).collect();
        for &(u, v) in &edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if v >= n {
                return Err(GraphError::BadVertex(u, v, n));
            }
        }
        Ok(Graph {
            n,
            edges,
            bipartition: None,
        })
    }

    pub fn with_bipartition(
        mut self,
        left: impl IntoIterator<Item = Vertex>,
        right: impl IntoIterator<Item = Vertex>,
    ) -> Result<Self, GraphError> {
        let left: BTreeSet<Vertex> = left.into_iter().collect();
        let right: BTreeSet<Vertex> = right.into_iter().collect();
        if left.intersection(&right).next().is_some()
            || left.len() + right.len() != self.n
            || left.union(&right).any(|&v| v >= self.n)
        {
            return Err(GraphError::BadBipartition);
        }
        for &(u, v) in &self.edges {
            if left.contains(&u) == left.contains(&v) {
                return Err(GraphError::EdgeInsideSide(u, v));
            }
        }
        self.bipartition = Some((left, right));
        Ok(self)
    }

    /// Canonical edge ordering: sorted edge list.
    pub fn edge_list(&self) -> Vec<Edge> {
        self.edges.iter().copied().collect()
    }

    pub fn edge_index(&self) -> BTreeMap<Edge, usize> {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&norm_edge(u, v))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = adjacency(self);
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&b| b)
    }
}

fn adjacency(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut adj = vec![Vec::new(); g.n];
    for &(u, v) in &g.edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    adj
}

/// A bipartite (or general) graph with a subset of edges marked red.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedBlueGraph {
    pub graph: Graph,
    pub red: BTreeSet<Edge>,
}

impl RedBlueGraph {
    pub fn new(graph: Graph, red: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        if graph.bipartition.is_none() {
            return Err(GraphError::NotBipartite);
        }
        let red: BTreeSet<Edge> = red.into_iter().map(|(u, v)| norm_edge(u, v)).collect();
        for &(u, v) in &red {
            if !graph.edges.contains(&(u, v)) {
                return Err(GraphError::RedNotEdge(u, v));
            }
        }
        Ok(RedBlueGraph { graph, red })
    }

    pub fn is_red(&self, u: Vertex, v: Vertex) -> bool {
        self.red.contains(&norm_edge(u, v))
    }
}

/// Which edge class of a doubled graph is colored red.
///
/// The facet-transfer construction colors the cross edges red; the hardness
/// reduction colors the identity edges `{v+, v-}` red instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColorConvention {
    CrossRed,
    IdentityRed,
}

/// A set of pairwise vertex-disjoint edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Matching {
    pub edges: BTreeSet<Edge>,
}

impl Matching {
    pub fn new(edges: impl IntoIterator<Item = Edge>) -> Option<Self> {
        let edges: BTreeSet<Edge> = edges.into_iter().map(|(u, v)| norm_edge(u, v)).collect();
        let mut seen = BTreeSet::new();
        for &(u, v) in &edges {
            if !seen.insert(u) || !seen.insert(v) {
                return None;
            }
        }
        Some(Matching { edges })
    }

    pub fn is_perfect(&self, g: &Graph) -> bool {
        self.edges.len() * 2 == g.n
    }

    pub fn red_count(&self, h: &RedBlueGraph) -> usize {
        self.edges.iter().filter(|e| h.red.contains(e)).count()
    }
}

/// A closed vertex sequence. Degenerate 2-cycles (one projected edge used
/// twice) are flagged and never counted as odd.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cycle {
    pub vertices: Vec<Vertex>,
    pub degenerate: bool,
}

impl Cycle {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        Cycle {
            vertices,
            degenerate: false,
        }
    }

    pub fn degenerate(u: Vertex, v: Vertex) -> Self {
        Cycle {
            vertices: vec![u.min(v), u.max(v)],
            degenerate: true,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        !self.degenerate && self.len() % 2 == 1
    }

    /// The edges traversed, with multiplicity (a degenerate cycle uses its
    /// single edge twice).
    pub fn edge_multiset(&self) -> Vec<Edge> {
        let t = self.vertices.len();
        (0..t)
            .map(|i| norm_edge(self.vertices[i], self.vertices[(i + 1) % t]))
            .collect()
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edge_multiset().into_iter().collect()
    }

    /// Lexicographically smallest rotation/reflection of the vertex sequence.
    pub fn canonical(&self) -> Cycle {
        if self.degenerate || self.vertices.len() < 3 {
            return self.clone();
        }
        let t = self.vertices.len();
        let mut best: Option<Vec<Vertex>> = None;
        for start in 0..t {
            for dir in [1isize, -1] {
                let cand: Vec<Vertex> = (0..t)
                    .map(|i| {
                        let idx = (start as isize + dir * i as isize).rem_euclid(t as isize);
                        self.vertices[idx as usize]
                    })
                    .collect();
                if best.as_ref().map_or(true, |b| &cand < b) {
                    best = Some(cand);
                }
            }
        }
        Cycle::new(best.unwrap())
    }
}

/// The complete graph on `n` vertices.
pub fn complete_graph(n: usize) -> Graph {
    assert!(n >= 1, "complete_graph requires n >= 1");
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges).expect("complete graph is simple")
}

/// The doubling construction with the cross edges colored red.
pub fn doubled_graph(g: &Graph) -> RedBlueGraph {
    doubled_graph_with(g, ColorConvention::CrossRed)
}

/// Doubling `G -> (G^, R^)`: vertex set `V+ u V-`, an identity edge
/// `{v+, v-}` per vertex, and the two cross edges `{u+, v-}`, `{u-, v+}` per
/// base edge. The convention selects which class is red.
pub fn doubled_graph_with(g: &Graph, convention: ColorConvention) -> RedBlueGraph {
    let n = g.n;
    let mut edges: Vec<Edge> = (0..n).map(|v| (v, v + n)).collect();
    let mut cross = Vec::new();
    for &(u, v) in &g.edges {
        cross.push(norm_edge(u, v + n));
        cross.push(norm_edge(v, u + n));
    }
    edges.extend(cross.iter().copied());
    let graph = Graph::new(2 * n, edges)
        .expect("doubled graph is simple")
        .with_bipartition(0..n, n..2 * n)
        .expect("doubling is bipartite");
    let red: Vec<Edge> = match convention {
        ColorConvention::CrossRed => cross,
        ColorConvention::IdentityRed => (0..n).map(|v| (v, v + n)).collect(),
    };
    RedBlueGraph::new(graph, red).expect("red edges are edges")
}

/// The two plus/minus copies of a base vertex in a doubled graph.
pub fn plus(v: Vertex) -> Vertex {
    v
}
pub fn minus(v: Vertex, base_n: usize) -> Vertex {
    v + base_n
}

/// All perfect matchings of a bipartite graph, in lexicographic order of
/// their sorted edge lists.
pub fn enumerate_perfect_matchings(h: &RedBlueGraph) -> Result<Vec<Matching>, GraphError> {
    let (left, right) = h
        .graph
        .bipartition
        .as_ref()
        .ok_or(GraphError::NotBipartite)?;
    if left.len() != right.len() {
        return Ok(Vec::new());
    }
    let left: Vec<Vertex> = left.iter().copied().collect();
    let adj = adjacency(&h.graph);
    let mut used = BTreeSet::new();
    let mut current = Vec::new();
    let mut out = Vec::new();
    fn rec(
        i: usize,
        left: &[Vertex],
        adj: &[Vec<Vertex>],
        used: &mut BTreeSet<Vertex>,
        current: &mut Vec<Edge>,
        out: &mut Vec<Matching>,
    ) {
        if i == left.len() {
            out.push(Matching::new(current.iter().copied()).expect("disjoint by construction"));
            return;
        }
        let v = left[i];
        for &w in &adj[v] {
            if used.insert(w) {
                current.push(norm_edge(v, w));
                rec(i + 1, left, adj, used, current, out);
                current.pop();
                used.remove(&w);
            }
        }
    }
    rec(0, &left, &adj, &mut used, &mut current, &mut out);
    out.sort();
    Ok(out)
}

/// Exactly the perfect matchings with an odd number of red edges.
pub fn enumerate_odd_red_perfect_matchings(h: &RedBlueGraph) -> Result<Vec<Matching>, GraphError> {
    Ok(enumerate_perfect_matchings(h)?
        .into_iter()
        .filter(|m| m.red_count(h) % 2 == 1)
        .collect())
}

/// All odd cycles of a simple graph as canonical representatives, optionally
/// restricted to one length. Deterministic, duplicate-free.
pub fn enumerate_odd_cycles(
    g: &Graph,
    length_filter: Option<usize>,
) -> Result<Vec<Cycle>, GraphError> {
    if let Some(l) = length_filter {
        if l % 2 == 0 {
            return Err(GraphError::EvenLengthFilter(l));
        }
    }
    let adj = adjacency(g);
    let mut out = Vec::new();
    // Cycles rooted at their smallest vertex; reflection killed by requiring
    // second vertex < last vertex.
    for root in 0..g.n {
        let mut path = vec![root];
        let mut on_path = vec![false; g.n];
        on_path[root] = true;
        rec_cycles(g, &adj, root, &mut path, &mut on_path, length_filter, &mut out);
    }
    out.sort();
    Ok(out)
}

fn rec_cycles(
    g: &Graph,
    adj: &[Vec<Vertex>],
    root: Vertex,
    path: &mut Vec<Vertex>,
    on_path: &mut Vec<bool>,
    length_filter: Option<usize>,
    out: &mut Vec<Cycle>,
) {
    let last = *path.last().unwrap();
    if path.len() >= 3
        && path.len() % 2 == 1
        && length_filter.map_or(true, |l| l == path.len())
        && path[1] < last
        && g.has_edge(last, root)
    {
        out.push(Cycle::new(path.clone()));
    }
    if let Some(l) = length_filter {
        if path.len() == l {
            return;
        }
    }
    for &w in &adj[last] {
        if w > root && !on_path[w] {
            path.push(w);
            on_path[w] = true;
            rec_cycles(g, adj, root, path, on_path, length_filter, out);
            on_path[w] = false;
            path.pop();
        }
    }
}

/// Traversal direction used when lifting a cycle into a doubled graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Forward,
    Reverse,
}

/// Lift an odd cycle of `g` to an odd-red perfect matching of the doubled
/// graph: `{v_i+, v_{i+1}-}` along the cycle and `{v+, v-}` elsewhere.
pub fn cycle_to_matching(c: &Cycle, g: &Graph, orientation: Orientation) -> Result<Matching, GraphError> {
    if !c.is_odd() {
        return Err(GraphError::EvenCycle);
    }
    let n = g.n;
    let verts: Vec<Vertex> = match orientation {
        Orientation::Forward => c.vertices.clone(),
        Orientation::Reverse => {
            let mut v = c.vertices.clone();
            v.reverse();
            v
        }
    };
    let t = verts.len();
    let mut edges: Vec<Edge> = (0..t)
        .map(|i| norm_edge(verts[i], verts[(i + 1) % t] + n))
        .collect();
    let on_cycle: BTreeSet<Vertex> = verts.iter().copied().collect();
    for v in 0..n {
        if !on_cycle.contains(&v) {
            edges.push((v, v + n));
        }
    }
    Ok(Matching::new(edges).expect("cycle lift is a matching"))
}

/// Project a perfect matching of a doubled graph back to a multiset of
/// cycles of the base graph. Pairs `{u+, v-}`, `{u-, v+}` matched for the
/// same base edge project to a flagged degenerate 2-cycle.
pub fn matching_to_cycle_cover(m: &Matching, h: &RedBlueGraph) -> Result<Vec<Cycle>, GraphError> {
    let n = h.graph.n / 2;
    if !m.is_perfect(&h.graph) {
        return Err(GraphError::MatchingNotPerfect);
    }
    // Matched cross edges define a permutation: {u+, v-} => pi(u) = v.
    let mut pi = vec![usize::MAX; n];
    for &(a, b) in &m.edges {
        let (p, mn) = if a < n { (a, b - n) } else { (b, a - n) };
        pi[p] = mn;
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] || pi[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cyc = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            cyc.push(v);
            v = pi[v];
        }
        if cyc.len() == 2 {
            out.push(Cycle::degenerate(cyc[0], cyc[1]));
        } else {
            out.push(Cycle::new(cyc).canonical());
        }
    }
    out.sort();
    Ok(out)
}

/// All connected cubic graphs on `n` vertices, up to isomorphism.
pub fn connected_cubic_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    if n > 10 {
        return Err(GraphError::SizeLimit(format!(
            "cubic enumeration capped at 10 vertices, got {n}"
        )));
    }
    if n % 2 == 1 || n < 4 {
        return Ok(Vec::new());
    }
    let all_edges: Vec<Edge> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut deg = vec![0usize; n];
    let mut chosen = Vec::new();
    let mut reps: Vec<Graph> = Vec::new();

    fn feasible(deg: &[usize], all_edges: &[Edge], next: usize) -> bool {
        // Every vertex must still be able to reach degree 3 with the edges
        // not yet decided.
        let n = deg.len();
        let mut slack = vec![0usize; n];
        for &(u, v) in &all_edges[next..] {
            slack[u] += 1;
            slack[v] += 1;
        }
        (0..n).all(|v| deg[v] <= 3 && deg[v] + slack[v] >= 3)
    }

    fn rec(
        idx: usize,
        all_edges: &[Edge],
        deg: &mut Vec<usize>,
        chosen: &mut Vec<Edge>,
        reps: &mut Vec<Graph>,
    ) {
        let n = deg.len();
        if idx == all_edges.len() {
            if deg.iter().all(|&d| d == 3) {
                let g = Graph::new(n, chosen.iter().copied()).unwrap();
                if g.is_connected() && !reps.iter().any(|r| isomorphic(r, &g)) {
                    reps.push(g);
                }
            }
            return;
        }
        if !feasible(deg, all_edges, idx) {
            return;
        }
        let (u, v) = all_edges[idx];
        if deg[u] < 3 && deg[v] < 3 {
            deg[u] += 1;
            deg[v] += 1;
            chosen.push((u, v));
            rec(idx + 1, all_edges, deg, chosen, reps);
            chosen.pop();
            deg[u] -= 1;
            deg[v] -= 1;
        }
        rec(idx + 1, all_edges, deg, chosen, reps);
    }

    rec(0, &all_edges, &mut deg, &mut chosen, &mut reps);
    Ok(reps)
}

/// Backtracking isomorphism test for small graphs of equal order/size.
pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n != h.n || g.edges.len() != h.edges.len() {
        return false;
    }
    let ga = adjacency(g);
    let ha = adjacency(h);
    let mut map = vec![usize::MAX; g.n];
    let mut used = vec![false; g.n];
    fn rec(
        v: usize,
        g: &Graph,
        h: &Graph,
        ga: &[Vec<Vertex>],
        ha: &[Vec<Vertex>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if v == g.n {
            return true;
        }
        for w in 0..h.n {
            if used[w] || ga[v].len() != ha[w].len() {
                continue;
            }
            // Edges among already-mapped vertices must agree.
            let ok = (0..v).all(|u| g.has_edge(u, v) == h.has_edge(map[u], w));
            if ok {
                map[v] = w;
                used[w] = true;
                if rec(v + 1, g, h, ga, ha, map, used) {
                    return true;
                }
                used[w] = false;
                map[v] = usize::MAX;
            }
        }
        false
    }
    rec(0, g, h, &ga, &ha, &mut map, &mut used)
}

/// JSON schema for graphs:
/// `{"n": int, "bipartition": [[..],[..]] | null, "edges": [[u,v],..], "red": [[u,v],..]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub bipartition: Option<(Vec<Vertex>, Vec<Vertex>)>,
    pub edges: Vec<(Vertex, Vertex)>,
    #[serde(default)]
    pub red: Vec<(Vertex, Vertex)>,
}

impl GraphJson {
    pub fn from_red_blue(h: &RedBlueGraph) -> Self {
        GraphJson {
            n: h.graph.n,
            bipartition: h
                .graph
                .bipartition
                .as_ref()
                .map(|(l, r)| (l.iter().copied().collect(), r.iter().copied().collect())),
            edges: h.graph.edge_list(),
            red: h.red.iter().copied().collect(),
        }
    }

    pub fn to_red_blue(&self) -> Result<RedBlueGraph, GraphError> {
        let mut g = Graph::new(self.n, self.edges.iter().copied())?;
        if let Some((l, r)) = &self.bipartition {
            g = g.with_bipartition(l.iter().copied(), r.iter().copied())?;
        }
        RedBlueGraph::new(g, self.red.iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_edge_counts() {
        assert_eq!(complete_graph(1).edges.len(), 0);
        assert_eq!(complete_graph(5).edges.len(), 10);
        assert_eq!(complete_graph(9).edges.len(), 36);
    }

    #[test]
    fn doubling_k3() {
        let h = doubled_graph(&complete_graph(3));
        assert_eq!(h.graph.n, 6);
        assert_eq!(h.graph.edges.len(), 9);
        assert_eq!(h.red.len(), 6);
        // K3 doubles to K_{3,3}.
        for u in 0..3 {
            for v in 3..6 {
                assert!(h.graph.has_edge(u, v));
            }
        }
    }

    #[test]
    fn doubling_single_vertex() {
        let g = Graph::new(1, Vec::<Edge>::new()).unwrap();
        let h = doubled_graph(&g);
        assert_eq!(h.graph.n, 2);
        assert_eq!(h.graph.edges.len(), 1);
        assert!(h.red.is_empty());
    }

    #[test]
    fn doubling_fig1_graph() {
        // 4 vertices, 5 edges.
        let g = Graph::new(4, [(0, 1), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let h = doubled_graph(&g);
        assert_eq!(h.graph.n, 8);
        assert_eq!(h.graph.edges.len(), 14);
        assert_eq!(h.red.len(), 10);
    }

    #[test]
    fn identity_red_convention() {
        let h = doubled_graph_with(&complete_graph(3), ColorConvention::IdentityRed);
        assert_eq!(h.red.len(), 3);
        assert!(h.red.iter().all(|&(u, v)| v == u + 3));
    }

    #[test]
    fn odd_red_pms_of_doubled_k3() {
        let h = doubled_graph(&complete_graph(3));
        let ms = enumerate_odd_red_perfect_matchings(&h).unwrap();
        assert_eq!(ms.len(), 2);
        for m in &ms {
            assert_eq!(m.red_count(&h), 3);
        }
    }

    #[test]
    fn odd_red_pm_unique_in_2x2() {
        let g = Graph::new(4, [(0, 2), (1, 3)])
            .unwrap()
            .with_bipartition([0, 1], [2, 3])
            .unwrap();
        let h = RedBlueGraph::new(g, [(0, 2)]).unwrap();
        assert_eq!(enumerate_odd_red_perfect_matchings(&h).unwrap().len(), 1);
    }

    #[test]
    fn no_red_means_no_odd_red_pm() {
        let h = doubled_graph_with(&complete_graph(3), ColorConvention::CrossRed);
        let stripped = RedBlueGraph::new(h.graph.clone(), Vec::<Edge>::new()).unwrap();
        assert!(enumerate_odd_red_perfect_matchings(&stripped)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn odd_cycles_of_small_complete_graphs() {
        assert_eq!(enumerate_odd_cycles(&complete_graph(3), None).unwrap().len(), 1);
        let k5 = complete_graph(5);
        assert_eq!(enumerate_odd_cycles(&k5, None).unwrap().len(), 22);
        assert_eq!(enumerate_odd_cycles(&k5, Some(3)).unwrap().len(), 10);
        assert_eq!(enumerate_odd_cycles(&k5, Some(5)).unwrap().len(), 12);
        assert!(enumerate_odd_cycles(&k5, Some(4)).is_err());
    }

    #[test]
    fn cycle_lift_roundtrip() {
        let g = complete_graph(7);
        let c = Cycle::new(vec![0, 2, 4, 1, 6]);
        for orient in [Orientation::Forward, Orientation::Reverse] {
            let m = cycle_to_matching(&c, &g, orient).unwrap();
            let h = doubled_graph(&g);
            assert!(m.is_perfect(&h.graph));
            assert_eq!(m.red_count(&h), 5);
            let cover = matching_to_cycle_cover(&m, &h).unwrap();
            assert_eq!(cover.len(), 1);
            assert_eq!(cover[0], c.canonical());
        }
    }

    #[test]
    fn five_cycle_in_k7_lift_edge_counts() {
        let g = complete_graph(7);
        let c = Cycle::new(vec![0, 1, 2, 3, 4]);
        let h = doubled_graph(&g);
        let m = cycle_to_matching(&c, &g, Orientation::Forward).unwrap();
        assert_eq!(m.red_count(&h), 5);
        assert_eq!(m.edges.len() - m.red_count(&h), 2);
    }

    #[test]
    fn identity_matching_projects_to_nothing() {
        let g = complete_graph(4);
        let h = doubled_graph(&g);
        let m = Matching::new((0..4).map(|v| (v, v + 4))).unwrap();
        assert!(matching_to_cycle_cover(&m, &h).unwrap().is_empty());
    }

    #[test]
    fn double_used_edge_projects_to_degenerate_cycle() {
        let g = complete_graph(4);
        let h = doubled_graph(&g);
        let m = Matching::new([(0, 5), (1, 4), (2, 6), (3, 7)]).unwrap();
        let cover = matching_to_cycle_cover(&m, &h).unwrap();
        assert_eq!(cover.len(), 1);
        assert!(cover[0].degenerate);
        assert!(!cover[0].is_odd());
        assert_eq!(cover[0].vertices, vec![0, 1]);
    }

    #[test]
    fn odd_red_pm_projection_contains_odd_cycle() {
        let g = complete_graph(5);
        let h = doubled_graph(&g);
        for m in enumerate_odd_red_perfect_matchings(&h).unwrap() {
            let cover = matching_to_cycle_cover(&m, &h).unwrap();
            assert!(cover.iter().any(|c| c.is_odd()), "no odd cycle in cover of {m:?}");
        }
    }

    #[test]
    fn odd_red_pm_count_matches_permutation_oracle() {
        // Independent oracle: permutations of [n] with an odd number of
        // non-fixed points.
        fn perms_with_odd_support(n: usize) -> usize {
            let mut count = 0;
            let mut perm: Vec<usize> = (0..n).collect();
            loop {
                let moved = perm.iter().enumerate().filter(|&(i, &p)| i != p).count();
                if moved % 2 == 1 {
                    count += 1;
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
            count
        }
        fn next_permutation(p: &mut [usize]) -> bool {
            let n = p.len();
            if n < 2 {
                return false;
            }
            let mut i = n - 1;
            while i > 0 && p[i - 1] >= p[i] {
                i -= 1;
            }
            if i == 0 {
                return false;
            }
            let mut j = n - 1;
            while p[j] <= p[i - 1] {
                j -= 1;
            }
            p.swap(i - 1, j);
            p[i..].reverse();
            true
        }
        for n in 1..=6 {
            let h = doubled_graph(&complete_graph(n));
            let got = enumerate_odd_red_perfect_matchings(&h).unwrap().len();
            assert_eq!(got, perms_with_odd_support(n), "n={n}");
        }
    }

    #[test]
    fn enumerators_are_deterministic() {
        let h = doubled_graph(&complete_graph(4));
        let a = enumerate_odd_red_perfect_matchings(&h).unwrap();
        let b = enumerate_odd_red_perfect_matchings(&h).unwrap();
        assert_eq!(a, b);
        let g = complete_graph(6);
        assert_eq!(
            enumerate_odd_cycles(&g, None).unwrap(),
            enumerate_odd_cycles(&g, None).unwrap()
        );
    }

    #[test]
    fn cubic_graph_counts() {
        assert_eq!(connected_cubic_graphs(4).unwrap().len(), 1);
        assert_eq!(connected_cubic_graphs(6).unwrap().len(), 2);
        assert_eq!(connected_cubic_graphs(8).unwrap().len(), 5);
    }

    #[test]
    fn graph_json_roundtrip() {
        let h = doubled_graph(&complete_graph(3));
        let js = serde_json::to_string(&GraphJson::from_red_blue(&h)).unwrap();
        let back: GraphJson = serde_json::from_str(&js).unwrap();
        assert_eq!(back.to_red_blue().unwrap(), h);
    }
}
