//! Immutable simple undirected graphs on dense vertex labels `0..n`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// An undirected edge, always stored with `.0 < .1`.
pub type Edge = (usize, usize);

/// Normalizes an unordered pair so the smaller label comes first.
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("edge {{{0}, {1}}} references a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} is not in 0..{1}")]
    BadVertex(usize, usize),
}

/// A sorted, duplicate-free set of vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        VertexSet(vertices)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// A simple undirected graph. Edges are kept sorted lexicographically with
/// `u < v`, and adjacency lists are sorted ascending, so two values compare
/// equal exactly when they are the same labeled graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl SimpleGraph {
    /// Builds a graph, rejecting loops, out-of-range labels and repeated pairs.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            list.push(edge(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted(n, list))
    }

    /// `list` must be sorted, normalized and duplicate free.
    pub(crate) fn from_sorted(n: usize, list: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        SimpleGraph { n, edges: list, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let mut list = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                list.push((u, v));
            }
        }
        Self::from_sorted(n, list)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// `f(G) = 2|V| - |E|`.
    pub fn freedom_count(&self) -> i64 {
        2 * self.n as i64 - self.edges.len() as i64
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::BadVertex(v, self.n))
        }
    }

    /// Subgraph induced by `s`, relabeled so the i-th smallest member of `s`
    /// becomes vertex `i`.
    pub fn induced(&self, s: &[usize]) -> SimpleGraph {
        let set = VertexSet::new(s.to_vec());
        let mut index = vec![usize::MAX; self.n];
        for (i, v) in set.iter().enumerate() {
            index[v] = i;
        }
        let mut list: Vec<Edge> = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| edge(index[u], index[v]))
            .collect();
        list.sort_unstable();
        SimpleGraph::from_sorted(set.len(), list)
    }

    /// Number of edges with both endpoints in `s` (no relabeling).
    pub fn induced_edge_count(&self, s: &[usize]) -> usize {
        let mut inside = vec![false; self.n];
        for &v in s {
            inside[v] = true;
        }
        self.edges.iter().filter(|&&(u, v)| inside[u] && inside[v]).count()
    }

    /// Applies the relabeling `old -> perm[old]`; `perm` must be a permutation
    /// of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> SimpleGraph {
        debug_assert_eq!(perm.len(), self.n);
        let mut list: Vec<Edge> = self.edges.iter().map(|&(u, v)| edge(perm[u], perm[v])).collect();
        list.sort_unstable();
        SimpleGraph::from_sorted(self.n, list)
    }

    /// Returns a copy with the two labels exchanged.
    pub fn swap_labels(&self, a: usize, b: usize) -> SimpleGraph {
        if a == b {
            return self.clone();
        }
        let perm: Vec<usize> = (0..self.n)
            .map(|x| {
                if x == a {
                    b
                } else if x == b {
                    a
                } else {
                    x
                }
            })
            .collect();
        self.relabel(&perm)
    }

    /// Deletes vertex `x`; the largest label `n-1` takes over label `x`.
    /// Returns the new graph and the old-to-new label map (`None` for `x`).
    pub fn remove_vertex(&self, x: usize) -> (SimpleGraph, Vec<Option<usize>>) {
        let last = self.n - 1;
        let map: Vec<Option<usize>> = (0..self.n)
            .map(|v| {
                if v == x {
                    None
                } else if v == last {
                    Some(x)
                } else {
                    Some(v)
                }
            })
            .collect();
        let mut list: Vec<Edge> = self.edges.iter().filter_map(|&(u, v)| Some(edge(map[u]?, map[v]?))).collect();
        list.sort_unstable();
        (SimpleGraph::from_sorted(self.n - 1, list), map)
    }

    /// Removes several vertices in descending label order, each with the
    /// back-fill rule of [`SimpleGraph::remove_vertex`]. Returns the composed
    /// old-to-new label map.
    pub fn remove_vertices(&self, xs: &[usize]) -> (SimpleGraph, Vec<Option<usize>>) {
        let mut order = xs.to_vec();
        order.sort_unstable_by(|a, b| b.cmp(a));
        order.dedup();
        let mut g = self.clone();
        let mut map: Vec<Option<usize>> = (0..self.n).map(Some).collect();
        for x in order {
            let (h, step) = g.remove_vertex(x);
            for m in map.iter_mut() {
                *m = m.and_then(|v| step[v]);
            }
            g = h;
        }
        (g, map)
    }

    /// Adds `extra` vertices and edges in one step.
    pub fn extend(&self, extra: usize, remove: &[Edge], add: &[Edge]) -> Result<SimpleGraph, GraphError> {
        let n = self.n + extra;
        let drop: BTreeSet<Edge> = remove.iter().map(|&(u, v)| edge(u, v)).collect();
        let kept = self.edges.iter().copied().filter(|e| !drop.contains(e));
        SimpleGraph::new(n, kept.chain(add.iter().copied()))
    }

    /// Disjoint union; `other`'s labels are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let shift = self.n;
        let mut list = self.edges.clone();
        list.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        SimpleGraph::from_sorted(self.n + other.n, list)
    }

    /// All triangles `(a, b, c)` with `a < b < c`, in lexicographic order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            for &c in &self.adj[b] {
                if c > b && self.has_edge(a, c) {
                    out.push([a, b, c]);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All complete subgraphs on four vertices, sorted ascending.
    pub fn k4s(&self) -> Vec<[usize; 4]> {
        let mut out = Vec::new();
        for [a, b, c] in self.triangles() {
            for &d in &self.adj[c] {
                if d > c && self.has_edge(a, d) && self.has_edge(b, d) {
                    out.push([a, b, c, d]);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Bridges (cut edges) via iterative low-link search, sorted ascending.
    pub fn bridges(&self) -> Vec<Edge> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut out = Vec::new();
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, parent, next neighbor index)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(&mut (v, parent, ref mut i)) = stack.last_mut() {
                if *i < self.adj[v].len() {
                    let w = self.adj[v][*i];
                    *i += 1;
                    if w == parent {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, v, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            out.push(edge(parent, v));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Small named graphs used as bases and fixtures.
pub mod named {
    use super::SimpleGraph;

    pub fn k2() -> SimpleGraph {
        SimpleGraph::complete(2)
    }

    pub fn k3() -> SimpleGraph {
        SimpleGraph::complete(3)
    }

    pub fn k4() -> SimpleGraph {
        SimpleGraph::complete(4)
    }

    /// `K5` without the edge `{0, 1}`.
    pub fn k5_minus_edge() -> SimpleGraph {
        let edges = SimpleGraph::complete(5).edges().iter().copied().filter(|&e| e != (0, 1)).collect::<Vec<_>>();
        SimpleGraph::new(5, edges).unwrap()
    }

    /// Two copies of `K4` on `{0,1,2,3}` and `{2,3,4,5}` sharing the edge `{2,3}`.
    pub fn k4_union_k4() -> SimpleGraph {
        let mut edges = Vec::new();
        for quad in [[0, 1, 2, 3], [2, 3, 4, 5]] {
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push((quad[i], quad[j]));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        SimpleGraph::new(6, edges).unwrap()
    }

    pub fn cycle(n: usize) -> SimpleGraph {
        SimpleGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }
}
