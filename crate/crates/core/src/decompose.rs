//! Spanning decompositions of tight graphs by matroid partition.
//!
//! * `l = 1`: a spanning tree plus a spanning subgraph whose components each
//!   contain exactly one cycle (a basis of the bicircular matroid).
//! * `l = 2`: two edge-disjoint spanning trees.
//! * `l = 3`: after adjoining one more edge `e` (any pair of vertices, a
//!   parallel copy of an existing edge included), two spanning trees.
//!
//! Edges are inserted one at a time; when an edge fits neither part
//! directly, a breadth-first search over the exchange graph finds a
//! shortest chain of swaps that makes room for it.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{edge, Edge, SimpleGraph};
use crate::sparsity::{is_tight, SparsityParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("graph is not (2,{0})-tight")]
    NotTight(u8),
    #[error("added edge {0:?} is not a pair of distinct vertices of the graph")]
    BadExtraEdge(Edge),
    #[error("an added edge is only meaningful for l = 3")]
    UnexpectedExtraEdge,
    #[error("edge {0:?} could not be placed in either part")]
    Stuck(Edge),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    /// Spanning tree `T`.
    pub tree_edges: Vec<Edge>,
    /// `P`: one-cycle-per-component spanning subgraph for `l = 1`, a second
    /// spanning tree otherwise.
    pub map_edges: Vec<Edge>,
    /// The adjoined edge for `l = 3`.
    pub added_edge: Option<Edge>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Graphic,
    Bicircular,
}

/// Union-find tracking, per component, whether it already holds a cycle.
struct Forest {
    parent: Vec<usize>,
    cyclic: Vec<bool>,
}

impl Forest {
    fn new(n: usize) -> Self {
        Forest { parent: (0..n).collect(), cyclic: vec![false; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Adds an edge; `false` when the matroid rejects it.
    fn add(&mut self, kind: Kind, (u, v): Edge) -> bool {
        let (a, b) = (self.find(u), self.find(v));
        match kind {
            Kind::Graphic => {
                if a == b {
                    return false;
                }
                self.parent[a] = b;
                true
            }
            Kind::Bicircular => {
                if a == b {
                    if self.cyclic[a] {
                        return false;
                    }
                    self.cyclic[a] = true;
                    true
                } else {
                    if self.cyclic[a] && self.cyclic[b] {
                        return false;
                    }
                    self.parent[a] = b;
                    self.cyclic[b] |= self.cyclic[a];
                    true
                }
            }
        }
    }
}

fn independent(n: usize, kind: Kind, edges: impl Iterator<Item = Edge>) -> bool {
    let mut f = Forest::new(n);
    for e in edges {
        if !f.add(kind, e) {
            return false;
        }
    }
    true
}

struct Partition<'a> {
    n: usize,
    elements: &'a [Edge],
    kinds: [Kind; 2],
    part: Vec<Option<usize>>,
}

impl Partition<'_> {
    /// Is part `i` plus `add` minus `drop` independent?
    fn fits(&self, i: usize, add: usize, drop: Option<usize>) -> bool {
        let members = (0..self.elements.len())
            .filter(|&e| self.part[e] == Some(i) && Some(e) != drop)
            .chain(std::iter::once(add))
            .map(|e| self.elements[e]);
        independent(self.n, self.kinds[i], members)
    }

    fn insert(&mut self, x: usize) -> bool {
        let m = self.elements.len();
        let mut via: Vec<Option<(usize, usize)>> = vec![None; m];
        let mut seen = vec![false; m];
        seen[x] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(z) = queue.pop_front() {
            for i in 0..2 {
                if self.part[z] == Some(i) {
                    continue;
                }
                if self.fits(i, z, None) {
                    // z enters part i; walk back, each element taking the
                    // place of the one it displaced.
                    let mut cur = z;
                    let mut target = i;
                    loop {
                        self.part[cur] = Some(target);
                        match via[cur] {
                            None => return true,
                            Some((prev, j)) => {
                                cur = prev;
                                target = j;
                            }
                        }
                    }
                }
                for y in 0..m {
                    if !seen[y] && self.part[y] == Some(i) && self.fits(i, z, Some(y)) {
                        seen[y] = true;
                        via[y] = Some((z, i));
                        queue.push_back(y);
                    }
                }
            }
        }
        false
    }
}

/// Lexicographically first non-edge, or the first edge (to be doubled) when
/// the graph is complete.
pub fn default_extra_edge(g: &SimpleGraph) -> Option<Edge> {
    let n = g.vertex_count();
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).find(|&(u, v)| !g.has_edge(u, v)).or_else(|| g.edges().first().copied())
}

/// Decomposes a tight graph. For `l = 3`, `extra` selects the adjoined edge
/// (defaulting to [`default_extra_edge`]); it must be `None` otherwise.
pub fn decompose(g: &SimpleGraph, p: SparsityParams, extra: Option<Edge>) -> Result<Decomposition, DecomposeError> {
    if !is_tight(g, p) {
        return Err(DecomposeError::NotTight(p.l()));
    }
    let n = g.vertex_count();
    let added = match (p.l(), extra) {
        (3, Some((u, v))) => {
            if u == v || u >= n || v >= n {
                return Err(DecomposeError::BadExtraEdge((u, v)));
            }
            Some(edge(u, v))
        }
        (3, None) => Some(default_extra_edge(g).ok_or(DecomposeError::BadExtraEdge((0, 0)))?),
        (_, Some(_)) => return Err(DecomposeError::UnexpectedExtraEdge),
        (_, None) => None,
    };
    let mut elements: Vec<Edge> = g.edges().to_vec();
    elements.extend(added);
    let kinds = if p.l() == 1 { [Kind::Graphic, Kind::Bicircular] } else { [Kind::Graphic, Kind::Graphic] };
    let mut part = Partition { n, elements: &elements, kinds, part: vec![None; elements.len()] };
    for (x, &e) in elements.iter().enumerate() {
        if !part.insert(x) {
            return Err(DecomposeError::Stuck(e));
        }
    }
    let pick = |i: usize| -> Vec<Edge> { (0..elements.len()).filter(|&e| part.part[e] == Some(i)).map(|e| elements[e]).collect() };
    let d = Decomposition { tree_edges: pick(0), map_edges: pick(1), added_edge: added };
    debug_assert_eq!(d.tree_edges.len(), n.saturating_sub(1));
    debug_assert_eq!(d.map_edges.len(), if p.l() == 1 { n } else { n.saturating_sub(1) });
    Ok(d)
}

/// Checks every structural requirement of a decomposition exactly.
pub fn verify_decomposition(g: &SimpleGraph, d: &Decomposition, p: SparsityParams) -> bool {
    let n = g.vertex_count();
    if (p.l() == 3) != d.added_edge.is_some() {
        return false;
    }
    let mut expected: Vec<Edge> = g.edges().to_vec();
    if let Some((u, v)) = d.added_edge {
        if u == v || u >= n || v >= n {
            return false;
        }
        expected.push(edge(u, v));
    }
    let mut got: Vec<Edge> = d.tree_edges.iter().chain(&d.map_edges).map(|&(u, v)| edge(u, v)).collect();
    if got.iter().any(|&(u, v)| u == v || v >= n) {
        return false;
    }
    expected.sort_unstable();
    got.sort_unstable();
    if expected != got {
        return false;
    }
    let spanning_tree = |edges: &[Edge]| edges.len() + 1 == n.max(1) && independent(n, Kind::Graphic, edges.iter().copied());
    if !spanning_tree(&d.tree_edges) {
        return false;
    }
    if p.l() == 1 {
        unicyclic_components(n, &d.map_edges)
    } else {
        spanning_tree(&d.map_edges)
    }
}

/// Every connected component of `(0..n, edges)` has as many edges as vertices.
fn unicyclic_components(n: usize, edges: &[Edge]) -> bool {
    let mut f = Forest::new(n);
    for &(u, v) in edges {
        let (a, b) = (f.find(u), f.find(v));
        if a != b {
            f.parent[a] = b;
        }
    }
    let mut verts = vec![0usize; n];
    let mut count = vec![0usize; n];
    for v in 0..n {
        let r = f.find(v);
        verts[r] += 1;
    }
    for &(u, _) in edges {
        let r = f.find(u);
        count[r] += 1;
    }
    (0..n).all(|r| verts[r] == 0 || verts[r] == count[r])
}
