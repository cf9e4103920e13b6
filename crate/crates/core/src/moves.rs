//! The five construction moves and their inverses.
//!
//! Label conventions, shared by every move so certificates replay bit-exactly:
//!
//! * A forward move first builds its result with any new vertices appended
//!   at labels `n, n+1, ...` (its "natural" labeling) and then swaps each
//!   appended vertex into its recorded final label, in order.
//! * A reduction deletes vertices in descending label order; each deleted
//!   label is taken over by the current largest label.
//!
//! The swap sequence of a forward move is exactly the reverse of the
//! deletions performed by the matching reduction, so
//! `reduction.step.apply(reduction.parts) == original` holds label for label.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{edge, Edge, GraphError, SimpleGraph, VertexSet};
use crate::sparsity::{self, is_tight, SparsityParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {0} is out of range for a graph on {1} vertices")]
    BadVertex(usize, usize),
    #[error("vertices must be distinct (got {0} twice)")]
    SameVertex(usize),
    #[error("{{{0}, {1}}} is not an edge")]
    MissingEdge(usize, usize),
    #[error("assignment must cover exactly the neighbours of {0} with slots 0..4")]
    BadAssignment(usize),
    #[error("partition must split the neighbours of {0} other than {1} into two disjoint sides")]
    BadPartition(usize, usize),
    #[error("edge joining needs two (2,1)-tight graphs")]
    JoinNotTight,
    #[error("the reduction would create a parallel edge")]
    NotSimple,
    #[error("invalid final labels for new vertices")]
    BadLabels,
    #[error("move expects {expected} input graph(s), got {got}")]
    Arity { expected: usize, got: usize },
}

/// One forward construction step with everything needed for exact replay.
///
/// Vertex parameters refer to labels of the input graph(s); `new_vertex`,
/// `new_vertices` and `left_vertices` are labels in the result.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Move {
    /// Add a vertex joined to `a` and `b`.
    H1 { new_vertex: usize, a: usize, b: usize },
    /// Delete edge `uv`, add a vertex joined to `u`, `v` and `w`.
    H2 { new_vertex: usize, u: usize, v: usize, w: usize },
    /// Replace `vertex` by a `K4` on slots `[vertex, new_vertices...]`; each
    /// former neighbour `x` is joined to the slot in its `(x, slot)` entry.
    VertexToK4 { vertex: usize, new_vertices: [usize; 3], assignment: Vec<(usize, u8)> },
    /// Split `vertex` across edge `{anchor, vertex}` into `vertex` (keeping
    /// the `keep` neighbours) and `new_vertex` (taking the `moved` ones),
    /// forming a triangle with `anchor`.
    EdgeToK3 { vertex: usize, anchor: usize, keep: Vec<usize>, moved: Vec<usize>, new_vertex: usize },
    /// Join two graphs by the bridge `{u, left_size + v}`, then place the
    /// left graph's vertex `i` at `left_vertices[i]` and the right graph's
    /// vertices, in order, on the remaining labels.
    EdgeJoin { left_size: usize, u: usize, v: usize, left_vertices: Vec<usize> },
}

impl Move {
    pub fn kind(&self) -> &'static str {
        match self {
            Move::H1 { .. } => "h1",
            Move::H2 { .. } => "h2",
            Move::VertexToK4 { .. } => "vertex_to_k4",
            Move::EdgeToK3 { .. } => "edge_to_k3",
            Move::EdgeJoin { .. } => "edge_join",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Move::EdgeJoin { .. } => 2,
            _ => 1,
        }
    }

    /// Applies the move, including the recorded relabeling.
    pub fn apply(&self, inputs: &[&SimpleGraph]) -> Result<SimpleGraph, MoveError> {
        if inputs.len() != self.arity() {
            return Err(MoveError::Arity { expected: self.arity(), got: inputs.len() });
        }
        let g = inputs[0];
        let n = g.vertex_count();
        match self {
            Move::H1 { new_vertex, a, b } => place(apply_h1(g, *a, *b)?, n, &[*new_vertex]),
            Move::H2 { new_vertex, u, v, w } => place(apply_h2(g, (*u, *v), *w)?, n, &[*new_vertex]),
            Move::VertexToK4 { vertex, new_vertices, assignment } => place(apply_vertex_to_k4(g, *vertex, assignment)?, n, new_vertices),
            Move::EdgeToK3 { vertex, anchor, keep, moved, new_vertex } => {
                place(apply_edge_to_k3(g, *anchor, *vertex, keep, moved)?, n, &[*new_vertex])
            }
            Move::EdgeJoin { left_size, u, v, left_vertices } => {
                let h = inputs[1];
                if *left_size != n {
                    return Err(MoveError::BadLabels);
                }
                let joined = apply_edge_join(g, h, *u, *v)?;
                let total = joined.vertex_count();
                if left_vertices.len() != n {
                    return Err(MoveError::BadLabels);
                }
                let mut used = vec![false; total];
                for &x in left_vertices {
                    if x >= total || std::mem::replace(&mut used[x], true) {
                        return Err(MoveError::BadLabels);
                    }
                }
                let mut perm = left_vertices.clone();
                perm.extend((0..total).filter(|&x| !used[x]));
                Ok(joined.relabel(&perm))
            }
        }
    }
}

/// Swaps the vertices appended at `base, base+1, ...` into `finals`.
fn place(g: SimpleGraph, base: usize, finals: &[usize]) -> Result<SimpleGraph, MoveError> {
    let mut g = g;
    for (i, &f) in finals.iter().enumerate() {
        if f > base + i {
            return Err(MoveError::BadLabels);
        }
        g = g.swap_labels(f, base + i);
    }
    Ok(g)
}

fn check(g: &SimpleGraph, v: usize) -> Result<(), MoveError> {
    if v < g.vertex_count() {
        Ok(())
    } else {
        Err(MoveError::BadVertex(v, g.vertex_count()))
    }
}

fn assert_freedom(before: i64, after: &SimpleGraph) {
    debug_assert_eq!(before, after.freedom_count(), "move changed the freedom count");
}

/// Henneberg 1: a new vertex `n` joined to `a` and `b`.
pub fn apply_h1(g: &SimpleGraph, a: usize, b: usize) -> Result<SimpleGraph, MoveError> {
    check(g, a)?;
    check(g, b)?;
    if a == b {
        return Err(MoveError::SameVertex(a));
    }
    let x = g.vertex_count();
    let out = g.extend(1, &[], &[(a, x), (b, x)])?;
    assert_freedom(g.freedom_count(), &out);
    Ok(out)
}

/// Henneberg 2: delete `uv`, add vertex `n` joined to `u`, `v`, `w`.
pub fn apply_h2(g: &SimpleGraph, uv: Edge, w: usize) -> Result<SimpleGraph, MoveError> {
    let (u, v) = uv;
    for x in [u, v, w] {
        check(g, x)?;
    }
    if !g.has_edge(u, v) {
        return Err(MoveError::MissingEdge(u, v));
    }
    if w == u || w == v {
        return Err(MoveError::SameVertex(w));
    }
    let x = g.vertex_count();
    let out = g.extend(1, &[(u, v)], &[(u, x), (v, x), (w, x)])?;
    assert_freedom(g.freedom_count(), &out);
    Ok(out)
}

/// Vertex-to-K4: `v` becomes slot 0 of a new `K4` whose other slots are
/// `n, n+1, n+2`; every neighbour of `v` is re-attached to its assigned slot.
pub fn apply_vertex_to_k4(g: &SimpleGraph, v: usize, assignment: &[(usize, u8)]) -> Result<SimpleGraph, MoveError> {
    check(g, v)?;
    let nbrs = g.neighbors(v);
    let mut keys: Vec<usize> = assignment.iter().map(|&(x, _)| x).collect();
    keys.sort_unstable();
    if keys != nbrs || assignment.iter().any(|&(_, s)| s > 3) {
        return Err(MoveError::BadAssignment(v));
    }
    let n = g.vertex_count();
    let slots = [v, n, n + 1, n + 2];
    let remove: Vec<Edge> = nbrs.iter().map(|&x| edge(x, v)).collect();
    let mut add: Vec<Edge> = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            add.push((slots[i], slots[j]));
        }
    }
    add.extend(assignment.iter().map(|&(x, s)| (x, slots[s as usize])));
    let out = g.extend(3, &remove, &add)?;
    assert_freedom(g.freedom_count(), &out);
    Ok(out)
}

/// Edge-to-K3 on edge `uv`: `v` keeps the neighbours in `keep`, a new vertex
/// `n` takes those in `moved`, and `u, v, n` form a triangle. Either side
/// may be empty.
pub fn apply_edge_to_k3(g: &SimpleGraph, u: usize, v: usize, keep: &[usize], moved: &[usize]) -> Result<SimpleGraph, MoveError> {
    check(g, u)?;
    check(g, v)?;
    if !g.has_edge(u, v) {
        return Err(MoveError::MissingEdge(u, v));
    }
    let want: BTreeSet<usize> = g.neighbors(v).iter().copied().filter(|&x| x != u).collect();
    let keep_set: BTreeSet<usize> = keep.iter().copied().collect();
    let moved_set: BTreeSet<usize> = moved.iter().copied().collect();
    let disjoint = keep_set.is_disjoint(&moved_set) && keep_set.len() == keep.len() && moved_set.len() == moved.len();
    let union: BTreeSet<usize> = keep_set.union(&moved_set).copied().collect();
    if !disjoint || union != want {
        return Err(MoveError::BadPartition(v, u));
    }
    let x = g.vertex_count();
    let remove: Vec<Edge> = moved.iter().map(|&a| edge(a, v)).collect();
    let mut add: Vec<Edge> = moved.iter().map(|&a| (a, x)).collect();
    add.push((u, x));
    add.push((v, x));
    let out = g.extend(1, &remove, &add)?;
    assert_freedom(g.freedom_count(), &out);
    Ok(out)
}

/// Edge joining of two `(2,1)`-tight graphs; `right` is shifted past `left`.
pub fn apply_edge_join(left: &SimpleGraph, right: &SimpleGraph, u: usize, v: usize) -> Result<SimpleGraph, MoveError> {
    check(left, u)?;
    check(right, v)?;
    let l1 = SparsityParams::new(1).expect("valid l");
    if !is_tight(left, l1) || !is_tight(right, l1) {
        return Err(MoveError::JoinNotTight);
    }
    let n1 = left.vertex_count();
    let out = left.disjoint_union(right).extend(0, &[], &[(u, n1 + v)])?;
    debug_assert_eq!(out.freedom_count(), 1);
    Ok(out)
}

/// A reduction: `step` rebuilds the original graph from `parts`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub step: Move,
    pub parts: Vec<SimpleGraph>,
}

impl Reduction {
    pub fn rebuild(&self) -> Result<SimpleGraph, MoveError> {
        let refs: Vec<&SimpleGraph> = self.parts.iter().collect();
        self.step.apply(&refs)
    }
}

fn mapped(map: &[Option<usize>], v: usize) -> usize {
    map[v].expect("vertex survives the reduction")
}

/// Lowest-labelled vertex of degree 2.
pub fn find_inverse_h1(g: &SimpleGraph) -> Option<usize> {
    (0..g.vertex_count()).find(|&v| g.degree(v) == 2)
}

/// Deletes the degree-2 vertex `x`.
pub fn inverse_h1(g: &SimpleGraph, x: usize) -> Result<Reduction, MoveError> {
    check(g, x)?;
    let &[a, b] = g.neighbors(x) else {
        return Err(MoveError::BadVertex(x, g.vertex_count()));
    };
    let (h, map) = g.remove_vertex(x);
    Ok(Reduction { step: Move::H1 { new_vertex: x, a: mapped(&map, a), b: mapped(&map, b) }, parts: vec![h] })
}

/// Candidate replacement edges for an inverse Henneberg 2 at `v`, in scan
/// order `v1v2, v2v3, v1v3` (neighbours ascending), skipping present edges.
fn h2_candidates(g: &SimpleGraph, v: usize) -> Vec<Edge> {
    let nb = g.neighbors(v);
    [(nb[0], nb[1]), (nb[1], nb[2]), (nb[0], nb[2])].into_iter().filter(|&(a, b)| !g.has_edge(a, b)).collect()
}

/// Whether the neighbours of degree-3 vertex `v` are pairwise adjacent.
pub fn in_k4(g: &SimpleGraph, v: usize) -> bool {
    let nb = g.neighbors(v);
    nb.len() == 3 && g.has_edge(nb[0], nb[1]) && g.has_edge(nb[1], nb[2]) && g.has_edge(nb[0], nb[2])
}

/// First degree-3 vertex `v` (ascending) outside every `K4`, with the first
/// non-edge `e` among its neighbours such that `(G - v) + e` is tight.
pub fn find_inverse_h2(g: &SimpleGraph, p: SparsityParams) -> Option<(usize, Edge)> {
    for v in 0..g.vertex_count() {
        if g.degree(v) != 3 || in_k4(g, v) {
            continue;
        }
        for e in h2_candidates(g, v) {
            if sparsity::edge_insertable_without(g, v, e, p) {
                return Some((v, e));
            }
        }
    }
    None
}

/// Deletes degree-3 vertex `x` and inserts `e` between two of its neighbours.
pub fn inverse_h2(g: &SimpleGraph, x: usize, e: Edge) -> Result<Reduction, MoveError> {
    check(g, x)?;
    let nb = g.neighbors(x);
    let (a, b) = edge(e.0, e.1);
    if nb.len() != 3 || !nb.contains(&a) || !nb.contains(&b) || a == b {
        return Err(MoveError::BadVertex(x, g.vertex_count()));
    }
    if g.has_edge(a, b) {
        return Err(MoveError::NotSimple);
    }
    let w = *nb.iter().find(|&&y| y != a && y != b).expect("three neighbours");
    let (h, map) = g.remove_vertex(x);
    let (a2, b2) = (mapped(&map, a), mapped(&map, b));
    let h = h.extend(0, &[], &[(a2, b2)])?;
    Ok(Reduction { step: Move::H2 { new_vertex: x, u: a2, v: b2, w: mapped(&map, w) }, parts: vec![h] })
}

/// Fast filter for contracting `quad`: no outside vertex sees two of its
/// vertices, i.e. no triangle meets the `K4` in exactly two vertices. This
/// is exactly the simplicity condition of the contraction.
pub fn k4_contraction_filter(g: &SimpleGraph, quad: [usize; 4]) -> bool {
    let mut seen = vec![false; g.vertex_count()];
    for &q in &quad {
        for &x in g.neighbors(q) {
            if quad.contains(&x) {
                continue;
            }
            if std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
    }
    true
}

/// Contracts the `K4` on `quad` to its smallest vertex.
pub fn k4_to_vertex(g: &SimpleGraph, quad: [usize; 4]) -> Result<Reduction, MoveError> {
    let mut q = quad;
    q.sort_unstable();
    for &x in &q {
        check(g, x)?;
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if !g.has_edge(q[i], q[j]) {
                return Err(MoveError::MissingEdge(q[i], q[j]));
            }
        }
    }
    if !k4_contraction_filter(g, q) {
        return Err(MoveError::NotSimple);
    }
    let mut outside: Vec<(usize, u8)> = Vec::new();
    let mut add = Vec::new();
    let mut remove = Vec::new();
    for (slot, &qi) in q.iter().enumerate() {
        for &x in g.neighbors(qi) {
            if q.contains(&x) {
                continue;
            }
            outside.push((x, slot as u8));
            if slot > 0 {
                remove.push(edge(x, qi));
                add.push(edge(x, q[0]));
            }
        }
    }
    let rewired = g.extend(0, &remove, &add)?;
    let (h, map) = rewired.remove_vertices(&q[1..]);
    let mut assignment: Vec<(usize, u8)> = outside.into_iter().map(|(x, s)| (mapped(&map, x), s)).collect();
    assignment.sort_unstable();
    debug_assert_eq!(mapped(&map, q[0]), q[0]);
    Ok(Reduction { step: Move::VertexToK4 { vertex: q[0], new_vertices: [q[1], q[2], q[3]], assignment }, parts: vec![h] })
}

/// First `K4` (lexicographic) whose contraction is simple and tight.
pub fn find_k4_to_vertex(g: &SimpleGraph, p: SparsityParams) -> Option<[usize; 4]> {
    if g.vertex_count() <= 4 {
        return None;
    }
    g.k4s()
        .into_iter()
        .find(|&quad| k4_contraction_filter(g, quad) && k4_to_vertex(g, quad).map(|r| is_tight(&r.parts[0], p)).unwrap_or(false))
}

/// Fast filter for merging `a` and `b` of triangle `abc`: `c` is their only
/// common neighbour and no tight subgraph contains `ab` while avoiding `c`.
pub fn k3_merge_filter(g: &SimpleGraph, a: usize, b: usize, c: usize, p: SparsityParams) -> bool {
    let common = g.neighbors(a).iter().filter(|x| g.neighbors(b).binary_search(x).is_ok()).count();
    common == 1 && g.has_edge(a, c) && g.has_edge(b, c) && !sparsity::blocker_exists_unchecked(g, (a, b), c, p)
}

/// Merges `a` and `b` (adjacent, with common neighbour `c`) into the smaller
/// of the two labels.
pub fn k3_to_edge(g: &SimpleGraph, a: usize, b: usize, c: usize) -> Result<Reduction, MoveError> {
    for x in [a, b, c] {
        check(g, x)?;
    }
    let (x, y) = edge(a, b);
    if x == y || c == x || c == y {
        return Err(MoveError::SameVertex(c));
    }
    for (s, t) in [(x, y), (x, c), (y, c)] {
        if !g.has_edge(s, t) {
            return Err(MoveError::MissingEdge(s.min(t), s.max(t)));
        }
    }
    let nx: Vec<usize> = g.neighbors(x).iter().copied().filter(|&w| w != y && w != c).collect();
    let ny: Vec<usize> = g.neighbors(y).iter().copied().filter(|&w| w != x && w != c).collect();
    if nx.iter().any(|w| ny.contains(w)) {
        return Err(MoveError::NotSimple);
    }
    let mut remove: Vec<Edge> = vec![(x, y), edge(y, c)];
    remove.extend(ny.iter().map(|&w| edge(w, y)));
    let add: Vec<Edge> = ny.iter().map(|&w| edge(w, x)).collect();
    let merged = g.extend(0, &remove, &add)?;
    let (h, map) = merged.remove_vertex(y);
    let mut keep: Vec<usize> = nx.iter().map(|&w| mapped(&map, w)).collect();
    let mut moved: Vec<usize> = ny.iter().map(|&w| mapped(&map, w)).collect();
    keep.sort_unstable();
    moved.sort_unstable();
    debug_assert_eq!(h.freedom_count(), g.freedom_count());
    Ok(Reduction { step: Move::EdgeToK3 { vertex: mapped(&map, x), anchor: mapped(&map, c), keep, moved, new_vertex: y }, parts: vec![h] })
}

/// The three merge choices of triangle `[a, b, c]` in scan order, each as
/// `(merged pair, kept vertex)`.
pub fn merge_choices(t: [usize; 3]) -> [(Edge, usize); 3] {
    let [a, b, c] = t;
    [((a, b), c), ((a, c), b), ((b, c), a)]
}

/// First allowable `K3`-to-edge move: triangle and merged pair.
pub fn find_k3_to_edge(g: &SimpleGraph, p: SparsityParams) -> Option<([usize; 3], Edge)> {
    for t in g.triangles() {
        for ((a, b), c) in merge_choices(t) {
            if k3_merge_allowable(g, a, b, c, p) {
                return Some((t, (a, b)));
            }
        }
    }
    None
}

/// Ground truth: the merge is constructible (simple) and its result tight.
pub fn k3_merge_allowable(g: &SimpleGraph, a: usize, b: usize, c: usize, p: SparsityParams) -> bool {
    k3_merge_filter(g, a, b, c, p) && k3_to_edge(g, a, b, c).map(|r| is_tight(&r.parts[0], p)).unwrap_or(false)
}

/// A bridge whose two sides both induce `(2,1)`-tight subgraphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSeparation {
    pub bridge: Edge,
    /// Side containing `bridge.0`.
    pub left: VertexSet,
    pub right: VertexSet,
}

/// First bridge (ascending) that separates `g` into two `(2,1)`-tight sides.
pub fn find_edge_separation(g: &SimpleGraph) -> Option<EdgeSeparation> {
    let l1 = SparsityParams::new(1).expect("valid l");
    for (u, v) in g.bridges() {
        let cut = g.extend(0, &[(u, v)], &[]).expect("removing an edge keeps the graph simple");
        let comps = cut.components();
        let side = |x: usize| comps.iter().position(|c| c.contains(&x)).expect("vertex in a component");
        let (cu, cv) = (side(u), side(v));
        // A bridge of a connected graph leaves exactly two components.
        if comps.len() != 2 || cu == cv {
            continue;
        }
        let left = VertexSet::new(comps[cu].clone());
        let right = VertexSet::new(comps[cv].clone());
        if is_tight(&g.induced(left.as_slice()), l1) && is_tight(&g.induced(right.as_slice()), l1) {
            return Some(EdgeSeparation { bridge: (u, v), left, right });
        }
    }
    None
}

/// Splits `g` at the separation's bridge.
pub fn edge_separation(g: &SimpleGraph, sep: &EdgeSeparation) -> Reduction {
    let left = g.induced(sep.left.as_slice());
    let right = g.induced(sep.right.as_slice());
    let pos = |set: &VertexSet, x: usize| set.as_slice().binary_search(&x).expect("endpoint on its side");
    let (u, v) = sep.bridge;
    Reduction {
        step: Move::EdgeJoin {
            left_size: left.vertex_count(),
            u: pos(&sep.left, u),
            v: pos(&sep.right, v),
            left_vertices: sep.left.as_slice().to_vec(),
        },
        parts: vec![left, right],
    }
}

/// `sum (4 - d(i))` over all vertices, which equals `2 f(G)`.
pub fn degree_defect(g: &SimpleGraph) -> i64 {
    (0..g.vertex_count()).map(|v| 4 - g.degree(v) as i64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::graph::named;
    use crate::oracle;

    fn l(x: u8) -> SparsityParams {
        SparsityParams::new(x).unwrap()
    }

    #[test]
    fn h1_examples() {
        let g = apply_h1(&named::k4(), 0, 1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.freedom_count()), (5, 8, 2));
        assert_eq!(apply_h1(&named::k5_minus_edge(), 3, 4).unwrap().freedom_count(), 1);
        assert_eq!(apply_h1(&named::k4(), 2, 2), Err(MoveError::SameVertex(2)));
        for base in [named::k4(), named::k5_minus_edge(), named::k4_union_k4()] {
            let p = l(base.freedom_count() as u8);
            for a in 0..base.vertex_count() {
                for b in 0..base.vertex_count() {
                    if a != b {
                        assert!(oracle::is_tight_exhaustive(&apply_h1(&base, a, b).unwrap(), p.target()));
                    }
                }
            }
        }
    }

    #[test]
    fn h2_examples() {
        let g = apply_h2(&named::k4(), (0, 1), 2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 8));
        assert!(oracle::is_tight_exhaustive(&g, 2));
        assert_eq!(apply_h2(&named::cycle(4), (0, 2), 1), Err(MoveError::MissingEdge(0, 2)));
        assert_eq!(apply_h2(&named::k4(), (0, 1), 1), Err(MoveError::SameVertex(1)));
        for base in [named::k4(), named::k5_minus_edge(), named::k4_union_k4()] {
            let f = base.freedom_count();
            for &(u, v) in base.edges() {
                for w in 0..base.vertex_count() {
                    if w != u && w != v {
                        assert!(oracle::is_tight_exhaustive(&apply_h2(&base, (u, v), w).unwrap(), f));
                    }
                }
            }
        }
    }

    #[test]
    fn vertex_to_k4_examples() {
        assert_eq!(apply_vertex_to_k4(&SimpleGraph::empty(1), 0, &[]).unwrap(), named::k4());
        let g = apply_vertex_to_k4(&named::k4(), 3, &[(0, 1), (1, 1), (2, 1)]).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.freedom_count()), (7, 12, 2));
        assert!(oracle::is_tight_exhaustive(&g, 2));
        assert_eq!(apply_vertex_to_k4(&named::k4(), 3, &[(0, 1)]), Err(MoveError::BadAssignment(3)));
        assert_eq!(apply_vertex_to_k4(&named::k4(), 3, &[(0, 1), (1, 1), (2, 4)]), Err(MoveError::BadAssignment(3)));
    }

    #[test]
    fn edge_to_k3_examples() {
        let g = apply_edge_to_k3(&named::k3(), 0, 2, &[1], &[]).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.freedom_count()), (4, 5, 3));
        let g = apply_edge_to_k3(&named::k4(), 0, 3, &[1, 2], &[]).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 8));
        assert!(oracle::is_tight_exhaustive(&g, 2));
        assert_eq!(apply_edge_to_k3(&named::k4(), 0, 3, &[1], &[1, 2]), Err(MoveError::BadPartition(3, 0)));
        assert_eq!(apply_edge_to_k3(&named::k4(), 0, 3, &[1], &[]), Err(MoveError::BadPartition(3, 0)));
        assert_eq!(apply_edge_to_k3(&named::cycle(4), 0, 2, &[], &[]), Err(MoveError::MissingEdge(0, 2)));
        // Both sides empty leaves a triangle hanging on u.
        let pendant = SimpleGraph::new(2, [(0, 1)]).unwrap();
        let g = apply_edge_to_k3(&pendant, 0, 1, &[], &[]).unwrap();
        assert_eq!(g, named::k3());
    }

    #[test]
    fn edge_join_examples() {
        let a = apply_edge_join(&named::k5_minus_edge(), &named::k5_minus_edge(), 0, 0).unwrap();
        assert_eq!((a.vertex_count(), a.edge_count()), (10, 19));
        assert!(oracle::is_tight_exhaustive(&a, 1));
        let b = apply_edge_join(&named::k4_union_k4(), &named::k5_minus_edge(), 5, 2).unwrap();
        assert_eq!((b.vertex_count(), b.edge_count()), (11, 21));
        assert!(oracle::is_tight_exhaustive(&b, 1));
        assert_eq!(apply_edge_join(&named::k4(), &named::k5_minus_edge(), 0, 0), Err(MoveError::JoinNotTight));
    }

    #[test]
    fn inverse_h1_examples() {
        let g = apply_h1(&named::k4(), 0, 1).unwrap();
        assert_eq!(find_inverse_h1(&g), Some(4));
        assert_eq!(find_inverse_h1(&named::k4()), None);
        assert_eq!(find_inverse_h1(&named::k4_union_k4()), None);
        let moved = g.swap_labels(4, 1);
        let r = inverse_h1(&moved, find_inverse_h1(&moved).unwrap()).unwrap();
        assert_eq!(r.rebuild().unwrap(), moved);
        assert_eq!(r.parts[0], named::k4());
    }

    #[test]
    fn inverse_h2_round_trip() {
        let g = apply_h2(&named::k4_union_k4(), (2, 3), 0).unwrap();
        let (v, e) = find_inverse_h2(&g, l(1)).expect("reduction exists");
        let r = inverse_h2(&g, v, e).unwrap();
        assert!(oracle::is_tight_exhaustive(&r.parts[0], 1));
        assert_eq!(r.rebuild().unwrap(), g);
        assert_eq!(find_inverse_h2(&named::k5_minus_edge(), l(1)), None);
    }

    #[test]
    fn k4_to_vertex_examples() {
        assert_eq!(find_k4_to_vertex(&named::k4_union_k4(), l(1)), None);
        for quad in named::k4_union_k4().k4s() {
            assert_eq!(k4_to_vertex(&named::k4_union_k4(), quad), Err(MoveError::NotSimple));
        }
        assert_eq!(find_k4_to_vertex(&named::k5_minus_edge(), l(1)), None);

        // Expand vertex 2 of an H1 extension of K4 and contract it back.
        let base = apply_h1(&named::k4(), 0, 1).unwrap();
        let g = apply_vertex_to_k4(&base, 2, &[(0, 0), (1, 2), (3, 3)]).unwrap();
        let quad = find_k4_to_vertex(&g, l(2)).expect("contractible K4");
        let r = k4_to_vertex(&g, quad).unwrap();
        assert!(is_isomorphic(&r.parts[0], &base));
        assert_eq!(r.rebuild().unwrap(), g);
    }

    #[test]
    fn k3_to_edge_examples() {
        assert_eq!(find_k3_to_edge(&named::k4_union_k4(), l(1)), None);
        assert_eq!(find_k3_to_edge(&named::k5_minus_edge(), l(1)), None);
        let g = apply_edge_to_k3(&named::k4(), 0, 3, &[1], &[2]).unwrap();
        let (t, (a, b)) = find_k3_to_edge(&g, l(2)).expect("allowable merge");
        let c = t.into_iter().find(|&x| x != a && x != b).unwrap();
        let r = k3_to_edge(&g, a, b, c).unwrap();
        assert!(oracle::is_tight_exhaustive(&r.parts[0], 2));
        assert_eq!(r.rebuild().unwrap(), g);
    }

    #[test]
    fn edge_separation_examples() {
        let g = apply_edge_join(&named::k5_minus_edge(), &named::k5_minus_edge(), 2, 3).unwrap();
        let sep = find_edge_separation(&g).unwrap();
        assert_eq!(sep.bridge, (2, 8));
        let r = edge_separation(&g, &sep);
        for part in &r.parts {
            assert!(is_isomorphic(part, &named::k5_minus_edge()));
            assert_eq!(part.freedom_count(), 1);
        }
        assert_eq!(r.rebuild().unwrap(), g);
        let shuffled = g.relabel(&[9, 0, 8, 1, 7, 2, 6, 3, 5, 4]);
        let r = edge_separation(&shuffled, &find_edge_separation(&shuffled).unwrap());
        assert_eq!(r.rebuild().unwrap(), shuffled);
        assert_eq!(find_edge_separation(&named::k4_union_k4()), None);
    }

    #[test]
    fn move_json_shape() {
        let m = Move::H2 { new_vertex: 4, u: 0, v: 1, w: 2 };
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"type":"h2","new_vertex":4,"u":0,"v":1,"w":2}"#);
        assert_eq!(serde_json::from_str::<Move>(&s).unwrap(), m);
        let k = Move::VertexToK4 { vertex: 0, new_vertices: [4, 5, 6], assignment: vec![(1, 2)] };
        assert_eq!(serde_json::to_string(&k).unwrap(), r#"{"type":"vertex_to_k4","vertex":0,"new_vertices":[4,5,6],"assignment":[[1,2]]}"#);
    }

    #[test]
    fn degree_identity_on_bases() {
        for (g, l) in [(named::k4(), 2), (named::k5_minus_edge(), 1), (named::k4_union_k4(), 1), (named::k2(), 3)] {
            assert_eq!(degree_defect(&g), 2 * l);
        }
    }
}
