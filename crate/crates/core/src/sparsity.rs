//! `(2,l)`-sparsity via the pebble game.
//!
//! Every vertex starts with `k` pebbles. An edge `uv` is accepted when `l+1`
//! pebbles can be gathered on `{u, v}`; one of them is then spent to orient
//! the edge out of the vertex that held it. Pebbles are moved by reversing
//! directed paths, so `pebbles(v) + outdegree(v) = k` holds throughout.

use thiserror::Error;

use crate::graph::{edge, Edge, SimpleGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SparsityError {
    #[error("l must be 1, 2 or 3 (got {0})")]
    InvalidL(u8),
    #[error("{{{0}, {1}}} is not an edge of the graph")]
    MissingEdge(usize, usize),
    #[error("{{{0}, {1}}} is already an edge of the graph")]
    EdgePresent(usize, usize),
    #[error("vertex {0} coincides with an endpoint of {{{1}, {2}}}")]
    VertexOnEdge(usize, usize, usize),
    #[error("vertex {0} is out of range for a graph on {1} vertices")]
    BadVertex(usize, usize),
    #[error("graph is not (2,{l})-sparse: edge {{{}, {}}} is rejected", .edge.0, .edge.1)]
    NotSparse { l: u8, edge: Edge },
}

/// The pair `(k, l)`; only `k = 2` is constructible from outside the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct SparsityParams {
    k: u8,
    l: u8,
}

impl SparsityParams {
    pub fn new(l: u8) -> Result<Self, SparsityError> {
        if (1..=3).contains(&l) {
            Ok(SparsityParams { k: 2, l })
        } else {
            Err(SparsityError::InvalidL(l))
        }
    }

    /// General `(k, l)` with `0 <= l < 2k` and `k <= 4`.
    #[allow(dead_code)]
    pub(crate) fn general(k: u8, l: u8) -> Self {
        assert!((1..=4).contains(&k) && l < 2 * k, "unsupported (k,l) = ({k},{l})");
        SparsityParams { k, l }
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn l(&self) -> u8 {
        self.l
    }

    /// `l` as a signed freedom count.
    pub fn target(&self) -> i64 {
        self.l as i64
    }

    pub fn all() -> [SparsityParams; 3] {
        [1, 2, 3].map(|l| SparsityParams { k: 2, l })
    }
}

/// Pebble-game state over a fixed vertex set.
#[derive(Debug, Clone)]
pub struct PebbleState {
    params: SparsityParams,
    pebbles: Vec<u8>,
    out: Vec<Vec<usize>>,
    accepted: usize,
    // DFS scratch
    parent: Vec<usize>,
    mark: Vec<u32>,
    epoch: u32,
}

const NONE: usize = usize::MAX;

impl PebbleState {
    pub fn new(n: usize, params: SparsityParams) -> Self {
        PebbleState {
            params,
            pebbles: vec![params.k; n],
            out: vec![Vec::new(); n],
            accepted: 0,
            parent: vec![NONE; n],
            mark: vec![0; n],
            epoch: 0,
        }
    }

    pub fn pebbles(&self, v: usize) -> u8 {
        self.pebbles[v]
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn accepted(&self) -> usize {
        self.accepted
    }

    pub fn total_pebbles(&self) -> usize {
        self.pebbles.iter().map(|&p| p as usize).sum()
    }

    /// Tries to accept `uv`; the state is unchanged apart from pebble moves
    /// when the edge is rejected.
    pub fn insert(&mut self, u: usize, v: usize) -> bool {
        debug_assert_ne!(u, v);
        if !self.gather(u, v, self.params.l + 1) {
            return false;
        }
        let from = if self.pebbles[u] > 0 { u } else { v };
        let to = if from == u { v } else { u };
        self.pebbles[from] -= 1;
        insert_sorted(&mut self.out[from], to);
        self.accepted += 1;
        self.debug_check();
        true
    }

    /// Moves pebbles until `{u, v}` holds at least `want` of them, or
    /// returns `false` when that is impossible.
    pub fn gather(&mut self, u: usize, v: usize, want: u8) -> bool {
        let k = self.params.k;
        while self.pebbles[u] + self.pebbles[v] < want {
            if self.pebbles[u] < k && self.fetch(u, v) {
                continue;
            }
            if self.pebbles[v] < k && self.fetch(v, u) {
                continue;
            }
            return false;
        }
        true
    }

    /// Depth-first search along out-edges from `root` (never entering
    /// `blocked`) for a vertex holding a pebble; on success the path is
    /// reversed, carrying one pebble back to `root`.
    fn fetch(&mut self, root: usize, blocked: usize) -> bool {
        self.epoch += 1;
        let epoch = self.epoch;
        self.mark[root] = epoch;
        self.mark[blocked] = epoch;
        self.parent[root] = NONE;
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        let mut found = NONE;
        'search: while let Some(top) = stack.last_mut() {
            let (x, i) = *top;
            if i < self.out[x].len() {
                top.1 += 1;
                let y = self.out[x][i];
                if self.mark[y] == epoch {
                    continue;
                }
                self.mark[y] = epoch;
                self.parent[y] = x;
                if self.pebbles[y] > 0 {
                    found = y;
                    break 'search;
                }
                stack.push((y, 0));
            } else {
                stack.pop();
            }
        }
        if found == NONE {
            return false;
        }
        self.pebbles[found] -= 1;
        let mut y = found;
        while y != root {
            let x = self.parent[y];
            remove_sorted(&mut self.out[x], y);
            insert_sorted(&mut self.out[y], x);
            y = x;
        }
        self.pebbles[root] += 1;
        self.debug_check();
        true
    }

    fn debug_check(&self) {
        if cfg!(debug_assertions) {
            let k = self.params.k as usize;
            for (v, &p) in self.pebbles.iter().enumerate() {
                debug_assert!(p as usize <= k);
                debug_assert_eq!(p as usize + self.out[v].len(), k, "pebble invariant broken at {v}");
            }
        }
    }
}

fn insert_sorted(list: &mut Vec<usize>, x: usize) {
    let pos = list.binary_search(&x).unwrap_or_else(|p| p);
    list.insert(pos, x);
}

fn remove_sorted(list: &mut Vec<usize>, x: usize) {
    let pos = list.binary_search(&x).expect("oriented edge present");
    list.remove(pos);
}

/// Plays every edge of `g` (except those touching `skip`), returning the
/// state and the first rejected edge, if any.
pub fn play(g: &SimpleGraph, p: SparsityParams, skip: Option<usize>) -> (PebbleState, Option<Edge>) {
    let mut state = PebbleState::new(g.vertex_count(), p);
    for &(u, v) in g.edges() {
        if Some(u) == skip || Some(v) == skip {
            continue;
        }
        if !state.insert(u, v) {
            return (state, Some((u, v)));
        }
    }
    (state, None)
}

pub fn is_sparse(g: &SimpleGraph, p: SparsityParams) -> bool {
    play(g, p, None).1.is_none()
}

/// Sparse with `f(G) = l`.
pub fn is_tight(g: &SimpleGraph, p: SparsityParams) -> bool {
    g.freedom_count() == p.target() && is_sparse(g, p)
}

/// First edge (in sorted order) whose insertion breaks sparsity.
pub fn first_rejected_edge(g: &SimpleGraph, p: SparsityParams) -> Option<Edge> {
    play(g, p, None).1
}

/// Whether `g` contains a `(2,l)`-tight subgraph `Y` with `ab` in `E(Y)` and
/// `c` not in `V(Y)`. Requires `g` sparse, `ab` an edge and `c` off it.
pub fn blocker_exists(g: &SimpleGraph, ab: Edge, c: usize, p: SparsityParams) -> Result<bool, SparsityError> {
    let (a, b) = ab;
    let n = g.vertex_count();
    for x in [a, b, c] {
        if x >= n {
            return Err(SparsityError::BadVertex(x, n));
        }
    }
    if !g.has_edge(a, b) {
        return Err(SparsityError::MissingEdge(a, b));
    }
    if c == a || c == b {
        return Err(SparsityError::VertexOnEdge(c, a, b));
    }
    if let Some(e) = first_rejected_edge(g, p) {
        return Err(SparsityError::NotSparse { l: p.l, edge: e });
    }
    Ok(blocker_exists_unchecked(g, ab, c, p))
}

/// [`blocker_exists`] without precondition checks.
///
/// After playing `g - c`, the vertices reachable from `{a, b}` once no more
/// pebbles can be fetched span a subgraph with freedom equal to the pebbles
/// left on `a` and `b`. At most `l` pebbles therefore exhibits a tight
/// subgraph through `ab`; conversely a tight subgraph caps the pebbles on its
/// vertices at `l`.
pub(crate) fn blocker_exists_unchecked(g: &SimpleGraph, ab: Edge, c: usize, p: SparsityParams) -> bool {
    let (mut state, rejected) = play(g, p, Some(c));
    debug_assert!(rejected.is_none(), "blocker query on a non-sparse graph");
    !state.gather(ab.0, ab.1, p.l + 1)
}

/// Whether `g + uv` is still `(2,l)`-sparse.
pub fn edge_insertable(g: &SimpleGraph, u: usize, v: usize, p: SparsityParams) -> Result<bool, SparsityError> {
    let n = g.vertex_count();
    for x in [u, v] {
        if x >= n {
            return Err(SparsityError::BadVertex(x, n));
        }
    }
    if u == v {
        return Err(SparsityError::VertexOnEdge(u, u, v));
    }
    if g.has_edge(u, v) {
        return Err(SparsityError::EdgePresent(u.min(v), u.max(v)));
    }
    let (mut state, rejected) = play(g, p, None);
    if let Some(e) = rejected {
        return Err(SparsityError::NotSparse { l: p.l, edge: e });
    }
    Ok(state.gather(u, v, p.l + 1))
}

/// [`edge_insertable`] on `g - skip` without precondition checks.
pub(crate) fn edge_insertable_without(g: &SimpleGraph, skip: usize, uv: Edge, p: SparsityParams) -> bool {
    let (mut state, rejected) = play(g, p, Some(skip));
    debug_assert!(rejected.is_none());
    let (u, v) = edge(uv.0, uv.1);
    state.gather(u, v, p.l + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::oracle;

    fn l(x: u8) -> SparsityParams {
        SparsityParams::new(x).unwrap()
    }

    #[test]
    fn params_validate() {
        assert_eq!(SparsityParams::new(0), Err(SparsityError::InvalidL(0)));
        assert_eq!(SparsityParams::new(4), Err(SparsityError::InvalidL(4)));
        assert_eq!(l(2).k(), 2);
    }

    #[test]
    fn base_examples() {
        assert!(!is_sparse(&named::k4(), l(3)));
        assert!(is_sparse(&named::k5_minus_edge(), l(1)));
        assert!(!is_sparse(&named::k4_union_k4(), l(2)));
        assert!(is_tight(&named::k4(), l(2)));
        assert!(is_tight(&named::k4_union_k4(), l(1)));
        assert!(!is_tight(&named::k5_minus_edge(), l(2)));
    }

    #[test]
    fn pebble_totals() {
        let g = named::k5_minus_edge();
        let (state, rej) = play(&g, l(1), None);
        assert!(rej.is_none());
        assert_eq!(state.total_pebbles(), 2 * 5 - 9);
        for v in 0..5 {
            assert_eq!(state.pebbles(v) as usize + state.out_neighbors(v).len(), 2);
        }
    }

    fn two_k4_bridged() -> SimpleGraph {
        let g = named::k4().disjoint_union(&named::k4());
        g.extend(0, &[], &[(3, 4)]).unwrap()
    }

    #[test]
    fn blocker_examples_match_oracle() {
        let g = named::k4_union_k4();
        // f = 2 for the K4 on {0,1,2,3}, so there is no (2,1)-tight blocker.
        assert_eq!(blocker_exists(&g, (0, 1), 4, l(1)), Ok(false));
        assert_eq!(oracle::blocker_witness(&g, 0, 1, 4, 1), None);
        assert!(matches!(blocker_exists(&g, (0, 1), 4, l(2)), Err(SparsityError::NotSparse { .. })));

        let k4 = named::k4();
        for p in [l(1), l(2)] {
            assert_eq!(blocker_exists(&k4, (0, 1), 3, p), Ok(false));
            assert_eq!(oracle::blocker_witness(&k4, 0, 1, 3, p.target()), None);
        }

        let h = two_k4_bridged();
        assert_eq!(blocker_exists(&h, (0, 1), 7, l(2)), Ok(true));
        assert_eq!(oracle::blocker_witness(&h, 0, 1, 7, 2), Some(vec![0, 1, 2, 3]));
        assert_eq!(blocker_exists(&h, (0, 1), 7, l(1)), Ok(false));
        assert_eq!(oracle::blocker_witness(&h, 0, 1, 7, 1), None);
    }

    #[test]
    fn blocker_preconditions() {
        let g = named::k4();
        assert_eq!(blocker_exists(&g, (0, 1), 1, l(2)), Err(SparsityError::VertexOnEdge(1, 0, 1)));
        let c4 = named::cycle(4);
        assert_eq!(blocker_exists(&c4, (0, 2), 1, l(2)), Err(SparsityError::MissingEdge(0, 2)));
    }

    #[test]
    fn insertion_examples() {
        let k4 = named::k4();
        let minus = k4.extend(0, &[(0, 1)], &[]).unwrap();
        assert_eq!(edge_insertable(&minus, 0, 1, l(2)), Ok(true));
        let with_w = k4.extend(1, &[], &[]).unwrap();
        for p in [l(1), l(2)] {
            assert_eq!(edge_insertable(&with_w, 0, 4, p), Ok(true));
            let plus = with_w.extend(0, &[], &[(0, 4)]).unwrap();
            assert!(oracle::is_sparse_exhaustive(&plus, p.target()));
        }
        assert_eq!(edge_insertable(&named::k4_union_k4(), 0, 4, l(1)), Ok(false));
        assert_eq!(edge_insertable(&k4, 0, 1, l(2)), Err(SparsityError::EdgePresent(0, 1)));
    }

    #[test]
    fn general_k_matches_oracle_for_k1() {
        // (1,1)-sparse = forest.
        let p = SparsityParams::general(1, 1);
        assert!(is_sparse(&named::cycle(4).extend(0, &[(0, 3)], &[]).unwrap(), p));
        assert!(!is_sparse(&named::cycle(4), p));
    }
}
