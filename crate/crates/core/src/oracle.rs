//! Brute-force reference checks by enumeration of vertex subsets and
//! permutations. They share no code with the pebble game or the canonical
//! labeling search and are used to cross-check both.
//!
//! Only the induced subgraph on each vertex subset needs to be examined: it
//! has the most edges among all subgraphs on that vertex set.

use crate::graph::SimpleGraph;

/// Largest vertex count the subset oracles accept.
pub const MAX_ORACLE_VERTICES: usize = 20;

fn adjacency_masks(g: &SimpleGraph) -> Vec<u32> {
    assert!(g.vertex_count() <= MAX_ORACLE_VERTICES, "oracle limited to {MAX_ORACLE_VERTICES} vertices");
    let mut adj = vec![0u32; g.vertex_count()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn edges_inside(adj: &[u32], mask: u32) -> u32 {
    let mut total = 0;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        total += (adj[v] & mask).count_ones();
        m &= m - 1;
    }
    total / 2
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|v| mask >> v & 1 == 1).collect()
}

/// A vertex set whose induced subgraph has an edge and `f < l`, if any.
/// Smallest sets are reported first.
pub fn sparsity_violation(g: &SimpleGraph, l: i64) -> Option<Vec<usize>> {
    let adj = adjacency_masks(g);
    let n = g.vertex_count();
    let mut masks: Vec<u32> = (1u32..(1u32 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks.into_iter().find_map(|mask| {
        let e = edges_inside(&adj, mask) as i64;
        (e > 0 && 2 * mask.count_ones() as i64 - e < l).then(|| members(mask))
    })
}

pub fn is_sparse_exhaustive(g: &SimpleGraph, l: i64) -> bool {
    sparsity_violation(g, l).is_none()
}

pub fn is_tight_exhaustive(g: &SimpleGraph, l: i64) -> bool {
    g.freedom_count() == l && is_sparse_exhaustive(g, l)
}

/// Vertex set of a `(2,l)`-tight subgraph containing `a` and `b` (hence the
/// edge `ab`) and avoiding `c`, if one exists. Assumes `g` is sparse.
pub fn blocker_witness(g: &SimpleGraph, a: usize, b: usize, c: usize, l: i64) -> Option<Vec<usize>> {
    let adj = adjacency_masks(g);
    let n = g.vertex_count();
    let need = (1u32 << a) | (1u32 << b);
    (1u32..(1u32 << n))
        .filter(|m| m & need == need && m >> c & 1 == 0)
        .find(|&m| 2 * m.count_ones() as i64 - edges_inside(&adj, m) as i64 == l)
        .map(members)
}

/// Isomorphism by trying every bijection. Intended for `n <= 8`.
pub fn is_isomorphic_exhaustive(a: &SimpleGraph, b: &SimpleGraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    fn extend(a: &SimpleGraph, b: &SimpleGraph, perm: &mut [usize], used: &mut [bool], k: usize) -> bool {
        let n = perm.len();
        if k == n {
            return true;
        }
        for t in 0..n {
            if used[t] || a.degree(k) != b.degree(t) {
                continue;
            }
            if (0..k).all(|j| a.has_edge(j, k) == b.has_edge(perm[j], t)) {
                used[t] = true;
                perm[k] = t;
                if extend(a, b, perm, used, k + 1) {
                    return true;
                }
                used[t] = false;
            }
        }
        false
    }
    extend(a, b, &mut perm, &mut used, 0)
}
