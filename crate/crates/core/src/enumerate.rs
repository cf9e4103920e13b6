//! Exhaustive generation of tight graphs, two ways: closure of the base
//! graphs under the forward moves, and brute force over edge sets. Plus a
//! random forward builder for larger instances.

use std::collections::{BTreeMap, BTreeSet};

use dashmap::DashSet;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::SimpleGraph;
use crate::moves::{apply_edge_join, apply_edge_to_k3, apply_h1, apply_h2, apply_vertex_to_k4};
use crate::reducer::BaseGraph;
use crate::sparsity::{is_tight, SparsityParams};

/// Largest `n` accepted by [`generate_brute_force`].
pub const BRUTE_FORCE_MAX_N: usize = 8;

/// Concurrent set of canonical forms.
#[derive(Default)]
pub struct DedupStore {
    set: DashSet<CanonicalForm>,
}

impl DedupStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// `true` when `form` was not present before.
    pub fn insert(&self, form: CanonicalForm) -> bool {
        self.set.insert(form)
    }

    pub fn contains(&self, form: &CanonicalForm) -> bool {
        self.set.contains(form)
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn into_sorted(self) -> BTreeSet<CanonicalForm> {
        self.set.into_iter().collect()
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
}

fn subsets(items: &[usize]) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> + '_ {
    (0u64..1 << items.len()).map(move |mask| {
        let side = |bit: u64| items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == bit).map(|(_, &x)| x).collect();
        (side(1), side(0))
    })
}

/// Every graph one forward move away from `g` (joins excluded).
pub fn single_move_children(g: &SimpleGraph, p: SparsityParams) -> Vec<SimpleGraph> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for (a, b) in pairs(n) {
        out.push(apply_h1(g, a, b).expect("valid H1"));
    }
    for &(u, v) in g.edges() {
        for w in (0..n).filter(|&w| w != u && w != v) {
            out.push(apply_h2(g, (u, v), w).expect("valid H2"));
        }
    }
    if p.l() == 3 {
        return out;
    }
    for &(a, b) in g.edges() {
        for (u, v) in [(a, b), (b, a)] {
            let rest: Vec<usize> = g.neighbors(v).iter().copied().filter(|&x| x != u).collect();
            for (keep, moved) in subsets(&rest) {
                out.push(apply_edge_to_k3(g, u, v, &keep, &moved).expect("valid edge-to-K3"));
            }
        }
    }
    for v in 0..n {
        let nbrs = g.neighbors(v);
        for code in 0..4usize.pow(nbrs.len() as u32) {
            let assignment: Vec<(usize, u8)> = nbrs.iter().enumerate().map(|(i, &x)| (x, (code >> (2 * i) & 3) as u8)).collect();
            out.push(apply_vertex_to_k4(g, v, &assignment).expect("valid vertex-to-K4"));
        }
    }
    out
}

/// Every edge join of `left` and `right`.
pub fn join_children(left: &SimpleGraph, right: &SimpleGraph) -> Vec<SimpleGraph> {
    let mut out = Vec::new();
    for u in 0..left.vertex_count() {
        for v in 0..right.vertex_count() {
            out.push(apply_edge_join(left, right, u, v).expect("tight join inputs"));
        }
    }
    out
}

/// Closure of the base graphs under the forward moves for `p`, by vertex
/// count up to `n_max`.
pub fn generate_by_moves(n_max: usize, p: SparsityParams) -> BTreeMap<usize, BTreeSet<CanonicalForm>> {
    let stores: Vec<DedupStore> = (0..=n_max).map(|_| DedupStore::new()).collect();
    for base in BaseGraph::for_params(p) {
        let g = base.graph();
        if g.vertex_count() <= n_max {
            stores[g.vertex_count()].insert(base.form().clone());
        }
    }
    let mut levels: BTreeMap<usize, BTreeSet<CanonicalForm>> = BTreeMap::new();
    let admit = |g: SimpleGraph| {
        let k = g.vertex_count();
        if k <= n_max {
            assert!(is_tight(&g, p), "forward move produced a non-tight graph");
            stores[k].insert(canonical_form(&g));
        }
    };
    for k in 1..=n_max {
        if p.l() == 1 {
            for a in 1..=k / 2 {
                let (left, right) = (&levels[&a], &levels[&(k - a)]);
                let pairs: Vec<(&CanonicalForm, &CanonicalForm)> =
                    left.iter().flat_map(|x| right.iter().filter(move |y| a < k - a || x <= *y).map(move |y| (x, y))).collect();
                pairs.par_iter().for_each(|(x, y)| join_children(&x.to_graph(), &y.to_graph()).into_iter().for_each(admit));
            }
        }
        let level: BTreeSet<CanonicalForm> = stores[k].set.iter().map(|f| f.clone()).collect();
        level.par_iter().for_each(|form| single_move_children(&form.to_graph(), p).into_iter().for_each(admit));
        levels.insert(k, level);
    }
    levels
}

fn adjacency_bits(edges: &[(usize, usize)], n: usize) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    for &(a, b) in edges {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    adj
}

fn inside(adj: &[u32], mask: u32) -> i64 {
    let mut total = 0;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        total += (adj[v] & mask).count_ones() as i64;
        m &= m - 1;
    }
    total / 2
}

/// Adding `(a, b)` to `adj` keeps every vertex subset within `2|X| - l`.
fn stays_sparse(adj: &[u32], n: usize, a: usize, b: usize, l: i64) -> bool {
    let need = (1u32 << a) | (1u32 << b);
    let others: u32 = ((1u32 << n) - 1) & !need;
    // Walk every subset of the other vertices.
    let mut sub = others;
    loop {
        let mask = sub | need;
        if inside(adj, mask) + 1 > 2 * mask.count_ones() as i64 - l {
            return false;
        }
        if sub == 0 {
            return true;
        }
        sub = (sub - 1) & others;
    }
}

struct Brute {
    n: usize,
    l: i64,
    pairs: Vec<(usize, usize)>,
    target: usize,
}

impl Brute {
    fn dfs(&self, i: usize, chosen: &mut Vec<(usize, usize)>, adj: &mut Vec<u32>, out: &DedupStore) {
        if chosen.len() == self.target {
            out.insert(canonical_form(&SimpleGraph::new(self.n, chosen.iter().copied()).expect("simple")));
            return;
        }
        if self.pairs.len() - i < self.target - chosen.len() {
            return;
        }
        let (a, b) = self.pairs[i];
        if stays_sparse(adj, self.n, a, b, self.l) {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
            chosen.push((a, b));
            self.dfs(i + 1, chosen, adj, out);
            chosen.pop();
            adj[a] &= !(1 << b);
            adj[b] &= !(1 << a);
        }
        self.dfs(i + 1, chosen, adj, out);
    }

    /// Sparse partial edge sets over the first `depth` pairs.
    fn prefixes(&self, depth: usize) -> Vec<Vec<(usize, usize)>> {
        let mut acc = vec![Vec::new()];
        for &(a, b) in &self.pairs[..depth] {
            let mut next = Vec::new();
            for chosen in acc {
                let adj = adjacency_bits(&chosen, self.n);
                if chosen.len() < self.target && stays_sparse(&adj, self.n, a, b, self.l) {
                    let mut with = chosen.clone();
                    with.push((a, b));
                    next.push(with);
                }
                next.push(chosen);
            }
            acc = next;
        }
        acc
    }
}

/// All `(2,l)`-tight graphs on `n` vertices up to isomorphism, by
/// enumerating edge sets and pruning with direct subset counts. Independent
/// of the pebble game.
pub fn generate_brute_force(n: usize, p: SparsityParams) -> BTreeSet<CanonicalForm> {
    assert!(n <= BRUTE_FORCE_MAX_N, "brute force limited to n <= {BRUTE_FORCE_MAX_N}");
    let target = 2 * n as i64 - p.target();
    let all: Vec<(usize, usize)> = pairs(n).collect();
    if target < 0 || target as usize > all.len() || (n == 1 && p.l() == 2) {
        return BTreeSet::new();
    }
    let brute = Brute { n, l: p.target(), target: target as usize, pairs: all };
    let out = DedupStore::new();
    let depth = brute.pairs.len().min(10);
    brute.prefixes(depth).into_par_iter().for_each(|mut chosen| {
        let mut adj = adjacency_bits(&chosen, n);
        brute.dfs(depth, &mut chosen, &mut adj, &out);
    });
    out.into_sorted()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareRow {
    pub n: usize,
    pub by_moves: usize,
    pub brute_force: usize,
    /// graph6 of classes found by brute force only.
    pub missing_from_moves: Vec<String>,
    /// graph6 of classes produced by moves only.
    pub extra_from_moves: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareReport {
    pub l: u8,
    pub rows: Vec<CompareRow>,
}

impl CompareReport {
    pub fn equal(&self) -> bool {
        self.rows.iter().all(|r| r.missing_from_moves.is_empty() && r.extra_from_moves.is_empty())
    }
}

/// Both enumerations side by side for `2 <= n <= min(n_max, BRUTE_FORCE_MAX_N)`.
pub fn compare(n_max: usize, p: SparsityParams) -> CompareReport {
    let n_max = n_max.min(BRUTE_FORCE_MAX_N);
    let moves = generate_by_moves(n_max, p);
    let rows = (2..=n_max)
        .map(|n| {
            let a = moves.get(&n).cloned().unwrap_or_default();
            let b = generate_brute_force(n, p);
            let names = |s: BTreeSet<&CanonicalForm>| s.into_iter().map(|f| f.as_graph6().to_string()).collect();
            CompareRow {
                n,
                by_moves: a.len(),
                brute_force: b.len(),
                missing_from_moves: names(b.difference(&a).collect()),
                extra_from_moves: names(a.difference(&b).collect()),
            }
        })
        .collect();
    CompareReport { l: p.l(), rows }
}

/// Smallest vertex count with a tight graph for `p` (excluding `K1`).
pub fn min_vertices(p: SparsityParams) -> usize {
    match p.l() {
        3 => 2,
        2 => 4,
        _ => 5,
    }
}

/// A random tight graph on exactly `n` vertices, built by random forward
/// moves from a random base graph and then randomly relabelled. `None` when
/// no tight graph of that size exists.
pub fn random_tight_graph<R: Rng>(rng: &mut R, p: SparsityParams, n: usize) -> Option<SimpleGraph> {
    if n < min_vertices(p) {
        return None;
    }
    let bases: Vec<SimpleGraph> = BaseGraph::for_params(p).iter().map(|b| b.graph()).filter(|g| g.vertex_count() <= n).collect();
    let mut g = bases.choose(rng).expect("some base fits").clone();
    while g.vertex_count() < n {
        let room = n - g.vertex_count();
        g = random_step(rng, &g, p, room);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Some(g.relabel(&perm))
}

fn random_step<R: Rng>(rng: &mut R, g: &SimpleGraph, p: SparsityParams, room: usize) -> SimpleGraph {
    let n = g.vertex_count();
    let mut kinds = vec![0u8];
    if n >= 3 {
        kinds.push(1);
    }
    if p.l() < 3 {
        kinds.push(2);
        if room >= 3 {
            kinds.push(3);
        }
    }
    if p.l() == 1 && room >= 5 {
        kinds.push(4);
    }
    let pick = |rng: &mut R, k: usize| rng.gen_range(0..k);
    match *kinds.choose(rng).expect("H1 always applies") {
        0 => {
            let a = pick(rng, n);
            let b = (a + 1 + pick(rng, n - 1)) % n;
            apply_h1(g, a, b).expect("valid H1")
        }
        1 => {
            let (u, v) = *g.edges().choose(rng).expect("tight graphs have edges");
            let others: Vec<usize> = (0..n).filter(|&w| w != u && w != v).collect();
            apply_h2(g, (u, v), *others.choose(rng).expect("n >= 3")).expect("valid H2")
        }
        2 => {
            let (a, b) = *g.edges().choose(rng).expect("tight graphs have edges");
            let (u, v) = if rng.gen() { (a, b) } else { (b, a) };
            let (keep, moved): (Vec<usize>, Vec<usize>) = g.neighbors(v).iter().copied().filter(|&x| x != u).partition(|_| rng.gen());
            apply_edge_to_k3(g, u, v, &keep, &moved).expect("valid edge-to-K3")
        }
        3 => {
            let v = pick(rng, n);
            let assignment: Vec<(usize, u8)> = g.neighbors(v).iter().map(|&x| (x, rng.gen_range(0..4u8))).collect();
            apply_vertex_to_k4(g, v, &assignment).expect("valid vertex-to-K4")
        }
        _ => {
            let size = rng.gen_range(5..=room);
            let right = random_tight_graph(rng, p, size).expect("size >= 5");
            let (u, v) = (pick(rng, n), pick(rng, size));
            apply_edge_join(g, &right, u, v).expect("tight join inputs")
        }
    }
}
