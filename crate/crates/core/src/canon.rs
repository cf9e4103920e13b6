//! Canonical labeling by colour refinement with individualization.
//!
//! The search refines an ordered vertex partition until it is equitable,
//! then branches on every member of the first non-singleton cell. Each leaf
//! is a discrete partition and hence a relabeling; the canonical form is the
//! lexicographically largest graph6 string over all leaves. Vertices that
//! are twins (same neighbourhood apart from each other) are interchangeable
//! by an automorphism, so only one member of each twin class is branched on.

use std::fmt;

use crate::graph::{Edge, SimpleGraph};
use crate::graph6::{encode_bytes, read_graph6};

/// Isomorphism invariant of a graph: the graph6 string of its canonical
/// relabeling. Equal forms mean isomorphic graphs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// The canonical graph6 string.
    pub fn as_graph6(&self) -> &str {
        std::str::from_utf8(&self.0).expect("canonical forms are ASCII")
    }

    /// The canonically labeled representative.
    pub fn to_graph(&self) -> SimpleGraph {
        read_graph6(self.as_graph6()).expect("canonical forms are valid graph6")
    }

    pub fn vertex_count(&self) -> usize {
        self.to_graph().vertex_count()
    }

    /// Hex SHA-256 digest of the form, used as a compact certificate hash.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        hex::encode(Sha256::digest(&self.0))
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.as_graph6())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_graph6())
    }
}

pub fn canonical_form(g: &SimpleGraph) -> CanonicalForm {
    CanonicalForm(canonical_labeling(g).1)
}

/// Returns a permutation `old -> new` producing the canonical relabeling,
/// together with the canonical graph6 bytes.
pub fn canonical_labeling(g: &SimpleGraph) -> (Vec<usize>, Vec<u8>) {
    let n = g.vertex_count();
    if n == 0 {
        return (Vec::new(), encode_bytes(0, &[]));
    }
    let twin_of = twin_representatives(g);
    let mut search = Search { g, twin_of: &twin_of, best: None, scratch: Vec::with_capacity(g.edge_count()) };
    let colors = refine(g, vec![0; n]);
    search.descend(colors);
    let (perm, bytes) = search.best.expect("search visits at least one leaf");
    (perm, bytes)
}

pub fn is_isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> bool {
    a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

/// For each vertex, the smallest vertex in its twin class.
#[allow(clippy::needless_range_loop)]
fn twin_representatives(g: &SimpleGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut rep: Vec<usize> = (0..n).collect();
    for u in 0..n {
        if rep[u] != u {
            continue;
        }
        for w in u + 1..n {
            if rep[w] == w && g.degree(u) == g.degree(w) && are_twins(g, u, w) {
                rep[w] = u;
            }
        }
    }
    rep
}

fn are_twins(g: &SimpleGraph, u: usize, w: usize) -> bool {
    let a = g.neighbors(u).iter().filter(|&&x| x != w);
    let b = g.neighbors(w).iter().filter(|&&x| x != u);
    a.eq(b)
}

/// Refines colours to the coarsest equitable partition finer than the input.
/// Colours are dense ranks; the result depends only on the graph structure
/// and the input colouring, never on the labels themselves.
fn refine(g: &SimpleGraph, mut colors: Vec<u32>) -> Vec<u32> {
    let n = g.vertex_count();
    let mut count = distinct(&colors);
    let mut sigs: Vec<(u32, Vec<u32>, usize)> = Vec::with_capacity(n);
    loop {
        sigs.clear();
        for v in 0..n {
            let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
            nb.sort_unstable();
            sigs.push((colors[v], nb, v));
        }
        sigs.sort_unstable();
        let mut rank = 0u32;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                rank += 1;
            }
            colors[sigs[i].2] = rank;
        }
        let next = rank as usize + 1;
        if next == count {
            return colors;
        }
        count = next;
    }
}

fn distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct Search<'a> {
    g: &'a SimpleGraph,
    twin_of: &'a [usize],
    best: Option<(Vec<usize>, Vec<u8>)>,
    scratch: Vec<Edge>,
}

impl Search<'_> {
    fn descend(&mut self, colors: Vec<u32>) {
        let n = colors.len();
        // Cell sizes indexed by colour rank.
        let mut size = vec![0usize; n];
        for &c in &colors {
            size[c as usize] += 1;
        }
        let target = match size.iter().position(|&s| s > 1) {
            None => return self.leaf(&colors),
            Some(c) => c as u32,
        };
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..n {
            if colors[v] != target {
                continue;
            }
            let rep = self.twin_of[v];
            if tried.iter().any(|&t| self.twin_of[t] == rep) {
                continue;
            }
            tried.push(v);
            let mut next: Vec<u32> = colors.iter().map(|&c| 2 * c + 1).collect();
            next[v] = 2 * target;
            self.descend(refine(self.g, next));
        }
    }

    fn leaf(&mut self, perm: &[u32]) {
        self.scratch.clear();
        self.scratch.extend(self.g.edges().iter().map(|&(u, v)| {
            let (a, b) = (perm[u] as usize, perm[v] as usize);
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        }));
        let bytes = encode_bytes(self.g.vertex_count(), &self.scratch);
        let better = match &self.best {
            None => true,
            Some((_, b)) => bytes > *b,
        };
        if better {
            self.best = Some((perm.iter().map(|&c| c as usize).collect(), bytes));
        }
    }
}
