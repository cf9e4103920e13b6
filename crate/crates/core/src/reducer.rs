//! Certified deconstruction of tight graphs down to base graphs, and replay
//! of the resulting certificates.
//!
//! Reductions are tried cheapest first: inverse Henneberg 1, inverse
//! Henneberg 2, `K3`-to-edge, `K4`-to-vertex, and (for `l = 1`) edge
//! separation. For `l = 3` only the two Henneberg inverses are used.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::{named, Edge, SimpleGraph};
use crate::graph6::{read_graph6, write_graph6};
use crate::moves::{self, Move, MoveError, Reduction};
use crate::oracle;
use crate::sparsity::{self, is_tight, SparsityParams};

/// Largest input for which a non-tight input is explained by an explicit
/// violating vertex set from the exhaustive oracle.
pub const WITNESS_SEARCH_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseGraph {
    K2,
    K4,
    K5MinusEdge,
    K4UnionK4,
}

impl BaseGraph {
    pub fn graph(self) -> SimpleGraph {
        match self {
            BaseGraph::K2 => named::k2(),
            BaseGraph::K4 => named::k4(),
            BaseGraph::K5MinusEdge => named::k5_minus_edge(),
            BaseGraph::K4UnionK4 => named::k4_union_k4(),
        }
    }

    pub fn for_params(p: SparsityParams) -> &'static [BaseGraph] {
        match p.l() {
            3 => &[BaseGraph::K2],
            2 => &[BaseGraph::K4],
            _ => &[BaseGraph::K5MinusEdge, BaseGraph::K4UnionK4],
        }
    }

    pub fn form(self) -> &'static CanonicalForm {
        static FORMS: OnceLock<[CanonicalForm; 4]> = OnceLock::new();
        let forms = FORMS.get_or_init(|| {
            [BaseGraph::K2, BaseGraph::K4, BaseGraph::K5MinusEdge, BaseGraph::K4UnionK4].map(|b| canonical_form(&b.graph()))
        });
        &forms[self as usize]
    }

    /// The base graph for `p` isomorphic to `g`, if any.
    pub fn identify(g: &SimpleGraph, p: SparsityParams) -> Option<BaseGraph> {
        let candidates = Self::for_params(p);
        if !candidates.iter().any(|b| b.graph().vertex_count() == g.vertex_count()) {
            return None;
        }
        let form = canonical_form(g);
        candidates.iter().copied().find(|b| *b.form() == form)
    }
}

/// Why a graph failed the tightness precondition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TightnessWitness {
    /// Sparse, but with the wrong total freedom.
    FreedomCount { freedom: i64 },
    /// A vertex set spanning too many edges.
    Subgraph { vertices: Vec<usize>, freedom: i64 },
    /// The edge the pebble game rejected.
    RejectedEdge { edge: Edge },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("graph is not (2,{l})-tight: {witness:?}")]
    NotTight { l: u8, witness: TightnessWitness },
    #[error("no reduction found for non-base tight graph {graph6}: reduction guarantee violated")]
    GuaranteeViolated { graph6: String },
    #[error("the single-vertex graph is tight for l = 2 but has no construction from K4")]
    TrivialGraph,
    #[error("reduction produced a non-tight graph {graph6}")]
    Unsound { graph6: String },
    #[error(transparent)]
    Move(#[from] MoveError),
}

/// Explains why `g` is not tight, or `None` when it is.
pub fn tightness_witness(g: &SimpleGraph, p: SparsityParams) -> Option<TightnessWitness> {
    match sparsity::first_rejected_edge(g, p) {
        None if g.freedom_count() == p.target() => None,
        None => Some(TightnessWitness::FreedomCount { freedom: g.freedom_count() }),
        Some(_) if g.vertex_count() <= WITNESS_SEARCH_LIMIT => {
            let vertices = oracle::sparsity_violation(g, p.target()).expect("oracle agrees with the pebble game");
            let freedom = 2 * vertices.len() as i64 - g.induced_edge_count(&vertices) as i64;
            Some(TightnessWitness::Subgraph { vertices, freedom })
        }
        Some(edge) => Some(TightnessWitness::RejectedEdge { edge }),
    }
}

fn require_tight(g: &SimpleGraph, p: SparsityParams) -> Result<(), ReduceError> {
    match tightness_witness(g, p) {
        None => Ok(()),
        Some(witness) => Err(ReduceError::NotTight { l: p.l(), witness }),
    }
}

/// One reduction of a tight graph, or `None` when `g` is a base graph.
pub fn reduce_step(g: &SimpleGraph, p: SparsityParams) -> Result<Option<Reduction>, ReduceError> {
    require_tight(g, p)?;
    if BaseGraph::identify(g, p).is_some() {
        return Ok(None);
    }
    if g.vertex_count() == 1 {
        return Err(ReduceError::TrivialGraph);
    }
    if let Some(x) = moves::find_inverse_h1(g) {
        return Ok(Some(moves::inverse_h1(g, x)?));
    }
    if let Some((x, e)) = moves::find_inverse_h2(g, p) {
        return Ok(Some(moves::inverse_h2(g, x, e)?));
    }
    if p.l() < 3 {
        if let Some((t, (a, b))) = moves::find_k3_to_edge(g, p) {
            let c = t.into_iter().find(|&x| x != a && x != b).expect("triangle has a third vertex");
            return Ok(Some(moves::k3_to_edge(g, a, b, c)?));
        }
        if let Some(quad) = moves::find_k4_to_vertex(g, p) {
            return Ok(Some(moves::k4_to_vertex(g, quad)?));
        }
    }
    if p.l() == 1 {
        if let Some(sep) = moves::find_edge_separation(g) {
            return Ok(Some(moves::edge_separation(g, &sep)));
        }
    }
    Err(ReduceError::GuaranteeViolated { graph6: write_graph6(g) })
}

/// A node of a construction certificate. Every node records the SHA-256 of
/// the canonical form of the graph it produces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum CertNode {
    Base { hash: String, base: BaseGraph, graph6: String },
    Step { hash: String, step: Move, child: Box<CertNode> },
    Join { hash: String, step: Move, left: Box<CertNode>, right: Box<CertNode> },
}

impl CertNode {
    pub fn hash(&self) -> &str {
        match self {
            CertNode::Base { hash, .. } | CertNode::Step { hash, .. } | CertNode::Join { hash, .. } => hash,
        }
    }

    /// Number of nodes in the subtree.
    pub fn size(&self) -> usize {
        match self {
            CertNode::Base { .. } => 1,
            CertNode::Step { child, .. } => 1 + child.size(),
            CertNode::Join { left, right, .. } => 1 + left.size() + right.size(),
        }
    }

    /// Longest root-to-leaf path, counted in moves.
    pub fn depth(&self) -> usize {
        match self {
            CertNode::Base { .. } => 0,
            CertNode::Step { child, .. } => 1 + child.depth(),
            CertNode::Join { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    pub fn leaves(&self) -> Vec<BaseGraph> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<BaseGraph>) {
        match self {
            CertNode::Base { base, .. } => out.push(*base),
            CertNode::Step { child, .. } => child.collect_leaves(out),
            CertNode::Join { left, right, .. } => {
                left.collect_leaves(out);
                right.collect_leaves(out);
            }
        }
    }

    /// Moves in the subtree, counted by kind.
    pub fn move_kinds(&self) -> Vec<&'static str> {
        match self {
            CertNode::Base { .. } => Vec::new(),
            CertNode::Step { step, child, .. } => {
                let mut v = child.move_kinds();
                v.push(step.kind());
                v
            }
            CertNode::Join { step, left, right, .. } => {
                let mut v = left.move_kinds();
                v.extend(right.move_kinds());
                v.push(step.kind());
                v
            }
        }
    }
}

/// A full certificate: replaying `root` rebuilds the deconstructed graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSequence {
    pub l: u8,
    pub vertices: usize,
    pub root: CertNode,
}

/// Reduces `g` all the way to base graphs.
pub fn deconstruct(g: &SimpleGraph, p: SparsityParams) -> Result<ConstructionSequence, ReduceError> {
    require_tight(g, p)?;
    let root = build(g, p)?;
    Ok(ConstructionSequence { l: p.l(), vertices: g.vertex_count(), root })
}

fn build(g: &SimpleGraph, p: SparsityParams) -> Result<CertNode, ReduceError> {
    let hash = canonical_form(g).digest();
    let Some(red) = reduce_step(g, p)? else {
        let base = BaseGraph::identify(g, p).expect("reduce_step returns None only on base graphs");
        return Ok(CertNode::Base { hash, base, graph6: write_graph6(g) });
    };
    for part in &red.parts {
        if !is_tight(part, p) {
            return Err(ReduceError::Unsound { graph6: write_graph6(part) });
        }
    }
    debug_assert_eq!(red.rebuild().as_ref(), Ok(g));
    let Reduction { step, mut parts } = red;
    if parts.len() == 2 {
        let right_graph = parts.pop().expect("two parts");
        let left_graph = parts.pop().expect("two parts");
        let (left, right) = rayon::join(|| build(&left_graph, p), || build(&right_graph, p));
        Ok(CertNode::Join { hash, step, left: Box::new(left?), right: Box::new(right?) })
    } else {
        let child = build(&parts[0], p)?;
        Ok(CertNode::Step { hash, step, child: Box::new(child) })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayFault {
    #[error("invalid l = {0}")]
    BadL(u8),
    #[error("leaf graph6 is malformed: {0}")]
    BadGraph6(String),
    #[error("leaf graph is not isomorphic to {0:?}")]
    NotBase(BaseGraph),
    #[error("base {0:?} is not a base graph for this l")]
    WrongBase(BaseGraph),
    #[error("move {0} is not permitted for this l")]
    MoveNotAllowed(&'static str),
    #[error("join node must carry an edge_join move and step nodes must not")]
    ShapeMismatch,
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error("intermediate graph is not tight")]
    NotTight,
    #[error("recorded hash does not match the rebuilt graph")]
    HashMismatch,
    #[error("rebuilt graph has {got} vertices, certificate claims {expected}")]
    SizeMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("replay failed at node {node}: {fault}")]
pub struct ReplayError {
    /// Pre-order index of the offending node (the root is 0).
    pub node: usize,
    pub fault: ReplayFault,
}

/// Rebuilds the graph described by a certificate, re-verifying tightness and
/// the recorded canonical hash at every node.
pub fn replay(seq: &ConstructionSequence) -> Result<SimpleGraph, ReplayError> {
    let p = SparsityParams::new(seq.l).map_err(|_| ReplayError { node: 0, fault: ReplayFault::BadL(seq.l) })?;
    let mut counter = 0;
    let g = replay_node(&seq.root, p, &mut counter)?;
    if g.vertex_count() != seq.vertices {
        return Err(ReplayError { node: 0, fault: ReplayFault::SizeMismatch { expected: seq.vertices, got: g.vertex_count() } });
    }
    Ok(g)
}

fn allowed(p: SparsityParams, m: &Move) -> bool {
    match m {
        Move::H1 { .. } | Move::H2 { .. } => true,
        Move::VertexToK4 { .. } | Move::EdgeToK3 { .. } => p.l() <= 2,
        Move::EdgeJoin { .. } => p.l() == 1,
    }
}

fn replay_node(node: &CertNode, p: SparsityParams, counter: &mut usize) -> Result<SimpleGraph, ReplayError> {
    let index = *counter;
    *counter += 1;
    let fail = |fault: ReplayFault| ReplayError { node: index, fault };
    let g = match node {
        CertNode::Base { base, graph6, .. } => {
            if !BaseGraph::for_params(p).contains(base) {
                return Err(fail(ReplayFault::WrongBase(*base)));
            }
            let g = read_graph6(graph6).map_err(|e| fail(ReplayFault::BadGraph6(e.to_string())))?;
            if canonical_form(&g) != *base.form() {
                return Err(fail(ReplayFault::NotBase(*base)));
            }
            g
        }
        CertNode::Step { step, child, .. } => {
            if matches!(step, Move::EdgeJoin { .. }) {
                return Err(fail(ReplayFault::ShapeMismatch));
            }
            if !allowed(p, step) {
                return Err(fail(ReplayFault::MoveNotAllowed(step.kind())));
            }
            let c = replay_node(child, p, counter)?;
            step.apply(&[&c]).map_err(|e| fail(e.into()))?
        }
        CertNode::Join { step, left, right, .. } => {
            if !matches!(step, Move::EdgeJoin { .. }) {
                return Err(fail(ReplayFault::ShapeMismatch));
            }
            if !allowed(p, step) {
                return Err(fail(ReplayFault::MoveNotAllowed(step.kind())));
            }
            let a = replay_node(left, p, counter)?;
            let b = replay_node(right, p, counter)?;
            step.apply(&[&a, &b]).map_err(|e| fail(e.into()))?
        }
    };
    if !is_tight(&g, p) {
        return Err(fail(ReplayFault::NotTight));
    }
    if canonical_form(&g).digest() != node.hash() {
        return Err(fail(ReplayFault::HashMismatch));
    }
    Ok(g)
}
