//! Recognition, construction and certified deconstruction of `(2,l)`-tight
//! simple graphs for `l` in `{1, 2, 3}`.

pub mod canon;
pub mod decompose;
pub mod enumerate;
pub mod graph;
pub mod graph6;
pub mod moves;
pub mod oracle;
pub mod reducer;
pub mod sparsity;
pub mod triangles;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use decompose::{decompose, verify_decomposition, DecomposeError, Decomposition};
pub use enumerate::{compare, generate_brute_force, generate_by_moves, random_tight_graph, CompareReport, DedupStore};
pub use graph::{edge, named, Edge, GraphError, SimpleGraph, VertexSet};
pub use graph6::{read_graph6, write_graph6, Graph6Error};
pub use moves::{Move, MoveError, Reduction};
pub use reducer::{
    deconstruct, reduce_step, replay, BaseGraph, CertNode, ConstructionSequence, ReduceError, ReplayError, TightnessWitness,
};
pub use sparsity::{blocker_exists, edge_insertable, is_sparse, is_tight, SparsityError, SparsityParams};
pub use triangles::{chord_report, classify_closure, grow_maximal, verify_lemmas, ChordReport, Closure, LemmaReport, TriangleSequence};
