//! Criterion benchmarks for the pebble game, canonical forms, the reducer and
//! enumeration. Run with `cargo bench -p tightgraph-bench`.
