//! Criterion benchmarks for `geon-core`; see `benches/core.rs`.
