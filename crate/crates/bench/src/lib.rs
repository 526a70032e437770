//! Criterion benchmarks for `irrev-core`; see `benches/`.
