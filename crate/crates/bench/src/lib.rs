//! Criterion benchmarks for `rekit`; see `benches/`.
