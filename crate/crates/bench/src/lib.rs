//! Criterion benchmarks for `qwalk`; see `benches/`.
