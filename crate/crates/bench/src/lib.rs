//! Criterion benchmarks for `eslab-core`; see `benches/`.
