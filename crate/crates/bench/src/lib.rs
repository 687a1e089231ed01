//! Criterion benchmarks for `extgraph` live under `benches/`.
