//! Criterion benchmarks for the exact series pipeline live in `benches/`.
