//! Criterion benchmarks for `hymcg`; see `benches/`.
