//! Criterion benchmarks for `elliptic-lab-core` live under `benches/`.
