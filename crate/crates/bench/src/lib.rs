//! Criterion benchmarks for the `semikernel` library; the targets live in `benches/`.
