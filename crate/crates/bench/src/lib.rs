//! Criterion benchmarks of the numerical kernels; run with `cargo bench -p zetalab-bench`.
