//! Criterion benchmarks for the group and construction engines live in
//! `benches/`; run them with `cargo bench -p grpart-bench`.
