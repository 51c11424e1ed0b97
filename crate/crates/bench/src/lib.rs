//! Criterion benchmarks for the fanocheck checks; see `benches/checks.rs`.
