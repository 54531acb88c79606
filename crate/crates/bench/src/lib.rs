//! Benchmark-only crate; see `benches/front.rs`.
