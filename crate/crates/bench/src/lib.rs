//! Benchmarks for the lgfisher pipeline; see `benches/pipeline.rs`.
