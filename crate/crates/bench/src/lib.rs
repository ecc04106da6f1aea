//! Criterion benchmarks for the series engine, catalog verification and
//! exact checks; see `benches/engine.rs`.
