//! Benchmark harness for the core algorithms; see `benches/`.
