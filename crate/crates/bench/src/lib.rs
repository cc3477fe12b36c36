//! Benchmarks for `syz-core`; see `benches/`.
