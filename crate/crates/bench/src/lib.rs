//! Benchmark-only crate; the measurements live in `benches/duality.rs`.
//! Run them with `cargo bench -p choiscope-bench`.
