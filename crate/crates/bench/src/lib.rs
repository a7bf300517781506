//! Benchmark-only crate; see benches/volumes.rs.
