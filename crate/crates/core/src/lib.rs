//! Trace-driven laboratory for block-structured embedding-table storage.
//!
//! Embedding tables served from a block device pay for every read in whole
//! blocks (4 KB by default) while the application consumes single vectors
//! (128 B by default). This crate provides the machinery to study and narrow
//! that gap:
//!
//! - [`trace`] / [`synth`]: the lookup-trace data model plus a synthetic
//!   generator with planted co-access structure,
//! - [`analysis`]: LRU stack distances and exact hit-rate curves,
//! - [`layout`] / [`kmeans`] / [`shp`]: physical placements of vectors into
//!   fixed-capacity blocks (identity, K-means, recursive K-means, and
//!   supervised bisection minimizing average query fanout),
//! - [`cache`]: a vector-granularity LRU cache simulator in front of
//!   block-granularity storage, with prefetch admission policies,
//! - [`tuner`]: down-sampled "miniature cache" simulations that pick
//!   admission thresholds per table and cache size, and a greedy DRAM
//!   allocator across tables.
//!
//! Everything is deterministic: all randomness flows from explicit seeds
//! through ChaCha streams, and no operation consults the OS or the clock.
//! The crate is `no_std` (alloc required); IO and file formats live in the
//! companion `embloc` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analysis;
pub mod cache;
pub mod kmeans;
pub mod layout;
pub mod shp;
pub mod synth;
pub mod trace;
pub mod tuner;

mod error;
mod ranklist;
mod util;

pub use error::{Error, Result};
pub use util::derived_seed;
