//! Desk-scale map-only text processing.
//!
//! The pieces mirror a miniature Hadoop deployment running on one machine:
//!
//! * [`store`] splits UTF-8 text files into line-aligned blocks and places
//!   replicas across per-node directories, with failover on read.
//! * [`simplify`] is a rule-based Turkish text simplifier: tokenization,
//!   Turkish case folding, stopword elimination and suffix stripping.
//! * [`engine`] plans one map task per stored block and runs them on a
//!   local worker pool, rescheduling the tasks of failed workers; an
//!   optional word-count reduce stage covers grouped aggregation.
//! * [`console`] is the single-threaded baseline that processes files
//!   directly, used as the correctness oracle and the timing control.
//! * [`bench`] reproduces the scaling and split-size experiments with a
//!   trimmed-mean timing protocol and CSV/report output.

pub mod bench;
pub mod console;
pub mod engine;
pub mod simplify;
pub mod store;
