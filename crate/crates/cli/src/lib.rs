//! Library half of the quadlog CLI: pair computation and records, the
//! append-only result cache, sweep driving, summaries, the knot input
//! format, and the self-verification suite that the `verify` subcommand
//! and the acceptance tests share.

pub mod cache;
pub mod knot_input;
pub mod report;
pub mod scan;
pub mod stats;
pub mod verify;

pub use report::{compute_pair, PairReport, ResultRecord};
