//! Log Chern numbers of arrangements of sections of ruled surfaces, their
//! inequalities, and random cyclic root covers whose Chern ratios approach
//! the log Chern ratio.

pub mod arrangement;
pub mod error;
pub mod exact;
pub mod library;
pub mod log_chern;
pub mod number;
pub mod resolution;
pub mod report;
pub mod surface;

pub use error::{Error, Result};
