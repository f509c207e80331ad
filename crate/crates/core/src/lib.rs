//! Computational laboratory for the interacting partially directed
//! self-avoiding walk pinned at an attractive vertical wall: exact
//! partition-function engines, the analytic surface-transition machinery of
//! the collapsed phase, Wulff-shape computation, and a Metropolis sampler.

pub mod analytic;
pub mod error;
pub mod numerics;
pub mod phase;
pub mod walk;
pub mod wulff;

pub use error::{Error, Result};
pub use walk::WalkParams;
