//! Leverage-score matrix algorithms and conductance-based graph probing.
//!
//! The crate is split along the two algorithm families it implements:
//!
//! * [`matcore`], [`levselect`] and [`lsq`] cover dense kernels, statistical
//!   leverage scores, column subset selection and sampled least squares.
//! * [`graph`] and [`ncp`] cover cut statistics, local and spectral
//!   partitioning, flow-based cut improvement, whiskers and network community
//!   profiles.
//!
//! [`io`] and [`cli`] provide the file formats and the batch command line.
//! Data-parallel loops go through [`exec`], which falls back to sequential
//! iteration when the `parallel` feature is disabled.

pub mod cli;
pub mod error;
pub mod exec;
pub mod graph;
pub mod hadamard;
pub mod io;
pub mod levselect;
pub mod lsq;
pub mod matcore;
pub mod ncp;
mod sampling;

pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{CutStats, Graph, NodeSet};
pub use matcore::DenseMatrix;
pub use sampling::MAX_RESAMPLE_RETRIES;
