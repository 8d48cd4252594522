//! Game of Thieves centrality alongside the classical measures it is compared
//! against, the random network models used for the comparison, rank
//! correlation statistics, and an experiment harness tying them together.

pub mod centrality;
pub mod error;
pub mod generators;
pub mod got;
pub mod graph;
pub mod harness;
pub mod io;
pub mod seed;
pub mod stats;

pub use centrality::{CentralityVector, Measure};
pub use error::{Error, Result};
pub use generators::{GenSpec, Model};
pub use got::{run_got, GotConfig, GotOutput};
pub use graph::Graph;
