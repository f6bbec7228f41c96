//! Bounded bisimulation and contraction of pointed multi-modal Kripke models.

pub mod agreement;
pub mod bisim;
pub mod contraction;
pub mod depth;
pub mod error;
pub mod exec;
pub mod formula;
pub mod generators;
pub mod harness;
pub mod io;
pub mod model;
pub mod oracle;

pub use error::{Error, Result};
pub use exec::Execution;
pub use model::{ModelBuilder, PointedModel, WorldId};
