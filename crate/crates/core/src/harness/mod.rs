//! Shared oracles (quadrature, sup search), report records and the CLI.

pub mod cli;
pub mod numerics;
pub mod quadrature;
pub mod random;
pub mod report;
pub mod search;

pub use quadrature::{integrate, integrate_decaying, ExpEnvelope, QuadResult, QuadratureSpec, TailPolicy};
pub use random::unit_vectors;
pub use report::{Method, RunReport};
pub use search::{logspace, sup_search, GridScale, SearchPolicy, SupResult};
