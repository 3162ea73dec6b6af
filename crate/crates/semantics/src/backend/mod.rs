//! The three concrete triangles.

pub mod quantum;
pub mod set;
pub mod stochastic;

pub use quantum::QuantumBackend;
pub use set::SetBackend;
pub use stochastic::StochasticBackend;
