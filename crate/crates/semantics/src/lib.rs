//! Semantics of qpel: effect structures, the distribution monad, the
//! state-and-effect triangle interface with set, stochastic and quantum
//! backends, and the interpretation of judgements.

pub mod backend;
pub mod dist;
pub mod effect;
pub mod interp;
pub mod triangle;

pub use backend::{QuantumBackend, SetBackend, StochasticBackend};
pub use interp::{Interp, Truth, Verdict};
pub use triangle::{SemError, Triangle};
