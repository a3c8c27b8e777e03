//! Exact symbolic calculus of complex differential forms on C^2, with Hodge
//! stars for Euclidean and Minkowski signatures and Maxwell checks on potentials.

pub mod cli;
pub mod forms;
pub mod hodge;
pub mod lang;
pub mod maxwell;
pub mod numeric;
pub mod poly;
pub mod scalar;
