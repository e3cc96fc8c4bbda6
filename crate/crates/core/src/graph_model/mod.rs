//! Graphs, Markov kernels and their stationary distributions.

mod chain;
mod graph;
pub mod io;
mod matrix;
mod stationary;

pub use chain::{validate_kernel, KernelKind, MarkovChain};
pub use graph::{Graph, VertexSet};
pub use matrix::Matrix;
pub use stationary::{is_stationary, stationary_distribution, support_irreducible, uniform_is_stationary, FLOAT_RESIDUAL};
