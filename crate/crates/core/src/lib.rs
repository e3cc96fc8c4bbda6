//! Isoperimetric spectrum and spectral comparison for finite Markov chains
//! on directed graphs.
//!
//! ```
//! use isospec::{isoperimetric_report, q, Graph, MarkovChain, Rational};
//!
//! let c4 = MarkovChain::<Rational>::natural_walk(&Graph::cycle(4))?;
//! let report = isoperimetric_report(&c4, 2, 14)?;
//! assert_eq!(report.iota, q(1, 2));
//! # Ok::<(), isospec::Error>(())
//! ```

pub mod calculus;
pub mod check;
pub mod corpus;
pub mod error;
pub mod graph_model;
pub mod homomorphism;
pub mod isoperimetry;
pub mod nodal;
pub mod probes;
pub mod report;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use graph_model::{Graph, MarkovChain, Matrix, VertexSet};
pub use isoperimetry::{isoperimetric_constant, isoperimetric_report, Mode, SubsetFamily};
pub use scalar::{q, Rational, Scalar};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/chains.md")]
    mod chains {}
    #[doc = include_str!("../../../book/src/isoperimetry.md")]
    mod isoperimetry {}
    #[doc = include_str!("../../../book/src/spectrum.md")]
    mod spectrum {}
    #[doc = include_str!("../../../book/src/nodal.md")]
    mod nodal {}
    #[doc = include_str!("../../../book/src/homomorphisms.md")]
    mod homomorphisms {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
