//! Leibniz algebras with multiplicative bases, studied through their
//! associated directed graphs.
//!
//! The pipeline is: structure constants ([`algebra::LeibnizAlgebra`]) →
//! kernel split ([`algebra::BasisSplit`]) → sparse multiplicative table →
//! associated graph ([`graph::DiGraph`]) → structural verdicts
//! ([`structure`]). Every graph-theoretic verdict has a brute-force
//! linear-algebra counterpart so the two can be compared.

pub mod algebra;
pub mod cli;
pub mod corpus;
pub mod equivalence;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod structure;

pub use algebra::{BasisSplit, LeibnizAlgebra, MultiplicativeTable, Part};
pub use graph::DiGraph;
pub use linalg::{Subspace, Vector};
pub use scalar::{Field, Scalar};
pub use structure::MultiplicativeAlgebra;
