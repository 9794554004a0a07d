//! Discrete-time quantum walks driven by a normalized complex weight matrix
//! `W` on a graph, analysed through the Hermitian adjacency matrix
//! `H = W ∘ W*`.
//!
//! The walk acts on arcs with transition matrix `U = R(2N*N - I)`, where `R`
//! reverses arcs and `N` is the weighted tail incidence. The eigenvalues
//! `e^{±iθ}` of `U` seen by vertex states sit over the eigenvalues
//! `λ = cos θ` of `H`, so state transfer between `N*e_a` and `N*e_b` is
//! decided from the spectral idempotents of `H`:
//!
//! - [`graph`]: graphs, arc spaces, weights and `H`
//! - [`spectral`]: eigenprojections, supports, (m-)strong cospectrality
//! - [`walk`]: the transition matrix, evolution and fidelities
//! - [`angles`]: exact arccosine classification and independence
//! - [`transfer`]: perfect and pretty good state transfer verdicts
//! - [`constructions`]: the graph families with known transfer behaviour
//! - [`format`]: the JSON graph file format

pub mod angles;
pub mod constructions;
pub mod error;
pub mod format;
pub mod graph;
pub mod lattice;
pub mod linalg;
pub mod spectral;
pub mod transfer;
pub mod walk;

pub use error::{Error, Result};
pub use graph::{ArcSpace, Graph, HermitianAdjacency, WeightMatrix};

/// Dense complex matrix used throughout.
pub type CMatrix = nalgebra::DMatrix<num_complex::Complex64>;
