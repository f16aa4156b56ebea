//! Domination invariants of direct products of balanced complete
//! multipartite graphs and of unitary Cayley graphs.
//!
//! - [`graphkit`]: graph construction (`K[a,b]`, direct products, `X_n`,
//!   CRT isomorphism, clique partitions).
//! - [`numth`]: factorization, Jacobsthal's function, CRT.
//! - [`domsolve`]: checkers and exact solvers for `γ`, `γ_t` and `Γ`.
//! - [`theory`]: explicit constructions, interval bounds and certificates.

pub mod descriptor;
pub mod domsolve;
pub mod error;
pub mod graphkit;
pub mod numth;
pub mod theory;
pub mod vertex_set;

pub use descriptor::Descriptor;
pub use domsolve::{Budget, Method, Quantity, SolveOptions, SolveResult};
pub use error::{Error, Result};
pub use graphkit::{Factor, Graph, Label, ProductSpec};
pub use vertex_set::VertexSet;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
