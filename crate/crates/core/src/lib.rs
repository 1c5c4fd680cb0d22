//! Adjacency spectra of explicit and parameter-defined graphs, the closed
//! blowup spectrum transform, and lower-bound certificates for
//! `c_k = sup λ_k(G) / |V(G)|`.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: dense simple graphs, constructors, combinators and graph6.
//! * [`exact`]: exact arithmetic in `Q(√d)`.
//! * [`spectral`]: eigenvalues, spectra and the Jacobi eigensolver.
//! * [`families`]: named graph families and spectral descriptors
//!   (strongly regular parameters, intersection arrays, asserted spectra).
//! * [`bounds`]: blowup spectra, limit ratios, certificates and the bound table.
//! * [`search`]: exhaustive, stream and local search for large limit ratios.

pub mod bounds;
pub mod error;
pub mod exact;
pub mod families;
pub mod graph;
pub mod search;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::Graph;
pub use spectral::{EigenValue, Spectrum};
