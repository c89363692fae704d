//! Numerical structure theory of polar orthogonal representations attached to
//! pseudo-Riemannian symmetric pairs.
//!
//! Given a semisimple matrix Lie algebra with a pair of commuting involutions,
//! the crate builds the associated isotropy representation together with its
//! real structures, and mechanizes the structure theory of its closed orbits:
//!
//! * Cartan subspaces, their signatures and conjugacy classes ([`cartan`]);
//! * restricted roots, co-roots, root spaces and their type classification
//!   ([`roots`]);
//! * Cayley transforms between conjugacy classes and extremal Cartan
//!   subspaces ([`cayley`]);
//! * submanifold geometry of orbits: Weingarten operators, flat normal
//!   connections and the isoparametric verdict ([`isopgeom`]).
//!
//! Models are built from the built-in catalog ([`sympair::catalog`]) or loaded
//! from JSON ([`model_io`]); [`report`] assembles deterministic analysis
//! reports for the command-line front end.

pub mod error;
pub mod numkernel;
pub mod liealg;
pub mod sympair;
pub mod cartan;
pub mod roots;
pub mod cayley;
pub mod isopgeom;
pub mod model_io;
pub mod report;
pub mod rng;

pub use error::{Error, Result};
pub use numkernel::TolerancePolicy;
