//! Component structure of Fano schemes of linear subspaces on projective
//! toric varieties.
//!
//! Given a finite set of lattice points `A`, the irreducible components of
//! the scheme `F_k(X_A)` of `k`-planes on the toric variety `X_A` correspond
//! to maximal Cayley structures on faces of `A`. This crate enumerates them,
//! computes their dimensions, torus fixed points, local chart semigroups,
//! smoothness, pairwise intersections and the connectivity graph, and in
//! codimension one describes the local scheme structure and multiplicities
//! at fixed points. The [`verify`] module holds independent brute-force and
//! symbolic oracles for all of the above.

pub mod cayley;
pub mod config;
pub mod error;
pub mod examples;
pub mod fano;
pub mod input;
pub mod linalg;
pub mod local;
pub mod verify;

pub use cayley::CayleyStructure;
pub use config::{Face, PointConfiguration};
pub use error::{Error, Hypothesis, Result};
