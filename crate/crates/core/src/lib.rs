//! Exact construction and verification of weighted Brianchon-Gram, Brion and
//! polar decompositions of polytopes.
//!
//! Every identity is an equality of functions in the algebra spanned by
//! (weighted) indicator functions of closed polyhedra. Weights are
//! polynomials over the rationals in facet indeterminates `q1, q2, ...`, so a
//! verified identity holds for every specialization of the weights.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact`]: rationals, affine forms, linear solving, Fourier-Motzkin
//!   feasibility and the polynomial weight ring.
//! - [`polyhedra`]: H-representation polyhedra, vertices, face lattices,
//!   genericity and tangent cones.
//! - [`indicators`]: weighted indicator functions and formal sums of them.
//! - [`decomp`]: the decompositions themselves.
//! - [`verify`]: exact equality of formal sums by hyperplane-arrangement cells.

pub mod decomp;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod indicators;
pub mod polyhedra;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{AffineForm, Poly, Rational};
pub use indicators::{FormalSum, Indicator, WeightAssignment, WeightedPolyhedron};
pub use polyhedra::{Face, FaceLattice, HPolyhedron, TangentCone};
