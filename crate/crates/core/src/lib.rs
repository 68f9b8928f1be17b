//! Vertex-position optimization for affine simplicial meshes.
//!
//! Given a fixed-connectivity triangulation of an interval or a planar
//! polygon, the crate measures the weighted H¹ error
//! `c0·‖e‖² + c1·‖∇e‖²` between an analytic field and its piecewise-affine
//! interpolant (or a 1-form and its Whitney interpolant), and moves the free
//! vertices to drive that error to a stationary point.
//!
//! * [`mesh`]: triangulation data model, validation, generators, text I/O
//! * [`field`]: scalar test fields, P1 interpolation, quadrature, energies
//! * [`whitney`]: lowest-order edge elements for 1-forms in 2D
//! * [`optimizer`]: finite-difference gradient descent over free vertices
//! * [`cli`]: the `trimopt` command-line front end

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod field;
pub mod mesh;
pub mod optimizer;
pub mod whitney;

pub use error::{Error, Result};
