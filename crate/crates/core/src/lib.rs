//! Sampled L² function spaces, unitary representation models of
//! SL(n,R)-type groups and their semidirect extensions, constructive
//! solvers for cohomological equations, and exact root-pair rigidity
//! combinatorics.
//!
//! The building blocks:
//!
//! - [`grid`]: offset cell-centered grids, weighted quadrature, bump
//!   test functions.
//! - [`fourier`]: unitary FFT between a grid and its dual, spectral
//!   differentiation, exact translations.
//! - [`models`]: the representation models (derived generator actions,
//!   group actions, Sobolev norms, unitarity diagnostics).
//! - [`solver`]: obstruction integrals, primitive and Fourier solvers,
//!   spectral densities, fiber solves, parameter sweeps.
//! - [`counterexample`]: constructed solution pairs and divergence
//!   certificates.
//! - [`roots`]: exact integer bracket arithmetic in sl(n) and the
//!   commuting-pair rigidity classification.
//! - [`io`]: a binary container format for sampled functions.

pub mod counterexample;
pub mod error;
pub mod fit;
pub mod fourier;
pub mod grid;
pub mod io;
pub mod models;
pub mod roots;
pub mod solver;
pub mod tol;

pub use error::{Error, Result};
