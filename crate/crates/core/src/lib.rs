//! Two-phase quantum walk on the integers with a defect coin at the origin.
//!
//! The crate simulates the walk exactly, evaluates the closed-form weak-limit
//! measure (a Dirac mass `C` at the origin plus the density `w(x) f_K(x; 1/sqrt2)`)
//! and the time-averaged localisation measure, and re-derives the density a
//! second way from residues of the generating function of the path weights.
//!
//! Modules, bottom-up:
//!
//! - [`model`]: coin family, propagators, initial states.
//! - [`evolution`]: exact evolution, distributions, path-weight matrices.
//! - [`limits`]: weight function, Konno density, localisation mass.
//! - [`genfun`]: generating functions, singular points, residue assembly.
//! - [`quadrature`]: adaptive Gauss–Kronrod integration.
//! - [`verify`]: cross-checks between the three routes.

pub mod error;
pub mod evolution;
pub mod genfun;
pub mod limits;
pub mod model;
pub mod quadrature;
pub mod verify;

pub use error::{QwError, Result};
pub use num_complex;
pub use model::{CoinParameters, InitialState};
