//! Radial numerics for the energy-critical inhomogeneous nonlinear
//! Schrödinger equation with an inverse-square potential,
//!
//! ```text
//! i u_t - P_c u = lambda |x|^{-b} |u|^sigma u,   P_c = -Laplace + c |x|^{-2},
//! ```
//!
//! on `R^d` (`d >= 3`, `0 < b < 2`, `c > -((d-2)/2)^2`), restricted to radial
//! profiles `u = u(t, r)`.
//!
//! The crate provides
//!
//! * exact rational bookkeeping of the exponent algebra (critical powers,
//!   admissible Strichartz pairs, Sobolev-equivalence windows) in [`params`],
//! * a cell-centered radial grid with weighted quadrature and a self-adjoint
//!   discretization of `P_c` in [`grid`],
//! * conserved and variational functionals (mass, energy, Hardy–Sobolev
//!   quotient) in [`functionals`],
//! * the closed-form Hardy–Sobolev extremizer `W_{b,c}`, its identities, and
//!   a quotient minimizer in [`ground_state`],
//! * Strang-splitting time evolution with blowup indicators in [`evolution`],
//! * virial identities and the localized (cutoff) variants in [`virial`],
//! * the finite-time blowup classifier in [`classifier`].
//!
//! The crate is `no_std` (with `alloc`); all file formats and the command
//! line front end live in the companion `inlsc-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classifier;
pub mod evolution;
pub mod functionals;
pub mod grid;
pub mod ground_state;
pub mod linalg;
pub mod params;
pub mod virial;

pub use grid::{RadialField, RadialGrid};
pub use params::{DerivedExponents, Nonlinearity, ParamSet};
