//! Desk-scale solvers and calculators for structured-light driving of quantum
//! matter.
//!
//! The crate is organised around the drive source and the systems it acts on:
//!
//! - [`beam`] synthesises Laguerre–Gaussian electric fields, temporal-gauge
//!   vector potentials, and the longitudinal magnetic component on grids.
//! - [`tdgl`] evolves a dimensionless time-dependent Ginzburg–Landau order
//!   parameter under the beam's vector potential and tracks the vortices it
//!   imprints.
//! - [`llg`] evolves a 2D spin lattice under the beam's magnetic field and
//!   measures the topological charge of the resulting textures.
//! - [`ife`] and [`rydberg`] hold closed-form and perturbative calculators for
//!   rectified (dc) magnetization: the classical cross-product form, the
//!   hydrogenic second-order effective field, Hall-fluid and dipolar-bilayer
//!   variants.
//! - [`acoustic`] maps strain fields to pseudo-gauge fields in gapped Dirac
//!   systems and computes the rectified magnetization of a circularly
//!   polarized acoustic drive.
//! - [`snapshot`] is the suite-wide binary field-snapshot format.
//!
//! All grid operations are deterministic: parallel passes write each cell
//! exactly once and reductions run in a fixed order, so results are bitwise
//! identical for any worker count.

pub mod acoustic;
pub mod beam;
pub mod grid;
pub mod hydrogen;
pub mod ife;
pub mod llg;
pub mod math;
pub mod phase;
pub mod rydberg;
pub mod snapshot;
pub mod tdgl;
pub mod units;
pub mod vec3;

pub use grid::{GridSpec, ScalarField, VectorField};
pub use vec3::Vector3;
