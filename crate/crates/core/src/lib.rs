//! Finite-dimensional laboratory for the Lie-product formulation of
//! classical and quantum dynamics.
//!
//! The crate is `no_std` (with `alloc`) and contains only pure numerics:
//!
//! * [`quantum`], [`classical`], [`envelope`], [`lie`]: quantities in both
//!   realizations with a common Lie product, integrals and expectations.
//! * [`state`], [`gaussian`]: density operators and Gaussian phase-space states.
//! * [`dynamics`], [`moments`], [`oscillator`], [`trajectory`]: evolution under
//!   arbitrary splits of the Hamiltonian, the quadratic moment hierarchy, and
//!   the truncated Fock oscillator.
//! * [`uncertainty`]: uncertain values, Robertson checks, world tubes.
//! * [`whittle`]: expectation-first probability on finite sample spaces.
//! * [`qstats`]: q-probabilities, product ensembles and frequency experiments.
//! * [`random`]: seeded generators of random test instances.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod classical;
pub mod dynamics;
pub mod envelope;
pub mod error;
pub mod gaussian;
pub mod lie;
pub mod matrix;
pub mod moments;
pub mod oscillator;
pub mod qstats;
pub mod quantum;
pub mod random;
pub mod state;
pub mod trajectory;
pub mod uncertainty;
pub mod whittle;

pub use error::{Error, Result};
pub use num_complex::Complex64;
