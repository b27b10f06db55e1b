//! Exact q-Delannoy numbers and their Lucas-type congruences modulo
//! cyclotomic polynomials.
//!
//! The crate is organised bottom-up:
//!
//! * [`polyring`]: dense polynomials over arbitrary-precision integers.
//! * [`cyclotomic`]: `Φ_n(q)` and reduction modulo `Φ_n`.
//! * [`qcore`]: q-integers, Gaussian binomials, Delannoy numbers and the
//!   classical and q-Lucas congruences.
//! * [`qdelannoy`]: `D_q(h, k)` by three independent routes.
//! * [`paths`]: lattice paths and the `σ` statistic.
//! * [`orbits`]: the corner decomposition of `P_{h+n,k+n}`, the cyclic
//!   actions on its classes and the orbit audit.
//! * [`congruence`]: direct verification of the congruence theorems and
//!   parallel sweeps.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod congruence;
pub mod cyclotomic;
mod error;
pub mod orbits;
pub mod paths;
pub mod polyring;
pub mod qcore;
pub mod qdelannoy;

pub use error::{Error, Result};
pub use polyring::IntPoly;
