//! Equilibration and prethermalization dynamics of the Bose- and Fermi-Hubbard
//! models after a quantum quench.
//!
//! The analytic side works in the limit of large coordination number `Z`:
//! two-site correlation amplitudes obey closed linear mode equations that are
//! diagonal in quasi-momentum, so every observable reduces to a weighted sum
//! over a Brillouin-zone grid. The [`ed`] module provides an exact
//! diagonalization oracle for small lattices used to validate the mode
//! results.
//!
//! Everything is expressed in units of the on-site interaction `U` (energies
//! in `U`, times in `1/U`); all operations are deterministic and pure.

pub mod bose;
pub mod ed;
pub mod error;
pub mod fermi;
pub mod ksum;
pub mod lattice;
pub mod series;

pub use error::{Error, Result};
pub use lattice::{GridMode, HypercubicLattice, Momentum, MomentumGrid, Separation};
