//! Exact-diagonalization oracle for small Hubbard lattices: full spectral
//! decomposition, exact quench evolution, diagonal-ensemble (infinite-time)
//! averages, and canonical thermal averages at fixed filling.
//!
//! Correctness-first and dense-only; the Hilbert-space dimension is capped
//! (default [`DEFAULT_DIMENSION_CAP`]) to keep runs at desk scale.

mod bose_basis;
mod fermi_basis;
mod hamiltonian;
pub mod observables;
mod spectral;

pub use bose_basis::BoseBasis;
pub use fermi_basis::FermiBasis;
pub use hamiltonian::{
    build_bose_hamiltonian, build_bose_hamiltonian_capped, build_fermi_hamiltonian,
    build_fermi_hamiltonian_capped,
};
pub use spectral::{
    diagonal_ensemble_average, diagonalize, evolve, expectation, thermal_average,
    SpectralDecomposition,
};

use ndarray::Array1;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::HypercubicLattice;

/// Default Hilbert-space dimension cap for dense diagonalization.
pub const DEFAULT_DIMENSION_CAP: usize = 20_000;

pub(crate) fn check_dimension(dimension: usize, cap: usize) -> Result<()> {
    if dimension > cap {
        Err(Error::DimensionCap { dimension, cap })
    } else {
        Ok(())
    }
}

/// Normalized amplitude vector of the unit-filling Mott product state.
pub fn mott_state(basis: &BoseBasis) -> Array1<Complex64> {
    let occ = vec![1u8; basis.sites()];
    let idx = basis
        .index_of(&occ)
        .expect("unit filling requires N = M bosons");
    unit_vector(basis.dimension(), idx)
}

/// Normalized amplitude vector of the Neel product state: spin-down on the
/// even-parity sublattice, spin-up on the odd one.
pub fn neel_state(basis: &FermiBasis, lattice: &HypercubicLattice) -> Result<Array1<Complex64>> {
    if !lattice.is_bipartite() {
        return Err(Error::InvalidLattice(
            "Neel state needs a bipartite lattice (all extents even)".into(),
        ));
    }
    let m = basis.sites();
    assert_eq!(m, lattice.site_count(), "basis/lattice size mismatch");
    let mut up = 0u64;
    let mut down = 0u64;
    for site in 0..m {
        if lattice.site_parity(site) == 0 {
            down |= 1 << site;
        } else {
            up |= 1 << site;
        }
    }
    let idx = basis.index_of(up, down).ok_or_else(|| {
        Error::InvalidLattice(format!(
            "Neel occupation (N_up = {}, N_down = {}) is outside this basis sector",
            up.count_ones(),
            down.count_ones()
        ))
    })?;
    Ok(unit_vector(basis.dimension(), idx))
}

fn unit_vector(dimension: usize, index: usize) -> Array1<Complex64> {
    let mut v = Array1::zeros(dimension);
    v[index] = Complex64::new(1.0, 0.0);
    v
}
