//! Dense Hamiltonian matrices over the number-conserving bases. Hopping
//! carries the explicit `1/Z` normalization; the staggered field makes the
//! Neel configuration the unique `J = 0` ground state at half filling.

use ndarray::Array2;

use super::bose_basis::BoseBasis;
use super::fermi_basis::{annihilate, create, FermiBasis};
use super::{check_dimension, DEFAULT_DIMENSION_CAP};
use crate::bose::BoseParams;
use crate::error::Result;
use crate::fermi::FermiParams;
use crate::lattice::HypercubicLattice;

/// `H = -(J/Z) sum_{mu nu} T_{mu nu} b^dag_mu b_nu + (U/2) sum_mu n(n-1)`
/// over the given basis, with the default dimension cap.
pub fn build_bose_hamiltonian(
    lattice: &HypercubicLattice,
    params: &BoseParams,
    basis: &BoseBasis,
) -> Result<Array2<f64>> {
    build_bose_hamiltonian_capped(lattice, params, basis, DEFAULT_DIMENSION_CAP)
}

pub fn build_bose_hamiltonian_capped(
    lattice: &HypercubicLattice,
    params: &BoseParams,
    basis: &BoseBasis,
    cap: usize,
) -> Result<Array2<f64>> {
    assert_eq!(
        basis.sites(),
        lattice.site_count(),
        "basis/lattice size mismatch"
    );
    check_dimension(basis.dimension(), cap)?;
    let dim = basis.dimension();
    let z = lattice.coordination_number() as f64;
    let hop = -params.j() / z;
    let mut h = Array2::zeros((dim, dim));

    for col in 0..dim {
        let occ = basis.state(col);
        let interaction: f64 = occ
            .iter()
            .map(|&n| 0.5 * params.u() * (n as f64) * (n as f64 - 1.0))
            .sum();
        h[[col, col]] += interaction;

        for (a, b, weight) in lattice.bonds() {
            for (mu, nu) in [(a, b), (b, a)] {
                let n_nu = occ[nu];
                if n_nu == 0 {
                    continue;
                }
                let mut target = occ.to_vec();
                target[nu] -= 1;
                let n_mu = target[mu];
                target[mu] += 1;
                let row = basis
                    .index_of(&target)
                    .expect("hopping conserves particle number");
                let amp = ((n_nu as f64) * (n_mu as f64 + 1.0)).sqrt();
                h[[row, col]] += hop * weight * amp;
            }
        }
    }
    Ok(h)
}

/// `H = -(J/Z) sum_{mu nu, s} T_{mu nu} c^dag_{mu s} c_{nu s}
///      + U sum_mu n_up n_down - staggered-field term`
/// with the field coupling spin-down on the even sublattice and spin-up on
/// the odd one.
pub fn build_fermi_hamiltonian(
    lattice: &HypercubicLattice,
    params: &FermiParams,
    basis: &FermiBasis,
) -> Result<Array2<f64>> {
    build_fermi_hamiltonian_capped(lattice, params, basis, DEFAULT_DIMENSION_CAP)
}

pub fn build_fermi_hamiltonian_capped(
    lattice: &HypercubicLattice,
    params: &FermiParams,
    basis: &FermiBasis,
    cap: usize,
) -> Result<Array2<f64>> {
    assert_eq!(
        basis.sites(),
        lattice.site_count(),
        "basis/lattice size mismatch"
    );
    check_dimension(basis.dimension(), cap)?;
    let dim = basis.dimension();
    let m = basis.sites();
    let z = lattice.coordination_number() as f64;
    let hop = -params.j() / z;
    let a_field = params.staggered();
    let mut h = Array2::zeros((dim, dim));

    for col in 0..dim {
        let up = basis.up_mask(col);
        let down = basis.down_mask(col);
        let mut diag = params.u() * (up & down).count_ones() as f64;
        if a_field != 0.0 {
            for site in 0..m {
                let bit = 1u64 << site;
                if lattice.site_parity(site) == 0 {
                    if down & bit != 0 {
                        diag -= a_field;
                    }
                } else if up & bit != 0 {
                    diag -= a_field;
                }
            }
        }
        h[[col, col]] += diag;

        let packed = basis.state(col);
        for (bond_a, bond_b, weight) in lattice.bonds() {
            for spin_up in [true, false] {
                for (mu, nu) in [(bond_a, bond_b), (bond_b, bond_a)] {
                    let from = basis.mode(nu, spin_up);
                    let to = basis.mode(mu, spin_up);
                    if let Some((p1, s1)) = annihilate(packed, from) {
                        if let Some((p2, s2)) = create(p1, to) {
                            let row = basis
                                .index_of_packed(p2)
                                .expect("hopping conserves both spin populations");
                            h[[row, col]] += hop * weight * s1 * s2;
                        }
                    }
                }
            }
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::lattice::build_lattice;
    use approx::assert_abs_diff_eq;

    #[test]
    fn bose_zero_hopping_is_diagonal_interaction() {
        let lattice = build_lattice(1, &[2]).unwrap();
        let basis = BoseBasis::new(2, 2);
        let p = BoseParams::new(0.0, 1.0).unwrap();
        let h = build_bose_hamiltonian(&lattice, &p, &basis).unwrap();
        // states |20>, |11>, |02>: interaction energies U, 0, U
        let mut diag: Vec<f64> = (0..3).map(|i| h[[i, i]]).collect();
        diag.sort_by(f64::total_cmp);
        assert_eq!(diag, vec![0.0, 1.0, 1.0]);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(h[[i, j]], 0.0);
                }
            }
        }
        // Mott vector has eigenvalue zero
        let mott = basis.index_of(&[1, 1]).unwrap();
        assert_eq!(h[[mott, mott]], 0.0);
    }

    #[test]
    fn bose_two_site_matrix_elements() {
        // Two sites with doubled wraparound bond: hopping coefficient
        // -(J/Z) T = -J between |11> and |20>/|02> carries sqrt(2).
        let lattice = build_lattice(1, &[2]).unwrap();
        let basis = BoseBasis::new(2, 2);
        let j = 0.1;
        let p = BoseParams::new(j, 1.0).unwrap();
        let h = build_bose_hamiltonian(&lattice, &p, &basis).unwrap();
        let mott = basis.index_of(&[1, 1]).unwrap();
        let two0 = basis.index_of(&[2, 0]).unwrap();
        assert_abs_diff_eq!(h[[two0, mott]], -j * 2.0_f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(h[[mott, two0]], -j * 2.0_f64.sqrt(), epsilon = 1e-14);
        // symmetry
        for i in 0..basis.dimension() {
            for k in 0..basis.dimension() {
                assert_abs_diff_eq!(h[[i, k]], h[[k, i]], epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let lattice = build_lattice(1, &[4]).unwrap();
        let basis = BoseBasis::new(4, 4);
        let p = BoseParams::new(0.1, 1.0).unwrap();
        let err = build_bose_hamiltonian_capped(&lattice, &p, &basis, 10).unwrap_err();
        assert!(matches!(err, Error::DimensionCap { dimension: 35, cap: 10 }));
    }

    #[test]
    fn fermi_zero_hopping_diagonal_counts_double_occupancy() {
        let lattice = build_lattice(1, &[2]).unwrap();
        let basis = FermiBasis::half_filling(2);
        let p = FermiParams::new(0.0, 1.0, 0.0).unwrap();
        let h = build_fermi_hamiltonian(&lattice, &p, &basis).unwrap();
        for i in 0..basis.dimension() {
            let expected = (basis.up_mask(i) & basis.down_mask(i)).count_ones() as f64;
            assert_eq!(h[[i, i]], expected);
            for j in 0..basis.dimension() {
                if i != j {
                    assert_eq!(h[[i, j]], 0.0);
                }
            }
        }
    }

    #[test]
    fn staggered_field_singles_out_neel_state() {
        let lattice = build_lattice(1, &[2]).unwrap();
        let basis = FermiBasis::half_filling(2);
        let p = FermiParams::new(0.0, 1.0, 0.3).unwrap();
        let h = build_fermi_hamiltonian(&lattice, &p, &basis).unwrap();
        let neel = crate::ed::neel_state(&basis, &lattice).unwrap();
        let neel_idx = (0..basis.dimension())
            .find(|&i| neel[i].norm() > 0.5)
            .unwrap();
        let neel_energy = h[[neel_idx, neel_idx]];
        for i in 0..basis.dimension() {
            if i != neel_idx {
                assert!(
                    h[[i, i]] > neel_energy + 0.29,
                    "Neel must be the unique diagonal minimum"
                );
            }
        }
    }

    #[test]
    fn fermi_hamiltonian_is_symmetric() {
        let lattice = build_lattice(1, &[4]).unwrap();
        let basis = FermiBasis::half_filling(4);
        let p = FermiParams::new(0.3, 1.0, 0.1).unwrap();
        let h = build_fermi_hamiltonian(&lattice, &p, &basis).unwrap();
        for i in 0..basis.dimension() {
            for j in 0..i {
                assert_abs_diff_eq!(h[[i, j]], h[[j, i]], epsilon = 1e-14);
            }
        }
    }
}
