//! Hermitian observable matrices over the exact-diagonalization bases.
//!
//! Builders return dense real symmetric matrices in the basis ordering of
//! the corresponding basis object; fermionic operators follow the sign
//! convention fixed by [`FermiBasis`].

use ndarray::Array2;

use super::bose_basis::BoseBasis;
use super::fermi_basis::{annihilate, create, FermiBasis};
use crate::lattice::{HypercubicLattice, Separation};

/// Projector onto `n_site = m`.
pub fn occupation_probability(basis: &BoseBasis, site: usize, m: u8) -> Array2<f64> {
    let dim = basis.dimension();
    let mut o = Array2::zeros((dim, dim));
    for i in 0..dim {
        if basis.state(i)[site] == m {
            o[[i, i]] = 1.0;
        }
    }
    o
}

/// Site-averaged projector `(1/M) sum_mu P(n_mu = m)`.
pub fn mean_occupation_probability(basis: &BoseBasis, m: u8) -> Array2<f64> {
    let dim = basis.dimension();
    let sites = basis.sites();
    let mut o = Array2::zeros((dim, dim));
    for i in 0..dim {
        let count = basis.state(i).iter().filter(|&&n| n == m).count();
        o[[i, i]] = count as f64 / sites as f64;
    }
    o
}

/// Symmetrized one-body operator `(b^dag_mu b_nu + b^dag_nu b_mu) / 2`.
pub fn one_body(basis: &BoseBasis, mu: usize, nu: usize) -> Array2<f64> {
    let dim = basis.dimension();
    let mut o = Array2::zeros((dim, dim));
    for col in 0..dim {
        let occ = basis.state(col);
        if mu == nu {
            o[[col, col]] += occ[mu] as f64;
            continue;
        }
        for (a, b) in [(mu, nu), (nu, mu)] {
            if occ[b] == 0 {
                continue;
            }
            let mut target = occ.to_vec();
            target[b] -= 1;
            let amp = ((occ[b] as f64) * (target[a] as f64 + 1.0)).sqrt();
            target[a] += 1;
            let row = basis.index_of(&target).expect("number conserved");
            o[[row, col]] += 0.5 * amp;
        }
    }
    o
}

/// One-body correlator averaged over all ordered site pairs whose reduced
/// separation matches `d` (up to sign); Hermitian by construction.
pub fn one_body_at_separation(
    basis: &BoseBasis,
    lattice: &HypercubicLattice,
    d: &Separation,
) -> Array2<f64> {
    let target = lattice.reduce_separation(d).canonical();
    let n = lattice.site_count();
    let mut pairs = Vec::new();
    for mu in 0..n {
        let xm = lattice.site_coords(mu);
        for nu in 0..n {
            if mu == nu {
                continue;
            }
            let xn = lattice.site_coords(nu);
            let diff: Vec<i64> = xm
                .iter()
                .zip(&xn)
                .map(|(&a, &b)| a as i64 - b as i64)
                .collect();
            let sep = lattice.reduce_separation(&Separation::new(diff)).canonical();
            if sep == target {
                pairs.push((mu, nu));
            }
        }
    }
    assert!(!pairs.is_empty(), "no site pairs at separation {d}");
    let dim = basis.dimension();
    let mut o = Array2::zeros((dim, dim));
    for col in 0..dim {
        let occ = basis.state(col);
        for &(mu, nu) in &pairs {
            if occ[nu] == 0 {
                continue;
            }
            let mut t = occ.to_vec();
            t[nu] -= 1;
            let amp = ((occ[nu] as f64) * (t[mu] as f64 + 1.0)).sqrt();
            t[mu] += 1;
            let row = basis.index_of(&t).expect("number conserved");
            o[[row, col]] += amp / pairs.len() as f64;
        }
    }
    o
}

/// Diagonal parity product `(-1)^{n_mu} (-1)^{n_nu}`.
pub fn parity_product(basis: &BoseBasis, mu: usize, nu: usize) -> Array2<f64> {
    let dim = basis.dimension();
    let mut o = Array2::zeros((dim, dim));
    for i in 0..dim {
        let occ = basis.state(i);
        let parity = |n: u8| if n % 2 == 0 { 1.0 } else { -1.0 };
        o[[i, i]] = parity(occ[mu]) * parity(occ[nu]);
    }
    o
}

/// Diagonal density product `n_mu n_nu`.
pub fn density_product(basis: &BoseBasis, mu: usize, nu: usize) -> Array2<f64> {
    let dim = basis.dimension();
    let mut o = Array2::zeros((dim, dim));
    for i in 0..dim {
        let occ = basis.state(i);
        o[[i, i]] = occ[mu] as f64 * occ[nu] as f64;
    }
    o
}

/// Diagonal double occupancy `n_up n_down` at one site.
pub fn double_occupancy(basis: &FermiBasis, site: usize) -> Array2<f64> {
    let dim = basis.dimension();
    let bit = 1u64 << site;
    let mut o = Array2::zeros((dim, dim));
    for i in 0..dim {
        if basis.up_mask(i) & bit != 0 && basis.down_mask(i) & bit != 0 {
            o[[i, i]] = 1.0;
        }
    }
    o
}

/// Site-averaged double occupancy `(1/M) sum_mu n_up n_down`.
pub fn mean_double_occupancy(basis: &FermiBasis) -> Array2<f64> {
    let dim = basis.dimension();
    let mut o = Array2::zeros((dim, dim));
    for i in 0..dim {
        let both = basis.up_mask(i) & basis.down_mask(i);
        o[[i, i]] = both.count_ones() as f64 / basis.sites() as f64;
    }
    o
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinAxis {
    X,
    Y,
    Z,
}

/// Spin-spin correlator `S^axis_mu S^axis_nu` restricted to the basis
/// sector (real symmetric there).
pub fn spin_product(basis: &FermiBasis, axis: SpinAxis, mu: usize, nu: usize) -> Array2<f64> {
    let dim = basis.dimension();
    let mut o = Array2::zeros((dim, dim));
    match axis {
        SpinAxis::Z => {
            for i in 0..dim {
                let up = basis.up_mask(i);
                let down = basis.down_mask(i);
                let sz = |site: usize| {
                    let bit = 1u64 << site;
                    0.5 * ((up & bit != 0) as i32 as f64 - (down & bit != 0) as i32 as f64)
                };
                o[[i, i]] = sz(mu) * sz(nu);
            }
        }
        SpinAxis::X | SpinAxis::Y => {
            // S^x = (A + B)/2, S^y = (A - B)/(2i) with A = c^dag_up c_down,
            // B = c^dag_down c_up. Within a fixed (N_up, N_down) sector only
            // the A_mu B_nu and B_mu A_nu products survive, identically for
            // the two axes.
            let sign = 0.25;
            for col in 0..dim {
                let packed = basis.state(col);
                for (first_up, second_up) in [(true, false), (false, true)] {
                    // first operator acts on nu, second on mu
                    let applied = apply_flip(basis, packed, nu, first_up)
                        .and_then(|(p, s1)| {
                            apply_flip(basis, p, mu, second_up).map(|(q, s2)| (q, s1 * s2))
                        });
                    if let Some((out, s)) = applied {
                        if let Some(row) = basis.index_of_packed(out) {
                            o[[row, col]] += sign * s;
                        }
                    }
                }
            }
        }
    }
    o
}

/// Apply `c^dag_{site, to} c_{site, from}` where `raise_up = true` flips a
/// down electron to up.
fn apply_flip(basis: &FermiBasis, packed: u64, site: usize, raise_up: bool) -> Option<(u64, f64)> {
    let (from, to) = if raise_up {
        (basis.mode(site, false), basis.mode(site, true))
    } else {
        (basis.mode(site, true), basis.mode(site, false))
    };
    let (p1, s1) = annihilate(packed, from)?;
    let (p2, s2) = create(p1, to)?;
    Some((p2, s1 * s2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ed::{mott_state, neel_state, expectation};
    use crate::lattice::build_lattice;
    use approx::assert_abs_diff_eq;
    use ndarray::Array2;

    #[test]
    fn occupation_projectors_are_complete() {
        let basis = BoseBasis::new(3, 3);
        let mut sum = Array2::<f64>::zeros((basis.dimension(), basis.dimension()));
        for m in 0..=3u8 {
            sum = sum + occupation_probability(&basis, 1, m);
        }
        for i in 0..basis.dimension() {
            assert_eq!(sum[[i, i]], 1.0);
        }
    }

    #[test]
    fn mott_expectations() {
        let lattice = build_lattice(1, &[4]).unwrap();
        let basis = BoseBasis::new(4, 4);
        let psi = mott_state(&basis);
        let p1 = occupation_probability(&basis, 2, 1);
        assert_abs_diff_eq!(expectation(&p1, psi.view()), 1.0, epsilon = 1e-14);
        let onsite = one_body(&basis, 1, 1);
        assert_abs_diff_eq!(expectation(&onsite, psi.view()), 1.0, epsilon = 1e-14);
        let offsite = one_body(&basis, 0, 2);
        assert_abs_diff_eq!(expectation(&offsite, psi.view()), 0.0, epsilon = 1e-14);
        let nn = one_body_at_separation(&basis, &lattice, &Separation::new(vec![1]));
        assert_abs_diff_eq!(expectation(&nn, psi.view()), 0.0, epsilon = 1e-14);
        let parity = parity_product(&basis, 0, 1);
        assert_abs_diff_eq!(expectation(&parity, psi.view()), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn neel_expectations() {
        let lattice = build_lattice(1, &[4]).unwrap();
        let basis = FermiBasis::half_filling(4);
        let psi = neel_state(&basis, &lattice).unwrap();
        for site in 0..4 {
            let docc = double_occupancy(&basis, site);
            assert_abs_diff_eq!(expectation(&docc, psi.view()), 0.0, epsilon = 1e-14);
        }
        // alternating <Sz Sz> = -1/4 for neighbors, +1/4 for same parity
        let zz01 = spin_product(&basis, SpinAxis::Z, 0, 1);
        assert_abs_diff_eq!(expectation(&zz01, psi.view()), -0.25, epsilon = 1e-14);
        let zz02 = spin_product(&basis, SpinAxis::Z, 0, 2);
        assert_abs_diff_eq!(expectation(&zz02, psi.view()), 0.25, epsilon = 1e-14);
    }

    #[test]
    fn spin_flip_products_are_symmetric_and_match_axes() {
        let basis = FermiBasis::half_filling(4);
        let xx = spin_product(&basis, SpinAxis::X, 0, 1);
        let yy = spin_product(&basis, SpinAxis::Y, 0, 1);
        for i in 0..basis.dimension() {
            for j in 0..i {
                assert_abs_diff_eq!(xx[[i, j]], xx[[j, i]], epsilon = 1e-14);
            }
        }
        // in-sector parts of XX and YY coincide
        assert_abs_diff_eq!(
            (&xx - &yy).iter().map(|x| x.abs()).fold(0.0, f64::max),
            0.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn one_body_separation_average_matches_single_pair_on_symmetric_state() {
        let lattice = build_lattice(1, &[4]).unwrap();
        let basis = BoseBasis::new(4, 4);
        // use the hopping ground state, which is translation invariant
        let p = crate::bose::BoseParams::new(0.05, 1.0).unwrap();
        let h = crate::ed::build_bose_hamiltonian(&lattice, &p, &basis).unwrap();
        let d = crate::ed::diagonalize(&h).unwrap();
        let psi = d.ground_state();
        let avg = one_body_at_separation(&basis, &lattice, &Separation::new(vec![1]));
        let single = one_body(&basis, 0, 1);
        assert_abs_diff_eq!(
            expectation(&avg, psi.view()),
            expectation(&single, psi.view()),
            epsilon = 1e-9
        );
    }
}
