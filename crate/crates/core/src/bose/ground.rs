//! Ground-state mode amplitudes of the Mott phase and the stationary
//! observables built from them, valid below the critical hopping.

use num_complex::Complex64;

use super::{omega, BoseParams};
use crate::error::{Error, Result};
use crate::ksum;
use crate::lattice::{MomentumGrid, Separation};

/// Stationary mode amplitudes; `f21 = f12` and `f22 = f11` are implied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundModes {
    pub f11: f64,
    pub f12: f64,
}

/// Ground-state amplitudes for one momentum:
/// `f11 = (U - 3 J T_k - omega_k) / (2 omega_k)`,
/// `f12 = sqrt(2) J T_k / omega_k`.
pub fn ground_modes(params: &BoseParams, t_k: f64) -> Result<GroundModes> {
    params.ensure_stable()?;
    let w = omega(params, t_k).magnitude();
    let f11 = (params.u() - 3.0 * params.j() * t_k - w) / (2.0 * w);
    let f12 = std::f64::consts::SQRT_2 * params.j() * t_k / w;
    Ok(GroundModes { f11, f12 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroundCorrelatorKind {
    /// `<h^dag h> = <p^dag p>`.
    HoleHole,
    /// `<h^dag p> = <p^dag h>`.
    HolePair,
}

/// Two-site ground-state correlation at separation `d != 0`. Real for
/// hypercubic grids; returned as complex for uniformity.
pub fn ground_correlator(
    params: &BoseParams,
    grid: &MomentumGrid,
    kind: GroundCorrelatorKind,
    d: &Separation,
) -> Result<Complex64> {
    if d.is_zero() {
        return Err(Error::OnSiteSeparation);
    }
    params.ensure_stable()?;
    let value = ksum::sum_c64(grid.len(), |i| {
        let modes = mode_amplitudes_unchecked(params, grid.structure_factor(i));
        let amp = match kind {
            GroundCorrelatorKind::HoleHole => modes.f11,
            GroundCorrelatorKind::HolePair => modes.f12,
        };
        let phase = grid.phase(i, d);
        grid.weight(i) * amp * Complex64::new(phase.cos(), phase.sin())
    });
    Ok(value)
}

/// On-site depletion `<p^dag p> = <h h^dag>`: the weighted sum of `f11`.
pub fn ground_depletion(params: &BoseParams, grid: &MomentumGrid) -> Result<f64> {
    params.ensure_stable()?;
    Ok(ksum::sum_f64(grid.len(), |i| {
        grid.weight(i) * mode_amplitudes_unchecked(params, grid.structure_factor(i)).f11
    }))
}

/// Ground-state energy per site, `sum_k w_k (omega_k - U) / 2`; nonpositive.
pub fn ground_energy_per_site(params: &BoseParams, grid: &MomentumGrid) -> Result<f64> {
    params.ensure_stable()?;
    Ok(ksum::sum_f64(grid.len(), |i| {
        let w = omega(params, grid.structure_factor(i)).magnitude();
        grid.weight(i) * 0.5 * (w - params.u())
    }))
}

pub(super) fn mode_amplitudes_unchecked(params: &BoseParams, t_k: f64) -> GroundModes {
    let w = omega(params, t_k).magnitude();
    GroundModes {
        f11: (params.u() - 3.0 * params.j() * t_k - w) / (2.0 * w),
        f12: std::f64::consts::SQRT_2 * params.j() * t_k / w,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bose::critical_hopping;
    use crate::lattice::{build_lattice, MomentumGrid};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn mott_point_has_no_correlations() {
        let p = BoseParams::new(0.0, 1.0).unwrap();
        let m = ground_modes(&p, 0.7).unwrap();
        assert_eq!(m.f11, 0.0);
        assert_eq!(m.f12, 0.0);

        let grid = MomentumGrid::thermodynamic(2, 8).unwrap();
        let d = Separation::new(vec![1, 0]);
        let c = ground_correlator(&p, &grid, GroundCorrelatorKind::HolePair, &d).unwrap();
        assert_abs_diff_eq!(c.norm(), 0.0, epsilon = 1e-15);
        assert_eq!(ground_depletion(&p, &grid).unwrap(), 0.0);
        assert_eq!(ground_energy_per_site(&p, &grid).unwrap(), 0.0);
    }

    #[test]
    fn small_hopping_series_for_f12() {
        let p = BoseParams::new(1e-4, 1.0).unwrap();
        let m = ground_modes(&p, 1.0).unwrap();
        let leading = std::f64::consts::SQRT_2 * 1e-4;
        assert!((m.f12 - leading).abs() < 5.0 * leading * 1e-4);
    }

    #[test]
    fn unstable_regime_is_rejected() {
        let p = BoseParams::new(0.18, 1.0).unwrap();
        assert!(ground_modes(&p, 1.0).is_err());
        let grid = MomentumGrid::thermodynamic(1, 8).unwrap();
        assert!(ground_depletion(&p, &grid).is_err());
        let at_critical = BoseParams::new(critical_hopping(1.0), 1.0).unwrap();
        assert!(ground_energy_per_site(&at_critical, &grid).is_err());
    }

    #[test]
    fn on_site_separation_is_rejected() {
        let p = BoseParams::new(0.1, 1.0).unwrap();
        let grid = MomentumGrid::thermodynamic(2, 8).unwrap();
        let err = ground_correlator(
            &p,
            &grid,
            GroundCorrelatorKind::HoleHole,
            &Separation::zero(2),
        );
        assert!(err.is_err());
    }

    #[test]
    fn nearest_neighbor_pair_correlation_leading_order() {
        // <h^dag p> at nearest neighbor tends to sqrt(2) J / (Z U).
        let lattice = build_lattice(3, &[4, 4, 4]).unwrap();
        let grid = MomentumGrid::thermodynamic(3, 24).unwrap();
        let z = lattice.coordination_number() as f64;
        let j = 0.002;
        let p = BoseParams::new(j, 1.0).unwrap();
        let d = Separation::new(vec![1, 0, 0]);
        let c = ground_correlator(&p, &grid, GroundCorrelatorKind::HolePair, &d).unwrap();
        let leading = std::f64::consts::SQRT_2 * j / z;
        assert!((c.re - leading).abs() < 0.02 * leading);
        assert_abs_diff_eq!(c.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn next_nearest_hole_correlation_counts_two_step_paths() {
        // At order J^2 the hh correlator resolves the number of two-step
        // neighbor paths: 2 J^2 / (U Z)^2 * paths.
        let grid = MomentumGrid::thermodynamic(3, 24).unwrap();
        let j = 0.004;
        let p = BoseParams::new(j, 1.0).unwrap();
        let z = 6.0;
        let diagonal = Separation::new(vec![1, 1, 0]);
        let c = ground_correlator(&p, &grid, GroundCorrelatorKind::HoleHole, &diagonal).unwrap();
        let expected = 2.0 * j * j / (z * z) * 2.0;
        assert!((c.re - expected).abs() < 0.05 * expected, "got {} want {}", c.re, expected);

        let straight = Separation::new(vec![2, 0, 0]);
        let c2 = ground_correlator(&p, &grid, GroundCorrelatorKind::HoleHole, &straight).unwrap();
        let expected2 = 2.0 * j * j / (z * z);
        assert!((c2.re - expected2).abs() < 0.05 * expected2);
    }

    #[test]
    fn depletion_scales_quadratically() {
        let grid = MomentumGrid::thermodynamic(3, 16).unwrap();
        let d1 = ground_depletion(&BoseParams::new(0.01, 1.0).unwrap(), &grid).unwrap();
        let d2 = ground_depletion(&BoseParams::new(0.02, 1.0).unwrap(), &grid).unwrap();
        let slope = (d2 / d1).ln() / 2.0_f64.ln();
        assert!((slope - 2.0).abs() < 0.05, "slope {}", slope);
    }

    #[test]
    fn depletion_quadrature_refinement() {
        let p = BoseParams::new(0.14, 1.0).unwrap();
        let coarse = MomentumGrid::thermodynamic(3, 64).unwrap();
        let fine = MomentumGrid::thermodynamic(3, 128).unwrap();
        let a = ground_depletion(&p, &coarse).unwrap();
        let b = ground_depletion(&p, &fine).unwrap();
        assert!(
            (a - b).abs() < 5e-5 * b.abs(),
            "64^3 vs 128^3 disagree: {a} vs {b}"
        );
    }

    #[test]
    fn energy_monotone_and_quadratic() {
        let grid = MomentumGrid::thermodynamic(3, 16).unwrap();
        let mut last = 0.0;
        for step in 1..=8 {
            let j = 0.02 * step as f64;
            let e = ground_energy_per_site(&BoseParams::new(j, 1.0).unwrap(), &grid).unwrap();
            assert!(e <= last + 1e-15, "energy not nonincreasing at J = {j}");
            last = e;
        }
        let e1 = ground_energy_per_site(&BoseParams::new(0.005, 1.0).unwrap(), &grid).unwrap();
        let e2 = ground_energy_per_site(&BoseParams::new(0.01, 1.0).unwrap(), &grid).unwrap();
        let slope = (e2 / e1).ln() / 2.0_f64.ln();
        assert!((slope - 2.0).abs() < 0.05, "slope {}", slope);
    }

    proptest! {
        /// The Mott-start invariant fixes f11 (f11 + 1) = f12^2 in the
        /// ground state, and the stationarity relation ties f12 to f11.
        #[test]
        fn ground_closure_identities(
            j in 0.0f64..0.17,
            t_k in -1.0f64..1.0,
        ) {
            let p = BoseParams::new(j, 1.0).unwrap();
            let m = ground_modes(&p, t_k).unwrap();
            prop_assert!((m.f11 * (m.f11 + 1.0) - m.f12 * m.f12).abs() < 1e-12);
            let stat = std::f64::consts::SQRT_2 * j * t_k * (2.0 * m.f11 + 1.0)
                / (1.0 - 3.0 * j * t_k);
            prop_assert!((m.f12 - stat).abs() < 1e-12);
        }
    }
}
