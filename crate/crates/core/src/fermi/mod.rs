//! Charge-mode dynamics of the Fermi-Hubbard model on a bipartite lattice at
//! half filling, starting from the Neel state.
//!
//! The dynamical variables are the charge-sector amplitudes
//! `f^{0A0A}, f^{0A1B}, f^{1B0A}, f^{1B1B}` per momentum, with eigenfrequency
//! `omega_k = sqrt(4 J^2 T_k^2 + (U - a)^2)` in the presence of a staggered
//! field `a`. Unlike the bosonic case the frequency never vanishes, so there
//! is no instability at any hopping.

mod integrate;

pub use integrate::{
    integrate_charge_modes, integrate_charge_modes_from, FermiModeState, FermiTrajectory,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ksum;
use crate::lattice::{MomentumGrid, Separation};

/// Hopping, interaction, and staggered-field amplitude at half filling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FermiParams {
    j: f64,
    u: f64,
    staggered: f64,
}

impl FermiParams {
    pub fn new(j: f64, u: f64, staggered: f64) -> Result<Self> {
        if !(u > 0.0) {
            return Err(Error::InvalidParameter {
                name: "u",
                reason: format!("on-site interaction must be positive, got {u}"),
            });
        }
        if !(staggered >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "staggered",
                reason: format!("staggered field must be nonnegative, got {staggered}"),
            });
        }
        if !j.is_finite() {
            return Err(Error::InvalidParameter {
                name: "j",
                reason: format!("hopping must be finite, got {j}"),
            });
        }
        Ok(Self { j, u, staggered })
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn staggered(&self) -> f64 {
        self.staggered
    }

    /// Effective gap parameter `U - a` of the charge sector.
    pub(crate) fn u_eff(&self) -> f64 {
        self.u - self.staggered
    }

    /// The closed-form mode sums divide by `omega_k`, which reaches
    /// `|U - a|`; a field at or above `U` would let the gap close on the
    /// `T_k = 0` hypersurface.
    fn ensure_gapped(&self) -> Result<()> {
        if self.staggered >= self.u {
            return Err(Error::InvalidParameter {
                name: "staggered",
                reason: format!(
                    "staggered field {} must stay below the interaction {} for closed-form sums",
                    self.staggered, self.u
                ),
            });
        }
        Ok(())
    }
}

/// Charge-mode eigenfrequency `sqrt(4 J^2 T_k^2 + (U - a)^2)`; always real.
pub fn charge_omega(params: &FermiParams, t_k: f64) -> f64 {
    let ju = 2.0 * params.j * t_k;
    (ju * ju + params.u_eff() * params.u_eff()).sqrt()
}

/// Spin-sector eigenfrequency pair
/// `(U + a +/- sqrt(4 J^2 T_k^2 + (U - a)^2)) / 2`.
pub fn spin_sector_eigenmodes(params: &FermiParams, t_k: f64) -> (f64, f64) {
    let root = charge_omega(params, t_k);
    let mid = params.u + params.staggered;
    ((mid + root) / 2.0, (mid - root) / 2.0)
}

/// Effective antiferromagnetic Heisenberg coupling `2 J^2 / (Z^2 U)` of the
/// spin sector at small hopping.
pub fn heisenberg_coupling(params: &FermiParams, z: usize) -> f64 {
    2.0 * params.j * params.j / ((z * z) as f64 * params.u)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FermiCorrelatorKind {
    /// Same-sublattice amplitude `f^{1B1B}` (`f^{0A0A}` is its negative).
    Symmetric11,
    /// Mixed-sublattice amplitude `f^{1B0A}` (`f^{0A1B}` is its conjugate).
    Mixed10,
}

impl FermiCorrelatorKind {
    fn name(&self) -> &'static str {
        match self {
            FermiCorrelatorKind::Symmetric11 => "symmetric_11",
            FermiCorrelatorKind::Mixed10 => "mixed_10",
        }
    }
}

/// Reject separations whose bipartite parity does not match the correlator
/// kind; a silent zero would mask caller bugs.
pub(crate) fn check_sublattice(kind: FermiCorrelatorKind, d: &Separation) -> Result<()> {
    let even = d.same_sublattice();
    let ok = match kind {
        FermiCorrelatorKind::Symmetric11 => even,
        FermiCorrelatorKind::Mixed10 => !even,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::SublatticeMismatch {
            kind: kind.name(),
            separation: d.clone(),
            expected: if even { "odd" } else { "even" },
        })
    }
}

/// Ground-state mode amplitudes, honoring the staggered field:
/// `f^{1B1B} = (1 - U_eff/omega)/2`, `f^{1B0A} = J T_k / omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FermiGroundModes {
    pub f_1b1b: f64,
    pub f_1b0a: f64,
}

pub fn fermi_ground_modes(params: &FermiParams, t_k: f64) -> Result<FermiGroundModes> {
    params.ensure_gapped()?;
    let w = charge_omega(params, t_k);
    Ok(FermiGroundModes {
        f_1b1b: 0.5 * (1.0 - params.u_eff() / w),
        f_1b0a: params.j * t_k / w,
    })
}

/// Ground-state correlation at separation `d` (the `a -> 0` adiabatic limit
/// when the staggered field is zero). `Symmetric11` returns `f^{1B1B}`;
/// `Mixed10` returns `f^{1B0A} = f^{0A1B}`.
pub fn fermi_ground_correlator(
    params: &FermiParams,
    grid: &MomentumGrid,
    kind: FermiCorrelatorKind,
    d: &Separation,
) -> Result<Complex64> {
    check_sublattice(kind, d)?;
    params.ensure_gapped()?;
    Ok(ksum::sum_c64(grid.len(), |i| {
        let modes = ground_modes_unchecked(params, grid.structure_factor(i));
        let amp = match kind {
            FermiCorrelatorKind::Symmetric11 => modes.f_1b1b,
            FermiCorrelatorKind::Mixed10 => modes.f_1b0a,
        };
        let phase = grid.phase(i, d);
        grid.weight(i) * amp * Complex64::new(phase.cos(), phase.sin())
    }))
}

fn ground_modes_unchecked(params: &FermiParams, t_k: f64) -> FermiGroundModes {
    let w = charge_omega(params, t_k);
    FermiGroundModes {
        f_1b1b: 0.5 * (1.0 - params.u_eff() / w),
        f_1b0a: params.j * t_k / w,
    }
}

/// Ground-state double occupancy `<n_up n_down>` (equals the empty-site
/// probability): `(1/2) sum_k w_k (1 - U_eff/omega_k)`.
pub fn fermi_depletion(params: &FermiParams, grid: &MomentumGrid) -> Result<f64> {
    params.ensure_gapped()?;
    Ok(ksum::sum_f64(grid.len(), |i| {
        grid.weight(i) * ground_modes_unchecked(params, grid.structure_factor(i)).f_1b1b
    }))
}

fn quench_integrand(params: &FermiParams, t_k: f64, kind: FermiCorrelatorKind, t: f64) -> Complex64 {
    let j = params.j;
    let ueff = params.u_eff();
    let w = charge_omega(params, t_k);
    let omc = if w == 0.0 {
        0.5 * t * t
    } else {
        let s = (0.5 * w * t).sin();
        2.0 * s * s / (w * w)
    };
    match kind {
        FermiCorrelatorKind::Symmetric11 => {
            Complex64::new(2.0 * j * j * t_k * t_k * omc, 0.0)
        }
        FermiCorrelatorKind::Mixed10 => {
            let sino = if w == 0.0 { t } else { (w * t).sin() / w };
            Complex64::new(j * t_k * ueff * omc, -j * t_k * sino)
        }
    }
}

/// Two-site correlation at time `t >= 0` after the sudden quench from the
/// Neel state. `Symmetric11` yields `f^{1B1B}(t)` (and `-f^{0A0A}(t)`);
/// `Mixed10` yields `f^{1B0A}(t)`, whose conjugate is `f^{0A1B}(t)`.
pub fn fermi_quench_correlator(
    params: &FermiParams,
    grid: &MomentumGrid,
    kind: FermiCorrelatorKind,
    d: &Separation,
    t: f64,
) -> Result<Complex64> {
    check_sublattice(kind, d)?;
    params.ensure_gapped()?;
    Ok(ksum::sum_c64(grid.len(), |i| {
        let phase = grid.phase(i, d);
        grid.weight(i)
            * quench_integrand(params, grid.structure_factor(i), kind, t)
            * Complex64::new(phase.cos(), phase.sin())
    }))
}

/// Infinite-time average of [`fermi_quench_correlator`]: oscillatory terms
/// dropped analytically.
pub fn fermi_quench_time_average(
    params: &FermiParams,
    grid: &MomentumGrid,
    kind: FermiCorrelatorKind,
    d: &Separation,
) -> Result<Complex64> {
    check_sublattice(kind, d)?;
    params.ensure_gapped()?;
    let j = params.j;
    let ueff = params.u_eff();
    Ok(ksum::sum_c64(grid.len(), |i| {
        let t_k = grid.structure_factor(i);
        let w = charge_omega(params, t_k);
        let amp = match kind {
            FermiCorrelatorKind::Symmetric11 => 2.0 * j * j * t_k * t_k / (w * w),
            FermiCorrelatorKind::Mixed10 => j * t_k * ueff / (w * w),
        };
        let phase = grid.phase(i, d);
        grid.weight(i) * amp * Complex64::new(phase.cos(), phase.sin())
    }))
}

/// Probability of a doubly occupied (equivalently empty) site at time `t`
/// after the quench: `sum_k w_k 2 J^2 T_k^2 (1 - cos omega_k t)/omega_k^2`.
pub fn fermi_double_occupancy(params: &FermiParams, grid: &MomentumGrid, t: f64) -> Result<f64> {
    params.ensure_gapped()?;
    Ok(ksum::sum_f64(grid.len(), |i| {
        grid.weight(i)
            * quench_integrand(
                params,
                grid.structure_factor(i),
                FermiCorrelatorKind::Symmetric11,
                t,
            )
            .re
    }))
}
