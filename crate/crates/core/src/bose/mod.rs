//! First- and second-order mode dynamics of the Bose-Hubbard model at unit
//! filling in the large-coordination-number expansion.
//!
//! The dynamical variables are the doublon/holon correlation amplitudes
//! `f11 = <h^dag h>`, `f12 = <h^dag p>`, `f21 = <p^dag h>`, `f22 = <p^dag p>`
//! per momentum. Their evolution is diagonal in `k`, driven by the hopping
//! `J(t)` through the structure factor `T_k`, with eigenfrequency
//! `omega_k = sqrt(U^2 - 6 J U T_k + J^2 T_k^2)`.

mod ground;
mod integrate;
mod quench;
pub mod second_order;

pub use ground::{
    ground_correlator, ground_depletion, ground_energy_per_site, ground_modes,
    GroundCorrelatorKind, GroundModes,
};
pub use integrate::{
    integrate_modes, integrate_modes_from, BoseModeState, BoseTrajectory, QuenchProtocol,
};
pub use quench::{
    quench_correlator_series,
    effective_temperature, equilibrium_correlator, quench_correlator, thermal_onsite,
    thermal_pair_first_order, EffectiveTemperature, EquilibriumKind, OnSiteProbabilities,
    QuenchKind, QuenchValue,
};

use crate::error::{Error, Result};
use crate::lattice::MomentumGrid;

/// Hopping and interaction of the Bose-Hubbard model; the filling is fixed
/// at one particle per site.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoseParams {
    j: f64,
    u: f64,
}

impl BoseParams {
    pub fn new(j: f64, u: f64) -> Result<Self> {
        if !(u > 0.0) {
            return Err(Error::InvalidParameter {
                name: "u",
                reason: format!("on-site interaction must be positive, got {u}"),
            });
        }
        if !(j >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "j",
                reason: format!("hopping must be nonnegative, got {j}"),
            });
        }
        Ok(Self { j, u })
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    /// Radicand of the dispersion, `U^2 - 6 J U T_k + J^2 T_k^2`, evaluated
    /// in the factored form `(J T_k - (3 - sqrt 8) U)(J T_k - (3 + sqrt 8) U)`
    /// so it vanishes exactly at the critical hopping.
    pub(crate) fn radicand(&self, t_k: f64) -> f64 {
        let jt = self.j * t_k;
        if jt == 0.0 {
            return self.u * self.u;
        }
        let root8 = 8.0_f64.sqrt();
        (jt - (3.0 - root8) * self.u) * (jt - (3.0 + root8) * self.u)
    }

    /// Stable-regime guard: the `1/omega^2` weights in the stationary sums
    /// are non-integrable once the gap closes, so anything at or within
    /// `1e-9 U` of the critical hopping is rejected.
    pub(crate) fn ensure_stable(&self) -> Result<()> {
        let j_c = critical_hopping(self.u);
        if self.j >= j_c - 1e-9 * self.u {
            return Err(Error::UnstableRegime {
                j: self.j,
                j_critical: j_c,
            });
        }
        Ok(())
    }

    pub(crate) fn any_unstable_mode(&self, grid: &MomentumGrid) -> bool {
        (0..grid.len()).any(|i| self.radicand(grid.structure_factor(i)) < 0.0)
    }
}

/// Hopping at which the gap at `k = 0` closes: `J_c = (3 - sqrt(8)) U`.
pub fn critical_hopping(u: f64) -> f64 {
    (3.0 - 8.0_f64.sqrt()) * u
}

/// Mode eigenfrequency, which turns imaginary in the unstable regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModeFrequency {
    Real(f64),
    /// Magnitude of the imaginary frequency; the mode grows exponentially.
    Imaginary(f64),
}

impl ModeFrequency {
    pub(crate) fn from_radicand(sq: f64) -> Self {
        if sq >= 0.0 {
            ModeFrequency::Real(sq.sqrt())
        } else {
            ModeFrequency::Imaginary((-sq).sqrt())
        }
    }

    pub fn is_unstable(&self) -> bool {
        matches!(self, ModeFrequency::Imaginary(_))
    }

    /// |omega|, regardless of stability.
    pub fn magnitude(&self) -> f64 {
        match self {
            ModeFrequency::Real(w) | ModeFrequency::Imaginary(w) => *w,
        }
    }

    /// Signed square: negative in the unstable regime.
    pub fn squared(&self) -> f64 {
        match self {
            ModeFrequency::Real(w) => w * w,
            ModeFrequency::Imaginary(w) => -w * w,
        }
    }

    /// `(1 - cos(omega t)) / omega^2`, analytically continued to
    /// `(cosh(|omega| t) - 1) / |omega|^2` for unstable modes; the limit
    /// `t^2 / 2` is used at the gap closure.
    pub(crate) fn one_minus_cos_over_sq(&self, t: f64) -> f64 {
        match self {
            ModeFrequency::Real(w) => {
                if *w == 0.0 {
                    0.5 * t * t
                } else {
                    let s = (0.5 * w * t).sin();
                    2.0 * s * s / (w * w)
                }
            }
            ModeFrequency::Imaginary(w) => {
                if *w == 0.0 {
                    0.5 * t * t
                } else {
                    let s = (0.5 * w * t).sinh();
                    2.0 * s * s / (w * w)
                }
            }
        }
    }

    /// `sin(omega t) / omega`, continued to `sinh(|omega| t) / |omega|`.
    pub(crate) fn sin_over(&self, t: f64) -> f64 {
        match self {
            ModeFrequency::Real(w) => {
                if *w == 0.0 {
                    t
                } else {
                    (w * t).sin() / w
                }
            }
            ModeFrequency::Imaginary(w) => {
                if *w == 0.0 {
                    t
                } else {
                    (w * t).sinh() / w
                }
            }
        }
    }
}

/// `omega_k` for the given structure factor; imaginary magnitude with an
/// instability marker when the radicand is negative.
pub fn omega(params: &BoseParams, t_k: f64) -> ModeFrequency {
    ModeFrequency::from_radicand(params.radicand(t_k))
}

/// Per-momentum stability flags plus the qualitative shape of the
/// dispersion at the zone center.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    /// `true` where `omega_k` is real.
    pub mode_stable: Vec<bool>,
    /// The gap at `k = 0` has closed (`omega_{k=0}^2 <= 0`).
    pub gap_closed: bool,
    /// `k = 0` is a local maximum of `omega_k^2` (sets in at `J = 3U`).
    pub k0_is_local_max: bool,
    /// `omega_{k=0}^2` has turned positive again (`J > (3 + sqrt(8)) U`).
    pub k0_positive_again: bool,
}

impl StabilityReport {
    pub fn all_stable(&self) -> bool {
        self.mode_stable.iter().all(|&s| s)
    }

    pub fn unstable_count(&self) -> usize {
        self.mode_stable.iter().filter(|&&s| !s).count()
    }
}

pub fn classify_stability(params: &BoseParams, grid: &MomentumGrid) -> StabilityReport {
    let mode_stable = (0..grid.len())
        .map(|i| params.radicand(grid.structure_factor(i)) >= 0.0)
        .collect();
    let u = params.u();
    let j = params.j();
    StabilityReport {
        mode_stable,
        gap_closed: params.radicand(1.0) <= 0.0,
        k0_is_local_max: j > 3.0 * u,
        k0_positive_again: j > (3.0 + 8.0_f64.sqrt()) * u,
    }
}
