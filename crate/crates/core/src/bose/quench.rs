//! Closed-form observables after a sudden quench from the Mott state, their
//! quasi-equilibrium (infinite-time-average) values, and the thermal forms
//! they are compared against.

use num_complex::Complex64;

use super::{omega, BoseParams};
use crate::error::{Error, Result};
use crate::ksum;
use crate::lattice::{HypercubicLattice, MomentumGrid, Separation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuenchKind {
    /// `<h^dag h> = <p^dag p>`.
    HoleHole,
    /// `<h^dag p>`; the conjugate-separation partner gives `<p^dag h>`.
    HolePair,
    /// One-body correlator `<b^dag b>`.
    OneBody,
}

/// A correlator value plus a marker for analytic continuation through
/// unstable modes (post-critical quench: exponential growth, limited
/// validity of the expansion).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuenchValue {
    pub value: Complex64,
    pub has_unstable_modes: bool,
}

fn quench_integrand(params: &BoseParams, t_k: f64, kind: QuenchKind, t: f64) -> Complex64 {
    let j = params.j();
    let u = params.u();
    let w = omega(params, t_k);
    let omc = w.one_minus_cos_over_sq(t);
    match kind {
        QuenchKind::HoleHole => Complex64::new(4.0 * j * j * t_k * t_k * omc, 0.0),
        QuenchKind::HolePair => {
            let s = std::f64::consts::SQRT_2 * j * t_k;
            Complex64::new(s * (u - 3.0 * j * t_k) * omc, s * w.sin_over(t))
        }
        QuenchKind::OneBody => Complex64::new(4.0 * j * u * t_k * omc, 0.0),
    }
}

/// Two-site correlation at time `t >= 0` after the sudden quench
/// `J: 0 -> params.j()`. Total on all inputs; unstable momenta are
/// continued with cosh/sinh kernels and flagged.
pub fn quench_correlator(
    params: &BoseParams,
    grid: &MomentumGrid,
    kind: QuenchKind,
    d: &Separation,
    t: f64,
) -> QuenchValue {
    let value = ksum::sum_c64(grid.len(), |i| {
        let phase = grid.phase(i, d);
        grid.weight(i)
            * quench_integrand(params, grid.structure_factor(i), kind, t)
            * Complex64::new(phase.cos(), phase.sin())
    });
    QuenchValue {
        value,
        has_unstable_modes: params.any_unstable_mode(grid),
    }
}

/// Batched evaluation of [`quench_correlator`] over many times; one pass
/// over the grid.
pub fn quench_correlator_series(
    params: &BoseParams,
    grid: &MomentumGrid,
    kind: QuenchKind,
    d: &Separation,
    times: &[f64],
) -> Vec<QuenchValue> {
    let sums = ksum::sum_c64_batched(grid.len(), times.len(), |i, acc| {
        let phase = grid.phase(i, d);
        let factor = grid.weight(i) * Complex64::new(phase.cos(), phase.sin());
        let t_k = grid.structure_factor(i);
        for (slot, &t) in acc.iter_mut().zip(times) {
            *slot += factor * quench_integrand(params, t_k, kind, t);
        }
    });
    let unstable = params.any_unstable_mode(grid);
    sums.into_iter()
        .map(|value| QuenchValue {
            value,
            has_unstable_modes: unstable,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquilibriumKind {
    /// `<h^dag h> = <p^dag p>` at `d != 0`.
    HoleHole,
    /// `<h^dag p> = <p^dag h>` at `d != 0`.
    HolePair,
    /// On-site depletion (`d = 0`).
    OnSite,
    /// One-body correlator `<b^dag b>` at `d != 0`.
    OneBody,
}

/// Quasi-equilibrium value after the quench: the oscillatory terms of the
/// closed forms are dropped analytically. Stable regime only.
pub fn equilibrium_correlator(
    params: &BoseParams,
    grid: &MomentumGrid,
    kind: EquilibriumKind,
    d: &Separation,
) -> Result<f64> {
    match kind {
        EquilibriumKind::OnSite => {
            if !d.is_zero() {
                return Err(Error::InvalidParameter {
                    name: "d",
                    reason: format!("on-site equilibrium value requires d = 0, got {d}"),
                });
            }
        }
        _ => {
            if d.is_zero() {
                return Err(Error::OnSiteSeparation);
            }
        }
    }
    params.ensure_stable()?;
    let j = params.j();
    let u = params.u();
    let value = ksum::sum_c64(grid.len(), |i| {
        let t_k = grid.structure_factor(i);
        let wsq = omega(params, t_k).squared();
        let amp = match kind {
            EquilibriumKind::HoleHole | EquilibriumKind::OnSite => {
                4.0 * j * j * t_k * t_k / wsq
            }
            EquilibriumKind::HolePair => {
                std::f64::consts::SQRT_2 * j * t_k * (u - 3.0 * j * t_k) / wsq
            }
            EquilibriumKind::OneBody => 4.0 * j * u * t_k / wsq,
        };
        let phase = grid.phase(i, d);
        grid.weight(i) * amp * Complex64::new(phase.cos(), phase.sin())
    });
    Ok(value.re)
}

/// Effective inverse temperature matching the equilibrated on-site
/// depletion, `exp(-beta U / 2) = 2 <p^dag p>_equil`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveTemperature {
    pub beta: f64,
    pub temperature: f64,
}

pub fn effective_temperature(
    params: &BoseParams,
    grid: &MomentumGrid,
) -> Result<EffectiveTemperature> {
    let depletion = equilibrium_correlator(
        params,
        grid,
        EquilibriumKind::OnSite,
        &Separation::zero(grid.dimension()),
    )?;
    if depletion <= 0.0 || depletion >= 0.5 {
        return Err(Error::DepletionOutOfRange(depletion));
    }
    let beta = -2.0 / params.u() * (2.0 * depletion).ln();
    Ok(EffectiveTemperature {
        beta,
        temperature: 1.0 / beta,
    })
}

/// One-site occupation probabilities of the matching thermal state with
/// chemical potential `U/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnSiteProbabilities {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
}

pub fn thermal_onsite(beta: f64, u: f64) -> OnSiteProbabilities {
    assert!(beta > 0.0, "thermal_onsite requires beta > 0");
    let x = (-beta * u / 2.0).exp();
    OnSiteProbabilities {
        p0: x / 2.0,
        p1: 1.0 - x,
        p2: x / 2.0,
    }
}

/// First-order thermal pair correlator `<h^dag p> = sqrt(2) J T(d) / (Z U)`:
/// nonzero only between tunneling neighbors. The hh/pp thermal correlators
/// vanish at this order.
pub fn thermal_pair_first_order(
    params: &BoseParams,
    lattice: &HypercubicLattice,
    d: &Separation,
) -> f64 {
    let t = lattice.adjacency_weight(d);
    std::f64::consts::SQRT_2 * params.j() * t
        / (lattice.coordination_number() as f64 * params.u())
}
