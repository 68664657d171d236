//! Fixed-step RK4 integration of the bosonic mode equations for arbitrary
//! hopping protocols `J(t)`. The equations are diagonal in momentum, so
//! modes are integrated independently (in parallel chunks) and sampled on a
//! common time grid.

use num_complex::Complex64;

use super::quench::QuenchKind;
use crate::ksum;
use crate::lattice::{MomentumGrid, Separation};

/// Time-dependent hopping `J(t)`. Ramps interpolate over `[0, duration]`
/// and are constant outside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuenchProtocol {
    Sudden { j_initial: f64, j_final: f64 },
    LinearRamp { j_initial: f64, j_final: f64, duration: f64 },
    TanhRamp { j_initial: f64, j_final: f64, duration: f64 },
}

/// Steepness of the tanh ramp profile; the profile is rescaled to hit the
/// endpoints exactly, so the slope discontinuity at the edges is
/// `O(sech^2(steepness))`.
const TANH_STEEPNESS: f64 = 3.0;

impl QuenchProtocol {
    pub fn hopping_at(&self, t: f64) -> f64 {
        match *self {
            QuenchProtocol::Sudden { j_initial, j_final } => {
                if t < 0.0 {
                    j_initial
                } else {
                    j_final
                }
            }
            QuenchProtocol::LinearRamp {
                j_initial,
                j_final,
                duration,
            } => {
                if t <= 0.0 || duration <= 0.0 {
                    if t < 0.0 {
                        j_initial
                    } else if duration <= 0.0 {
                        j_final
                    } else {
                        j_initial
                    }
                } else if t >= duration {
                    j_final
                } else {
                    j_initial + (j_final - j_initial) * t / duration
                }
            }
            QuenchProtocol::TanhRamp {
                j_initial,
                j_final,
                duration,
            } => {
                if t <= 0.0 || duration <= 0.0 {
                    if t < 0.0 {
                        j_initial
                    } else if duration <= 0.0 {
                        j_final
                    } else {
                        j_initial
                    }
                } else if t >= duration {
                    j_final
                } else {
                    let s = TANH_STEEPNESS;
                    let x = (s * (2.0 * t / duration - 1.0)).tanh();
                    let lo = (-s).tanh();
                    let hi = s.tanh();
                    j_initial + (j_final - j_initial) * (x - lo) / (hi - lo)
                }
            }
        }
    }

    pub fn j_final(&self) -> f64 {
        match *self {
            QuenchProtocol::Sudden { j_final, .. }
            | QuenchProtocol::LinearRamp { j_final, .. }
            | QuenchProtocol::TanhRamp { j_final, .. } => j_final,
        }
    }
}

/// Mode amplitudes over a momentum grid at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct BoseModeState {
    pub time: f64,
    pub f11: Vec<Complex64>,
    pub f12: Vec<Complex64>,
    pub f21: Vec<Complex64>,
    pub f22: Vec<Complex64>,
}

impl BoseModeState {
    /// Uncorrelated Mott state: all amplitudes zero.
    pub fn mott(n_modes: usize) -> Self {
        Self {
            time: 0.0,
            f11: vec![Complex64::ZERO; n_modes],
            f12: vec![Complex64::ZERO; n_modes],
            f21: vec![Complex64::ZERO; n_modes],
            f22: vec![Complex64::ZERO; n_modes],
        }
    }

    pub fn n_modes(&self) -> usize {
        self.f11.len()
    }

    /// Conserved bilinear `C_k = f11 (f11 + 1) - f12 f21` of mode `i`.
    pub fn invariant(&self, i: usize) -> Complex64 {
        self.f11[i] * (self.f11[i] + 1.0) - self.f12[i] * self.f21[i]
    }

    /// On-site depletion `sum_k w_k f11`.
    pub fn depletion(&self, grid: &MomentumGrid) -> f64 {
        ksum::sum_c64(grid.len(), |i| grid.weight(i) * self.f11[i]).re
    }

    /// Real-space correlator of the given kind at separation `d`.
    pub fn correlator(&self, grid: &MomentumGrid, kind: QuenchKind, d: &Separation) -> Complex64 {
        ksum::sum_c64(grid.len(), |i| {
            let amp = match kind {
                QuenchKind::HoleHole => self.f11[i],
                QuenchKind::HolePair => self.f12[i],
                QuenchKind::OneBody => {
                    self.f11[i]
                        + 2.0 * self.f22[i]
                        + std::f64::consts::SQRT_2 * (self.f12[i] + self.f21[i])
                }
            };
            let phase = grid.phase(i, d);
            grid.weight(i) * amp * Complex64::new(phase.cos(), phase.sin())
        })
    }

    /// Largest particle-hole symmetry violation `max_k |f11 - f22|`.
    pub fn max_symmetry_violation(&self) -> f64 {
        self.f11
            .iter()
            .zip(&self.f22)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Sampled trajectory plus invariant-drift diagnostics.
#[derive(Debug, Clone)]
pub struct BoseTrajectory {
    pub states: Vec<BoseModeState>,
    /// Max over modes and samples of `|C_k(t) - C_k(0)|`.
    pub max_invariant_drift: f64,
    /// Set when the drift exceeds `1e-8` per unit time; a diagnostic, not a
    /// failure.
    pub invariant_warning: bool,
}

impl BoseTrajectory {
    pub fn times(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.time).collect()
    }

    pub fn last(&self) -> &BoseModeState {
        self.states.last().expect("trajectory has at least t = 0")
    }
}

#[derive(Clone, Copy)]
struct Mode {
    f11: Complex64,
    f12: Complex64,
    f21: Complex64,
    f22: Complex64,
}

#[derive(Clone, Copy)]
struct Deriv {
    f11: Complex64,
    f12: Complex64,
    f21: Complex64,
    f22: Complex64,
}

#[inline]
fn derivative(m: &Mode, u: f64, j: f64, t_k: f64) -> Deriv {
    let s = std::f64::consts::SQRT_2 * j * t_k;
    let w = u - 3.0 * j * t_k;
    let source = m.f11 + m.f22 + 1.0;
    // i df12/dt = w f12 - s source ; i df21/dt = -w f21 + s source
    // i df11/dt = s (f12 - f21) = i df22/dt
    let mi = Complex64::new(0.0, -1.0);
    let d12 = mi * (w * m.f12 - s * source);
    let d21 = mi * (-w * m.f21 + s * source);
    let d11 = mi * (s * (m.f12 - m.f21));
    Deriv {
        f11: d11,
        f12: d12,
        f21: d21,
        f22: d11,
    }
}

#[inline]
fn rk4_step(m: &mut Mode, u: f64, t_k: f64, dt: f64, j0: f64, j_half: f64, j1: f64) {
    let k1 = derivative(m, u, j0, t_k);
    let m2 = Mode {
        f11: m.f11 + 0.5 * dt * k1.f11,
        f12: m.f12 + 0.5 * dt * k1.f12,
        f21: m.f21 + 0.5 * dt * k1.f21,
        f22: m.f22 + 0.5 * dt * k1.f22,
    };
    let k2 = derivative(&m2, u, j_half, t_k);
    let m3 = Mode {
        f11: m.f11 + 0.5 * dt * k2.f11,
        f12: m.f12 + 0.5 * dt * k2.f12,
        f21: m.f21 + 0.5 * dt * k2.f21,
        f22: m.f22 + 0.5 * dt * k2.f22,
    };
    let k3 = derivative(&m3, u, j_half, t_k);
    let m4 = Mode {
        f11: m.f11 + dt * k3.f11,
        f12: m.f12 + dt * k3.f12,
        f21: m.f21 + dt * k3.f21,
        f22: m.f22 + dt * k3.f22,
    };
    let k4 = derivative(&m4, u, j1, t_k);
    let c = dt / 6.0;
    m.f11 += c * (k1.f11 + 2.0 * k2.f11 + 2.0 * k3.f11 + k4.f11);
    m.f12 += c * (k1.f12 + 2.0 * k2.f12 + 2.0 * k3.f12 + k4.f12);
    m.f21 += c * (k1.f21 + 2.0 * k2.f21 + 2.0 * k3.f21 + k4.f21);
    m.f22 += c * (k1.f22 + 2.0 * k2.f22 + 2.0 * k3.f22 + k4.f22);
}

/// Integrate from the Mott state (all amplitudes zero) at `t = 0`.
///
/// Samples are recorded every `sample_every` steps (and at the final step).
pub fn integrate_modes(
    protocol: &QuenchProtocol,
    u: f64,
    grid: &MomentumGrid,
    t_end: f64,
    dt: f64,
    sample_every: usize,
) -> BoseTrajectory {
    integrate_modes_from(
        BoseModeState::mott(grid.len()),
        protocol,
        u,
        grid,
        t_end,
        dt,
        sample_every,
    )
}

/// Integrate from a caller-supplied state; `initial.time` is the start time.
pub fn integrate_modes_from(
    initial: BoseModeState,
    protocol: &QuenchProtocol,
    u: f64,
    grid: &MomentumGrid,
    t_end: f64,
    dt: f64,
    sample_every: usize,
) -> BoseTrajectory {
    assert!(dt > 0.0, "integration step must be positive");
    assert!(sample_every > 0, "sample_every must be positive");
    assert_eq!(initial.n_modes(), grid.len(), "state/grid size mismatch");

    let t0 = initial.time;
    let n_steps = (((t_end - t0) / dt).round() as usize).max(0);
    let mut sample_steps: Vec<usize> = (0..=n_steps).step_by(sample_every).collect();
    if *sample_steps.last().unwrap() != n_steps {
        sample_steps.push(n_steps);
    }
    let n_samples = sample_steps.len();
    let n_modes = grid.len();

    // Hopping values at RK4 stage times, shared by all modes.
    let j_table: Vec<(f64, f64, f64)> = (0..n_steps)
        .map(|step| {
            let t = t0 + step as f64 * dt;
            (
                protocol.hopping_at(t),
                protocol.hopping_at(t + 0.5 * dt),
                protocol.hopping_at(t + dt),
            )
        })
        .collect();

    struct ChunkOutput {
        range: std::ops::Range<usize>,
        samples: Vec<Mode>, // n_samples x chunk_len, sample-major
        max_drift: f64,
    }

    let chunk_ranges = ksum::ranges(n_modes, 256);
    let chunk_results: Vec<ChunkOutput> = ksum::map_chunks(chunk_ranges.len(), |c| {
        let range = chunk_ranges[c].clone();
        let len = range.len();
        let mut modes: Vec<Mode> = range
            .clone()
            .map(|i| Mode {
                f11: initial.f11[i],
                f12: initial.f12[i],
                f21: initial.f21[i],
                f22: initial.f22[i],
            })
            .collect();
        let t_ks: Vec<f64> = range.clone().map(|i| grid.structure_factor(i)).collect();
        let c0: Vec<Complex64> = modes
            .iter()
            .map(|m| m.f11 * (m.f11 + 1.0) - m.f12 * m.f21)
            .collect();

        let mut samples = Vec::with_capacity(n_samples * len);
        let mut max_drift = 0.0f64;
        let mut next_sample = 0;
        for step in 0..=n_steps {
            if next_sample < n_samples && sample_steps[next_sample] == step {
                samples.extend_from_slice(&modes);
                for (m, c) in modes.iter().zip(&c0) {
                    let drift = (m.f11 * (m.f11 + 1.0) - m.f12 * m.f21 - c).norm();
                    max_drift = max_drift.max(drift);
                }
                next_sample += 1;
            }
            if step < n_steps {
                let (j0, j_half, j1) = j_table[step];
                for (m, &t_k) in modes.iter_mut().zip(&t_ks) {
                    rk4_step(m, u, t_k, dt, j0, j_half, j1);
                }
            }
        }
        ChunkOutput {
            range,
            samples,
            max_drift,
        }
    });

    let mut states: Vec<BoseModeState> = sample_steps
        .iter()
        .map(|&step| {
            let mut s = BoseModeState::mott(n_modes);
            s.time = t0 + step as f64 * dt;
            s
        })
        .collect();
    let mut max_drift = 0.0f64;
    for out in chunk_results {
        max_drift = max_drift.max(out.max_drift);
        let len = out.range.len();
        for (s, state) in states.iter_mut().enumerate() {
            let block = &out.samples[s * len..(s + 1) * len];
            for (offset, m) in block.iter().enumerate() {
                let i = out.range.start + offset;
                state.f11[i] = m.f11;
                state.f12[i] = m.f12;
                state.f21[i] = m.f21;
                state.f22[i] = m.f22;
            }
        }
    }

    let elapsed = (t_end - t0).max(1.0);
    BoseTrajectory {
        states,
        max_invariant_drift: max_drift,
        invariant_warning: max_drift > 1e-8 * elapsed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bose::{ground_modes, quench_correlator, BoseParams, QuenchKind};
    use crate::lattice::MomentumGrid;
    use approx::assert_abs_diff_eq;

    #[test]
    fn protocols_interpolate_with_fixed_endpoints() {
        let sudden = QuenchProtocol::Sudden {
            j_initial: 0.0,
            j_final: 0.2,
        };
        assert_eq!(sudden.hopping_at(-1.0), 0.0);
        assert_eq!(sudden.hopping_at(0.0), 0.2);

        let linear = QuenchProtocol::LinearRamp {
            j_initial: 0.0,
            j_final: 0.2,
            duration: 10.0,
        };
        assert_eq!(linear.hopping_at(-0.5), 0.0);
        assert_abs_diff_eq!(linear.hopping_at(5.0), 0.1, epsilon = 1e-15);
        assert_eq!(linear.hopping_at(10.0), 0.2);
        assert_eq!(linear.hopping_at(11.0), 0.2);

        let tanh = QuenchProtocol::TanhRamp {
            j_initial: 0.05,
            j_final: 0.1,
            duration: 20.0,
        };
        assert_abs_diff_eq!(tanh.hopping_at(0.0), 0.05, epsilon = 1e-15);
        assert_abs_diff_eq!(tanh.hopping_at(20.0), 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(tanh.hopping_at(10.0), 0.075, epsilon = 1e-12);
        // monotone
        let mut last = 0.05;
        for i in 1..=40 {
            let v = tanh.hopping_at(0.5 * i as f64);
            assert!(v >= last);
            last = v;
        }
    }

    #[test]
    fn zero_hopping_stays_zero() {
        let grid = MomentumGrid::thermodynamic(1, 8).unwrap();
        let protocol = QuenchProtocol::Sudden {
            j_initial: 0.0,
            j_final: 0.0,
        };
        let traj = integrate_modes(&protocol, 1.0, &grid, 5.0, 1e-2, 100);
        for state in &traj.states {
            for i in 0..grid.len() {
                assert_eq!(state.f11[i], Complex64::ZERO);
                assert_eq!(state.f12[i], Complex64::ZERO);
            }
        }
        assert_eq!(traj.max_invariant_drift, 0.0);
        assert!(!traj.invariant_warning);
    }

    #[test]
    fn sudden_quench_matches_closed_forms() {
        let grid = MomentumGrid::thermodynamic(3, 6).unwrap();
        let p = BoseParams::new(0.14, 1.0).unwrap();
        let protocol = QuenchProtocol::Sudden {
            j_initial: 0.0,
            j_final: 0.14,
        };
        let traj = integrate_modes(&protocol, 1.0, &grid, 10.0, 1e-3, 2000);
        let d = crate::lattice::Separation::new(vec![1, 0, 0]);
        for state in &traj.states {
            let from_ode = state.correlator(&grid, QuenchKind::HolePair, &d);
            let closed = quench_correlator(&p, &grid, QuenchKind::HolePair, &d, state.time).value;
            assert!(
                (from_ode - closed).norm() < 1e-6,
                "t = {}: {} vs {}",
                state.time,
                from_ode,
                closed
            );
            let depl_ode = state.depletion(&grid);
            let depl_closed =
                quench_correlator(&p, &grid, QuenchKind::HoleHole, &crate::lattice::Separation::zero(3), state.time)
                    .value
                    .re;
            assert!((depl_ode - depl_closed).abs() < 1e-6);
        }
        assert!(traj.max_invariant_drift < 1e-8);
    }

    #[test]
    fn particle_hole_symmetry_along_trajectory() {
        let grid = MomentumGrid::thermodynamic(2, 6).unwrap();
        let protocol = QuenchProtocol::LinearRamp {
            j_initial: 0.0,
            j_final: 0.12,
            duration: 3.0,
        };
        let traj = integrate_modes(&protocol, 1.0, &grid, 8.0, 1e-3, 1000);
        for state in &traj.states {
            assert!(state.max_symmetry_violation() < 1e-12);
        }
    }

    #[test]
    fn adiabatic_tanh_ramp_reaches_ground_modes() {
        let grid = MomentumGrid::thermodynamic(1, 8).unwrap();
        let protocol = QuenchProtocol::TanhRamp {
            j_initial: 0.0,
            j_final: 0.1,
            duration: 200.0,
        };
        let traj = integrate_modes(&protocol, 1.0, &grid, 200.0, 1e-3, 200_000);
        let p = BoseParams::new(0.1, 1.0).unwrap();
        let state = traj.last();
        for i in 0..grid.len() {
            let target = ground_modes(&p, grid.structure_factor(i)).unwrap();
            assert!(
                (state.f11[i] - target.f11).norm() < 1e-3,
                "mode {i}: f11 {} vs {}",
                state.f11[i],
                target.f11
            );
            assert!((state.f12[i] - target.f12).norm() < 1e-3);
        }
    }
}
