//! RK4 integration of the fermionic charge-mode equations under a hopping
//! protocol, with the source-free soft (spin-sector) amplitudes carried
//! along as a consistency diagnostic: starting from zero they must stay
//! zero.

use num_complex::Complex64;

use super::{check_sublattice, FermiCorrelatorKind};
use crate::bose::QuenchProtocol;
use crate::error::Result;
use crate::ksum;
use crate::lattice::{MomentumGrid, Separation};

/// Charge-sector amplitudes over a momentum grid at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct FermiModeState {
    pub time: f64,
    pub f_0a0a: Vec<Complex64>,
    pub f_0a1b: Vec<Complex64>,
    pub f_1b0a: Vec<Complex64>,
    pub f_1b1b: Vec<Complex64>,
}

impl FermiModeState {
    /// Uncorrelated Neel state: all amplitudes zero.
    pub fn neel(n_modes: usize) -> Self {
        Self {
            time: 0.0,
            f_0a0a: vec![Complex64::ZERO; n_modes],
            f_0a1b: vec![Complex64::ZERO; n_modes],
            f_1b0a: vec![Complex64::ZERO; n_modes],
            f_1b1b: vec![Complex64::ZERO; n_modes],
        }
    }

    pub fn n_modes(&self) -> usize {
        self.f_0a0a.len()
    }

    /// Conserved bilinear `(f11 - 1) f11 + f01 f10` of mode `i`.
    pub fn invariant(&self, i: usize) -> Complex64 {
        (self.f_1b1b[i] - 1.0) * self.f_1b1b[i] + self.f_0a1b[i] * self.f_1b0a[i]
    }

    pub fn correlator(
        &self,
        grid: &MomentumGrid,
        kind: FermiCorrelatorKind,
        d: &Separation,
    ) -> Result<Complex64> {
        check_sublattice(kind, d)?;
        Ok(ksum::sum_c64(grid.len(), |i| {
            let amp = match kind {
                FermiCorrelatorKind::Symmetric11 => self.f_1b1b[i],
                FermiCorrelatorKind::Mixed10 => self.f_1b0a[i],
            };
            let phase = grid.phase(i, d);
            grid.weight(i) * amp * Complex64::new(phase.cos(), phase.sin())
        }))
    }

    pub fn double_occupancy(&self, grid: &MomentumGrid) -> f64 {
        ksum::sum_c64(grid.len(), |i| grid.weight(i) * self.f_1b1b[i]).re
    }

    /// Largest violation of the antisymmetry `f^{0A0A} = -f^{1B1B}`.
    pub fn max_antisymmetry_violation(&self) -> f64 {
        self.f_0a0a
            .iter()
            .zip(&self.f_1b1b)
            .map(|(a, b)| (a + b).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone)]
pub struct FermiTrajectory {
    pub states: Vec<FermiModeState>,
    /// Max over modes and samples of the bilinear drift.
    pub max_invariant_drift: f64,
    pub invariant_warning: bool,
    /// Largest soft-sector amplitude encountered; must stay at numerical
    /// zero for source-free initial data.
    pub max_soft_amplitude: f64,
}

impl FermiTrajectory {
    pub fn times(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.time).collect()
    }

    pub fn last(&self) -> &FermiModeState {
        self.states.last().expect("trajectory has at least t = 0")
    }
}

/// Per-mode integration variables: four charge amplitudes plus the four
/// source-free soft pairs (eight amplitudes).
#[derive(Clone, Copy)]
struct Mode {
    charge: [Complex64; 4], // f_0a0a, f_0a1b, f_1b0a, f_1b1b
    soft: [Complex64; 8],
}

impl Mode {
    fn zero() -> Self {
        Self {
            charge: [Complex64::ZERO; 4],
            soft: [Complex64::ZERO; 8],
        }
    }
}

/// Charge equations in momentum space (U_eff = U - a):
///   i d f00 = J T (f10 - f01)
///   i d f01 = J T (f11 - f00) + U_eff f01 - J T
///   i d f10 = J T (f00 - f11) - U_eff f10 + J T
///   i d f11 = J T (f01 - f10)
/// Soft pairs couple as i d x = +/- J T y, i d y = +/- J T x -/+ U y with no
/// source (coefficients at zero staggered field).
#[inline]
fn derivative(m: &Mode, u: f64, staggered: f64, j: f64, t_k: f64) -> Mode {
    let mi = Complex64::new(0.0, -1.0);
    let jt = j * t_k;
    let ueff = u - staggered;
    let [f00, f01, f10, f11] = m.charge;
    let charge = [
        mi * (jt * (f10 - f01)),
        mi * (jt * (f11 - f00) + ueff * f01 - jt),
        mi * (jt * (f00 - f11) - ueff * f10 + jt),
        mi * (jt * (f01 - f10)),
    ];
    let s = &m.soft;
    let soft = [
        mi * (jt * s[1]),
        mi * (jt * s[0] - u * s[1]),
        mi * (-jt * s[3]),
        mi * (-jt * s[2] + u * s[3]),
        mi * (jt * s[5]),
        mi * (jt * s[4] + u * s[5]),
        mi * (-jt * s[7]),
        mi * (-jt * s[6] - u * s[7]),
    ];
    Mode { charge, soft }
}

#[inline]
fn axpy(m: &Mode, k: &Mode, h: f64) -> Mode {
    let mut out = *m;
    for i in 0..4 {
        out.charge[i] += h * k.charge[i];
    }
    for i in 0..8 {
        out.soft[i] += h * k.soft[i];
    }
    out
}

#[inline]
fn rk4_step(m: &mut Mode, u: f64, staggered: f64, t_k: f64, dt: f64, j0: f64, j_half: f64, j1: f64) {
    let k1 = derivative(m, u, staggered, j0, t_k);
    let k2 = derivative(&axpy(m, &k1, 0.5 * dt), u, staggered, j_half, t_k);
    let k3 = derivative(&axpy(m, &k2, 0.5 * dt), u, staggered, j_half, t_k);
    let k4 = derivative(&axpy(m, &k3, dt), u, staggered, j1, t_k);
    let c = dt / 6.0;
    for i in 0..4 {
        m.charge[i] += c * (k1.charge[i] + 2.0 * k2.charge[i] + 2.0 * k3.charge[i] + k4.charge[i]);
    }
    for i in 0..8 {
        m.soft[i] += c * (k1.soft[i] + 2.0 * k2.soft[i] + 2.0 * k3.soft[i] + k4.soft[i]);
    }
}

/// Integrate from the Neel state (all amplitudes zero) at `t = 0`.
pub fn integrate_charge_modes(
    protocol: &QuenchProtocol,
    u: f64,
    staggered: f64,
    grid: &MomentumGrid,
    t_end: f64,
    dt: f64,
    sample_every: usize,
) -> FermiTrajectory {
    integrate_charge_modes_from(
        FermiModeState::neel(grid.len()),
        protocol,
        u,
        staggered,
        grid,
        t_end,
        dt,
        sample_every,
    )
}

/// Integrate from a caller-supplied charge state (soft amplitudes start at
/// zero); `initial.time` is the start time.
#[allow(clippy::too_many_arguments)]
pub fn integrate_charge_modes_from(
    initial: FermiModeState,
    protocol: &QuenchProtocol,
    u: f64,
    staggered: f64,
    grid: &MomentumGrid,
    t_end: f64,
    dt: f64,
    sample_every: usize,
) -> FermiTrajectory {
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
        samples: Vec<[Complex64; 4]>,
        max_drift: f64,
        max_soft: f64,
    }

    let chunk_ranges = ksum::ranges(n_modes, 256);
    let chunk_results: Vec<ChunkOutput> = ksum::map_chunks(chunk_ranges.len(), |c| {
        let range = chunk_ranges[c].clone();
        let len = range.len();
        let mut modes: Vec<Mode> = range
            .clone()
            .map(|i| {
                let mut m = Mode::zero();
                m.charge = [
                    initial.f_0a0a[i],
                    initial.f_0a1b[i],
                    initial.f_1b0a[i],
                    initial.f_1b1b[i],
                ];
                m
            })
            .collect();
        let t_ks: Vec<f64> = range.clone().map(|i| grid.structure_factor(i)).collect();
        let c0: Vec<Complex64> = modes
            .iter()
            .map(|m| (m.charge[3] - 1.0) * m.charge[3] + m.charge[1] * m.charge[2])
            .collect();

        let mut samples = Vec::with_capacity(n_samples * len);
        let mut max_drift = 0.0f64;
        let mut max_soft = 0.0f64;
        let mut next_sample = 0;
        for step in 0..=n_steps {
            if next_sample < n_samples && sample_steps[next_sample] == step {
                for (m, c) in modes.iter().zip(&c0) {
                    samples.push(m.charge);
                    let inv = (m.charge[3] - 1.0) * m.charge[3] + m.charge[1] * m.charge[2];
                    max_drift = max_drift.max((inv - c).norm());
                    for s in &m.soft {
                        max_soft = max_soft.max(s.norm());
                    }
                }
                next_sample += 1;
            }
            if step < n_steps {
                let (j0, j_half, j1) = j_table[step];
                for (m, &t_k) in modes.iter_mut().zip(&t_ks) {
                    rk4_step(m, u, staggered, t_k, dt, j0, j_half, j1);
                }
            }
        }
        ChunkOutput {
            range,
            samples,
            max_drift,
            max_soft,
        }
    });

    let mut states: Vec<FermiModeState> = sample_steps
        .iter()
        .map(|&step| {
            let mut s = FermiModeState::neel(n_modes);
            s.time = t0 + step as f64 * dt;
            s
        })
        .collect();
    let mut max_drift = 0.0f64;
    let mut max_soft = 0.0f64;
    for out in chunk_results {
        max_drift = max_drift.max(out.max_drift);
        max_soft = max_soft.max(out.max_soft);
        let len = out.range.len();
        for (s, state) in states.iter_mut().enumerate() {
            let block = &out.samples[s * len..(s + 1) * len];
            for (offset, charge) in block.iter().enumerate() {
                let i = out.range.start + offset;
                state.f_0a0a[i] = charge[0];
                state.f_0a1b[i] = charge[1];
                state.f_1b0a[i] = charge[2];
                state.f_1b1b[i] = charge[3];
            }
        }
    }

    let elapsed = (t_end - t0).max(1.0);
    FermiTrajectory {
        states,
        max_invariant_drift: max_drift,
        invariant_warning: max_drift > 1e-8 * elapsed,
        max_soft_amplitude: max_soft,
    }
}
