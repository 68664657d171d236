//! Second-order observables: depletion-renormalized dispersion,
//! particle-number and parity correlators (double momentum sums), and the
//! light-cone group velocities of correlation spreading.

use num_complex::Complex64;

use super::integrate::BoseModeState;
use super::{omega, BoseParams, ModeFrequency};
use crate::error::{Error, Result};
use crate::ksum;
use crate::lattice::{MomentumGrid, Separation};

/// Eigenfrequency with the hopping renormalized by the on-site depletion
/// `f0`: `J -> J (1 - 3 f0)` inside the dispersion.
pub fn renormalized_omega(params: &BoseParams, f0: f64, t_k: f64) -> Result<ModeFrequency> {
    let reduced = renormalized_params(params, f0)?;
    Ok(omega(&reduced, t_k))
}

/// Variant with the cross term left linear in the interaction
/// (`U^2 - 6 J T (1 - 3 f0) + J^2 T^2 (1 - 3 f0)^2`). Dimensionally odd;
/// kept only so the two conventions can be compared numerically.
pub fn renormalized_omega_linear_middle(
    params: &BoseParams,
    f0: f64,
    t_k: f64,
) -> Result<ModeFrequency> {
    let reduced = renormalized_params(params, f0)?;
    let (j, u) = (reduced.j(), reduced.u());
    let radicand = u * u - 6.0 * j * t_k + j * j * t_k * t_k;
    Ok(ModeFrequency::from_radicand(radicand))
}

fn renormalized_params(params: &BoseParams, f0: f64) -> Result<BoseParams> {
    if !(0.0..1.0 / 3.0).contains(&f0) {
        return Err(Error::InvalidParameter {
            name: "f0",
            reason: format!("depletion must lie in [0, 1/3), got {f0}"),
        });
    }
    BoseParams::new(params.j() * (1.0 - 3.0 * f0), params.u())
}

/// Mode amplitudes feeding the double-sum correlators: either the ground
/// closure, the closed-form quench solution at a given time, or a state
/// produced by the integrator.
#[derive(Debug, Clone)]
pub struct ModeAmplitudes {
    pub f11: Vec<Complex64>,
    pub f12: Vec<Complex64>,
    pub f21: Vec<Complex64>,
}

impl ModeAmplitudes {
    pub fn ground(params: &BoseParams, grid: &MomentumGrid) -> Result<Self> {
        params.ensure_stable()?;
        let n = grid.len();
        let mut f11 = Vec::with_capacity(n);
        let mut f12 = Vec::with_capacity(n);
        for i in 0..n {
            let m = super::ground::mode_amplitudes_unchecked(params, grid.structure_factor(i));
            f11.push(Complex64::new(m.f11, 0.0));
            f12.push(Complex64::new(m.f12, 0.0));
        }
        Ok(Self {
            f21: f12.clone(),
            f11,
            f12,
        })
    }

    /// Closed-form mode amplitudes at time `t` after the sudden quench,
    /// with `f21 = conj(f12)` and `f22 = f11` implied.
    pub fn quench(params: &BoseParams, grid: &MomentumGrid, t: f64) -> Self {
        let n = grid.len();
        let j = params.j();
        let u = params.u();
        let mut f11 = Vec::with_capacity(n);
        let mut f12 = Vec::with_capacity(n);
        let mut f21 = Vec::with_capacity(n);
        for i in 0..n {
            let t_k = grid.structure_factor(i);
            let w = omega(params, t_k);
            let omc = w.one_minus_cos_over_sq(t);
            let s = std::f64::consts::SQRT_2 * j * t_k;
            let g = 2.0 * s * s * omc;
            let re = s * (u - 3.0 * j * t_k) * omc;
            let im = s * w.sin_over(t);
            f11.push(Complex64::new(g, 0.0));
            f12.push(Complex64::new(re, im));
            f21.push(Complex64::new(re, -im));
        }
        Self { f11, f12, f21 }
    }

    pub fn from_state(state: &BoseModeState) -> Self {
        Self {
            f11: state.f11.clone(),
            f12: state.f12.clone(),
            f21: state.f21.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.f11.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f11.is_empty()
    }

    /// The three Fourier sums `A(d)`, `B(d)`, `B'(d)` the correlators
    /// factorize into.
    fn single_sums(&self, grid: &MomentumGrid, d: &Separation) -> [Complex64; 3] {
        let sums = ksum::sum_c64_batched(grid.len(), 3, |i, acc| {
            let phase = grid.phase(i, d);
            let e = grid.weight(i) * Complex64::new(phase.cos(), phase.sin());
            acc[0] += e * self.f11[i];
            acc[1] += e * self.f12[i];
            acc[2] += e * self.f21[i];
        });
        [sums[0], sums[1], sums[2]]
    }
}

/// Particle-number correlator `<n n> - <n><n>` at separation `d != 0`,
/// evaluated via the separable factorization `2 (A^2 - B B')`.
pub fn number_correlator(
    modes: &ModeAmplitudes,
    grid: &MomentumGrid,
    d: &Separation,
) -> Result<f64> {
    if d.is_zero() {
        return Err(Error::OnSiteSeparation);
    }
    let [a, b, b2] = modes.single_sums(grid, d);
    Ok(2.0 * (a * a - b * b2).re)
}

/// Parity correlator `<(-1)^n (-1)^n> - <(-1)^n><(-1)^n>`, factored form
/// `8 (A^2 + B B')`.
pub fn parity_correlator(
    modes: &ModeAmplitudes,
    grid: &MomentumGrid,
    d: &Separation,
) -> Result<f64> {
    if d.is_zero() {
        return Err(Error::OnSiteSeparation);
    }
    let [a, b, b2] = modes.single_sums(grid, d);
    Ok(8.0 * (a * a + b * b2).re)
}

/// Literal double momentum sum for the number correlator; O(N^2) reference
/// used to validate the factorized route.
pub fn number_correlator_via_double_sum(
    modes: &ModeAmplitudes,
    grid: &MomentumGrid,
    d: &Separation,
) -> Result<f64> {
    double_sum(modes, grid, d, 2.0, -1.0)
}

/// Literal double momentum sum for the parity correlator.
pub fn parity_correlator_via_double_sum(
    modes: &ModeAmplitudes,
    grid: &MomentumGrid,
    d: &Separation,
) -> Result<f64> {
    double_sum(modes, grid, d, 8.0, 1.0)
}

fn double_sum(
    modes: &ModeAmplitudes,
    grid: &MomentumGrid,
    d: &Separation,
    prefactor: f64,
    sign: f64,
) -> Result<f64> {
    if d.is_zero() {
        return Err(Error::OnSiteSeparation);
    }
    let n = grid.len();
    let value = ksum::sum_c64(n * n, |pq| {
        let p = pq / n;
        let q = pq % n;
        let phase = grid.phase(p, d) + grid.phase(q, d);
        let weight = grid.weight(p) * grid.weight(q);
        let pair = modes.f11[p] * modes.f11[q] + sign * modes.f12[p] * modes.f21[q];
        weight * pair * Complex64::new(phase.cos(), phase.sin())
    });
    Ok(prefactor * value.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Along a lattice axis.
    Axis,
    /// Along the main diagonal (all components equal).
    Diagonal,
}

/// Maximum group speed `|grad omega . u|` over the Brillouin zone for the
/// requested direction class.
#[derive(Debug, Clone, PartialEq)]
pub struct LightConeReport {
    pub direction: Direction,
    /// Lattice spacings per unit time (energy units of `U`).
    pub v_max: f64,
    /// Momentum attaining the maximum.
    pub argmax: Vec<f64>,
}

/// Projected group velocity `grad omega . u` from the closed-form gradient
/// `d omega / d k_i = J T'_i (J T_k - 3 U) / omega`, `T'_i = -sin(k_i) / D`.
fn projected_speed(params: &BoseParams, k: &[f64], unit: &[f64]) -> f64 {
    let dim = k.len() as f64;
    let t_k = k.iter().map(|x| x.cos()).sum::<f64>() / dim;
    let w = omega(params, t_k).magnitude();
    if w == 0.0 {
        return f64::INFINITY;
    }
    let j = params.j();
    let factor = j * (j * t_k - 3.0 * params.u()) / w;
    k.iter()
        .zip(unit)
        .map(|(ki, ui)| factor * (-ki.sin() / dim) * ui)
        .sum::<f64>()
        .abs()
}

fn golden_max(mut a: f64, mut b: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..120 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid))
}

/// Grid search over the `dimension`-dimensional Brillouin zone followed by
/// golden-section refinement along the symmetry line of the requested
/// direction (the axis line for [`Direction::Axis`], the main diagonal for
/// [`Direction::Diagonal`]); the true maximum lies on those lines for the
/// monotone dispersion below the critical hopping.
pub fn max_group_velocity(
    params: &BoseParams,
    dimension: usize,
    direction: Direction,
    grid_resolution: usize,
) -> Result<LightConeReport> {
    if dimension == 0 {
        return Err(Error::InvalidParameter {
            name: "dimension",
            reason: "dimension must be at least 1".into(),
        });
    }
    if grid_resolution < 2 {
        return Err(Error::InvalidParameter {
            name: "grid_resolution",
            reason: format!("need at least 2 points per axis, got {grid_resolution}"),
        });
    }
    params.ensure_stable()?;

    let unit: Vec<f64> = match direction {
        Direction::Axis => {
            let mut u = vec![0.0; dimension];
            u[0] = 1.0;
            u
        }
        Direction::Diagonal => vec![1.0 / (dimension as f64).sqrt(); dimension],
    };

    // Coarse sweep over the full zone.
    let m = grid_resolution;
    let n_points = m.pow(dimension as u32);
    let mut best_k = vec![0.0; dimension];
    let mut best_v = 0.0;
    let mut idx = vec![0usize; dimension];
    let axis: Vec<f64> = (0..m)
        .map(|j| -std::f64::consts::PI + (j as f64 + 0.5) * 2.0 * std::f64::consts::PI / m as f64)
        .collect();
    let mut k = vec![0.0; dimension];
    for _ in 0..n_points {
        for (ki, &j) in k.iter_mut().zip(&idx) {
            *ki = axis[j];
        }
        let v = projected_speed(params, &k, &unit);
        if v > best_v {
            best_v = v;
            best_k.copy_from_slice(&k);
        }
        for pos in (0..dimension).rev() {
            idx[pos] += 1;
            if idx[pos] < m {
                break;
            }
            idx[pos] = 0;
        }
    }

    // Refinement along the symmetry line parametrized by one angle.
    let line_point = |kappa: f64| -> Vec<f64> {
        match direction {
            Direction::Axis => {
                let mut k = vec![0.0; dimension];
                k[0] = kappa;
                k
            }
            Direction::Diagonal => vec![kappa; dimension],
        }
    };
    let (kappa, v_line) = golden_max(0.0, std::f64::consts::PI, |kappa| {
        projected_speed(params, &line_point(kappa), &unit)
    });

    let (v_max, argmax) = if v_line >= best_v {
        (v_line, line_point(kappa))
    } else {
        (best_v, best_k)
    };
    Ok(LightConeReport {
        direction,
        v_max,
        argmax,
    })
}
