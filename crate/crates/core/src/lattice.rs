//! Hypercubic lattice geometry: adjacency, Brillouin-zone momentum grids, and
//! the nearest-neighbor hopping structure factor every mode sum consumes.

use std::f64::consts::PI;
use std::fmt;

use ndarray::Array2;

use crate::error::{Error, Result};

/// Default resolution for thermodynamic-limit quadrature grids.
pub const DEFAULT_POINTS_PER_AXIS: usize = 64;

/// Periodic hypercubic lattice in `D` dimensions with nearest-neighbor bonds.
///
/// The coordination number is `Z = 2D`. For an extent of exactly 2 the two
/// wraparound bonds to the same neighbor are both counted, which keeps every
/// adjacency row sum at `Z` on tiny lattices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypercubicLattice {
    dimension: usize,
    extents: Vec<usize>,
}

impl HypercubicLattice {
    pub fn new(dimension: usize, extents: &[usize]) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidLattice("dimension must be at least 1".into()));
        }
        if extents.len() != dimension {
            return Err(Error::InvalidLattice(format!(
                "expected {} extents, got {}",
                dimension,
                extents.len()
            )));
        }
        if let Some(bad) = extents.iter().find(|&&l| l < 2) {
            return Err(Error::InvalidLattice(format!(
                "extent {bad} is below the minimum of 2"
            )));
        }
        Ok(Self {
            dimension,
            extents: extents.to_vec(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    pub fn coordination_number(&self) -> usize {
        2 * self.dimension
    }

    pub fn site_count(&self) -> usize {
        self.extents.iter().product()
    }

    /// Row-major site index of a coordinate tuple.
    pub fn site_index(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.dimension);
        let mut idx = 0;
        for (c, l) in coords.iter().zip(&self.extents) {
            debug_assert!(c < l);
            idx = idx * l + c;
        }
        idx
    }

    pub fn site_coords(&self, index: usize) -> Vec<usize> {
        let mut coords = vec![0; self.dimension];
        let mut rest = index;
        for axis in (0..self.dimension).rev() {
            coords[axis] = rest % self.extents[axis];
            rest /= self.extents[axis];
        }
        coords
    }

    /// Unordered neighbor bonds `(site_a, site_b, weight)`. The weight is 2
    /// on axes of extent 2 (both wraparound bonds connect the same pair).
    pub fn bonds(&self) -> Vec<(usize, usize, f64)> {
        let n = self.site_count();
        let mut bonds = Vec::with_capacity(n * self.dimension);
        for site in 0..n {
            let coords = self.site_coords(site);
            for axis in 0..self.dimension {
                let l = self.extents[axis];
                let mut up = coords.clone();
                up[axis] = (coords[axis] + 1) % l;
                let neighbor = self.site_index(&up);
                let weight = if l == 2 { 2.0 } else { 1.0 };
                if l == 2 && coords[axis] == 1 {
                    // already emitted as the 0 -> 1 bond on this axis
                    continue;
                }
                bonds.push((site, neighbor, weight));
            }
        }
        bonds
    }

    /// Dense adjacency matrix `T` with row sums `Z`.
    pub fn adjacency_matrix(&self) -> Array2<f64> {
        let n = self.site_count();
        let mut t = Array2::zeros((n, n));
        for (a, b, w) in self.bonds() {
            t[[a, b]] += w;
            t[[b, a]] += w;
        }
        t
    }

    /// Adjacency weight `T(d)` for a displacement: the number of
    /// nearest-neighbor unit vectors congruent to `d` modulo the extents.
    pub fn adjacency_weight(&self, d: &Separation) -> f64 {
        let reduced = self.reduce_separation(d);
        let mut weight = 0.0;
        for axis in 0..self.dimension {
            for step in [-1i64, 1] {
                let mut unit = vec![0i64; self.dimension];
                unit[axis] = step;
                if self.reduce_separation(&Separation::new(unit)) == reduced {
                    weight += 1.0;
                }
            }
        }
        weight
    }

    /// Map each component into the symmetric window `(-L/2, L/2]`.
    pub fn reduce_separation(&self, d: &Separation) -> Separation {
        let comps = d
            .components()
            .iter()
            .zip(&self.extents)
            .map(|(&di, &l)| {
                let l = l as i64;
                let mut r = di.rem_euclid(l);
                if 2 * r > l {
                    r -= l;
                }
                r
            })
            .collect();
        Separation::new(comps)
    }

    /// True when the periodic lattice splits into two sublattices by
    /// coordinate-sum parity, which requires every extent to be even.
    pub fn is_bipartite(&self) -> bool {
        self.extents.iter().all(|l| l % 2 == 0)
    }

    /// Sublattice parity of a site: `0` for even coordinate sum, `1` for odd.
    pub fn site_parity(&self, index: usize) -> usize {
        self.site_coords(index).iter().sum::<usize>() % 2
    }

    /// The exact momentum grid of this finite lattice (weight `1/N` each).
    pub fn momentum_grid(&self) -> MomentumGrid {
        momentum_grid(self, GridMode::FiniteLattice, None)
            .expect("finite-lattice grid construction cannot fail")
    }
}

pub fn build_lattice(dimension: usize, extents: &[usize]) -> Result<HypercubicLattice> {
    HypercubicLattice::new(dimension, extents)
}

/// Quasi-momentum with components in `[-pi, pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Momentum {
    components: Vec<f64>,
}

impl Momentum {
    /// Wraps each component into `[-pi, pi)`.
    pub fn new(components: Vec<f64>) -> Self {
        let components = components
            .into_iter()
            .map(|k| {
                let mut k = (k + PI).rem_euclid(2.0 * PI) - PI;
                if k >= PI {
                    k -= 2.0 * PI;
                }
                k
            })
            .collect();
        Self { components }
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    /// Hopping structure factor `T_k = (1/D) sum_i cos k_i`, in `[-1, 1]`
    /// with `T_0 = 1`.
    pub fn structure_factor(&self) -> f64 {
        structure_factor_of(&self.components)
    }
}

pub(crate) fn structure_factor_of(components: &[f64]) -> f64 {
    components.iter().map(|k| k.cos()).sum::<f64>() / components.len() as f64
}

/// `T_k` for a momentum on the given lattice.
pub fn structure_factor(lattice: &HypercubicLattice, k: &Momentum) -> f64 {
    debug_assert_eq!(k.components().len(), lattice.dimension());
    k.structure_factor()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridMode {
    /// Exactly the `N` lattice momenta, each weighted `1/N`.
    FiniteLattice,
    /// Uniform midpoint rule over `[-pi, pi)^D`, weights summing to 1.
    ThermodynamicLimit,
}

/// A weighted set of momenta with cached structure factors.
///
/// The weights realize the `1/N sum_k` normalization of the mode sums, so
/// they always add up to 1.
#[derive(Debug, Clone)]
pub struct MomentumGrid {
    dimension: usize,
    mode: GridMode,
    points: Vec<f64>,
    weights: Vec<f64>,
    structure_factors: Vec<f64>,
}

impl MomentumGrid {
    /// Midpoint quadrature grid over the Brillouin zone, `points_per_axis`
    /// points in each of `dimension` directions.
    pub fn thermodynamic(dimension: usize, points_per_axis: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidGrid("dimension must be at least 1".into()));
        }
        if points_per_axis < 2 {
            return Err(Error::InvalidGrid(format!(
                "points_per_axis {points_per_axis} is below the minimum of 2"
            )));
        }
        let m = points_per_axis;
        let n: usize = m.pow(dimension as u32);
        let weight = 1.0 / n as f64;
        let mut points = Vec::with_capacity(n * dimension);
        let axis: Vec<f64> = (0..m)
            .map(|j| -PI + (j as f64 + 0.5) * 2.0 * PI / m as f64)
            .collect();
        let mut idx = vec![0usize; dimension];
        for _ in 0..n {
            for &j in &idx {
                points.push(axis[j]);
            }
            for axis_pos in (0..dimension).rev() {
                idx[axis_pos] += 1;
                if idx[axis_pos] < m {
                    break;
                }
                idx[axis_pos] = 0;
            }
        }
        Ok(Self::from_points(
            dimension,
            GridMode::ThermodynamicLimit,
            points,
            vec![weight; n],
        ))
    }

    fn from_points(
        dimension: usize,
        mode: GridMode,
        points: Vec<f64>,
        weights: Vec<f64>,
    ) -> Self {
        let structure_factors = points
            .chunks_exact(dimension)
            .map(structure_factor_of)
            .collect();
        Self {
            dimension,
            mode,
            points,
            weights,
            structure_factors,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn mode(&self) -> GridMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn structure_factor(&self, i: usize) -> f64 {
        self.structure_factors[i]
    }

    pub fn momentum(&self, i: usize) -> &[f64] {
        &self.points[i * self.dimension..(i + 1) * self.dimension]
    }

    /// Phase `k_i . d` for the `i`-th momentum.
    pub fn phase(&self, i: usize, d: &Separation) -> f64 {
        self.momentum(i)
            .iter()
            .zip(d.components())
            .map(|(k, &di)| k * di as f64)
            .sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (Momentum, f64)> + '_ {
        (0..self.len()).map(|i| {
            (
                Momentum {
                    components: self.momentum(i).to_vec(),
                },
                self.weight(i),
            )
        })
    }
}

/// Build a momentum grid; thermodynamic-limit mode requires `points_per_axis`.
pub fn momentum_grid(
    lattice: &HypercubicLattice,
    mode: GridMode,
    points_per_axis: Option<usize>,
) -> Result<MomentumGrid> {
    match mode {
        GridMode::ThermodynamicLimit => {
            let m = points_per_axis.ok_or_else(|| {
                Error::InvalidGrid("thermodynamic-limit mode requires points_per_axis".into())
            })?;
            MomentumGrid::thermodynamic(lattice.dimension(), m)
        }
        GridMode::FiniteLattice => {
            let d = lattice.dimension();
            let n = lattice.site_count();
            let weight = 1.0 / n as f64;
            let mut points = Vec::with_capacity(n * d);
            for site in 0..n {
                for (axis, &ni) in lattice.site_coords(site).iter().enumerate() {
                    let l = lattice.extents()[axis] as f64;
                    let mut k = 2.0 * PI * ni as f64 / l;
                    if k >= PI {
                        k -= 2.0 * PI;
                    }
                    points.push(k);
                }
            }
            Ok(MomentumGrid::from_points(
                d,
                GridMode::FiniteLattice,
                points,
                vec![weight; n],
            ))
        }
    }
}

/// Integer lattice displacement `x_mu - x_nu`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Separation {
    components: Vec<i64>,
}

impl Separation {
    pub fn new(components: Vec<i64>) -> Self {
        Self { components }
    }

    pub fn zero(dimension: usize) -> Self {
        Self {
            components: vec![0; dimension],
        }
    }

    pub fn components(&self) -> &[i64] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|&c| c == 0)
    }

    pub fn negated(&self) -> Self {
        Self {
            components: self.components.iter().map(|&c| -c).collect(),
        }
    }

    /// Graph (L1) distance from the origin.
    pub fn graph_distance(&self) -> u64 {
        self.components.iter().map(|c| c.unsigned_abs()).sum()
    }

    pub fn euclidean_length_sq(&self) -> i64 {
        self.components.iter().map(|c| c * c).sum()
    }

    /// Even coordinate sum connects sites on the same sublattice.
    pub fn same_sublattice(&self) -> bool {
        self.components.iter().sum::<i64>().rem_euclid(2) == 0
    }

    /// Sign-canonical representative of the pair `{d, -d}`: the first
    /// nonzero component is positive.
    pub fn canonical(&self) -> Self {
        match self.components.iter().find(|&&c| c != 0) {
            Some(&c) if c < 0 => self.negated(),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Deduplicated canonical separations up to the requested graph distance,
/// sorted by Euclidean length and then lexicographically (descending, so the
/// first axis comes first among equals).
pub fn separations_of_interest(
    lattice: &HypercubicLattice,
    max_graph_distance: u64,
) -> Vec<Separation> {
    let d = lattice.dimension();
    let r = max_graph_distance as i64;
    let mut found: Vec<Separation> = Vec::new();
    let mut current = vec![-r; d];
    'outer: loop {
        let sep = Separation::new(current.clone());
        if sep.graph_distance() <= max_graph_distance {
            let canonical = lattice.reduce_separation(&sep).canonical();
            if !found.contains(&canonical) {
                found.push(canonical);
            }
        }
        for axis in (0..d).rev() {
            current[axis] += 1;
            if current[axis] <= r {
                continue 'outer;
            }
            current[axis] = -r;
        }
        break;
    }
    found.sort_by(|a, b| {
        a.euclidean_length_sq()
            .cmp(&b.euclidean_length_sq())
            .then_with(|| b.components().cmp(a.components()))
    });
    found
}
