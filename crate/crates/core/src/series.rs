//! Sampled observable series: the common container every experiment mode
//! produces and the output layer consumes.

use num_complex::Complex64;

use crate::lattice::Separation;

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPoint {
    pub time: f64,
    pub separation: Separation,
    pub value: Complex64,
}

/// Complex observable samples over `(time, separation)` with provenance
/// metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationSeries {
    pub observable: String,
    /// Model and parameter description, e.g. `bose J/U=0.14`.
    pub model: String,
    /// Grid descriptor, e.g. `thermodynamic 64^3` or `finite 2x3`.
    pub grid: String,
    pub points: Vec<SeriesPoint>,
}

impl CorrelationSeries {
    pub fn new(
        observable: impl Into<String>,
        model: impl Into<String>,
        grid: impl Into<String>,
    ) -> Self {
        Self {
            observable: observable.into(),
            model: model.into(),
            grid: grid.into(),
            points: Vec::new(),
        }
    }

    pub fn push(&mut self, time: f64, separation: Separation, value: Complex64) {
        self.points.push(SeriesPoint {
            time,
            separation,
            value,
        });
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }
}
