//! Full spectral decomposition and the averages built on it: exact unitary
//! evolution, diagonal-ensemble (infinite-time) averages with degenerate
//! subspaces projected correctly, and canonical thermal averages within the
//! fixed-filling sector.

use ndarray::{Array1, Array2, ArrayView1, Axis};
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Eigenvalues ascending, orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Array1<f64>,
    pub eigenvectors: Array2<f64>,
}

impl SpectralDecomposition {
    pub fn dimension(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn ground_state(&self) -> Array1<Complex64> {
        self.eigenvectors
            .column(0)
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect()
    }

    /// Eigenbasis coefficients `c_n = <n|psi>`.
    fn coefficients(&self, psi: ArrayView1<Complex64>) -> Array1<Complex64> {
        let re: Array1<f64> = psi.iter().map(|z| z.re).collect();
        let im: Array1<f64> = psi.iter().map(|z| z.im).collect();
        let cre = self.eigenvectors.t().dot(&re);
        let cim = self.eigenvectors.t().dot(&im);
        cre.iter()
            .zip(cim.iter())
            .map(|(&a, &b)| Complex64::new(a, b))
            .collect()
    }

    /// Indices `[start, end)` of eigenvalue groups closer than `tol`.
    fn degenerate_groups(&self, tol: f64) -> Vec<(usize, usize)> {
        let n = self.dimension();
        let mut groups = Vec::new();
        let mut start = 0;
        for i in 1..=n {
            if i == n || self.eigenvalues[i] - self.eigenvalues[i - 1] > tol {
                groups.push((start, i));
                start = i;
            }
        }
        groups
    }
}

/// Dense symmetric eigendecomposition (LAPACK).
pub fn diagonalize(h: &Array2<f64>) -> Result<SpectralDecomposition> {
    let (eigenvalues, eigenvectors) = h
        .eigh(UPLO::Lower)
        .map_err(|e| Error::Diagonalization(e.to_string()))?;
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// `psi(t) = sum_n e^{-i lambda_n t} <n|psi0> |n>`; norm preserving.
pub fn evolve(
    decomposition: &SpectralDecomposition,
    psi0: ArrayView1<Complex64>,
    t: f64,
) -> Array1<Complex64> {
    let mut c = decomposition.coefficients(psi0);
    for (cn, &lambda) in c.iter_mut().zip(&decomposition.eigenvalues) {
        let phase = Complex64::from_polar(1.0, -lambda * t);
        *cn *= phase;
    }
    let cre: Array1<f64> = c.iter().map(|z| z.re).collect();
    let cim: Array1<f64> = c.iter().map(|z| z.im).collect();
    let re = decomposition.eigenvectors.dot(&cre);
    let im = decomposition.eigenvectors.dot(&cim);
    re.iter()
        .zip(im.iter())
        .map(|(&a, &b)| Complex64::new(a, b))
        .collect()
}

/// `<psi|O|psi>` for Hermitian real `O`.
pub fn expectation(observable: &Array2<f64>, psi: ArrayView1<Complex64>) -> f64 {
    let re: Array1<f64> = psi.iter().map(|z| z.re).collect();
    let im: Array1<f64> = psi.iter().map(|z| z.im).collect();
    re.dot(&observable.dot(&re)) + im.dot(&observable.dot(&im))
}

/// Infinite-time average of `<O>(t)` from initial state `psi0`. Degenerate
/// eigenvalues (within `1e-8 * max(1, |lambda|_max)`) are handled by
/// projecting `O` onto each degenerate block, which removes the basis
/// ambiguity of the naive `sum_n |c_n|^2 <n|O|n>` formula.
pub fn diagonal_ensemble_average(
    decomposition: &SpectralDecomposition,
    psi0: ArrayView1<Complex64>,
    observable: &Array2<f64>,
) -> f64 {
    let c = decomposition.coefficients(psi0);
    let scale = decomposition
        .eigenvalues
        .iter()
        .fold(1.0f64, |m, &x| m.max(x.abs()));
    let groups = decomposition.degenerate_groups(1e-8 * scale);
    let w = observable.dot(&decomposition.eigenvectors);
    let mut total = 0.0;
    for (start, end) in groups {
        if end - start == 1 {
            let n = start;
            let onn = decomposition.eigenvectors.column(n).dot(&w.column(n));
            total += c[n].norm_sqr() * onn;
        } else {
            for n in start..end {
                for m in start..end {
                    let onm = decomposition.eigenvectors.column(n).dot(&w.column(m));
                    total += (c[n].conj() * c[m]).re * onm;
                }
            }
        }
    }
    total
}

/// Canonical thermal average within the basis sector,
/// `sum_n e^{-beta lambda_n} <n|O|n> / Z`, evaluated with the max-shift for
/// numerical stability.
pub fn thermal_average(
    decomposition: &SpectralDecomposition,
    beta: f64,
    observable: &Array2<f64>,
) -> f64 {
    let lambda0 = decomposition.ground_energy();
    let w = observable.dot(&decomposition.eigenvectors);
    let diag: Array1<f64> = decomposition
        .eigenvectors
        .axis_iter(Axis(1))
        .zip(w.axis_iter(Axis(1)))
        .map(|(v, wv)| v.dot(&wv))
        .collect();
    let mut num = 0.0;
    let mut den = 0.0;
    for (onn, &lambda) in diag.iter().zip(&decomposition.eigenvalues) {
        let weight = (-beta * (lambda - lambda0)).exp();
        num += weight * onn;
        den += weight;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use approx::assert_abs_diff_eq;

    fn example_h() -> Array2<f64> {
        array![
            [1.0, 0.2, 0.0],
            [0.2, 0.5, -0.1],
            [0.0, -0.1, -0.3],
        ]
    }

    #[test]
    fn diagonal_input_yields_sorted_diagonal() {
        let h = Array2::from_diag(&array![3.0, -1.0, 2.0]);
        let d = diagonalize(&h).unwrap();
        assert_eq!(d.eigenvalues.to_vec(), vec![-1.0, 2.0, 3.0]);
    }

    #[test]
    fn trace_and_residuals() {
        let h = example_h();
        let d = diagonalize(&h).unwrap();
        let trace: f64 = (0..3).map(|i| h[[i, i]]).sum();
        assert_abs_diff_eq!(d.eigenvalues.sum(), trace, epsilon = 1e-10);
        for n in 0..3 {
            let v = d.eigenvectors.column(n);
            let hv = h.dot(&v);
            for i in 0..3 {
                assert_abs_diff_eq!(hv[i], d.eigenvalues[n] * v[i], epsilon = 1e-10);
            }
            for m in 0..3 {
                let overlap = v.dot(&d.eigenvectors.column(m));
                let expected = if n == m { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(overlap, expected, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn evolution_preserves_norm_and_energy() {
        let h = example_h();
        let d = diagonalize(&h).unwrap();
        let psi0: Array1<Complex64> = array![
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.8),
            Complex64::new(0.0, 0.0)
        ];
        let e0 = expectation(&h, psi0.view());
        for t in [0.0, 1.3, 17.0, 100.0] {
            let psi = evolve(&d, psi0.view(), t);
            let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
            assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-10);
            assert_abs_diff_eq!(expectation(&h, psi.view()), e0, epsilon = 1e-10);
        }
        let at_zero = evolve(&d, psi0.view(), 0.0);
        for i in 0..3 {
            assert_abs_diff_eq!((at_zero[i] - psi0[i]).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn eigenstate_evolution_is_phase_only() {
        let h = example_h();
        let d = diagonalize(&h).unwrap();
        let psi0 = d.ground_state();
        let o = array![[0.3, 0.1, 0.0], [0.1, -0.2, 0.0], [0.0, 0.0, 0.9]];
        let before = expectation(&o, psi0.view());
        let after = expectation(&o, evolve(&d, psi0.view(), 7.7).view());
        assert_abs_diff_eq!(before, after, epsilon = 1e-10);
        // diagonal ensemble of an eigenstate is its expectation value
        assert_abs_diff_eq!(
            diagonal_ensemble_average(&d, psi0.view(), &o),
            before,
            epsilon = 1e-10
        );
    }

    #[test]
    fn diagonal_ensemble_of_identity_is_one() {
        let h = example_h();
        let d = diagonalize(&h).unwrap();
        let psi0: Array1<Complex64> = array![
            Complex64::new(0.5, 0.5),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.0, 0.5)
        ];
        let id = Array2::eye(3);
        assert_abs_diff_eq!(
            diagonal_ensemble_average(&d, psi0.view(), &id),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn diagonal_ensemble_matches_long_time_average() {
        let h = example_h();
        let d = diagonalize(&h).unwrap();
        let psi0: Array1<Complex64> = array![
            Complex64::new(0.6, 0.0),
            Complex64::new(0.48, 0.36),
            Complex64::new(0.4, 0.34)
        ];
        let norm: f64 = psi0.iter().map(|z| z.norm_sqr()).sum();
        let psi0 = psi0.mapv(|z| z / norm.sqrt());
        let o = array![[0.3, 0.1, 0.0], [0.1, -0.2, 0.2], [0.0, 0.2, 0.9]];
        let de = diagonal_ensemble_average(&d, psi0.view(), &o);
        let samples = 20_000;
        let avg: f64 = (0..samples)
            .map(|i| {
                let t = 2000.0 * (i as f64 + 0.5) / samples as f64;
                expectation(&o, evolve(&d, psi0.view(), t).view())
            })
            .sum::<f64>()
            / samples as f64;
        assert!((avg - de).abs() < 0.01 * de.abs().max(0.1), "{avg} vs {de}");
    }

    #[test]
    fn degenerate_subspace_projection_is_basis_independent() {
        // 2x2 degenerate block; the naive diagonal formula would depend on
        // which orthonormal pair LAPACK returns, the projected one does not.
        let h = Array2::from_diag(&array![0.0, 1.0, 1.0]);
        let d = diagonalize(&h).unwrap();
        let o = array![[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]];
        let psi0: Array1<Complex64> = array![
            Complex64::new(0.0, 0.0),
            Complex64::new((0.5f64).sqrt(), 0.0),
            Complex64::new((0.5f64).sqrt(), 0.0)
        ];
        // within the degenerate block <O>(t) is constant = <psi0|O|psi0> = 1
        assert_abs_diff_eq!(
            diagonal_ensemble_average(&d, psi0.view(), &o),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn thermal_average_limits() {
        let h = Array2::from_diag(&array![0.0, 1.0, 2.0]);
        let d = diagonalize(&h).unwrap();
        let o = Array2::from_diag(&array![5.0, 3.0, 1.0]);
        assert_abs_diff_eq!(thermal_average(&d, 500.0, &o), 5.0, epsilon = 1e-10);
        assert_abs_diff_eq!(thermal_average(&d, 1e-9, &o), 3.0, epsilon = 1e-6);
        let t_mid = thermal_average(&d, 1.0, &o);
        assert!(t_mid > 3.0 && t_mid < 5.0);
    }
}
