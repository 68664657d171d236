//! Deterministic reductions over momentum grids.
//!
//! Sums are accumulated in fixed-size chunks whose partial results are folded
//! in index order, so the result is bit-identical whether the chunk partials
//! are computed on one thread or many. The `parallel` feature routes the
//! chunk map through rayon; the sequential path is always available and
//! produces the same bytes.

use num_complex::Complex64;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

const CHUNK: usize = 2048;

fn chunk_bounds(n: usize, c: usize) -> (usize, usize) {
    let lo = c * CHUNK;
    (lo, usize::min(lo + CHUNK, n))
}

fn n_chunks(n: usize) -> usize {
    n.div_ceil(CHUNK)
}

/// Sequential chunked sum of `term(0) + ... + term(n-1)`.
pub fn sum_f64_sequential<F>(n: usize, term: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    (0..n_chunks(n))
        .map(|c| {
            let (lo, hi) = chunk_bounds(n, c);
            (lo..hi).map(&term).sum::<f64>()
        })
        .sum()
}

/// Sequential chunked complex sum.
pub fn sum_c64_sequential<F>(n: usize, term: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    (0..n_chunks(n))
        .map(|c| {
            let (lo, hi) = chunk_bounds(n, c);
            (lo..hi).map(&term).sum::<Complex64>()
        })
        .sum()
}

/// Chunked sum, parallel over chunks when the `parallel` feature is enabled.
/// Bit-identical to [`sum_f64_sequential`] in either case.
#[cfg(feature = "parallel")]
pub fn sum_f64<F>(n: usize, term: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let partials: Vec<f64> = (0..n_chunks(n))
        .into_par_iter()
        .map(|c| {
            let (lo, hi) = chunk_bounds(n, c);
            (lo..hi).map(&term).sum::<f64>()
        })
        .collect();
    partials.into_iter().sum()
}

#[cfg(not(feature = "parallel"))]
pub fn sum_f64<F>(n: usize, term: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    sum_f64_sequential(n, term)
}

/// Chunked complex sum; see [`sum_f64`].
#[cfg(feature = "parallel")]
pub fn sum_c64<F>(n: usize, term: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    let partials: Vec<Complex64> = (0..n_chunks(n))
        .into_par_iter()
        .map(|c| {
            let (lo, hi) = chunk_bounds(n, c);
            (lo..hi).map(&term).sum::<Complex64>()
        })
        .collect();
    partials.into_iter().sum()
}

#[cfg(not(feature = "parallel"))]
pub fn sum_c64<F>(n: usize, term: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    sum_c64_sequential(n, term)
}

/// Batched complex sum: `term(i, acc)` adds the `i`-th contribution into an
/// accumulator of length `batch`. Chunk partials are combined in index
/// order, so the result does not depend on the thread count.
pub fn sum_c64_batched<F>(n: usize, batch: usize, term: F) -> Vec<Complex64>
where
    F: Fn(usize, &mut [Complex64]) + Sync,
{
    let partials = map_chunks(n_chunks(n), |c| {
        let (lo, hi) = chunk_bounds(n, c);
        let mut acc = vec![Complex64::ZERO; batch];
        for i in lo..hi {
            term(i, &mut acc);
        }
        acc
    });
    let mut total = vec![Complex64::ZERO; batch];
    for partial in partials {
        for (t, p) in total.iter_mut().zip(partial) {
            *t += p;
        }
    }
    total
}

/// Apply `f` to each chunk index, in parallel when the feature allows,
/// returning the results in index order.
#[cfg(feature = "parallel")]
pub(crate) fn map_chunks<T, F>(chunks: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..chunks).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_chunks<T, F>(chunks: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..chunks).map(f).collect()
}

/// Split `n` items into ranges of at most `chunk` elements.
pub(crate) fn ranges(n: usize, chunk: usize) -> Vec<std::ops::Range<usize>> {
    (0..n.div_ceil(chunk))
        .map(|c| c * chunk..usize::min((c + 1) * chunk, n))
        .collect()
}
