//! Ordered evaluation over index grids. With the `parallel` feature the work
//! is spread over the rayon pool; results always come back in index order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Evaluates `f(0..n)` and returns results in index order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_indexed_sequential(n, f)
    }
}

pub fn map_indexed_sequential<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Index of the largest value; ties go to the lowest index and NaN never wins.
pub fn argmax(values: &[f64]) -> Option<usize> {
    let better = |a: (usize, f64), b: (usize, f64)| {
        if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) || a.1.is_nan() && !b.1.is_nan() {
            b
        } else {
            a
        }
    };
    #[cfg(feature = "parallel")]
    let best = values
        .par_iter()
        .copied()
        .enumerate()
        .reduce_with(better);
    #[cfg(not(feature = "parallel"))]
    let best = values.iter().copied().enumerate().reduce(better);
    best.filter(|(_, v)| !v.is_nan()).map(|(i, _)| i)
}

/// `n` points `start + j·step` covering `[start, end]`, with the last point
/// pinned to `end` when the step does not divide the span evenly.
pub fn linspace_step(start: f64, end: f64, step: f64) -> Vec<f64> {
    let span = end - start;
    // tolerate accumulated decimal error, e.g. 10 / 0.1
    let n = (span / step + 1e-9).floor() as usize;
    let mut out: Vec<f64> = (0..=n).map(|j| start + j as f64 * step).collect();
    if let Some(last) = out.last_mut() {
        if (*last - end).abs() <= 1e-9 * step {
            *last = end;
        } else if *last < end {
            out.push(end);
        }
    }
    out
}
