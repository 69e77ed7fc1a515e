//! Reproducible reductions.
//!
//! Sums over grid quantities use a pairwise tree over the row-major site order.
//! The tree shape depends only on the slice length, so the result is the same
//! bit pattern for any number of worker threads.

/// Slices at or below this length are summed sequentially left to right.
const LEAF: usize = 64;

/// Pairwise (cascade) sum with a fixed split at `len / 2`.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= LEAF {
        return values.iter().fold(0.0, |acc, v| acc + v);
    }
    let (lo, hi) = values.split_at(values.len() / 2);
    let (a, b) = rayon::join(|| pairwise_sum(lo), || pairwise_sum(hi));
    a + b
}

/// Maximum of a slice, `0.0` when empty. NaN entries propagate.
pub fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0_f64, |acc, &v| {
        if v.is_nan() || acc.is_nan() {
            f64::NAN
        } else {
            acc.max(v.abs())
        }
    })
}
