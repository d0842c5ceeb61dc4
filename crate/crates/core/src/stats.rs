//! Log-domain reductions and blocked jackknife error estimates.

use std::ops::Range;

/// ln Σ exp(x_i); `-inf` for an empty slice.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + xs.iter().map(|&x| (x - max).exp()).sum::<f64>().ln()
}

/// ln( (1/n) Σ exp(x_i) ).
pub fn log_mean_exp(xs: &[f64]) -> f64 {
    log_sum_exp(xs) - (xs.len() as f64).ln()
}

/// ln(e^a + e^b) without overflow.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Splits `len` consecutive samples into `n_blocks` ranges whose sizes differ by at most one.
pub fn block_ranges(len: usize, n_blocks: usize) -> Vec<Range<usize>> {
    let n_blocks = n_blocks.clamp(1, len.max(1));
    let base = len / n_blocks;
    let extra = len % n_blocks;
    let mut out = Vec::with_capacity(n_blocks);
    let mut start = 0;
    for b in 0..n_blocks {
        let size = base + usize::from(b < extra);
        out.push(start..start + size);
        start += size;
    }
    out
}

/// Jackknife standard error from leave-one-block-out estimates.
///
/// `None` with fewer than two blocks.
pub fn jackknife_stderr(loo: &[f64]) -> Option<f64> {
    let b = loo.len();
    if b < 2 {
        return None;
    }
    let mean = loo.iter().sum::<f64>() / b as f64;
    let ss: f64 = loo.iter().map(|x| (x - mean).powi(2)).sum();
    Some((ss * (b as f64 - 1.0) / b as f64).sqrt())
}

/// Per-block sufficient statistics of a scalar series.
#[derive(Debug, Clone, Copy, Default)]
struct BlockSum {
    sum: f64,
    n: usize,
}

/// Mean of `xs` with a blocked jackknife standard error.
pub fn blocked_mean(xs: &[f64], blocks: &[Range<usize>]) -> (f64, Option<f64>) {
    let sums: Vec<BlockSum> = blocks
        .iter()
        .map(|r| BlockSum {
            sum: xs[r.clone()].iter().sum(),
            n: r.len(),
        })
        .collect();
    let total: f64 = sums.iter().map(|s| s.sum).sum();
    let n: usize = sums.iter().map(|s| s.n).sum();
    let mean = total / n as f64;
    let loo: Vec<f64> = sums
        .iter()
        .filter(|s| s.n < n)
        .map(|s| (total - s.sum) / (n - s.n) as f64)
        .collect();
    let stderr = if loo.len() == sums.len() { jackknife_stderr(&loo) } else { None };
    (mean, stderr)
}

/// ln of the sample mean of exp(xs) with a blocked jackknife standard error.
pub fn blocked_log_mean_exp(xs: &[f64], blocks: &[Range<usize>]) -> (f64, Option<f64>) {
    let lse: Vec<f64> = blocks.iter().map(|r| log_sum_exp(&xs[r.clone()])).collect();
    let sizes: Vec<usize> = blocks.iter().map(|r| r.len()).collect();
    let n: usize = sizes.iter().sum();
    let full = log_sum_exp(&lse) - (n as f64).ln();
    let b = lse.len();
    if b < 2 {
        return (full, None);
    }
    // prefix[k] = LSE of blocks [0, k), suffix[k] = LSE of blocks [k, b)
    let mut prefix = vec![f64::NEG_INFINITY; b + 1];
    for k in 0..b {
        prefix[k + 1] = log_add_exp(prefix[k], lse[k]);
    }
    let mut suffix = vec![f64::NEG_INFINITY; b + 1];
    for k in (0..b).rev() {
        suffix[k] = log_add_exp(suffix[k + 1], lse[k]);
    }
    let loo: Vec<f64> = (0..b)
        .map(|k| log_add_exp(prefix[k], suffix[k + 1]) - ((n - sizes[k]) as f64).ln())
        .collect();
    (full, jackknife_stderr(&loo))
}
