//! Distances between sampled scalar signals on unrelated x-grids.

use crate::error::{Error, Result};

/// Samples `y = f(x)` with strictly increasing `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct SignalCurve {
    x: Vec<f64>,
    y: Vec<f64>,
}

impl SignalCurve {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
        }
        if x.len() < 2 {
            return Err(Error::TooFewPoints { found: x.len(), needed: 2 });
        }
        if x.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("signal samples must be finite".into()));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidInput("signal x values must be strictly increasing".into()));
        }
        Ok(SignalCurve { x, y })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// Keep the samples of `a` that have a sample of `b` at or before and at or
/// after them.
fn trim(a: &SignalCurve, b: &SignalCurve) -> (Vec<f64>, Vec<f64>) {
    let (lo, hi) = (b.x[0], b.x[b.len() - 1]);
    a.x.iter()
        .zip(&a.y)
        .filter(|(x, _)| **x >= lo && **x <= hi)
        .map(|(x, y)| (*x, *y))
        .unzip()
}

/// Piecewise-linear value at `z`, or `None` outside `[x_0, x_last]`.
fn linear(x: &[f64], y: &[f64], z: f64) -> Option<f64> {
    if x.is_empty() || z < x[0] || z > x[x.len() - 1] {
        return None;
    }
    if x.len() == 1 {
        return Some(y[0]);
    }
    let k = x.partition_point(|&v| v <= z).clamp(1, x.len() - 1);
    let (x0, x1) = (x[k - 1], x[k]);
    Some(((z - x0) * y[k] + (x1 - z) * y[k - 1]) / (x1 - x0))
}

/// Raw `(dist1, dist2)`: max and scaled L² difference on the merged grid.
///
/// Both x-sets are trimmed to the common range, merged into one grid, and
/// each signal is interpolated linearly on it. Where one trimmed signal does
/// not reach a grid point, the other signal's value is used there.
pub fn raw_signal_distance(a: &SignalCurve, b: &SignalCurve) -> Result<(f64, f64)> {
    let (ax, ay) = trim(a, b);
    let (bx, by) = trim(b, a);
    if ax.is_empty() || bx.is_empty() {
        return Err(Error::EmptyOverlap);
    }
    let mut grid: Vec<f64> = ax.iter().chain(&bx).copied().collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let mut max_diff: f64 = 0.0;
    let mut sq = 0.0;
    for &z in &grid {
        let (f, g) = match (linear(&ax, &ay, z), linear(&bx, &by, z)) {
            (Some(f), Some(g)) => (f, g),
            (Some(f), None) => (f, f),
            (None, Some(g)) => (g, g),
            (None, None) => unreachable!("grid points come from one of the trimmed sets"),
        };
        let d = (f - g).abs();
        max_diff = max_diff.max(d);
        sq += d * d;
    }
    Ok((max_diff, sq.sqrt() / grid.len() as f64))
}

/// Normalized `(error1, error2)` of two signals.
pub fn signal_distance(a: &SignalCurve, b: &SignalCurve) -> Result<(f64, f64)> {
    let (dist1, dist2) = raw_signal_distance(a, b)?;
    let (n, m) = (a.len() as f64, b.len() as f64);
    let norm1 = a.y.iter().map(|v| v.abs()).sum::<f64>() / (2.0 * n) + b.y.iter().map(|v| v.abs()).sum::<f64>() / (2.0 * m);
    let norm2 = a.y.iter().map(|v| v * v).sum::<f64>().sqrt() / (2.0 * n) + b.y.iter().map(|v| v * v).sum::<f64>().sqrt() / (2.0 * m);
    let ratio = |d: f64, norm: f64| if d == 0.0 { 0.0 } else { d / norm };
    Ok((ratio(dist1, norm1), ratio(dist2, norm2)))
}

/// Pearson product-moment correlation.
pub fn correlation(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch { left: u.len(), right: v.len() });
    }
    if u.len() < 2 {
        return Err(Error::TooFewPoints { found: u.len(), needed: 2 });
    }
    let n = u.len() as f64;
    let mu = u.iter().sum::<f64>() / n;
    let mv = v.iter().sum::<f64>() / n;
    let (mut suv, mut suu, mut svv) = (0.0, 0.0, 0.0);
    for (a, b) in u.iter().zip(v) {
        let (da, db) = (a - mu, b - mv);
        suv += da * db;
        suu += da * da;
        svv += db * db;
    }
    if suu == 0.0 || svv == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok((suv / (suu * svv).sqrt()).clamp(-1.0, 1.0))
}
