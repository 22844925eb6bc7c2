//! Dynamic time warping with an optional Sakoe-Chiba band.

use crate::error::{Error, Result};

/// Default band half-width: `max(8, 10%)` of the longer sequence.
pub fn default_window(n: usize, m: usize) -> usize {
    8.max(n.max(m) / 10)
}

/// Optimal monotone path from `(0, 0)` to `(n−1, m−1)` under the cost
/// `Σ |a_i − b_j|`, with steps `(1,0)`, `(0,1)`, `(1,1)`. With a window,
/// only cells with `|i − j| ≤ window` are allowed.
pub fn dtw_align(a: &[f64], b: &[f64], window: Option<usize>) -> Result<(Vec<(usize, usize)>, f64)> {
    let (n, m) = (a.len(), b.len());
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput("DTW needs nonempty sequences".into()));
    }
    let w = window.unwrap_or(usize::MAX);
    if w < n.abs_diff(m) {
        return Err(Error::BandInfeasible { window: w, n, m });
    }
    let inside = |i: usize, j: usize| i.abs_diff(j) <= w;
    let mut acc = vec![f64::INFINITY; n * m];
    let at = |i: usize, j: usize| i * m + j;
    for i in 0..n {
        let (j0, j1) = if w == usize::MAX { (0, m - 1) } else { (i.saturating_sub(w), (i + w).min(m - 1)) };
        for j in j0..=j1 {
            let c = (a[i] - b[j]).abs();
            let best = if i == 0 && j == 0 {
                0.0
            } else {
                let mut best = f64::INFINITY;
                if i > 0 && j > 0 {
                    best = best.min(acc[at(i - 1, j - 1)]);
                }
                if i > 0 && inside(i - 1, j) {
                    best = best.min(acc[at(i - 1, j)]);
                }
                if j > 0 && inside(i, j - 1) {
                    best = best.min(acc[at(i, j - 1)]);
                }
                best
            };
            acc[at(i, j)] = c + best;
        }
    }
    let cost = acc[at(n - 1, m - 1)];
    let mut path = vec![(n - 1, m - 1)];
    let (mut i, mut j) = (n - 1, m - 1);
    while (i, j) != (0, 0) {
        let diag = if i > 0 && j > 0 { acc[at(i - 1, j - 1)] } else { f64::INFINITY };
        let up = if i > 0 { acc[at(i - 1, j)] } else { f64::INFINITY };
        let left = if j > 0 { acc[at(i, j - 1)] } else { f64::INFINITY };
        if diag <= up && diag <= left {
            i -= 1;
            j -= 1;
        } else if up <= left {
            i -= 1;
        } else {
            j -= 1;
        }
        path.push((i, j));
    }
    path.reverse();
    Ok((path, cost))
}
