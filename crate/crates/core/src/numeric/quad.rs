//! Quadrature of sampled functions by local cubic interpolation.
//!
//! Each grid interval is integrated separately from the cubic through four
//! nearby nodes, so integrals over adjacent index ranges add up exactly.

use super::fd::{fornberg, Grid};

const GAUSS2: f64 = 0.577_350_269_189_625_8; // 1/sqrt(3)

/// Integral of `f` over every grid interval. Open grids give `n - 1` entries,
/// periodic grids `n` (the last one closes the loop).
pub fn interval_integrals(f: &[f64], grid: Grid<'_>) -> Vec<f64> {
    let n = grid.len();
    let m = if grid.period.is_some() { n } else { n.saturating_sub(1) };
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let a = grid.t[i];
        let b = match grid.period {
            Some(p) if i + 1 == n => grid.t[0] + p,
            _ => grid.t[i + 1],
        };
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        // window anchored on the interval: nodes i-1 .. i+2
        let w = grid.window_at(mid, 4.min(n));
        let mut acc = 0.0;
        for z in [mid - half * GAUSS2, mid + half * GAUSS2] {
            let wt = fornberg(z, &w.t, 0);
            acc += w.apply(&wt[0], f);
        }
        out.push(acc * half);
    }
    out
}

/// Running integral starting at 0 at the first node. For periodic grids the
/// result has `n + 1` entries, the last being the integral over the period.
pub fn cumulative(f: &[f64], grid: Grid<'_>) -> Vec<f64> {
    let pieces = interval_integrals(f, grid);
    let mut out = Vec::with_capacity(pieces.len() + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for p in pieces {
        acc += p;
        out.push(acc);
    }
    out
}
