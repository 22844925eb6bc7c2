//! Curvature dynamics of the heat flow: `κ_t = κ κ_s`, solved by
//! characteristics before the first crossing.

use crate::error::{Error, Result};
use crate::numeric::{bisect, lagrange_weights, Grid};

const INTERP_WIDTH: usize = 6;
const ROOT_TOL: f64 = 1e-13;
/// Slopes below this count as flat, so the shock time is infinite.
pub(crate) const SLOPE_TOL: f64 = 1e-6;

/// Samples of a scalar function of arc-length, periodic when `period` is set.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    pub s: Vec<f64>,
    pub values: Vec<f64>,
    pub period: Option<f64>,
}

impl Profile {
    pub fn new(s: Vec<f64>, values: Vec<f64>, period: Option<f64>) -> Result<Self> {
        if s.len() != values.len() {
            return Err(Error::LengthMismatch { left: s.len(), right: values.len() });
        }
        if s.len() < INTERP_WIDTH + 1 {
            return Err(Error::TooFewPoints { found: s.len(), needed: INTERP_WIDTH + 1 });
        }
        if s.windows(2).any(|w| !(w[1] > w[0])) || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("profile grid must be strictly increasing with finite values".into()));
        }
        if let Some(p) = period {
            if !(p > s[s.len() - 1] - s[0]) {
                return Err(Error::InvalidInput("period shorter than the sampled range".into()));
            }
        }
        Ok(Profile { s, values, period })
    }

    pub fn grid(&self) -> Grid<'_> {
        Grid::new(&self.s, self.period)
    }

    /// Local polynomial interpolation; `None` off an open profile.
    pub fn eval(&self, s: f64) -> Option<f64> {
        if self.period.is_none() && (s < self.s[0] || s > self.s[self.s.len() - 1]) {
            return None;
        }
        let w = self.grid().window_at(s, INTERP_WIDTH);
        Some(w.apply(&lagrange_weights(s, &w.t), &self.values))
    }

    /// First time at which characteristics cross: `1 / max dκ₀/ds`, or
    /// infinity when the profile never increases.
    pub fn shock_time(&self) -> f64 {
        let grid = self.grid();
        let max_slope = (0..self.s.len())
            .map(|i| grid.node_derivatives(&self.values, i, 7, 1)[1])
            .fold(f64::NEG_INFINITY, f64::max);
        if max_slope > SLOPE_TOL {
            1.0 / max_slope
        } else {
            f64::INFINITY
        }
    }
}

/// Solution at one point: `κ₀(s₀)` with `s₀ − κ₀(s₀)·t = s`. `None` when the
/// characteristic through `s` starts off an open profile.
pub fn burgers_at(kappa0: &Profile, s: f64, t: f64) -> Option<f64> {
    if t == 0.0 {
        return kappa0.eval(s);
    }
    let bound = kappa0.values.iter().map(|v| v.abs()).fold(0.0, f64::max) * t.abs();
    let (mut lo, mut hi) = (s - bound - 1e-12, s + bound + 1e-12);
    if kappa0.period.is_none() {
        lo = lo.max(kappa0.s[0]);
        hi = hi.min(kappa0.s[kappa0.s.len() - 1]);
        if lo > hi {
            return None;
        }
    }
    let f = |x: f64| x - kappa0.eval(x).unwrap_or(f64::NAN) * t - s;
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return kappa0.eval(lo);
    }
    if fhi == 0.0 {
        return kappa0.eval(hi);
    }
    if !(flo < 0.0 && fhi > 0.0) {
        return None;
    }
    bisect(f, lo, hi, ROOT_TOL).and_then(|s0| kappa0.eval(s0))
}

/// κ(·, t) on the grid of `kappa0`. Entries are `None` where the solution
/// would need data from beyond an open profile.
pub fn burgers_characteristics(kappa0: &Profile, t: f64) -> Result<Vec<Option<f64>>> {
    if !(t >= 0.0) {
        return Err(Error::InvalidInput(format!("time must be non-negative, got {t}")));
    }
    let shock_time = kappa0.shock_time();
    if t >= shock_time {
        return Err(Error::PastShock { t, shock_time });
    }
    Ok(kappa0.s.iter().map(|&s| burgers_at(kappa0, s, t)).collect())
}

/// Cell-centered finite-volume solution of `κ_t + (−κ²/2)_s = 0` on a
/// periodic profile with `cells` cells (Godunov flux, CFL 0.5). Initial cell
/// averages come from 3-point Gauss quadrature of the interpolated profile.
/// First-order accurate; meant as an independent check of the
/// characteristic solution.
pub fn upwind_reference(kappa0: &Profile, t: f64, cells: usize) -> Result<Profile> {
    let period = kappa0
        .period
        .ok_or_else(|| Error::InvalidInput("the upwind reference needs a periodic profile".into()))?;
    if cells < 8 || !(t >= 0.0) {
        return Err(Error::InvalidInput("need at least 8 cells and t >= 0".into()));
    }
    let h = period / cells as f64;
    let s0 = kappa0.s[0];
    let gauss = [(-(0.6f64).sqrt(), 5.0 / 18.0), (0.0, 8.0 / 18.0), ((0.6f64).sqrt(), 5.0 / 18.0)];
    let mut u: Vec<f64> = (0..cells)
        .map(|i| {
            let mid = s0 + (i as f64 + 0.5) * h;
            gauss.iter().map(|(x, w)| w * kappa0.eval(mid + 0.5 * h * x).unwrap_or(0.0)).sum()
        })
        .collect();
    let flux = |l: f64, r: f64| {
        if l <= r {
            -0.5 * (l * l).max(r * r)
        } else if r <= 0.0 && 0.0 <= l {
            0.0
        } else {
            -0.5 * (l * l).min(r * r)
        }
    };
    let mut now = 0.0;
    let mut f = vec![0.0; cells];
    while now < t {
        let speed = u.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let mut dt = if speed > 0.0 { 0.5 * h / speed } else { t - now };
        if now + dt > t {
            dt = t - now;
        }
        // f[i] is the flux through the left face of cell i
        for i in 0..cells {
            f[i] = flux(u[(i + cells - 1) % cells], u[i]);
        }
        for i in 0..cells {
            u[i] -= dt / h * (f[(i + 1) % cells] - f[i]);
        }
        now += dt;
    }
    let centers = (0..cells).map(|i| s0 + (i as f64 + 0.5) * h).collect();
    Profile::new(centers, u, Some(period))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_core::linspace;
    use std::f64::consts::TAU;

    fn sine(n: usize) -> Profile {
        let s: Vec<f64> = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
        let v = s.iter().map(|x| x.sin()).collect();
        Profile::new(s, v, Some(TAU)).unwrap()
    }

    #[test]
    fn constant_profile_is_stationary() {
        let s = linspace(0.0, 3.0, 40);
        let p = Profile::new(s.clone(), vec![0.7; 40], None).unwrap();
        assert_eq!(p.shock_time(), f64::INFINITY);
        let out = burgers_characteristics(&p, 2.0).unwrap();
        for v in out.iter().flatten() {
            assert!((v - 0.7).abs() < 1e-12);
        }
        // the right end loses its characteristic foot
        assert!(out[0].is_some() && out[39].is_none());
    }

    #[test]
    fn upwind_conserves_mass_and_tracks_sine() {
        let p = sine(512);
        let r = upwind_reference(&p, 0.3, 4096).unwrap();
        assert!(r.values.iter().sum::<f64>().abs() < 1e-9);
        let mut err: f64 = 0.0;
        for (s, v) in r.s.iter().zip(&r.values) {
            err = err.max((burgers_at(&p, *s, 0.3).unwrap() - v).abs());
        }
        assert!(err < 5e-3, "{err}");
    }

    #[test]
    fn identity_at_zero() {
        let p = sine(64);
        let out = burgers_characteristics(&p, 0.0).unwrap();
        for (a, b) in out.iter().zip(&p.values) {
            assert!((a.unwrap() - b).abs() < 1e-14);
        }
    }

    #[test]
    fn sine_shock_time_and_implicit_equation() {
        let p = sine(256);
        assert!((p.shock_time() - 1.0).abs() < 1e-6);
        assert!(matches!(burgers_characteristics(&p, 1.001), Err(Error::PastShock { .. })));
        let t = 0.5;
        let out = burgers_characteristics(&p, t).unwrap();
        for (s, k) in p.s.iter().zip(&out) {
            let k = k.unwrap();
            // κ = sin(s + κ t)
            assert!((k - (s + k * t).sin()).abs() < 1e-8);
        }
    }
}
