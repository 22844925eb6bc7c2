//! Closed-form heat flow of an arc with curvature of one sign.
//!
//! With `h(p) = ∫ g/κ dp`, every label slides so that its `h` value grows at
//! unit rate, while the trace shrinks by `e^{−εt}`. Hence
//! `C(p, t) = e^{−εt}·Ψ(t + h(p))` with `Ψ = C₀ ∘ h⁻¹`, and
//! `κ(p, t) = Φ(t + h(p))` with `Φ = κ₀ ∘ h⁻¹`.

use crate::curve_core::{invariants_at, Eps, SampledCurve};
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::numeric::{cumulative, Grid, Pchip};

/// Below this |κ₀| the characteristic coordinate `h` is not usable.
pub const KAPPA_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct CharacteristicField {
    params: Vec<f64>,
    period: Option<f64>,
    h: Vec<f64>,
    h_range: (f64, f64),
    psi_x: Pchip,
    psi_y: Pchip,
    phi: Pchip,
    eps: Eps,
    shock_time: f64,
}

impl CharacteristicField {
    pub fn new(curve0: &SampledCurve) -> Result<Self> {
        let ders = curve0.derivatives();
        let mut g = Vec::with_capacity(ders.len());
        let mut kappa = Vec::with_capacity(ders.len());
        let mut eps = None;
        for (i, d) in ders.iter().enumerate() {
            let inv = invariants_at(d).map_err(|_| Error::IrregularPoint { index: i })?;
            match eps {
                None => eps = Some(inv.eps),
                Some(e) if e != inv.eps => return Err(Error::IrregularPoint { index: i }),
                _ => {}
            }
            if !(inv.kappa.abs() >= KAPPA_TOL) {
                return Err(Error::KappaVanishes { index: i });
            }
            g.push(inv.g);
            kappa.push(inv.kappa);
        }
        if kappa.iter().any(|k| k.signum() != kappa[0].signum()) {
            let index = kappa.iter().position(|k| k.signum() != kappa[0].signum()).unwrap_or(0);
            return Err(Error::KappaVanishes { index });
        }
        let params = curve0.params().to_vec();
        let ratio: Vec<f64> = g.iter().zip(&kappa).map(|(g, k)| g / k).collect();
        let mut h = cumulative(&ratio, Grid::new(&params, None));
        h.truncate(params.len());

        let mut order: Vec<usize> = (0..h.len()).collect();
        if h[h.len() - 1] < h[0] {
            order.reverse();
        }
        let hs: Vec<f64> = order.iter().map(|&i| h[i]).collect();
        let pts = curve0.points();
        let psi_x = Pchip::new(&hs, &order.iter().map(|&i| pts[i].x).collect::<Vec<_>>());
        let psi_y = Pchip::new(&hs, &order.iter().map(|&i| pts[i].y).collect::<Vec<_>>());
        let phi = Pchip::new(&hs, &order.iter().map(|&i| kappa[i]).collect::<Vec<_>>());

        let grid = curve0.grid();
        let max_slope = (0..kappa.len())
            .map(|i| grid.node_derivatives(&kappa, i, 7, 1)[1] / g[i])
            .fold(f64::NEG_INFINITY, f64::max);
        let shock_time = if max_slope > super::burgers::SLOPE_TOL { 1.0 / max_slope } else { f64::INFINITY };

        Ok(CharacteristicField {
            params,
            period: curve0.period(),
            h_range: (hs[0], hs[hs.len() - 1]),
            h,
            psi_x,
            psi_y,
            phi,
            eps: eps.expect("curve has samples"),
            shock_time,
        })
    }

    /// `h` at every sample of the initial curve (0 at the first sample).
    pub fn h(&self) -> &[f64] {
        &self.h
    }

    pub fn eps(&self) -> Eps {
        self.eps
    }

    pub fn shock_time(&self) -> f64 {
        self.shock_time
    }

    fn argument(&self, index: usize, t: f64) -> Result<f64> {
        let arg = t + self.h[index];
        let (lo, hi) = self.h_range;
        let slack = 1e-12 * (hi - lo);
        if arg < lo - slack || arg > hi + slack {
            return Err(Error::RangeExceeded { t });
        }
        Ok(arg)
    }

    /// Whether label `index` still lies on the initial arc at time `t`.
    pub fn is_defined(&self, index: usize, t: f64) -> bool {
        self.argument(index, t).is_ok()
    }

    pub fn point_at(&self, index: usize, t: f64) -> Result<Point2> {
        let arg = self.argument(index, t)?;
        let scale = (-self.eps.as_f64() * t).exp();
        Ok(Point2::new(self.psi_x.eval(arg), self.psi_y.eval(arg)) * scale)
    }

    pub fn kappa_at(&self, index: usize, t: f64) -> Result<f64> {
        Ok(self.phi.eval(self.argument(index, t)?))
    }

    /// The whole curve at time `t`; fails if any label has left the arc.
    pub fn solution(&self, t: f64) -> Result<SampledCurve> {
        let pts = (0..self.h.len()).map(|i| self.point_at(i, t)).collect::<Result<Vec<_>>>()?;
        SampledCurve::with_params(pts, self.params.clone(), self.period)
    }
}

/// `C(·, t)` for the heat flow from `curve0`.
pub fn exact_heat_solution(curve0: &SampledCurve, t: f64) -> Result<SampledCurve> {
    CharacteristicField::new(curve0)?.solution(t)
}
