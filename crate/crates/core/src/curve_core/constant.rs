//! Curves of constant curvature: classification and reconstruction of a curve
//! from a prescribed curvature function.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{bracket, Point2};
use crate::numeric::Grid;

use super::invariants::Eps;
use super::sampled::SampledCurve;

/// Tolerance for recognising the boundary cases κ = 0 and κ = 2.
pub const CLASSIFY_TOL: f64 = 1e-9;

/// Canonical representatives of the constant-curvature orbits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ConstantCurvatureClass {
    /// `y = x^α` with α ∈ (0, 1).
    PowerCurve { alpha: f64 },
    /// `y = x log x`.
    XLogX,
    UnitCircle,
    /// Logarithmic spiral with tangent-to-radius angle φ ∈ (0, π/2).
    LogSpiral { phi: f64 },
    /// `y = 1/x`.
    Hyperbola,
}

impl ConstantCurvatureClass {
    /// The curvature carried by the class (for the unreversed orientation).
    pub fn kappa(&self) -> f64 {
        match *self {
            ConstantCurvatureClass::PowerCurve { alpha } => 1.0 / alpha.sqrt() + alpha.sqrt(),
            ConstantCurvatureClass::XLogX => 2.0,
            ConstantCurvatureClass::UnitCircle | ConstantCurvatureClass::Hyperbola => 0.0,
            ConstantCurvatureClass::LogSpiral { phi } => 2.0 * phi.cos(),
        }
    }
}

impl std::fmt::Display for ConstantCurvatureClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConstantCurvatureClass::PowerCurve { alpha } => write!(f, "PowerCurve alpha={alpha:.4}"),
            ConstantCurvatureClass::XLogX => write!(f, "XLogX"),
            ConstantCurvatureClass::UnitCircle => write!(f, "UnitCircle"),
            ConstantCurvatureClass::LogSpiral { phi } => write!(f, "LogSpiral phi={phi:.4}"),
            ConstantCurvatureClass::Hyperbola => write!(f, "Hyperbola"),
        }
    }
}

/// A class together with whether the curve runs opposite to the
/// representative (the case κ < 0).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub class: ConstantCurvatureClass,
    pub reversed: bool,
}

/// Orbit of a curve with constant curvature `kappa`.
///
/// For ε = −1 only κ = 0 (the hyperbola) is classified.
pub fn classify_constant(kappa: f64, eps: Eps) -> Result<Classification> {
    if !kappa.is_finite() {
        return Err(Error::InvalidInput(format!("curvature {kappa} is not finite")));
    }
    let reversed = kappa < -CLASSIFY_TOL;
    let k = kappa.abs();
    if eps == Eps::Minus {
        return if k <= CLASSIFY_TOL {
            Ok(Classification { class: ConstantCurvatureClass::Hyperbola, reversed: false })
        } else {
            Err(Error::Unclassified)
        };
    }
    let class = if k <= CLASSIFY_TOL {
        ConstantCurvatureClass::UnitCircle
    } else if (k - 2.0).abs() <= CLASSIFY_TOL {
        ConstantCurvatureClass::XLogX
    } else if k > 2.0 {
        let root = 0.5 * (k - (k * k - 4.0).sqrt());
        ConstantCurvatureClass::PowerCurve { alpha: root * root }
    } else {
        ConstantCurvatureClass::LogSpiral { phi: (0.5 * k).acos() }
    };
    Ok(Classification { class, reversed })
}

/// Integrates `x'' = κ(s)·x' − ε·x` from `(x0, v0)` over the grid `s`
/// (classical fourth-order Runge-Kutta, one step per grid interval).
/// The result is parametrized by `s`; when `[x0, v0]` has the orientation
/// matching ε the output has unit metric density.
pub fn reconstruct_with<F: Fn(f64) -> f64>(kappa: F, eps: Eps, x0: Point2, v0: Point2, s: &[f64]) -> Result<SampledCurve> {
    if bracket(x0, v0).abs() <= 1e-14 * x0.norm() * v0.norm() {
        return Err(Error::DegenerateInit);
    }
    let e = eps.as_f64();
    let rhs = |t: f64, x: Point2, v: Point2| (v, v * kappa(t) - x * e);
    let mut pts = Vec::with_capacity(s.len());
    let (mut x, mut v) = (x0, v0);
    pts.push(x);
    for w in s.windows(2) {
        let (t, h) = (w[0], w[1] - w[0]);
        let (k1x, k1v) = rhs(t, x, v);
        let (k2x, k2v) = rhs(t + 0.5 * h, x + k1x * (0.5 * h), v + k1v * (0.5 * h));
        let (k3x, k3v) = rhs(t + 0.5 * h, x + k2x * (0.5 * h), v + k2v * (0.5 * h));
        let (k4x, k4v) = rhs(t + h, x + k3x * h, v + k3v * h);
        x += (k1x + k2x * 2.0 + k3x * 2.0 + k4x) * (h / 6.0);
        v += (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * (h / 6.0);
        pts.push(x);
    }
    SampledCurve::with_params(pts, s.to_vec(), None)
}

/// [`reconstruct_with`] for a sampled curvature profile `kappa[i] = κ(s[i])`;
/// off-grid values come from local cubic interpolation.
pub fn reconstruct_from_curvature(s: &[f64], kappa: &[f64], eps: Eps, x0: Point2, v0: Point2) -> Result<SampledCurve> {
    if s.len() != kappa.len() {
        return Err(Error::LengthMismatch { left: s.len(), right: kappa.len() });
    }
    let grid = Grid::new(s, None);
    reconstruct_with(|t| grid.derivatives_at(kappa, t, 4, 0)[0], eps, x0, v0, s)
}
