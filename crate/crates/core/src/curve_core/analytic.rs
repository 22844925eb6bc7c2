//! Curves with closed-form derivatives, used as exact oracles and as bases
//! for synthetic data.

use std::f64::consts::TAU;

use nalgebra::{Complex, Matrix2};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{Derivatives3, Point2};

use super::sampled::SampledCurve;

/// A smooth curve `p ↦ x(p)` with exact derivatives up to order 3.
pub trait ParametricCurve: Send + Sync {
    fn derivatives(&self, p: f64) -> Derivatives3;

    fn point(&self, p: f64) -> Point2 {
        self.derivatives(p).pos
    }

    /// Parameter period for closed curves.
    fn period(&self) -> Option<f64> {
        None
    }

    /// Samples at the given parameters; closed when the curve has a period.
    fn sample(&self, params: &[f64]) -> Result<SampledCurve> {
        let pts = params.iter().map(|&p| self.point(p)).collect();
        SampledCurve::with_params(pts, params.to_vec(), self.period())
    }

    /// `n` equally spaced parameters over one period starting at `p0`.
    fn sample_closed(&self, n: usize, p0: f64) -> Result<SampledCurve> {
        let period = self.period().unwrap_or(TAU);
        let params: Vec<f64> = (0..n).map(|i| p0 + period * i as f64 / n as f64).collect();
        self.sample(&params)
    }
}

impl<T: ParametricCurve + ?Sized> ParametricCurve for Box<T> {
    fn derivatives(&self, p: f64) -> Derivatives3 {
        (**self).derivatives(p)
    }
    fn period(&self) -> Option<f64> {
        (**self).period()
    }
}

impl<T: ParametricCurve + ?Sized> ParametricCurve for &T {
    fn derivatives(&self, p: f64) -> Derivatives3 {
        (**self).derivatives(p)
    }
    fn period(&self) -> Option<f64> {
        (**self).period()
    }
}

/// `n` equally spaced values over `[a, b]` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

/// One Fourier mode `amplitude · cos(order·θ + phase)` of a log-radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Harmonic {
    pub order: f64,
    pub amplitude: f64,
    pub phase: f64,
}

/// Polar curve `r(θ) = scale · exp(growth·θ + Σ harmonics)`, parametrized by θ.
///
/// `growth = 0` without harmonics is a circle; `growth = cot φ` gives the
/// logarithmic spiral of angle φ. The curve is closed iff `growth = 0` and all
/// harmonic orders are integers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarCurve {
    pub scale: f64,
    pub growth: f64,
    #[serde(default)]
    pub harmonics: Vec<Harmonic>,
}

impl PolarCurve {
    pub fn circle(radius: f64) -> Self {
        PolarCurve { scale: radius, growth: 0.0, harmonics: Vec::new() }
    }

    /// Spiral whose tangent meets the radius at angle `phi`.
    pub fn log_spiral(phi: f64) -> Self {
        PolarCurve { scale: 1.0, growth: 1.0 / phi.tan(), harmonics: Vec::new() }
    }

    pub fn perturbed_circle(radius: f64, harmonics: Vec<Harmonic>) -> Self {
        PolarCurve { scale: radius, growth: 0.0, harmonics }
    }

    pub fn with_harmonics(mut self, harmonics: Vec<Harmonic>) -> Self {
        self.harmonics = harmonics;
        self
    }

    /// Log-radius and its first three θ-derivatives.
    fn log_radius(&self, th: f64) -> [f64; 4] {
        let mut f = [self.scale.ln() + self.growth * th, self.growth, 0.0, 0.0];
        for h in &self.harmonics {
            let arg = h.order * th + h.phase;
            let (s, c) = arg.sin_cos();
            let k = h.order;
            f[0] += h.amplitude * c;
            f[1] -= h.amplitude * k * s;
            f[2] -= h.amplitude * k * k * c;
            f[3] += h.amplitude * k * k * k * s;
        }
        f
    }
}

impl ParametricCurve for PolarCurve {
    fn derivatives(&self, th: f64) -> Derivatives3 {
        let f = self.log_radius(th);
        // z = exp(w), w = f + iθ
        let w1 = Complex::new(f[1], 1.0);
        let w2 = Complex::new(f[2], 0.0);
        let w3 = Complex::new(f[3], 0.0);
        let z = Complex::from_polar(f[0].exp(), th);
        let z1 = w1 * z;
        let z2 = (w2 + w1 * w1) * z;
        let z3 = (w3 + 3.0 * w1 * w2 + w1 * w1 * w1) * z;
        let p = |c: Complex<f64>| Point2::new(c.re, c.im);
        Derivatives3::new(p(z), p(z1), p(z2), p(z3))
    }

    fn period(&self) -> Option<f64> {
        let closed = self.growth == 0.0 && self.harmonics.iter().all(|h| h.order.fract() == 0.0);
        closed.then_some(TAU)
    }
}

/// Axis-aligned ellipse `(a cos p, b sin p)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ellipse {
    pub a: f64,
    pub b: f64,
}

impl ParametricCurve for Ellipse {
    fn derivatives(&self, p: f64) -> Derivatives3 {
        let (s, c) = p.sin_cos();
        Derivatives3::new(
            Point2::new(self.a * c, self.b * s),
            Point2::new(-self.a * s, self.b * c),
            Point2::new(-self.a * c, -self.b * s),
            Point2::new(self.a * s, -self.b * c),
        )
    }

    fn period(&self) -> Option<f64> {
        Some(TAU)
    }
}

/// Graph `(p, p^α)` for `p > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerCurve {
    pub alpha: f64,
}

impl ParametricCurve for PowerCurve {
    fn derivatives(&self, p: f64) -> Derivatives3 {
        let a = self.alpha;
        Derivatives3::new(
            Point2::new(p, p.powf(a)),
            Point2::new(1.0, a * p.powf(a - 1.0)),
            Point2::new(0.0, a * (a - 1.0) * p.powf(a - 2.0)),
            Point2::new(0.0, a * (a - 1.0) * (a - 2.0) * p.powf(a - 3.0)),
        )
    }
}

/// Graph `(p, p log p)` for `p > 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct XLogX;

impl ParametricCurve for XLogX {
    fn derivatives(&self, p: f64) -> Derivatives3 {
        Derivatives3::new(
            Point2::new(p, p * p.ln()),
            Point2::new(1.0, p.ln() + 1.0),
            Point2::new(0.0, 1.0 / p),
            Point2::new(0.0, -1.0 / (p * p)),
        )
    }
}

/// Unit hyperbola branch `(p, 1/p)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Hyperbola;

impl ParametricCurve for Hyperbola {
    fn derivatives(&self, p: f64) -> Derivatives3 {
        Derivatives3::new(
            Point2::new(p, 1.0 / p),
            Point2::new(1.0, -1.0 / (p * p)),
            Point2::new(0.0, 2.0 / p.powi(3)),
            Point2::new(0.0, -6.0 / p.powi(4)),
        )
    }
}

/// Image of a curve under a linear map.
#[derive(Clone, Debug)]
pub struct Transformed<C> {
    pub inner: C,
    pub matrix: Matrix2<f64>,
}

impl<C: ParametricCurve> Transformed<C> {
    pub fn new(inner: C, matrix: Matrix2<f64>) -> Self {
        Transformed { inner, matrix }
    }
}

impl<C: ParametricCurve> ParametricCurve for Transformed<C> {
    fn derivatives(&self, p: f64) -> Derivatives3 {
        self.inner.derivatives(p).transform(&self.matrix)
    }

    fn period(&self) -> Option<f64> {
        self.inner.period()
    }
}
