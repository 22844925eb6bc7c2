use nalgebra::Matrix2;

use crate::error::{Error, Result};
use crate::geometry::{diameter, Derivatives3, Point2};
use crate::numeric::Grid;

/// Minimum number of samples: a 7-point stencil must fit.
pub const MIN_POINTS: usize = 7;

/// Stencil width used for finite-difference derivatives on sampled curves.
pub const FD_WIDTH: usize = 7;

/// Ordered planar samples of a curve with a parameter value per sample.
///
/// Without explicit parameters the sample index is the parameter, and a
/// closed curve then has period `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledCurve {
    points: Vec<Point2>,
    closed: bool,
    params: Vec<f64>,
    period: Option<f64>,
    explicit_params: bool,
}

impl SampledCurve {
    pub fn new(points: Vec<Point2>, closed: bool) -> Result<Self> {
        let n = points.len();
        let params = (0..n).map(|i| i as f64).collect();
        let period = closed.then_some(n as f64);
        Self::build(points, closed, params, period, false)
    }

    pub fn closed(points: Vec<Point2>) -> Result<Self> {
        Self::new(points, true)
    }

    pub fn open(points: Vec<Point2>) -> Result<Self> {
        Self::new(points, false)
    }

    /// Curve with explicit, strictly increasing parameters. Closed curves also
    /// need the parameter period (which must exceed the parameter span).
    pub fn with_params(points: Vec<Point2>, params: Vec<f64>, period: Option<f64>) -> Result<Self> {
        let closed = period.is_some();
        if params.len() != points.len() {
            return Err(Error::LengthMismatch { left: points.len(), right: params.len() });
        }
        if params.windows(2).any(|w| !(w[1] > w[0])) || params.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidInput("curve parameters must be finite and strictly increasing".into()));
        }
        if let Some(p) = period {
            let span = params[params.len() - 1] - params[0];
            if !(p > span) {
                return Err(Error::InvalidInput(format!("period {p} does not exceed parameter span {span}")));
            }
        }
        Self::build(points, closed, params, period, true)
    }

    fn build(points: Vec<Point2>, closed: bool, params: Vec<f64>, period: Option<f64>, explicit: bool) -> Result<Self> {
        if points.len() < MIN_POINTS {
            return Err(Error::TooFewPoints { found: points.len(), needed: MIN_POINTS });
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidInput(format!("point {i} is not finite")));
        }
        let n = points.len();
        let pairs = if closed { n } else { n - 1 };
        for i in 0..pairs {
            if points[i] == points[(i + 1) % n] {
                return Err(Error::InvalidInput(format!("points {i} and {} coincide", (i + 1) % n)));
            }
        }
        Ok(SampledCurve { points, closed, params, period, explicit_params: explicit })
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Point2> {
        self.points
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Parameter values (sample indices when none were supplied).
    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn has_explicit_params(&self) -> bool {
        self.explicit_params
    }

    pub fn period(&self) -> Option<f64> {
        self.period
    }

    pub fn grid(&self) -> Grid<'_> {
        Grid::new(&self.params, self.period)
    }

    pub fn diameter(&self) -> f64 {
        diameter(&self.points)
    }

    /// Position and parameter derivatives at every sample from 7-point
    /// finite differences (periodic wrap on closed curves).
    pub fn derivatives(&self) -> Vec<Derivatives3> {
        let grid = self.grid();
        (0..self.len())
            .map(|i| {
                let d = grid.node_derivatives(&self.points, i, FD_WIDTH, 3);
                Derivatives3::new(self.points[i], d[1], d[2], d[3])
            })
            .collect()
    }

    /// Image under a linear map, keeping the parametrization.
    pub fn transform(&self, m: &Matrix2<f64>) -> Result<Self> {
        self.map_points(|p| p.transform(m))
    }

    pub fn translate(&self, v: Point2) -> Result<Self> {
        self.map_points(|p| p + v)
    }

    /// Same parametrization with new point values.
    pub fn with_points(&self, points: Vec<Point2>) -> Result<Self> {
        if points.len() != self.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: points.len() });
        }
        Self::build(points, self.closed, self.params.clone(), self.period, self.explicit_params)
    }

    pub fn map_points<F: Fn(Point2) -> Point2>(&self, f: F) -> Result<Self> {
        let pts = self.points.iter().map(|&p| f(p)).collect();
        Self::build(pts, self.closed, self.params.clone(), self.period, self.explicit_params)
    }

    /// Same trace traversed backwards, with parameter `-t`.
    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        let mut params: Vec<f64> = self.params.iter().map(|t| -t).collect();
        params.reverse();
        SampledCurve { points, closed: self.closed, params, period: self.period, explicit_params: self.explicit_params }
    }
}
