//! Barycenter centering and Gaussian smoothing of closed contours.

use crate::curve_core::SampledCurve;
use crate::error::{Error, Result};
use crate::geometry::{bracket, signed_area, Point2};

/// Area centroid of a closed polygon.
pub fn polygon_barycenter(points: &[Point2]) -> Result<Point2> {
    let n = points.len();
    if n < 3 {
        return Err(Error::TooFewPoints { found: n, needed: 3 });
    }
    // shift to the vertex mean first to keep the cross products well scaled
    let origin = points.iter().copied().sum::<Point2>() / n as f64;
    let local: Vec<Point2> = points.iter().map(|&p| p - origin).collect();
    let area = signed_area(&local);
    let scale = crate::geometry::diameter(points);
    if !(area.abs() > 1e-12 * scale * scale) {
        return Err(Error::DegenerateArea { area });
    }
    let mut acc = Point2::ORIGIN;
    for i in 0..n {
        let (a, b) = (local[i], local[(i + 1) % n]);
        acc += (a + b) * bracket(a, b);
    }
    Ok(origin + acc / (6.0 * area))
}

/// Translates a closed contour so that its area centroid is the origin.
/// Returns the centered contour and the centroid it had.
pub fn center_at_barycenter(contour: &SampledCurve) -> Result<(SampledCurve, Point2)> {
    if !contour.is_closed() {
        return Err(Error::InvalidInput("barycenter centering needs a closed contour".into()));
    }
    let c = polygon_barycenter(contour.points())?;
    Ok((contour.translate(-c)?, c))
}

/// Truncated, normalized Gaussian kernel over sample indices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothingSpec {
    pub sigma: f64,
    pub kernel_radius: usize,
}

pub const DEFAULT_SIGMA: f64 = 2.0;

impl SmoothingSpec {
    /// Kernel of width `sigma` truncated at `4σ`.
    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::InvalidInput(format!("smoothing width must be positive, got {sigma}")));
        }
        Ok(SmoothingSpec { sigma, kernel_radius: (4.0 * sigma).ceil() as usize })
    }

    pub fn weights(&self) -> Vec<f64> {
        let r = self.kernel_radius as i64;
        let w: Vec<f64> = (-r..=r)
            .map(|j| (-(j * j) as f64 / (2.0 * self.sigma * self.sigma)).exp())
            .collect();
        let total: f64 = w.iter().sum();
        w.into_iter().map(|v| v / total).collect()
    }
}

impl Default for SmoothingSpec {
    fn default() -> Self {
        SmoothingSpec::new(DEFAULT_SIGMA).unwrap()
    }
}

/// Circular convolution of the coordinate sequences with the kernel.
pub fn gaussian_smooth(contour: &SampledCurve, spec: &SmoothingSpec) -> Result<SampledCurve> {
    if !contour.is_closed() {
        return Err(Error::InvalidInput("periodic smoothing needs a closed contour".into()));
    }
    let pts = contour.points();
    let n = pts.len() as i64;
    let w = spec.weights();
    let r = spec.kernel_radius as i64;
    let out = (0..n)
        .map(|i| {
            let mut acc = Point2::ORIGIN;
            for (k, wk) in w.iter().enumerate() {
                let j = (i + k as i64 - r).rem_euclid(n) as usize;
                acc += pts[j] * *wk;
            }
            acc
        })
        .collect();
    contour.with_points(out)
}
