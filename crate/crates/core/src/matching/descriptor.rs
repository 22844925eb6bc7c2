//! Global descriptors of closed contours.

use serde::Serialize;

use crate::curve_core::{arc_length, signature, SampledCurve, DEFAULT_CLIP};
use crate::error::{Error, Result};
use crate::geometry::{bracket, signed_area, Point2};
use crate::numeric::median;
use crate::preprocess::polygon_barycenter;

/// Corners are Euclidean-curvature peaks above this multiple of the median.
pub const CORNER_FACTOR: f64 = 2.0;
/// Half-width (in samples) of the neighbourhood a corner peak must dominate.
const CORNER_RADIUS: usize = 2;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContourDescriptor {
    pub total_arclength: f64,
    /// `∫ |κ| ds` over the contour.
    pub kappa_integral: f64,
    pub area: f64,
    pub barycenter: Point2,
    pub corner_count: usize,
}

pub fn descriptor(contour: &SampledCurve) -> Result<ContourDescriptor> {
    if !contour.is_closed() {
        return Err(Error::InvalidInput("descriptors need a closed contour".into()));
    }
    let n = contour.len();
    let total_arclength = arc_length(contour, 0, n)?;
    let kappa_integral = signature(contour, DEFAULT_CLIP)?.abs_kappa_integral();
    Ok(ContourDescriptor {
        total_arclength,
        kappa_integral,
        area: signed_area(contour.points()),
        barycenter: polygon_barycenter(contour.points())?,
        corner_count: corner_indices(contour).len(),
    })
}

/// Unsigned Euclidean curvature at every sample.
pub fn euclidean_curvature(contour: &SampledCurve) -> Vec<f64> {
    contour
        .derivatives()
        .iter()
        .map(|d| (bracket(d.d1, d.d2) / d.d1.norm().powi(3)).abs())
        .collect()
}

/// Samples where the Euclidean curvature peaks above the corner threshold.
pub fn corner_indices(contour: &SampledCurve) -> Vec<usize> {
    let k = euclidean_curvature(contour);
    let n = k.len();
    let threshold = CORNER_FACTOR * median(&k);
    (0..n)
        .filter(|&i| {
            if !(k[i] > threshold) {
                return false;
            }
            // strict on the left, loose on the right, so a flat top counts once
            (1..=CORNER_RADIUS).all(|d| k[i] > k[(i + n - d) % n] && k[i] >= k[(i + d) % n])
        })
        .collect()
}

/// Relative difference of arc-lengths plus relative corner-count mismatch.
pub fn descriptor_distance(a: &ContourDescriptor, b: &ContourDescriptor) -> f64 {
    let la = a.total_arclength.abs();
    let lb = b.total_arclength.abs();
    let length = if la.max(lb) > 0.0 { (la - lb).abs() / la.max(lb) } else { 0.0 };
    let corners = a.corner_count.abs_diff(b.corner_count) as f64 / a.corner_count.max(b.corner_count).max(1) as f64;
    length + corners
}
