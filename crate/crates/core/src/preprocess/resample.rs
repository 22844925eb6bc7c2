//! Resampling a closed contour to a fixed number of points.

use serde::{Deserialize, Serialize};

use crate::curve_core::{SampledCurve, FD_WIDTH};
use crate::error::{Error, Result};
use crate::geometry::{bracket, Point2};
use crate::numeric::{cumulative, lagrange_weights};

pub const DEFAULT_SAMPLES: usize = 85;
const KMEANS_MAX_ITER: usize = 100;
const KMEANS_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResampleMode {
    /// Euclidean k-means on the 2-D points.
    KMeans,
    /// Equal steps of centro-affine arc-length (commutes with linear maps).
    #[default]
    ArcLength,
}

pub fn resample(contour: &SampledCurve, k: usize, mode: ResampleMode) -> Result<SampledCurve> {
    match mode {
        ResampleMode::KMeans => kmeans_resample(contour, k),
        ResampleMode::ArcLength => arclength_resample(contour, k),
    }
}

/// k-means centroids of the contour points, seeded at `k` equally spaced
/// indices and ordered along the contour by the index of the nearest
/// original point.
pub fn kmeans_resample(contour: &SampledCurve, k: usize) -> Result<SampledCurve> {
    let pts = contour.points();
    let n = pts.len();
    if k == 0 || n < k {
        return Err(Error::TooFewPoints { found: n, needed: k.max(1) });
    }
    let mut centers: Vec<Point2> = (0..k).map(|j| pts[j * n / k]).collect();
    let mut label = vec![0usize; n];
    for _ in 0..KMEANS_MAX_ITER {
        for (i, p) in pts.iter().enumerate() {
            label[i] = nearest(&centers, *p);
        }
        let mut sum = vec![Point2::ORIGIN; k];
        let mut count = vec![0usize; k];
        for (i, p) in pts.iter().enumerate() {
            sum[label[i]] += *p;
            count[label[i]] += 1;
        }
        let mut moved: f64 = 0.0;
        for j in 0..k {
            if count[j] > 0 {
                let c = sum[j] / count[j] as f64;
                moved = moved.max(c.distance(centers[j]));
                centers[j] = c;
            }
        }
        if moved < KMEANS_TOL {
            break;
        }
    }
    let mut keyed: Vec<(usize, Point2)> = centers.iter().map(|&c| (nearest(pts, c), c)).collect();
    keyed.sort_by_key(|&(i, _)| i);
    SampledCurve::closed(keyed.into_iter().map(|(_, c)| c).collect())
}

fn nearest(set: &[Point2], p: Point2) -> usize {
    let mut best = (0, f64::INFINITY);
    for (j, c) in set.iter().enumerate() {
        let d = (*c - p).dot(*c - p);
        if d < best.1 {
            best = (j, d);
        }
    }
    best.0
}

/// `k` points at equal centro-affine arc-length steps, starting at the first
/// sample. Metric density comes from finite differences; positions are
/// interpolated with local degree-5 polynomials in the parameter.
pub fn arclength_resample(contour: &SampledCurve, k: usize) -> Result<SampledCurve> {
    if !contour.is_closed() {
        return Err(Error::InvalidInput("arc-length resampling needs a closed contour".into()));
    }
    if k < crate::curve_core::MIN_POINTS {
        return Err(Error::TooFewPoints { found: k, needed: crate::curve_core::MIN_POINTS });
    }
    let ders = contour.derivatives();
    let g: Vec<f64> = ders
        .iter()
        .map(|d| {
            let v = (bracket(d.d1, d.d2) / bracket(d.pos, d.d1)).abs().sqrt();
            if v.is_finite() {
                v
            } else {
                0.0
            }
        })
        .collect();
    let grid = contour.grid();
    let s = cumulative(&g, grid);
    let total = s[s.len() - 1];
    if !(total > 0.0) {
        return Err(Error::InvalidInput("contour has zero centro-affine length".into()));
    }
    let t = contour.params();
    let period = contour.period().expect("closed contour has a period");
    let n = t.len();
    let mut out = Vec::with_capacity(k);
    let mut seg = 0;
    for j in 0..k {
        let target = total * j as f64 / k as f64;
        while seg + 1 < s.len() - 1 && s[seg + 1] <= target {
            seg += 1;
        }
        let t0 = t[seg];
        let t1 = if seg + 1 == n { t[0] + period } else { t[seg + 1] };
        let ds = s[seg + 1] - s[seg];
        let frac = if ds > 0.0 { (target - s[seg]) / ds } else { 0.0 };
        let q = t0 + frac * (t1 - t0);
        let w = grid.window_at(q, FD_WIDTH - 1);
        out.push(w.apply(&lagrange_weights(q, &w.t), contour.points()));
    }
    SampledCurve::closed(out)
}
