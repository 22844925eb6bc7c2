//! Plane projective maps estimated from point correspondences.

use nalgebra::{DMatrix, Matrix3, Vector3};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{bracket, Point2};

/// 3×3 projective map, scaled to unit Frobenius norm with `h[2][2] ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Homography {
    m: Matrix3<f64>,
}

impl Homography {
    pub fn new(m: Matrix3<f64>) -> Result<Self> {
        let norm = m.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::DegenerateConfiguration("homography matrix is zero or not finite".into()));
        }
        let mut m = m / norm;
        // fix the sign by the (2,2) entry, or by the first nonzero entry
        let pivot = if m[(2, 2)] != 0.0 { m[(2, 2)] } else { m.iter().copied().find(|v| *v != 0.0).unwrap_or(1.0) };
        if pivot < 0.0 {
            m = -m;
        }
        Ok(Homography { m })
    }

    pub fn identity() -> Self {
        Homography::new(Matrix3::identity()).expect("identity is nonzero")
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.m
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        let m = &self.m;
        [[m[(0, 0)], m[(0, 1)], m[(0, 2)]], [m[(1, 0)], m[(1, 1)], m[(1, 2)]], [m[(2, 0)], m[(2, 1)], m[(2, 2)]]]
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &Homography) -> Result<Homography> {
        Homography::new(self.m * first.m)
    }

    /// Frobenius distance between the normalized matrices.
    pub fn distance(&self, other: &Homography) -> f64 {
        (self.m - other.m).norm()
    }
}

impl Serialize for Homography {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

pub fn apply_homography(h: &Homography, p: Point2) -> Result<Point2> {
    let v = h.m * Vector3::new(p.x, p.y, 1.0);
    let scale = h.m.row(2).iter().map(|c| c.abs()).sum::<f64>() * (1.0 + p.x.abs() + p.y.abs());
    if !(v.z.abs() > 1e-14 * scale) {
        return Err(Error::PointAtInfinity);
    }
    Ok(Point2::new(v.x / v.z, v.y / v.z))
}

#[derive(Clone, Debug, Serialize)]
pub struct HomographyFit {
    pub homography: Homography,
    /// Root-mean-square reprojection distance in the target plane.
    pub rms_residual: f64,
}

/// Similarity taking the points to centroid 0 and mean distance √2.
fn normalizer(pts: &[Point2]) -> Result<Matrix3<f64>> {
    let n = pts.len() as f64;
    let c = pts.iter().copied().sum::<Point2>() / n;
    let mean = pts.iter().map(|p| (*p - c).norm()).sum::<f64>() / n;
    if !(mean > 0.0) {
        return Err(Error::DegenerateConfiguration("all points coincide".into()));
    }
    let s = std::f64::consts::SQRT_2 / mean;
    Ok(Matrix3::new(s, 0.0, -s * c.x, 0.0, s, -s * c.y, 0.0, 0.0, 1.0))
}

fn check_configuration(pts: &[Point2], which: &str) -> Result<()> {
    let scale = crate::geometry::diameter(pts);
    let tol = 1e-10 * scale * scale;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if (pts[i] - pts[j]).norm() <= 1e-12 * scale {
                return Err(Error::DegenerateConfiguration(format!("{which} points {i} and {j} coincide")));
            }
        }
    }
    let collinear = |i: usize, j: usize, k: usize| bracket(pts[j] - pts[i], pts[k] - pts[i]).abs() <= tol;
    if pts.len() == 4 {
        for (i, j, k) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
            if collinear(i, j, k) {
                return Err(Error::DegenerateConfiguration(format!("{which} points {i}, {j}, {k} are collinear")));
            }
        }
    } else if (2..pts.len()).all(|k| collinear(0, 1, k)) {
        return Err(Error::DegenerateConfiguration(format!("all {which} points are collinear")));
    }
    Ok(())
}

/// Normalized direct linear transform: both point sets are centered and
/// scaled, the 2n×9 system is solved for its smallest singular direction,
/// and the result is mapped back.
pub fn estimate_homography(pairs: &[(Point2, Point2)]) -> Result<HomographyFit> {
    if pairs.len() < 4 {
        return Err(Error::TooFewPoints { found: pairs.len(), needed: 4 });
    }
    let src: Vec<Point2> = pairs.iter().map(|p| p.0).collect();
    let dst: Vec<Point2> = pairs.iter().map(|p| p.1).collect();
    if src.iter().chain(&dst).any(|p| !p.is_finite()) {
        return Err(Error::InvalidInput("correspondences must be finite".into()));
    }
    check_configuration(&src, "source")?;
    check_configuration(&dst, "target")?;
    let ts = normalizer(&src)?;
    let td = normalizer(&dst)?;
    let n = pairs.len();
    // pad to at least 9 rows so the SVD yields a full right basis
    let rows = (2 * n).max(9);
    let mut a = DMatrix::<f64>::zeros(rows, 9);
    for (k, (p, q)) in src.iter().zip(&dst).enumerate() {
        let x = ts * Vector3::new(p.x, p.y, 1.0);
        let y = td * Vector3::new(q.x, q.y, 1.0);
        let (u, v) = (y.x, y.y);
        let r0 = [0.0, 0.0, 0.0, -x.x, -x.y, -1.0, v * x.x, v * x.y, v];
        let r1 = [x.x, x.y, 1.0, 0.0, 0.0, 0.0, -u * x.x, -u * x.y, -u];
        for c in 0..9 {
            a[(2 * k, c)] = r0[c];
            a[(2 * k + 1, c)] = r1[c];
        }
    }
    let svd = a.svd(false, true);
    let vt = svd.v_t.ok_or_else(|| Error::DegenerateConfiguration("SVD failed".into()))?;
    let sv = &svd.singular_values;
    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&i, &j| sv[i].total_cmp(&sv[j]));
    let (smallest, second) = (order[0], order[1]);
    if !(sv[second] > 1e-10 * sv[order[sv.len() - 1]]) {
        return Err(Error::DegenerateConfiguration("correspondences do not determine a unique map".into()));
    }
    let h = vt.row(smallest);
    let hn = Matrix3::new(h[0], h[1], h[2], h[3], h[4], h[5], h[6], h[7], h[8]);
    let td_inv = td.try_inverse().ok_or_else(|| Error::DegenerateConfiguration("target normalization".into()))?;
    let homography = Homography::new(td_inv * hn * ts)?;
    let mut sq = 0.0;
    for (p, q) in &pairs[..] {
        sq += (apply_homography(&homography, *p)? - *q).norm().powi(2);
    }
    Ok(HomographyFit { homography, rms_residual: (sq / n as f64).sqrt() })
}
