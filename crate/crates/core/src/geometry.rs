//! Plane vectors, the bracket `[a, b] = det(a, b)` and linear maps.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

/// A point (or vector) of the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    #[inline]
    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Image under the linear map `m`.
    #[inline]
    pub fn transform(self, m: &Matrix2<f64>) -> Point2 {
        Point2::new(
            m[(0, 0)] * self.x + m[(0, 1)] * self.y,
            m[(1, 0)] * self.x + m[(1, 1)] * self.y,
        )
    }
}

/// `[a, b] = a.x * b.y - a.y * b.x`, the determinant of the column pair.
#[inline]
pub fn bracket(a: Point2, b: Point2) -> f64 {
    a.x * b.y - a.y * b.x
}

impl Add for Point2 {
    type Output = Point2;
    #[inline]
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Point2 {
    #[inline]
    fn add_assign(&mut self, o: Point2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Point2 {
    type Output = Point2;
    #[inline]
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl SubAssign for Point2 {
    #[inline]
    fn sub_assign(&mut self, o: Point2) {
        self.x -= o.x;
        self.y -= o.y;
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    #[inline]
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Mul<Point2> for f64 {
    type Output = Point2;
    #[inline]
    fn mul(self, p: Point2) -> Point2 {
        p * self
    }
}

impl Div<f64> for Point2 {
    type Output = Point2;
    #[inline]
    fn div(self, s: f64) -> Point2 {
        Point2::new(self.x / s, self.y / s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    #[inline]
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl std::iter::Sum for Point2 {
    fn sum<I: Iterator<Item = Point2>>(iter: I) -> Point2 {
        iter.fold(Point2::ORIGIN, |a, b| a + b)
    }
}

/// Position and the first three parameter derivatives of a curve at one point.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Derivatives3 {
    pub pos: Point2,
    pub d1: Point2,
    pub d2: Point2,
    pub d3: Point2,
}

impl Derivatives3 {
    pub fn new(pos: Point2, d1: Point2, d2: Point2, d3: Point2) -> Self {
        Derivatives3 { pos, d1, d2, d3 }
    }

    /// Derivatives of the image curve `A·x(p)`.
    pub fn transform(&self, m: &Matrix2<f64>) -> Self {
        Derivatives3 {
            pos: self.pos.transform(m),
            d1: self.d1.transform(m),
            d2: self.d2.transform(m),
            d3: self.d3.transform(m),
        }
    }

    /// Derivatives after the reparametrization `p = a·q + b`.
    pub fn rescale(&self, a: f64) -> Self {
        Derivatives3 {
            pos: self.pos,
            d1: self.d1 * a,
            d2: self.d2 * (a * a),
            d3: self.d3 * (a * a * a),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.pos.is_finite() && self.d1.is_finite() && self.d2.is_finite() && self.d3.is_finite()
    }
}

/// Bounding-box diagonal of a point set, used as the curve's length scale.
pub fn diameter(points: &[Point2]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in points {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(p.y);
        y1 = y1.max(p.y);
    }
    (x1 - x0).hypot(y1 - y0)
}

/// Signed area of a closed polygon (positive when counterclockwise).
pub fn signed_area(points: &[Point2]) -> f64 {
    let n = points.len();
    let mut acc = 0.0;
    for i in 0..n {
        acc += bracket(points[i], points[(i + 1) % n]);
    }
    0.5 * acc
}
