//! Interpolating B-spline curves: periodic with uniform knots for closed
//! contours, clamped with averaged knots for open arcs.

use nalgebra::{Complex, DMatrix, DVector, Matrix2};

use crate::curve_core::{ParametricCurve, SampledCurve};
use crate::error::{Error, Result};
use crate::geometry::{Derivatives3, Point2};

/// Smallest degree whose third derivative is continuous.
pub const MIN_DEGREE: usize = 4;
pub const DEFAULT_DEGREE: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct BSplineCurve {
    degree: usize,
    control_points: Vec<Point2>,
    /// Periodic: `t_k = k - (d+1)/2` for one period `k = 0..=n`.
    /// Open: the full clamped knot vector of length `n + d + 1`.
    knots: Vec<f64>,
    periodic: bool,
    /// Parameters at which the fitted data are reproduced.
    fit_params: Vec<f64>,
}

impl BSplineCurve {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn control_points(&self) -> &[Point2] {
        &self.control_points
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn fit_params(&self) -> &[f64] {
        &self.fit_params
    }

    /// Parameter domain; periodic splines repeat with period `n`.
    pub fn domain(&self) -> (f64, f64) {
        if self.periodic {
            (0.0, self.control_points.len() as f64)
        } else {
            (self.knots[self.degree], self.knots[self.knots.len() - 1 - self.degree])
        }
    }

    /// Derivative of the given order (0 = position) at `u`.
    pub fn derivative(&self, u: f64, order: usize) -> Point2 {
        if self.periodic {
            self.periodic_derivative(u, order)
        } else {
            self.open_derivatives(u, order)[order]
        }
    }

    pub fn eval(&self, u: f64) -> Point2 {
        self.derivative(u, 0)
    }

    /// Spline with every control point mapped by `m` (the fit of the mapped data).
    pub fn transform(&self, m: &Matrix2<f64>) -> Self {
        let mut out = self.clone();
        for p in &mut out.control_points {
            *p = p.transform(m);
        }
        out
    }

    fn periodic_derivative(&self, u: f64, order: usize) -> Point2 {
        let n = self.control_points.len();
        let d = self.degree;
        if order > d {
            return Point2::ORIGIN;
        }
        let half = (d + 1) as f64 / 2.0;
        let lo = (u - half).floor() as i64;
        let hi = (u + half).ceil() as i64;
        let mut acc = Point2::ORIGIN;
        for k in lo..=hi {
            let w = cardinal_derivative(d, order, u - k as f64 + half);
            if w != 0.0 {
                acc += self.control_points[k.rem_euclid(n as i64) as usize] * w;
            }
        }
        acc
    }

    fn open_derivatives(&self, u: f64, max_order: usize) -> Vec<Point2> {
        let p = self.degree;
        let (a, b) = self.domain();
        let u = u.clamp(a, b);
        let span = find_span(&self.knots, p, self.control_points.len(), u);
        let ders = basis_derivatives(&self.knots, span, u, p, max_order);
        (0..=max_order)
            .map(|k| {
                let mut acc = Point2::ORIGIN;
                for j in 0..=p {
                    acc += self.control_points[span - p + j] * ders[k][j];
                }
                acc
            })
            .collect()
    }
}

impl ParametricCurve for BSplineCurve {
    fn derivatives(&self, u: f64) -> Derivatives3 {
        if self.periodic {
            Derivatives3::new(
                self.periodic_derivative(u, 0),
                self.periodic_derivative(u, 1),
                self.periodic_derivative(u, 2),
                self.periodic_derivative(u, 3),
            )
        } else {
            let d = self.open_derivatives(u, 3);
            Derivatives3::new(d[0], d[1], d[2], d[3])
        }
    }

    fn period(&self) -> Option<f64> {
        self.periodic.then_some(self.control_points.len() as f64)
    }
}

/// Exact derivative of order 0..=3 of a spline at `u`.
pub fn spline_derivatives(spline: &BSplineCurve, u: f64, order: usize) -> Point2 {
    spline.derivative(u, order)
}

/// Uniform cardinal B-spline of degree `d`, supported on `[0, d+1]`.
fn cardinal(d: usize, x: f64) -> f64 {
    if x < 0.0 || x >= (d + 1) as f64 {
        return 0.0;
    }
    if d == 0 {
        return 1.0;
    }
    // de Boor style recursion on the uniform knots
    let df = d as f64;
    (x * cardinal(d - 1, x) + (df + 1.0 - x) * cardinal(d - 1, x - 1.0)) / df
}

/// `r`-th derivative of the cardinal B-spline via backward differences of
/// lower-degree splines.
fn cardinal_derivative(d: usize, r: usize, x: f64) -> f64 {
    if r == 0 {
        return cardinal(d, x);
    }
    let mut acc = 0.0;
    let mut binom = 1.0;
    for k in 0..=r {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binom * cardinal(d - r, x - k as f64);
        binom = binom * (r - k) as f64 / (k + 1) as f64;
    }
    acc
}

/// Fits the periodic spline of the given degree whose value at parameter `i`
/// is the i-th input point (uniform knots, one control point per sample).
pub fn fit_bspline_closed(points: &SampledCurve, degree: usize) -> Result<BSplineCurve> {
    if degree < MIN_DEGREE {
        return Err(Error::InvalidDegree { degree, min: MIN_DEGREE });
    }
    let data = points.points();
    let n = data.len();
    if n < degree + 2 {
        return Err(Error::TooFewPoints { found: n, needed: degree + 2 });
    }
    if !points.is_closed() {
        return Err(Error::InvalidInput("periodic fit needs a closed contour".into()));
    }
    let half = (degree + 1) as f64 / 2.0;
    // first column of the circulant collocation matrix: a[j] = B(j + half)
    let mut col = vec![0.0; n];
    let reach = (degree + 1) / 2 + 1;
    for off in -(reach as i64)..=(reach as i64) {
        let w = cardinal(degree, off as f64 + half);
        if w != 0.0 {
            col[off.rem_euclid(n as i64) as usize] += w;
        }
    }
    let control_points = solve_circulant(&col, data)?;
    let knots = (0..=n).map(|k| k as f64 - half).collect();
    Ok(BSplineCurve {
        degree,
        control_points,
        knots,
        periodic: true,
        fit_params: (0..n).map(|i| i as f64).collect(),
    })
}

/// Solves `Σ_j col[(i - j) mod n] c_j = rhs_i` through the discrete Fourier
/// transform.
fn solve_circulant(col: &[f64], rhs: &[Point2]) -> Result<Vec<Point2>> {
    let n = col.len();
    let roots: Vec<Complex<f64>> = (0..n)
        .map(|k| Complex::from_polar(1.0, -std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    let dft = |v: &dyn Fn(usize) -> Complex<f64>| -> Vec<Complex<f64>> {
        (0..n).map(|m| (0..n).map(|j| v(j) * roots[(j * m) % n]).sum()).collect()
    };
    let eig = dft(&|j| Complex::new(col[j], 0.0));
    let max = eig.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if eig.iter().any(|z| z.norm() <= 1e-12 * max) {
        return Err(Error::SingularFit);
    }
    let fx = dft(&|j| Complex::new(rhs[j].x, 0.0));
    let fy = dft(&|j| Complex::new(rhs[j].y, 0.0));
    let qx: Vec<Complex<f64>> = fx.iter().zip(&eig).map(|(a, b)| a / b).collect();
    let qy: Vec<Complex<f64>> = fy.iter().zip(&eig).map(|(a, b)| a / b).collect();
    // inverse transform
    Ok((0..n)
        .map(|j| {
            let mut x = Complex::new(0.0, 0.0);
            let mut y = Complex::new(0.0, 0.0);
            for m in 0..n {
                let r = roots[(j * m) % n].conj();
                x += qx[m] * r;
                y += qy[m] * r;
            }
            Point2::new(x.re / n as f64, y.re / n as f64)
        })
        .collect())
}

/// Fits a clamped interpolating spline through an open arc at its parameters
/// (knots placed by averaging consecutive parameters).
pub fn fit_bspline_open(points: &SampledCurve, degree: usize) -> Result<BSplineCurve> {
    if degree < MIN_DEGREE {
        return Err(Error::InvalidDegree { degree, min: MIN_DEGREE });
    }
    let data = points.points();
    let n = data.len();
    if n < degree + 2 {
        return Err(Error::TooFewPoints { found: n, needed: degree + 2 });
    }
    let u = points.params();
    let p = degree;
    let mut knots = vec![u[0]; p + 1];
    for j in 1..n - p {
        knots.push(u[j..j + p].iter().sum::<f64>() / p as f64);
    }
    knots.extend(std::iter::repeat(u[n - 1]).take(p + 1));
    let mut a = DMatrix::<f64>::zeros(n, n);
    for (i, &ui) in u.iter().enumerate() {
        let span = find_span(&knots, p, n, ui);
        let b = basis_derivatives(&knots, span, ui, p, 0);
        for j in 0..=p {
            a[(i, span - p + j)] = b[0][j];
        }
    }
    let lu = a.lu();
    let bx = DVector::from_iterator(n, data.iter().map(|q| q.x));
    let by = DVector::from_iterator(n, data.iter().map(|q| q.y));
    let cx = lu.solve(&bx).ok_or(Error::SingularFit)?;
    let cy = lu.solve(&by).ok_or(Error::SingularFit)?;
    if cx.iter().chain(cy.iter()).any(|v| !v.is_finite()) {
        return Err(Error::SingularFit);
    }
    Ok(BSplineCurve {
        degree,
        control_points: cx.iter().zip(cy.iter()).map(|(&x, &y)| Point2::new(x, y)).collect(),
        knots,
        periodic: false,
        fit_params: u.to_vec(),
    })
}

/// Knot span index containing `u` (clamped knot vector, `n` control points).
fn find_span(knots: &[f64], p: usize, n: usize, u: f64) -> usize {
    if u >= knots[n] {
        return n - 1;
    }
    if u <= knots[p] {
        return p;
    }
    let (mut lo, mut hi) = (p, n);
    let mut mid = (lo + hi) / 2;
    while u < knots[mid] || u >= knots[mid + 1] {
        if u < knots[mid] {
            hi = mid;
        } else {
            lo = mid;
        }
        mid = (lo + hi) / 2;
    }
    mid
}

/// Nonzero basis functions and their derivatives at `u` in `span`:
/// `out[k][j]` is the k-th derivative of `N_{span-p+j, p}`.
fn basis_derivatives(knots: &[f64], span: usize, u: f64, p: usize, n_ders: usize) -> Vec<Vec<f64>> {
    let mut ndu = vec![vec![0.0; p + 1]; p + 1];
    let mut left = vec![0.0; p + 1];
    let mut right = vec![0.0; p + 1];
    ndu[0][0] = 1.0;
    for j in 1..=p {
        left[j] = u - knots[span + 1 - j];
        right[j] = knots[span + j] - u;
        let mut saved = 0.0;
        for r in 0..j {
            ndu[j][r] = right[r + 1] + left[j - r];
            let temp = ndu[r][j - 1] / ndu[j][r];
            ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu[j][j] = saved;
    }
    let mut ders = vec![vec![0.0; p + 1]; n_ders + 1];
    for j in 0..=p {
        ders[0][j] = ndu[j][p];
    }
    let mut a = vec![vec![0.0; p + 1]; 2];
    for r in 0..=p {
        let (mut s1, mut s2) = (0usize, 1usize);
        a[0][0] = 1.0;
        for k in 1..=n_ders.min(p) {
            let mut d = 0.0;
            let rk = r as isize - k as isize;
            let pk = p - k;
            if r >= k {
                a[s2][0] = a[s1][0] / ndu[pk + 1][rk as usize];
                d = a[s2][0] * ndu[rk as usize][pk];
            }
            let j1 = if rk >= -1 { 1 } else { (-rk) as usize };
            let j2 = if (r as isize - 1) <= pk as isize { k - 1 } else { p - r };
            for j in j1..=j2 {
                let idx = (rk + j as isize) as usize;
                a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][idx];
                d += a[s2][j] * ndu[idx][pk];
            }
            if r <= pk {
                a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
                d += a[s2][k] * ndu[r][pk];
            }
            ders[k][r] = d;
            std::mem::swap(&mut s1, &mut s2);
        }
    }
    let mut factor = p as f64;
    for k in 1..=n_ders.min(p) {
        for v in ders[k].iter_mut() {
            *v *= factor;
        }
        factor *= (p - k) as f64;
    }
    ders
}
