//! Independent reference computations shared by the integration tests and
//! the acceptance harness. Nothing here calls into the numerical routines
//! it is used to check.

#![allow(dead_code)]

use centroaffine::geometry::Derivatives3;
use centroaffine::Point2;

/// Four-image experiment: centro-affine arc-lengths of 13
/// contours per image.
pub const ARCLENGTH_TABLE: [[f64; 13]; 4] = [
    [21.5764, 17.3975, 16.0039, 6.0827, 13.1816, 10.2993, 6.1379, 16.1042, 6.0655, 17.9754, 10.5182, 6.1844, 20.9430],
    [21.4343, 18.1060, 16.2536, 6.0291, 13.4718, 9.9786, 6.1225, 16.3201, 5.8780, 12.8081, 9.4719, 6.0826, 20.6943],
    [21.3836, 16.3080, 15.0370, 5.6557, 12.2398, 9.9733, 6.1182, 15.7962, 5.8537, 15.7287, 11.1307, 6.1087, 20.9512],
    [21.4965, 17.0939, 15.8373, 5.9567, 13.2712, 11.4628, 6.1752, 16.7117, 6.0081, 18.1944, 10.3007, 6.1984, 20.7571],
];

/// Reference correlations between the rows above, as (row, row, value).
pub const CORRELATION_TABLE: [(usize, usize, f64); 6] =
    [(0, 1, 0.9672), (0, 2, 0.9930), (0, 3, 0.9976), (1, 2, 0.9767), (1, 3, 0.9624), (2, 3, 0.9897)];

/// Pearson correlation as the mean product of z-scores (population form).
pub fn pearson_zscore(u: &[f64], v: &[f64]) -> f64 {
    let n = u.len() as f64;
    let mean = |w: &[f64]| w.iter().sum::<f64>() / n;
    let sd = |w: &[f64], m: f64| (w.iter().map(|x| (x - m).powi(2)).sum::<f64>() / n).sqrt();
    let (mu, mv) = (mean(u), mean(v));
    let (su, sv) = (sd(u, mu), sd(v, mv));
    u.iter().zip(v).map(|(a, b)| ((a - mu) / su) * ((b - mv) / sv)).sum::<f64>() / n
}

/// Minimum DTW cost over every monotone boundary-to-boundary path, by
/// explicit enumeration.
pub fn dtw_brute_force(a: &[f64], b: &[f64]) -> f64 {
    fn walk(a: &[f64], b: &[f64], i: usize, j: usize, acc: f64, best: &mut f64) {
        let acc = acc + (a[i] - b[j]).abs();
        if i + 1 == a.len() && j + 1 == b.len() {
            *best = best.min(acc);
            return;
        }
        if i + 1 < a.len() {
            walk(a, b, i + 1, j, acc, best);
        }
        if j + 1 < b.len() {
            walk(a, b, i, j + 1, acc, best);
        }
        if i + 1 < a.len() && j + 1 < b.len() {
            walk(a, b, i + 1, j + 1, acc, best);
        }
    }
    let mut best = f64::INFINITY;
    walk(a, b, 0, 0, 0.0, &mut best);
    best
}

/// Cost of a given path, for checking that a returned path attains its cost.
pub fn path_cost(a: &[f64], b: &[f64], path: &[(usize, usize)]) -> f64 {
    path.iter().map(|&(i, j)| (a[i] - b[j]).abs()).sum()
}

/// κ for `κ₀(s) = c + a·sin(s)` at time `t` under `κ_t = κ κ_s`, from the
/// implicit relation `κ = κ₀(s + κ t)` by damped fixed-point iteration.
pub fn sine_burgers(c: f64, a: f64, s: f64, t: f64) -> f64 {
    let mut k = c + a * s.sin();
    for _ in 0..10_000 {
        let next = c + a * (s + k * t).sin();
        if (next - k).abs() < 1e-15 {
            return next;
        }
        k = 0.5 * (k + next);
    }
    k
}

fn cross(a: Point2, b: Point2) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Centro-affine curvature from the structure equation
/// `x_ss = κ x_s − ε x`, i.e. `κ = [x, x_ss] / [x, x_s]`, with the
/// arc-length derivatives built by the chain rule and `g'` taken by a
/// central difference of `g` in the parameter.
pub fn structure_equation_kappa(derivs: impl Fn(f64) -> Derivatives3, p: f64, h: f64) -> (f64, f64) {
    let g = |q: f64| {
        let d = derivs(q);
        let r = cross(d.d1, d.d2) / cross(d.pos, d.d1);
        (r.signum(), r.abs().sqrt())
    };
    let d = derivs(p);
    let (eps, g0) = g(p);
    let dg = (-g(p + 2.0 * h).1 + 8.0 * g(p + h).1 - 8.0 * g(p - h).1 + g(p - 2.0 * h).1) / (12.0 * h);
    let xs = d.d1 * (1.0 / g0);
    let xss = (d.d2 * (1.0 / g0) - d.d1 * (dg / (g0 * g0))) * (1.0 / g0);
    (eps, cross(d.pos, xss) / cross(d.pos, xs))
}

/// Homography applied by hand to a point.
pub fn project(h: &[[f64; 3]; 3], p: Point2) -> Point2 {
    let w = h[2][0] * p.x + h[2][1] * p.y + h[2][2];
    Point2::new((h[0][0] * p.x + h[0][1] * p.y + h[0][2]) / w, (h[1][0] * p.x + h[1][1] * p.y + h[1][2]) / w)
}

/// Frobenius distance between two 3×3 matrices after scaling both to unit
/// norm with a positive last entry.
pub fn projective_distance(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> f64 {
    let norm = |m: &[[f64; 3]; 3]| {
        let f = m.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
        let s = if m[2][2] < 0.0 { -1.0 } else { 1.0 };
        m.map(|r| r.map(|v| s * v / f))
    };
    let (a, b) = (norm(a), norm(b));
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}
