//! Finite-difference weights (Fornberg's recursion) and stencil selection on
//! periodic or open, possibly nonuniform, parameter grids.

/// Weights for derivatives `0..=max_order` at `z` from values at nodes `xs`.
///
/// `w[k][j]` multiplies the value at `xs[j]` in the k-th derivative estimate.
pub fn fornberg(z: f64, xs: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    if n == 0 {
        return c;
    }
    let mut c1 = 1.0;
    let mut c4 = xs[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - z;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Node indices of a stencil together with their (unwrapped) parameter values.
#[derive(Clone, Debug, Default)]
pub struct Window {
    pub idx: Vec<usize>,
    pub t: Vec<f64>,
}

impl Window {
    /// Apply weights to a node-indexed sequence.
    #[inline]
    pub fn apply<T>(&self, weights: &[f64], values: &[T]) -> T
    where
        T: Copy + Default + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
    {
        let mut acc = T::default();
        for (w, &i) in weights.iter().zip(&self.idx) {
            acc = acc + values[i] * *w;
        }
        acc
    }
}

/// A strictly increasing parameter grid, optionally periodic with `period`.
#[derive(Clone, Copy, Debug)]
pub struct Grid<'a> {
    pub t: &'a [f64],
    pub period: Option<f64>,
}

impl<'a> Grid<'a> {
    pub fn new(t: &'a [f64], period: Option<f64>) -> Self {
        Grid { t, period }
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Stencil of `width` nodes around node `i`. Centered when possible; on
    /// an open grid it is shifted inward near the ends.
    pub fn window_at_node(&self, i: usize, width: usize) -> Window {
        let n = self.t.len();
        let width = width.min(n);
        let half = (width - 1) / 2;
        match self.period {
            Some(period) => {
                let mut w = Window::default();
                for k in 0..width {
                    let off = k as isize - half as isize;
                    let (j, shift) = wrap(i as isize + off, n);
                    w.idx.push(j);
                    w.t.push(self.t[j] + shift as f64 * period);
                }
                w
            }
            None => {
                let start = i.saturating_sub(half).min(n - width);
                Window {
                    idx: (start..start + width).collect(),
                    t: self.t[start..start + width].to_vec(),
                }
            }
        }
    }

    /// Stencil of `width` nodes around an arbitrary parameter `q`. On a
    /// periodic grid `q` may lie anywhere; the window's parameters are
    /// unwrapped to surround `q` itself.
    pub fn window_at(&self, q: f64, width: usize) -> Window {
        let n = self.t.len();
        let width = width.min(n);
        match self.period {
            Some(period) => {
                let t0 = self.t[0];
                let turns = ((q - t0) / period).floor();
                let qr = q - turns * period;
                // last node with t <= qr
                let base = self.t.partition_point(|&x| x <= qr).saturating_sub(1);
                let left = (width / 2) as isize - 1;
                let mut w = Window::default();
                for k in 0..width {
                    let off = k as isize - left;
                    let (j, shift) = wrap(base as isize + off, n);
                    w.idx.push(j);
                    w.t.push(self.t[j] + (shift as f64 + turns) * period);
                }
                w
            }
            None => {
                let base = self.t.partition_point(|&x| x <= q).saturating_sub(1);
                let left = (width / 2).saturating_sub(1);
                let start = base.saturating_sub(left).min(n - width);
                Window {
                    idx: (start..start + width).collect(),
                    t: self.t[start..start + width].to_vec(),
                }
            }
        }
    }

    /// Derivatives `0..=max_order` at node `i` of `values` using a stencil of `width`.
    pub fn node_derivatives<T>(&self, values: &[T], i: usize, width: usize, max_order: usize) -> Vec<T>
    where
        T: Copy + Default + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
    {
        let w = self.window_at_node(i, width);
        let weights = fornberg(self.t[i], &w.t, max_order);
        weights.iter().map(|wk| w.apply(wk, values)).collect()
    }

    /// Derivatives `0..=max_order` at parameter `q` from a local polynomial fit.
    pub fn derivatives_at<T>(&self, values: &[T], q: f64, width: usize, max_order: usize) -> Vec<T>
    where
        T: Copy + Default + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
    {
        let w = self.window_at(q, width);
        let weights = fornberg(q, &w.t, max_order);
        weights.iter().map(|wk| w.apply(wk, values)).collect()
    }
}

fn wrap(k: isize, n: usize) -> (usize, isize) {
    let n = n as isize;
    let shift = k.div_euclid(n);
    (k.rem_euclid(n) as usize, shift)
}
