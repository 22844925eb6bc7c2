//! Time stepping of `∂C/∂t = β(κ)·C_ss`.
//!
//! In arc-length the velocity splits as `β C_ss = W·C_s + U·C` with
//! `W = βκ` and `U = −εβ`. Only the radial part `U·C` changes the trace, so
//! the state carries two things:
//!
//! * trace nodes, moved radially by `U·X`;
//! * for every Lagrangian label, its position `q` along the trace parameter,
//!   which slides with `dq/dt = W / g_q` (`g_q` is the metric density of the
//!   trace in `q`).
//!
//! Label positions, metric density and curvature are read off the trace by
//! local polynomial fits. Both parts are advanced together with classical
//! fourth-order Runge-Kutta.

use crate::curve_core::{invariants_at, Eps, SampledCurve};
use crate::error::{Error, Result};
use crate::geometry::{Derivatives3, Point2};
use crate::numeric::{cumulative, lagrange_weights, Grid};

use super::beta::BetaSpec;

/// Nodes used to evaluate the trace at an arbitrary parameter.
const TRACE_WIDTH: usize = 8;
/// Stencil for derivatives across labels or nodes.
const LABEL_WIDTH: usize = 7;
/// Labels this close (in index) to one that left an open trace are inactive.
const ACTIVE_MARGIN: usize = 3;

/// Curve, metric density and curvature per Lagrangian label at time `t`.
#[derive(Clone, Debug)]
pub struct FlowState {
    /// Label positions, parametrized by the label coordinate `p`.
    pub curve: SampledCurve,
    /// Metric density with respect to `p`.
    pub g: Vec<f64>,
    pub kappa: Vec<f64>,
    pub eps: Eps,
    pub t: f64,
    /// False for labels of an open arc that have slid (or nearly slid) off
    /// the end of the trace; their values are frozen.
    pub active: Vec<bool>,
    trace: Vec<Point2>,
    trace_params: Vec<f64>,
    period: Option<f64>,
    label_q: Vec<f64>,
}

struct TracePoint {
    pos: Point2,
    g_q: f64,
    kappa: f64,
    eps: Eps,
}

impl FlowState {
    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }

    pub fn label_params(&self) -> &[f64] {
        self.curve.params()
    }

    /// Current trace nodes.
    pub fn trace(&self) -> &[Point2] {
        &self.trace
    }

    /// Trace parameter of every label (unwrapped on closed curves).
    pub fn label_trace_params(&self) -> &[f64] {
        &self.label_q
    }

    pub fn is_closed(&self) -> bool {
        self.period.is_some()
    }

    fn trace_grid(&self) -> Grid<'_> {
        Grid::new(&self.trace_params, self.period)
    }

    fn inside(&self, q: f64) -> bool {
        self.period.is_some() || (q >= self.trace_params[0] && q <= self.trace_params[self.trace_params.len() - 1])
    }

    /// Arc-length of the labels measured along the current curve from label 0.
    pub fn label_arclength(&self) -> Vec<f64> {
        cumulative(&self.g, self.curve.grid())
    }

    /// Arc-length position of every label along the trace, measured from the
    /// first trace node. Under the heat flow the trace only scales, so this
    /// coordinate is fixed in space and each label drifts along it.
    pub fn trace_arclength(&self) -> Result<Vec<f64>> {
        let grid = self.trace_grid();
        let n = self.trace.len();
        let mut g = Vec::with_capacity(n);
        for i in 0..n {
            let d = grid.node_derivatives(&self.trace, i, LABEL_WIDTH, 3);
            let inv = invariants_at(&Derivatives3::new(d[0], d[1], d[2], d[3])).map_err(|_| Error::IrregularPoint { index: i })?;
            g.push(inv.g);
        }
        let s = cumulative(&g, grid);
        let mut ext_t = self.trace_params.clone();
        let (total, period) = match self.period {
            Some(p) => {
                ext_t.push(self.trace_params[0] + p);
                (s[n], p)
            }
            None => (0.0, f64::INFINITY),
        };
        let ext = Grid::new(&ext_t, None);
        Ok(self
            .label_q
            .iter()
            .map(|&q| {
                let (turns, qr) = if period.is_finite() {
                    let k = ((q - ext_t[0]) / period).floor();
                    (k, q - k * period)
                } else {
                    (0.0, q)
                };
                let w = ext.window_at(qr, 6);
                turns * total + w.apply(&lagrange_weights(qr, &w.t), &s)
            })
            .collect())
    }
}

fn eval_trace(grid: Grid<'_>, nodes: &[Point2], q: f64, index: usize) -> Result<TracePoint> {
    let d = grid.derivatives_at(nodes, q, TRACE_WIDTH, 3);
    let inv = invariants_at(&Derivatives3::new(d[0], d[1], d[2], d[3])).map_err(|_| Error::IrregularPoint { index })?;
    Ok(TracePoint { pos: d[0], g_q: inv.g, kappa: inv.kappa, eps: inv.eps })
}

fn node_invariants(grid: Grid<'_>, nodes: &[Point2]) -> Result<Vec<(f64, f64)>> {
    (0..nodes.len())
        .map(|i| {
            let d = grid.node_derivatives(nodes, i, LABEL_WIDTH, 3);
            let inv = invariants_at(&Derivatives3::new(d[0], d[1], d[2], d[3])).map_err(|_| Error::IrregularPoint { index: i })?;
            Ok((inv.kappa, inv.g))
        })
        .collect()
}

/// Builds the state for given trace nodes and label trace parameters.
/// Labels outside an open trace keep the values from `prev`.
fn assemble(
    template: &FlowState,
    trace: Vec<Point2>,
    label_q: Vec<f64>,
    prev: Option<&FlowState>,
    t: f64,
) -> Result<FlowState> {
    let n = label_q.len();
    let tgrid = Grid::new(&template.trace_params, template.period);
    let p = template.curve.params();
    let pgrid = template.curve.grid();
    // dq/dp across labels; on closed curves differentiate the periodic displacement
    let disp: Vec<f64> = label_q.iter().zip(p).map(|(q, p)| q - p).collect();
    let mut pts = Vec::with_capacity(n);
    let mut g = Vec::with_capacity(n);
    let mut kappa = Vec::with_capacity(n);
    let mut eps = None;
    let mut inside = Vec::with_capacity(n);
    for i in 0..n {
        let q = label_q[i];
        let is_in = template.period.is_some()
            || (q >= template.trace_params[0] && q <= template.trace_params[template.trace_params.len() - 1]);
        inside.push(is_in);
        if !is_in {
            let prev = prev.expect("labels start inside the trace");
            pts.push(prev.curve.points()[i]);
            g.push(prev.g[i]);
            kappa.push(prev.kappa[i]);
            continue;
        }
        let tp = eval_trace(tgrid, &trace, q, i)?;
        let dq_dp = 1.0 + pgrid.node_derivatives(&disp, i, LABEL_WIDTH, 1)[1];
        pts.push(tp.pos);
        g.push(tp.g_q * dq_dp);
        kappa.push(tp.kappa);
        match eps {
            None => eps = Some(tp.eps),
            Some(e) if e != tp.eps => return Err(Error::IrregularPoint { index: i }),
            _ => {}
        }
    }
    let active = (0..n)
        .map(|i| {
            let lo = i.saturating_sub(ACTIVE_MARGIN);
            let hi = (i + ACTIVE_MARGIN).min(n - 1);
            inside[lo..=hi].iter().all(|&b| b)
        })
        .collect();
    let curve = SampledCurve::with_params(pts, p.to_vec(), template.period)?;
    Ok(FlowState {
        curve,
        g,
        kappa,
        eps: eps.ok_or(Error::TooFewRegularPoints { found: 0, needed: 1 })?,
        t,
        active,
        trace,
        trace_params: template.trace_params.clone(),
        period: template.period,
        label_q,
    })
}

/// Initial flow state: every sample is both a trace node and a label.
pub fn init_state(curve: &SampledCurve) -> Result<FlowState> {
    let template = FlowState {
        curve: curve.clone(),
        g: Vec::new(),
        kappa: Vec::new(),
        eps: Eps::Plus,
        t: 0.0,
        active: Vec::new(),
        trace: curve.points().to_vec(),
        trace_params: curve.params().to_vec(),
        period: curve.period(),
        label_q: curve.params().to_vec(),
    };
    assemble(&template, curve.points().to_vec(), curve.params().to_vec(), None, 0.0)
}

/// Time derivatives of trace nodes and label trace parameters.
fn velocities(
    state: &FlowState,
    beta: &BetaSpec,
    nodes: &[Point2],
    q: &[f64],
    inside: &[bool],
) -> Result<(Vec<Point2>, Vec<f64>)> {
    let e = state.eps.as_f64();
    let grid = Grid::new(&state.trace_params, state.period);
    let node_vel = if beta.is_constant() {
        let b = beta.eval(0.0);
        nodes.iter().map(|&x| x * (-e * b)).collect()
    } else {
        node_invariants(grid, nodes)?
            .iter()
            .zip(nodes)
            .map(|(&(k, _), &x)| x * (-e * beta.eval(k)))
            .collect()
    };
    let mut label_vel = vec![0.0; q.len()];
    for (i, (&qi, &is_in)) in q.iter().zip(inside).enumerate() {
        if is_in {
            let tp = eval_trace(grid, nodes, qi, i)?;
            label_vel[i] = beta.eval(tp.kappa) * tp.kappa / tp.g_q;
        }
    }
    Ok((node_vel, label_vel))
}

/// Largest step accepted by [`step`] for this state.
///
/// The radial factor `e^{−εβt}` needs `dt·|β| ≤ 1`; label sliding needs
/// `dt·|(βκ)_s| ≤ 1/2` and at most half a node spacing per step. A speed
/// that depends on κ adds a cubic bound in the node spacing, since κ involves
/// third derivatives of the trace.
pub fn stability_bound(state: &FlowState, beta: &BetaSpec) -> Result<f64> {
    let grid = state.trace_grid();
    let inv = node_invariants(grid, &state.trace)?;
    let w: Vec<f64> = inv.iter().map(|&(k, _)| beta.eval(k) * k).collect();
    let mut bound = f64::INFINITY;
    let bmax = inv.iter().map(|&(k, _)| beta.eval(k).abs()).fold(0.0, f64::max);
    if bmax > 0.0 {
        bound = bound.min(1.0 / bmax);
    }
    let mut ws_max: f64 = 0.0;
    let mut ds_min = f64::INFINITY;
    let n = state.trace.len();
    let t = &state.trace_params;
    for i in 0..n {
        let dw = grid.node_derivatives(&w, i, LABEL_WIDTH, 1)[1];
        ws_max = ws_max.max((dw / inv[i].1).abs());
        let dq = match (state.period, i + 1 < n) {
            (_, true) => t[i + 1] - t[i],
            (Some(p), false) => t[0] + p - t[i],
            (None, false) => continue,
        };
        ds_min = ds_min.min(dq * inv[i].1);
    }
    if ws_max > 0.0 {
        bound = bound.min(0.5 / ws_max);
    }
    let wmax = w.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if wmax > 0.0 {
        bound = bound.min(0.5 * ds_min / wmax);
    }
    if !beta.is_constant() {
        let bp = inv.iter().map(|&(k, _)| beta.derivative(k).abs()).fold(0.0, f64::max);
        if bp > 0.0 {
            bound = bound.min(0.1 * ds_min.powi(3) / bp);
        }
    }
    Ok(bound)
}

/// One explicit fourth-order step of size `dt`.
pub fn step(state: &FlowState, beta: &BetaSpec, dt: f64) -> Result<FlowState> {
    if dt == 0.0 {
        return Ok(state.clone());
    }
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidInput(format!("time step must be positive, got {dt}")));
    }
    if !beta.is_finite() {
        return Err(Error::InvalidInput("speed coefficients must be finite".into()));
    }
    let bound = stability_bound(state, beta)?;
    if dt > bound {
        return Err(Error::StabilityViolation { dt, bound });
    }
    let unstable = |_| Error::StabilityViolation { dt, bound };
    let inside: Vec<bool> = state.label_q.iter().map(|&q| state.inside(q)).collect();
    let x0 = &state.trace;
    let q0 = &state.label_q;
    let axpy = |x: &[Point2], v: &[Point2], h: f64| -> Vec<Point2> { x.iter().zip(v).map(|(a, b)| *a + *b * h).collect() };
    let qpy = |x: &[f64], v: &[f64], h: f64| -> Vec<f64> { x.iter().zip(v).map(|(a, b)| a + b * h).collect() };
    let (k1x, k1q) = velocities(state, beta, x0, q0, &inside).map_err(unstable)?;
    let (k2x, k2q) = velocities(state, beta, &axpy(x0, &k1x, 0.5 * dt), &qpy(q0, &k1q, 0.5 * dt), &inside).map_err(unstable)?;
    let (k3x, k3q) = velocities(state, beta, &axpy(x0, &k2x, 0.5 * dt), &qpy(q0, &k2q, 0.5 * dt), &inside).map_err(unstable)?;
    let (k4x, k4q) = velocities(state, beta, &axpy(x0, &k3x, dt), &qpy(q0, &k3q, dt), &inside).map_err(unstable)?;
    let h6 = dt / 6.0;
    let x1: Vec<Point2> = (0..x0.len())
        .map(|i| x0[i] + (k1x[i] + k2x[i] * 2.0 + k3x[i] * 2.0 + k4x[i]) * h6)
        .collect();
    let q1: Vec<f64> = (0..q0.len())
        .map(|i| q0[i] + (k1q[i] + 2.0 * k2q[i] + 2.0 * k3q[i] + k4q[i]) * h6)
        .collect();
    assemble(state, x1, q1, Some(state), state.t + dt).map_err(unstable)
}

/// Elementwise κ/g, which the heat flow keeps fixed for every label.
pub fn kappa_over_g(state: &FlowState) -> Vec<f64> {
    state.kappa.iter().zip(&state.g).map(|(k, g)| k / g).collect()
}

/// `d/dt` of the arc-length between labels `i1` and `i2` under the heat flow.
pub fn arclength_rate(state: &FlowState, i1: usize, i2: usize) -> f64 {
    state.kappa[i2] - state.kappa[i1]
}

/// Largest |κ_s| over the active labels.
pub fn kappa_gradient(state: &FlowState) -> f64 {
    let grid = state.curve.grid();
    (0..state.len())
        .filter(|&i| state.active[i])
        .map(|i| (grid.node_derivatives(&state.kappa, i, LABEL_WIDTH, 1)[1] / state.g[i]).abs())
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvolveOptions {
    /// Keep every n-th state (the final state is always kept).
    pub record_every: usize,
    /// Abort with `ShockEncountered` once sup |κ_s| exceeds this.
    pub max_kappa_gradient: f64,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        EvolveOptions { record_every: 1, max_kappa_gradient: 1e3 }
    }
}

/// Trajectory from `curve0` up to time `t_end` in steps of `dt` (the last
/// step is shortened to land on `t_end`). The initial state is included.
pub fn evolve(curve0: &SampledCurve, beta: &BetaSpec, t_end: f64, dt: f64, opts: &EvolveOptions) -> Result<Vec<FlowState>> {
    if !(t_end >= 0.0) {
        return Err(Error::InvalidInput(format!("final time must be non-negative, got {t_end}")));
    }
    if !(dt > 0.0) {
        return Err(Error::InvalidInput(format!("time step must be positive, got {dt}")));
    }
    let mut state = init_state(curve0)?;
    let mut out = vec![state.clone()];
    let full = (t_end / dt).floor() as usize;
    let rest = t_end - full as f64 * dt;
    let mut steps: Vec<f64> = vec![dt; full];
    if rest > 1e-12 * dt.max(t_end) {
        steps.push(rest);
    }
    let every = opts.record_every.max(1);
    let count = steps.len();
    for (k, h) in steps.into_iter().enumerate() {
        let mut next = step(&state, beta, h)?;
        if k + 1 == count {
            next.t = t_end;
        }
        let grad = kappa_gradient(&next);
        if !(grad <= opts.max_kappa_gradient) {
            return Err(Error::ShockEncountered { time: next.t, gradient: grad });
        }
        state = next;
        if (k + 1) % every == 0 || k + 1 == count {
            out.push(state.clone());
        }
    }
    Ok(out)
}

/// The heat flow `∂C/∂t = C_ss` (β ≡ 1).
pub fn heat_flow_evolve(curve0: &SampledCurve, t_end: f64, dt: f64) -> Result<Vec<FlowState>> {
    evolve(curve0, &BetaSpec::ConstantOne, t_end, dt, &EvolveOptions::default())
}
