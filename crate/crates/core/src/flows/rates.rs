use crate::error::Result;
use crate::numeric::Grid;

use super::beta::BetaSpec;
use super::state::FlowState;

const RATE_WIDTH: usize = 5;

/// Decomposition `β C_ss = W·C_s + U·C` of the flow velocity.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentNormalCoeffs {
    /// Tangential coefficient `W = βκ`.
    pub tangential: Vec<f64>,
    /// Radial coefficient `U = −εβ`.
    pub radial: Vec<f64>,
}

pub fn tangent_normal_coeffs(state: &FlowState, beta: &BetaSpec) -> TangentNormalCoeffs {
    let e = state.eps.as_f64();
    let b: Vec<f64> = state.kappa.iter().map(|&k| beta.eval(k)).collect();
    TangentNormalCoeffs {
        tangential: b.iter().zip(&state.kappa).map(|(b, k)| b * k).collect(),
        radial: b.iter().map(|b| -e * b).collect(),
    }
}

/// Arc-length grid of the labels; periodic with the total length on closed
/// curves.
fn label_s_grid(state: &FlowState) -> (Vec<f64>, Option<f64>) {
    let mut s = state.label_arclength();
    if state.curve.is_closed() {
        let total = s.pop().expect("cumulative has n + 1 entries on closed curves");
        (s, Some(total))
    } else {
        (s, None)
    }
}

/// Time derivatives of `g` and `κ` at fixed label, from the local evolution
/// equations with s-derivatives taken on the label arc-length grid.
pub fn evolution_rates(state: &FlowState, beta: &BetaSpec) -> Result<(Vec<f64>, Vec<f64>)> {
    let (s, period) = label_s_grid(state);
    let grid = Grid::new(&s, period);
    let e = state.eps.as_f64();
    let b: Vec<f64> = state.kappa.iter().map(|&k| beta.eval(k)).collect();
    let n = state.len();
    let mut g_rate = Vec::with_capacity(n);
    let mut k_rate = Vec::with_capacity(n);
    for i in 0..n {
        let k = state.kappa[i];
        let k_s = grid.node_derivatives(&state.kappa, i, RATE_WIDTH, 1)[1];
        let (b0, b_s, b_ss, b_sss) = if beta.is_constant() {
            (b[i], 0.0, 0.0, 0.0)
        } else {
            let d = grid.node_derivatives(&b, i, RATE_WIDTH, 3);
            (d[0], d[1], d[2], d[3])
        };
        g_rate.push(state.g[i] * (0.5 * (b_ss + k * b_s) + k_s * b0));
        k_rate.push(b0 * k * k_s - 2.0 * e * b_s + 0.5 * ((k_s + k * k) * b_s - b_sss));
    }
    Ok((g_rate, k_rate))
}
