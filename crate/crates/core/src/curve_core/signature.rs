//! Arc-length and sampled invariant signatures.

use crate::error::{Error, Result};
use crate::geometry::{bracket, Derivatives3};
use crate::numeric::{cumulative, Grid};

use super::analytic::ParametricCurve;
use super::invariants::{invariants_at_index, Eps};
use super::sampled::{SampledCurve, MIN_POINTS};

/// Default curvature clipping threshold.
pub const DEFAULT_CLIP: f64 = 100.0;

/// Sampled `(s, κ, ε)` profile of a curve.
///
/// Samples that are irregular or whose |κ| exceeds the clip are left out;
/// their source indices are listed in `dropped`. The arc-length coordinate
/// still accounts for the stretch they cover.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantSignature {
    pub s: Vec<f64>,
    pub kappa: Vec<f64>,
    pub eps: Vec<Eps>,
    pub g: Vec<f64>,
    /// Source sample index of every kept entry.
    pub indices: Vec<usize>,
    pub dropped: Vec<usize>,
    /// Arc-length of the whole curve (one full period when closed).
    pub total_length: f64,
    pub closed: bool,
}

impl InvariantSignature {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// Arc-length rescaled to `[0, 1]` by the total length.
    pub fn normalized_s(&self) -> Vec<f64> {
        if self.total_length > 0.0 {
            self.s.iter().map(|s| s / self.total_length).collect()
        } else {
            self.s.clone()
        }
    }

    /// Copy with `s` replaced by the normalized coordinate and total length 1.
    pub fn normalized(&self) -> Self {
        let mut out = self.clone();
        out.s = self.normalized_s();
        out.total_length = if self.total_length > 0.0 { 1.0 } else { 0.0 };
        out
    }

    /// `∫ |κ| ds` over the kept samples (trapezoid rule, wrapping when closed).
    pub fn abs_kappa_integral(&self) -> f64 {
        let n = self.len();
        if n < 2 {
            return 0.0;
        }
        let mut acc = 0.0;
        for i in 0..n - 1 {
            acc += 0.5 * (self.kappa[i].abs() + self.kappa[i + 1].abs()) * (self.s[i + 1] - self.s[i]);
        }
        if self.closed {
            let gap = self.total_length - self.s[n - 1] + self.s[0];
            acc += 0.5 * (self.kappa[n - 1].abs() + self.kappa[0].abs()) * gap;
        }
        acc
    }
}

/// Metric density at every sample. Where the formula breaks down (radial
/// tangent) the neighbours' average is used instead.
fn metric_density(ders: &[Derivatives3]) -> Vec<f64> {
    let n = ders.len();
    let raw: Vec<Option<f64>> = ders
        .iter()
        .map(|d| {
            let g = (bracket(d.d1, d.d2) / bracket(d.pos, d.d1)).abs().sqrt();
            g.is_finite().then_some(g)
        })
        .collect();
    (0..n)
        .map(|i| match raw[i] {
            Some(g) => g,
            None => {
                let nb: Vec<f64> = [i.wrapping_sub(1), i + 1].iter().filter_map(|&j| raw.get(j).copied().flatten()).collect();
                if nb.is_empty() {
                    0.0
                } else {
                    nb.iter().sum::<f64>() / nb.len() as f64
                }
            }
        })
        .collect()
}

/// Signature from per-sample derivatives on a parameter grid.
pub fn signature_from_derivatives(ders: &[Derivatives3], grid: Grid<'_>, clip: f64) -> Result<InvariantSignature> {
    let g_all = metric_density(ders);
    let s_all = cumulative(&g_all, grid);
    let closed = grid.period.is_some();
    let total_length = *s_all.last().unwrap_or(&0.0);
    let mut sig = InvariantSignature {
        s: Vec::new(),
        kappa: Vec::new(),
        eps: Vec::new(),
        g: Vec::new(),
        indices: Vec::new(),
        dropped: Vec::new(),
        total_length,
        closed,
    };
    for (i, d) in ders.iter().enumerate() {
        match invariants_at_index(d, i) {
            Ok(inv) if inv.kappa.abs() <= clip && inv.kappa.is_finite() => {
                sig.s.push(s_all[i]);
                sig.kappa.push(inv.kappa);
                sig.eps.push(inv.eps);
                sig.g.push(inv.g);
                sig.indices.push(i);
            }
            _ => sig.dropped.push(i),
        }
    }
    if sig.len() < MIN_POINTS {
        return Err(Error::TooFewRegularPoints { found: sig.len(), needed: MIN_POINTS });
    }
    Ok(sig)
}

/// Signature of a sampled curve using finite-difference derivatives.
pub fn signature(curve: &SampledCurve, clip: f64) -> Result<InvariantSignature> {
    signature_from_derivatives(&curve.derivatives(), curve.grid(), clip)
}

/// Signature of an analytic curve at the given parameters (closed when the
/// curve has a period).
pub fn signature_of<C: ParametricCurve + ?Sized>(curve: &C, params: &[f64], clip: f64) -> Result<InvariantSignature> {
    let ders: Vec<Derivatives3> = params.iter().map(|&p| curve.derivatives(p)).collect();
    signature_from_derivatives(&ders, Grid::new(params, curve.period()), clip)
}

/// Arc-length between samples `i0 ≤ i1`. On a closed curve `i1` may equal the
/// sample count, meaning the way back to sample 0 (so `0..n` is a full turn).
pub fn arc_length(curve: &SampledCurve, i0: usize, i1: usize) -> Result<f64> {
    let n = curve.len();
    let max = if curve.is_closed() { n } else { n - 1 };
    if i0 > i1 || i1 > max {
        return Err(Error::InvalidInput(format!("arc range {i0}..{i1} outside 0..={max}")));
    }
    if i0 == i1 {
        return Ok(0.0);
    }
    let ders = curve.derivatives();
    for i in i0..=i1 {
        let idx = i % n;
        invariants_at_index(&ders[idx], idx)?;
    }
    let s = cumulative(&metric_density(&ders), curve.grid());
    Ok(s[i1] - s[i0])
}
