//! Best cyclic shift and orientation between two closed-curve signatures.

use serde::{Deserialize, Serialize};

use crate::curve_core::{Eps, InvariantSignature};
use crate::error::{Error, Result};

use super::dtw::{default_window, dtw_align};
use super::signal::{signal_distance, SignalCurve};

pub const MIN_ALIGN_SAMPLES: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlignConfig {
    /// Weight of the fraction of disagreeing ε signs in the objective.
    pub eps_penalty: f64,
    /// DTW band half-width; `None` uses [`default_window`].
    pub window: Option<usize>,
}

impl Default for AlignConfig {
    fn default() -> Self {
        AlignConfig { eps_penalty: 1.0, window: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlignmentResult {
    /// Sample `(i + cyclic_shift) mod M` of the second signature (after
    /// reversal, if any) pairs with sample `i` of the first.
    pub cyclic_shift: usize,
    pub reversed: bool,
    pub error1: f64,
    pub error2: f64,
    /// Fraction of samples whose ε differs from the paired sample.
    pub eps_mismatch: f64,
    /// `error2 + eps_penalty · eps_mismatch`, the minimized quantity.
    pub objective: f64,
    /// DTW correspondence between the first signature and the aligned
    /// second one, in the indices of each signature as given.
    pub dtw_path: Vec<(usize, usize)>,
    pub dtw_cost: f64,
}

/// Signature on a normalized axis starting at 0.
struct Track {
    s: Vec<f64>,
    kappa: Vec<f64>,
    eps: Vec<Eps>,
}

impl Track {
    fn from_signature(sig: &InvariantSignature) -> Track {
        let s = sig.normalized_s();
        let s0 = s[0];
        Track { s: s.iter().map(|v| v - s0).collect(), kappa: sig.kappa.clone(), eps: sig.eps.clone() }
    }

    /// Traversed backwards: arc-length mirrored and κ negated.
    fn reversed(&self) -> Track {
        let m = self.s.len();
        let last = self.s[m - 1];
        Track {
            s: (0..m).map(|j| last - self.s[m - 1 - j]).collect(),
            kappa: (0..m).map(|j| -self.kappa[m - 1 - j]).collect(),
            eps: (0..m).map(|j| self.eps[m - 1 - j]).collect(),
        }
    }

    /// Starts at sample `k`; the axis wraps with period 1.
    fn rotated(&self, k: usize) -> Track {
        let m = self.s.len();
        let base = self.s[k];
        let idx = |j: usize| (j + k) % m;
        Track {
            s: (0..m).map(|j| self.s[idx(j)] - base + if j + k >= m { 1.0 } else { 0.0 }).collect(),
            kappa: (0..m).map(|j| self.kappa[idx(j)]).collect(),
            eps: (0..m).map(|j| self.eps[idx(j)]).collect(),
        }
    }

    fn signal(&self) -> Result<SignalCurve> {
        SignalCurve::new(self.s.clone(), self.kappa.clone())
    }

    /// Index of the sample nearest to `z`.
    fn nearest(&self, z: f64) -> usize {
        let k = self.s.partition_point(|&v| v < z);
        if k == 0 {
            0
        } else if k == self.s.len() || z - self.s[k - 1] <= self.s[k] - z {
            k - 1
        } else {
            k
        }
    }
}

fn eps_mismatch(a: &Track, b: &Track) -> f64 {
    let bad = a.s.iter().zip(&a.eps).filter(|(s, e)| b.eps[b.nearest(**s)] != **e).count();
    bad as f64 / a.s.len() as f64
}

pub fn best_alignment(sa: &InvariantSignature, sb: &InvariantSignature) -> Result<AlignmentResult> {
    best_alignment_with(sa, sb, &AlignConfig::default())
}

/// Exhaustive search over cyclic shifts and both orientations of `sb`.
pub fn best_alignment_with(sa: &InvariantSignature, sb: &InvariantSignature, cfg: &AlignConfig) -> Result<AlignmentResult> {
    for sig in [sa, sb] {
        if sig.len() < MIN_ALIGN_SAMPLES {
            return Err(Error::TooFewPoints { found: sig.len(), needed: MIN_ALIGN_SAMPLES });
        }
    }
    let a = Track::from_signature(sa);
    let a_signal = a.signal()?;
    let forward = Track::from_signature(sb);
    let backward = forward.reversed();
    let m = forward.s.len();
    // (objective, shift, reversed, error1, error2, mismatch)
    let mut best: Option<(f64, usize, bool, f64, f64, f64)> = None;
    for (reversed, track) in [(false, &forward), (true, &backward)] {
        for k in 0..m {
            let cand = track.rotated(k);
            let (e1, e2) = match signal_distance(&a_signal, &cand.signal()?) {
                Ok(v) => v,
                Err(Error::EmptyOverlap) => continue,
                Err(e) => return Err(e),
            };
            let mis = eps_mismatch(&a, &cand);
            let obj = e2 + cfg.eps_penalty * mis;
            if best.is_none_or(|b| obj < b.0) {
                best = Some((obj, k, reversed, e1, e2, mis));
            }
        }
    }
    let (objective, shift, reversed, error1, error2, mismatch) = best.ok_or(Error::EmptyOverlap)?;
    let cand = if reversed { backward.rotated(shift) } else { forward.rotated(shift) };
    let n = a.s.len();
    let window = cfg.window.unwrap_or_else(|| default_window(n, m)).max(n.abs_diff(m));
    let (path, dtw_cost) = dtw_align(&a.kappa, &cand.kappa, Some(window))?;
    // map candidate indices back to the second signature's own indices
    let dtw_path = path
        .into_iter()
        .map(|(i, j)| {
            let r = (j + shift) % m;
            (i, if reversed { m - 1 - r } else { r })
        })
        .collect();
    Ok(AlignmentResult {
        cyclic_shift: shift,
        reversed,
        error1,
        error2,
        eps_mismatch: mismatch,
        objective,
        dtw_path,
        dtw_cost,
    })
}
