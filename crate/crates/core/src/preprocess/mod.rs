//! Contour conditioning: barycenter centering, Gaussian smoothing,
//! resampling to a fixed count and B-spline fitting with analytic
//! derivatives, ending in an invariant signature.

mod bspline;
mod condition;
mod resample;

use serde::{Deserialize, Serialize};

use crate::curve_core::{signature_of, InvariantSignature, SampledCurve, DEFAULT_CLIP};
use crate::error::Result;
use crate::geometry::Point2;

pub use bspline::{fit_bspline_closed, fit_bspline_open, spline_derivatives, BSplineCurve, DEFAULT_DEGREE, MIN_DEGREE};
pub use condition::{center_at_barycenter, gaussian_smooth, polygon_barycenter, SmoothingSpec, DEFAULT_SIGMA};
pub use resample::{arclength_resample, kmeans_resample, resample, ResampleMode, DEFAULT_SAMPLES};

/// Settings of the conditioning pipeline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    /// Gaussian width in samples; 0 disables smoothing.
    pub sigma: f64,
    pub samples: usize,
    pub resample: ResampleMode,
    pub degree: usize,
    pub clip: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            sigma: DEFAULT_SIGMA,
            samples: DEFAULT_SAMPLES,
            resample: ResampleMode::ArcLength,
            degree: DEFAULT_DEGREE,
            clip: DEFAULT_CLIP,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    /// Barycenter of the raw contour (before centering).
    pub barycenter: Point2,
    pub resampled: SampledCurve,
    pub spline: BSplineCurve,
    /// Signature at the spline's fit parameters.
    pub signature: InvariantSignature,
}

/// Center, smooth, resample, fit and take the signature of a closed contour.
pub fn run_pipeline(contour: &SampledCurve, cfg: &PipelineConfig) -> Result<PipelineOutput> {
    let (centered, barycenter) = center_at_barycenter(contour)?;
    let smoothed = if cfg.sigma > 0.0 {
        gaussian_smooth(&centered, &SmoothingSpec::new(cfg.sigma)?)?
    } else {
        centered
    };
    let resampled = resample(&smoothed, cfg.samples, cfg.resample)?;
    let spline = fit_bspline_closed(&resampled, cfg.degree)?;
    let signature = signature_of(&spline, spline.fit_params(), cfg.clip)?;
    Ok(PipelineOutput { barycenter, resampled, spline, signature })
}
