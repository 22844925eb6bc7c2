//! Synthetic contours with known ground truth.

use nalgebra::Matrix2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::curve_core::{
    linspace, ConstantCurvatureClass, Ellipse, Harmonic, Hyperbola, ParametricCurve, PolarCurve, PowerCurve, SampledCurve, XLogX,
    MIN_POINTS,
};
use crate::error::{Error, Result};
use crate::geometry::{diameter, Point2};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SyntheticBase {
    /// `y = x^α` over the range in x.
    PowerCurve { alpha: f64 },
    XLogX,
    UnitCircle,
    /// Log spiral over the range in θ.
    LogSpiral { phi: f64 },
    /// Branch of `y = 1/x` over the range in x.
    Hyperbola,
    Circle { radius: f64 },
    Ellipse { a: f64, b: f64 },
    PerturbedCircle { radius: f64, harmonics: Vec<Harmonic> },
}

impl From<ConstantCurvatureClass> for SyntheticBase {
    fn from(c: ConstantCurvatureClass) -> Self {
        match c {
            ConstantCurvatureClass::PowerCurve { alpha } => SyntheticBase::PowerCurve { alpha },
            ConstantCurvatureClass::XLogX => SyntheticBase::XLogX,
            ConstantCurvatureClass::UnitCircle => SyntheticBase::UnitCircle,
            ConstantCurvatureClass::LogSpiral { phi } => SyntheticBase::LogSpiral { phi },
            ConstantCurvatureClass::Hyperbola => SyntheticBase::Hyperbola,
        }
    }
}

impl SyntheticBase {
    fn curve(&self) -> Box<dyn ParametricCurve> {
        match self {
            SyntheticBase::PowerCurve { alpha } => Box::new(PowerCurve { alpha: *alpha }),
            SyntheticBase::XLogX => Box::new(XLogX),
            SyntheticBase::UnitCircle => Box::new(PolarCurve::circle(1.0)),
            SyntheticBase::LogSpiral { phi } => Box::new(PolarCurve::log_spiral(*phi)),
            SyntheticBase::Hyperbola => Box::new(Hyperbola),
            SyntheticBase::Circle { radius } => Box::new(PolarCurve::circle(*radius)),
            SyntheticBase::Ellipse { a, b } => Box::new(Ellipse { a: *a, b: *b }),
            SyntheticBase::PerturbedCircle { radius, harmonics } => Box::new(PolarCurve::perturbed_circle(*radius, harmonics.clone())),
        }
    }

    fn default_range(&self) -> [f64; 2] {
        match self {
            SyntheticBase::LogSpiral { .. } => [0.0, std::f64::consts::TAU],
            _ => [0.5, 2.0],
        }
    }
}

fn identity() -> [[f64; 2]; 2] {
    [[1.0, 0.0], [0.0, 1.0]]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticSpec {
    pub base: SyntheticBase,
    /// Row-major 2×2 linear map applied to the base curve.
    #[serde(default = "identity")]
    pub transform: [[f64; 2]; 2],
    #[serde(default)]
    pub translation: Option<[f64; 2]>,
    /// Gaussian noise standard deviation as a fraction of the transformed
    /// curve's bounding-box diagonal.
    #[serde(default)]
    pub noise_sigma: f64,
    pub n_points: usize,
    #[serde(default)]
    pub seed: u64,
    /// Parameter range for open bases (x, or θ for spirals).
    #[serde(default)]
    pub range: Option<[f64; 2]>,
}

impl SyntheticSpec {
    pub fn matrix(&self) -> Matrix2<f64> {
        let t = &self.transform;
        Matrix2::new(t[0][0], t[0][1], t[1][0], t[1][1])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Synthetic {
    pub curve: SampledCurve,
    /// The base curve before transformation and noise.
    pub base: SampledCurve,
    /// `ground_truth[i]` is the base sample that output sample `i` comes from.
    pub ground_truth: Vec<usize>,
}

pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<Synthetic> {
    let m = spec.matrix();
    let det = m.determinant();
    if !(det.abs() > 1e-12) || !det.is_finite() {
        return Err(Error::InvalidInput(format!("transform must be invertible (det = {det})")));
    }
    if spec.n_points < MIN_POINTS {
        return Err(Error::TooFewPoints { found: spec.n_points, needed: MIN_POINTS });
    }
    if !(spec.noise_sigma >= 0.0) {
        return Err(Error::InvalidInput("noise_sigma must be non-negative".into()));
    }
    let curve = spec.base.curve();
    let base = if curve.period().is_some() {
        curve.sample_closed(spec.n_points, 0.0)?
    } else {
        let [a, b] = spec.range.unwrap_or_else(|| spec.base.default_range());
        curve.sample(&linspace(a, b, spec.n_points))?
    };
    let shift = spec.translation.map(|t| Point2::new(t[0], t[1])).unwrap_or(Point2::ORIGIN);
    let moved: Vec<Point2> = base.points().iter().map(|p| p.transform(&m) + shift).collect();
    let sigma = spec.noise_sigma * diameter(&moved);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let noisy: Vec<Point2> = if sigma > 0.0 {
        let normal = Normal::new(0.0, sigma).map_err(|e| Error::InvalidInput(e.to_string()))?;
        moved.iter().map(|p| *p + Point2::new(normal.sample(&mut rng), normal.sample(&mut rng))).collect()
    } else {
        moved
    };
    let out = SampledCurve::new(noisy, base.is_closed())?;
    Ok(Synthetic { curve: out, ground_truth: (0..spec.n_points).collect(), base })
}

/// Random invertible 2×2 matrix with condition number at most
/// `max_condition`, entries drawn uniformly from [−2, 2].
pub fn random_matrix<R: Rng>(rng: &mut R, max_condition: f64) -> Matrix2<f64> {
    loop {
        let m = Matrix2::from_fn(|_, _| rng.gen_range(-2.0..2.0));
        let sv = m.singular_values();
        let (hi, lo) = (sv.max(), sv.min());
        if lo > 1e-3 && hi / lo <= max_condition {
            return m;
        }
    }
}
