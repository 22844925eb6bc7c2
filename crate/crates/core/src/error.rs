use std::path::PathBuf;

/// Errors produced anywhere in the crate.
///
/// Each variant maps onto one of the CLI exit codes through
/// [`Error::exit_code`].
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("irregular point at sample {index}: a bracket vanished (straight segment or radial tangent)")]
    IrregularPoint { index: usize },

    #[error("jet has sign(y - x*y_x) = -1; flip the orientation before building the frame")]
    WrongOrientation,

    #[error("degenerate initial data: [x0, x0'] = 0")]
    DegenerateInit,

    #[error("no constant-curvature classification for eps = -1")]
    Unclassified,

    #[error("too few regular samples: {found} remain, at least {needed} required")]
    TooFewRegularPoints { found: usize, needed: usize },

    #[error("too few points: {found} given, at least {needed} required")]
    TooFewPoints { found: usize, needed: usize },

    #[error("time step {dt} exceeds the stability bound {bound}")]
    StabilityViolation { dt: f64, bound: f64 },

    #[error("curvature gradient blow-up at t = {time} (sup |kappa_s| = {gradient})")]
    ShockEncountered { time: f64, gradient: f64 },

    #[error("kappa/g drifted by {drift} along the flow (limit {limit})")]
    ConservationViolated { drift: f64, limit: f64 },

    #[error("requested time {t} is at or past the shock time {shock_time}")]
    PastShock { t: f64, shock_time: f64 },

    #[error("initial curvature vanishes at sample {index}")]
    KappaVanishes { index: usize },

    #[error("characteristic coordinate leaves the arc at t = {t}")]
    RangeExceeded { t: f64 },

    #[error("polygon area {area} is too small to define a barycenter")]
    DegenerateArea { area: f64 },

    #[error("B-spline collocation system is singular")]
    SingularFit,

    #[error("unsupported spline degree {degree} (need at least {min})")]
    InvalidDegree { degree: usize, min: usize },

    #[error("signals do not overlap after trimming")]
    EmptyOverlap,

    #[error("DTW band half-width {window} cannot reach the end of sequences of lengths {n} and {m}")]
    BandInfeasible { window: usize, n: usize, m: usize },

    #[error("input has zero variance")]
    ZeroVariance,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("degenerate point configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("point maps to infinity under the homography")]
    PointAtInfinity,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: u64,
        column: usize,
        message: String,
    },

    #[error("contour '{contour}' violates an invariant: {message}")]
    InvariantViolation { contour: String, message: String },

    #[error("no contour found at the requested threshold")]
    NoContour,

    #[error("no match found: {0}")]
    NoMatch(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code: 2 input error, 3 numeric/stability error,
    /// 4 matching failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::InvariantViolation { .. }
            | Error::Io { .. }
            | Error::InvalidInput(_)
            | Error::NoContour
            | Error::TooFewPoints { .. }
            | Error::LengthMismatch { .. }
            | Error::InvalidDegree { .. } => 2,
            Error::EmptyOverlap | Error::BandInfeasible { .. } | Error::NoMatch(_) => 4,
            _ => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
