//! Pointwise and global centro-affine invariants of planar curves.
//!
//! For a curve `x(p)` with brackets `[x, ẋ]` and `[ẋ, ẍ]` both nonzero, the
//! metric density is `g = sqrt(ε [ẋ, ẍ] / [x, ẋ])` with ε the sign of that
//! ratio, arc-length is `s = ∫ g dp`, and the curvature κ is the lowest order
//! invariant beyond g. All three are unchanged by any invertible linear map.

mod analytic;
mod constant;
mod graph;
mod invariants;
mod sampled;
mod signature;

pub use analytic::{linspace, Ellipse, Harmonic, Hyperbola, ParametricCurve, PolarCurve, PowerCurve, Transformed, XLogX};
pub use constant::{
    classify_constant, reconstruct_from_curvature, reconstruct_with, Classification, ConstantCurvatureClass, CLASSIFY_TOL,
};
pub use graph::{
    curvature_graph, invariantize_jet3, invariantize_jet4, moving_frame, recurrence_rhs, CurveJet, MovingFrame,
    TransformedJet, GRAPH_CURVATURE_FACTOR,
};
pub use invariants::{invariants_at, regularity, Eps, InvariantSample, RegularityStatus, REGULARITY_TOL};
pub use sampled::{SampledCurve, FD_WIDTH, MIN_POINTS};
pub use signature::{arc_length, signature, signature_from_derivatives, signature_of, InvariantSignature, DEFAULT_CLIP};
