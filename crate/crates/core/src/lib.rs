//! Centro-affine differential invariants of planar curves.
//!
//! The crate is organised around the GL(2,ℝ) action on the plane:
//!
//! * [`curve_core`] computes pointwise invariants (metric density `g`,
//!   curvature `κ`, orientation sign `ε`), the equivariant moving frame on
//!   graph jets, constant-curvature classification and reconstruction of a
//!   curve from its curvature.
//! * [`flows`] evolves curves by `∂C/∂t = β(κ) C_ss`, including the heat flow
//!   whose curvature obeys the inviscid Burgers equation.
//! * [`preprocess`] conditions raw contours (barycenter centering, Gaussian
//!   smoothing, resampling, B-spline fitting).
//! * [`matching`] compares invariant signatures and estimates homographies
//!   from the resulting correspondences.
//! * [`contour_io`] reads and writes contours, signatures and trajectories,
//!   and generates synthetic ground truth.

pub mod cli;
pub mod contour_io;
pub mod curve_core;
pub mod error;
pub mod flows;
pub mod geometry;
pub mod matching;
pub mod numeric;
pub mod preprocess;

pub use error::{Error, Result};
pub use geometry::{bracket, Point2};
