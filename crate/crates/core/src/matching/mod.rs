//! Comparing invariant signatures: signal distances, cyclic and reversal
//! alignment, DTW correspondence, contour descriptors and assignment, and
//! homography estimation from the resulting point pairs.

mod align;
mod assign;
mod descriptor;
mod dtw;
mod homography;
mod signal;

pub use align::{best_alignment, best_alignment_with, AlignConfig, AlignmentResult, MIN_ALIGN_SAMPLES};
pub use assign::{greedy, hungarian, match_contours, Assignment, MatchConfig, MatchItem, MatchOutcome, MatchedPair, THREADS_ENV};
pub use descriptor::{corner_indices, descriptor, descriptor_distance, euclidean_curvature, ContourDescriptor, CORNER_FACTOR};
pub use dtw::{default_window, dtw_align};
pub use homography::{apply_homography, estimate_homography, Homography, HomographyFit};
pub use signal::{correlation, raw_signal_distance, signal_distance, SignalCurve};
