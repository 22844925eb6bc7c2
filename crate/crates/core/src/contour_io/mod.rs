//! Reading and writing contours and results, raster boundary tracing and
//! synthetic ground truth.

mod contours;
mod raster;
mod svg;
mod synth;
mod tables;

pub use contours::{
    fmt_num, load_contours, read_contours_csv, read_contours_json, save_contours, write_contours_csv, write_contours_json,
    ContourFile, ContourFormat, NamedContour, CONTOUR_HEADER,
};
pub use raster::{read_pgm, trace_boundary, write_pgm, Raster};
pub use svg::{export_svg, svg_document, SvgPolyline};
pub use synth::{generate_synthetic, random_matrix, Synthetic, SyntheticBase, SyntheticSpec};
pub use tables::{
    read_correspondences_csv, read_profile_csv, write_correspondences_csv, write_homography_csv, write_profile_csv,
    write_signatures_csv, write_trajectory_csv, Correspondence, CORRESPONDENCE_HEADER, PROFILE_HEADER, SIGNATURE_HEADER,
    TRAJECTORY_HEADER,
};
