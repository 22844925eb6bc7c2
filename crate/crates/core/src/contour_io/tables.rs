//! CSV tables for signatures, trajectories, correspondences, curvature
//! profiles and homographies.

use std::io::{Read, Write};

use crate::curve_core::InvariantSignature;
use crate::error::{Error, Result};
use crate::flows::FlowState;
use crate::matching::Homography;

use super::contours::{check_header, csv_error, field, fmt_num, parse_error};

pub const SIGNATURE_HEADER: [&str; 5] = ["contour_id", "sample_index", "s", "kappa", "eps"];
pub const TRAJECTORY_HEADER: [&str; 6] = ["t", "point_index", "x", "y", "g", "kappa"];
pub const CORRESPONDENCE_HEADER: [&str; 4] = ["contourA_id", "contourB_id", "sampleA_idx", "sampleB_idx"];
pub const PROFILE_HEADER: [&str; 2] = ["s", "kappa"];
pub const HOMOGRAPHY_HEADER: [&str; 3] = ["h0", "h1", "h2"];

fn flush<W: Write>(mut w: csv::Writer<W>) -> Result<()> {
    w.flush().map_err(|e| Error::io("<csv>", e))
}

pub fn write_signatures_csv<W: Write>(writer: W, signatures: &[(String, InvariantSignature)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(SIGNATURE_HEADER).map_err(csv_error)?;
    for (id, sig) in signatures {
        for i in 0..sig.len() {
            w.write_record([id.as_str(), &i.to_string(), &fmt_num(sig.s[i]), &fmt_num(sig.kappa[i]), &sig.eps[i].to_string()])
                .map_err(csv_error)?;
        }
    }
    flush(w)
}

/// One row per label and recorded state. Inactive labels are left out.
pub fn write_trajectory_csv<W: Write>(writer: W, states: &[FlowState]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(TRAJECTORY_HEADER).map_err(csv_error)?;
    for st in states {
        for (i, p) in st.curve.points().iter().enumerate() {
            if !st.active[i] {
                continue;
            }
            w.write_record([fmt_num(st.t), i.to_string(), fmt_num(p.x), fmt_num(p.y), fmt_num(st.g[i]), fmt_num(st.kappa[i])])
                .map_err(csv_error)?;
        }
    }
    flush(w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    pub contour_a: String,
    pub contour_b: String,
    pub sample_a: usize,
    pub sample_b: usize,
}

pub fn write_correspondences_csv<W: Write>(writer: W, rows: &[Correspondence]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CORRESPONDENCE_HEADER).map_err(csv_error)?;
    for r in rows {
        w.write_record([r.contour_a.as_str(), &r.contour_b, &r.sample_a.to_string(), &r.sample_b.to_string()]).map_err(csv_error)?;
    }
    flush(w)
}

pub fn read_correspondences_csv<R: Read>(reader: R) -> Result<Vec<Correspondence>> {
    let mut rdr = csv::Reader::from_reader(reader);
    check_header(&mut rdr, &CORRESPONDENCE_HEADER)?;
    rdr.records()
        .map(|rec| {
            let rec = rec.map_err(csv_error)?;
            Ok(Correspondence {
                contour_a: field(&rec, 0, "contourA_id")?,
                contour_b: field(&rec, 1, "contourB_id")?,
                sample_a: field(&rec, 2, "sampleA_idx")?,
                sample_b: field(&rec, 3, "sampleB_idx")?,
            })
        })
        .collect()
}

pub fn write_profile_csv<W: Write>(writer: W, s: &[f64], kappa: &[Option<f64>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(PROFILE_HEADER).map_err(csv_error)?;
    for (s, k) in s.iter().zip(kappa) {
        let k = k.map(fmt_num).unwrap_or_else(|| "nan".into());
        w.write_record([fmt_num(*s), k]).map_err(csv_error)?;
    }
    flush(w)
}

/// `(s, κ)` columns of a curvature profile.
pub fn read_profile_csv<R: Read>(reader: R) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut rdr = csv::Reader::from_reader(reader);
    check_header(&mut rdr, &PROFILE_HEADER)?;
    let mut s = Vec::new();
    let mut k = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_error)?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        let (a, b): (f64, f64) = (field(&rec, 0, "s")?, field(&rec, 1, "kappa")?);
        if !a.is_finite() || !b.is_finite() {
            return Err(parse_error(line, 1, "profile values must be finite"));
        }
        s.push(a);
        k.push(b);
    }
    Ok((s, k))
}

pub fn write_homography_csv<W: Write>(writer: W, h: &Homography) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(HOMOGRAPHY_HEADER).map_err(csv_error)?;
    for row in h.rows() {
        w.write_record(row.iter().map(|v| fmt_num(*v))).map_err(csv_error)?;
    }
    flush(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn correspondence_round_trip() {
        let rows = vec![
            Correspondence { contour_a: "a".into(), contour_b: "x".into(), sample_a: 0, sample_b: 3 },
            Correspondence { contour_a: "a".into(), contour_b: "x".into(), sample_a: 1, sample_b: 4 },
        ];
        let mut buf = Vec::new();
        write_correspondences_csv(&mut buf, &rows).unwrap();
        assert_eq!(read_correspondences_csv(&buf[..]).unwrap(), rows);
    }

    #[test]
    fn profile_round_trip() {
        let s = [0.0, 0.1, 0.25];
        let k = [Some(1.0), Some(-0.3), Some(1.0 / 3.0)];
        let mut buf = Vec::new();
        write_profile_csv(&mut buf, &s, &k).unwrap();
        let (s2, k2) = read_profile_csv(&buf[..]).unwrap();
        assert_eq!(s2, s);
        assert_eq!(k2, vec![1.0, -0.3, 1.0 / 3.0]);
    }

    #[test]
    fn bad_header() {
        assert!(matches!(read_profile_csv("a,b\n1,2\n".as_bytes()), Err(Error::Parse { line: 1, .. })));
    }
}
