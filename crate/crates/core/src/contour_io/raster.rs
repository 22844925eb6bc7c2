//! Grayscale rasters: binary PGM input and marching-squares isocontours.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::Path;

use image::codecs::pnm::{PnmEncoder, PnmSubtype, SampleEncoding};
use image::{ExtendedColorType, ImageEncoder, ImageFormat, ImageReader};

use crate::curve_core::{SampledCurve, MIN_POINTS};
use crate::error::{Error, Result};
use crate::geometry::{signed_area, Point2};

/// Row-major grayscale image with values in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
    pub values: Vec<f64>,
}

impl Raster {
    pub fn new(width: usize, height: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != width * height {
            return Err(Error::LengthMismatch { left: values.len(), right: width * height });
        }
        if values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::InvalidInput("raster values must lie in [0, 1]".into()));
        }
        Ok(Raster { width, height, values })
    }

    pub fn from_fn<F: Fn(usize, usize) -> f64>(width: usize, height: usize, f: F) -> Self {
        let values = (0..height).flat_map(|y| (0..width).map(move |x| (x, y))).map(|(x, y)| f(x, y).clamp(0.0, 1.0)).collect();
        Raster { width, height, values }
    }

    /// Value at column `x`, row `y`; zero outside the image.
    pub fn at(&self, x: i64, y: i64) -> f64 {
        if x < 0 || y < 0 || x >= self.width as i64 || y >= self.height as i64 {
            0.0
        } else {
            self.values[y as usize * self.width + x as usize]
        }
    }
}

pub fn read_pgm(path: &Path) -> Result<Raster> {
    let f = File::open(path).map_err(|e| Error::io(path, e))?;
    let img = ImageReader::with_format(BufReader::new(f), ImageFormat::Pnm)
        .decode()
        .map_err(|e| Error::Parse { line: 0, column: 0, message: format!("{}: {e}", path.display()) })?
        .to_luma8();
    let (w, h) = img.dimensions();
    Ok(Raster { width: w as usize, height: h as usize, values: img.as_raw().iter().map(|&v| v as f64 / 255.0).collect() })
}

/// Writes a binary (P5) PGM with maxval 255.
pub fn write_pgm(path: &Path, raster: &Raster) -> Result<()> {
    let f = File::create(path).map_err(|e| Error::io(path, e))?;
    let bytes: Vec<u8> = raster.values.iter().map(|v| (v * 255.0).round() as u8).collect();
    PnmEncoder::new(BufWriter::new(f))
        .with_subtype(PnmSubtype::Graymap(SampleEncoding::Binary))
        .write_image(&bytes, raster.width as u32, raster.height as u32, ExtendedColorType::L8)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

/// Cell edge on which a contour point lies: horizontal edges start at
/// `(x, y)` and go right, vertical ones go down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Edge {
    H(i64, i64),
    V(i64, i64),
}

/// Closed isocontours at `threshold`, in pixel coordinates (x = column,
/// y = row). Pixels above the threshold are inside; the image is padded with
/// zeros so every loop closes. Each loop has positive signed area in the
/// (x, y) frame.
pub fn trace_boundary(raster: &Raster, threshold: f64) -> Result<Vec<SampledCurve>> {
    let inside = |x: i64, y: i64| raster.at(x, y) > threshold;
    let point = |e: Edge| -> Point2 {
        let (a, b) = match e {
            Edge::H(x, y) => ((x, y), (x + 1, y)),
            Edge::V(x, y) => ((x, y), (x, y + 1)),
        };
        let (va, vb) = (raster.at(a.0, a.1), raster.at(b.0, b.1));
        let t = if vb != va { ((threshold - va) / (vb - va)).clamp(0.0, 1.0) } else { 0.5 };
        Point2::new(a.0 as f64 + t * (b.0 - a.0) as f64, a.1 as f64 + t * (b.1 - a.1) as f64)
    };
    let mut segments: Vec<(Edge, Edge)> = Vec::new();
    for y in -1..raster.height as i64 {
        for x in -1..raster.width as i64 {
            let b = [inside(x, y), inside(x + 1, y), inside(x + 1, y + 1), inside(x, y + 1)];
            let (top, right, bottom, left) = (Edge::H(x, y), Edge::V(x + 1, y), Edge::H(x, y + 1), Edge::V(x, y));
            let mut crossed = Vec::with_capacity(4);
            if b[0] != b[1] {
                crossed.push(top);
            }
            if b[1] != b[2] {
                crossed.push(right);
            }
            if b[3] != b[2] {
                crossed.push(bottom);
            }
            if b[0] != b[3] {
                crossed.push(left);
            }
            match crossed.len() {
                2 => segments.push((crossed[0], crossed[1])),
                4 => {
                    let center = 0.25 * (raster.at(x, y) + raster.at(x + 1, y) + raster.at(x + 1, y + 1) + raster.at(x, y + 1));
                    if (center > threshold) == b[0] {
                        segments.push((top, right));
                        segments.push((bottom, left));
                    } else {
                        segments.push((top, left));
                        segments.push((right, bottom));
                    }
                }
                _ => {}
            }
        }
    }
    let mut incident: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for (k, (a, b)) in segments.iter().enumerate() {
        incident.entry(*a).or_default().push(k);
        incident.entry(*b).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let first = segments[start].0;
        let mut chain = vec![first];
        let mut cur = segments[start].1;
        while cur != first {
            chain.push(cur);
            let next = incident[&cur].iter().copied().find(|&k| !used[k]);
            let Some(k) = next else { break };
            used[k] = true;
            cur = if segments[k].0 == cur { segments[k].1 } else { segments[k].0 };
        }
        let mut pts: Vec<Point2> = Vec::with_capacity(chain.len());
        for e in chain {
            let p = point(e);
            if pts.last().is_none_or(|q| (*q - p).norm() > 1e-12) {
                pts.push(p);
            }
        }
        while pts.len() > 1 && (pts[0] - pts[pts.len() - 1]).norm() <= 1e-12 {
            pts.pop();
        }
        if pts.len() < MIN_POINTS {
            continue;
        }
        if signed_area(&pts) < 0.0 {
            pts.reverse();
        }
        out.push(SampledCurve::closed(pts)?);
    }
    if out.is_empty() {
        return Err(Error::NoContour);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disks(centers: &[(f64, f64, f64)]) -> Raster {
        Raster::from_fn(128, 128, |x, y| {
            let inside = centers.iter().any(|&(cx, cy, r)| (x as f64 - cx).powi(2) + (y as f64 - cy).powi(2) <= r * r);
            if inside {
                1.0
            } else {
                0.0
            }
        })
    }

    #[test]
    fn empty_image() {
        let r = Raster::from_fn(16, 16, |_, _| 0.0);
        assert!(matches!(trace_boundary(&r, 0.5), Err(Error::NoContour)));
    }

    #[test]
    fn disk_matches_circle() {
        let (cx, cy, rad) = (63.5, 64.2, 40.0);
        let cs = trace_boundary(&disks(&[(cx, cy, rad)]), 0.5).unwrap();
        assert_eq!(cs.len(), 1);
        let pts = cs[0].points();
        assert!(signed_area(pts) > 0.0);
        for p in pts {
            let d = ((p.x - cx).hypot(p.y - cy) - rad).abs();
            assert!(d < 1.0, "{d}");
        }
        // every angle is covered
        for k in 0..360 {
            let a = (k as f64).to_radians();
            let q = Point2::new(cx + rad * a.cos(), cy + rad * a.sin());
            let best = pts.iter().map(|p| (*p - q).norm()).fold(f64::INFINITY, f64::min);
            assert!(best < 1.0);
        }
    }

    #[test]
    fn two_disks() {
        let cs = trace_boundary(&disks(&[(30.0, 30.0, 15.0), (90.0, 90.0, 20.0)]), 0.5).unwrap();
        assert_eq!(cs.len(), 2);
    }

    #[test]
    fn pgm_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.pgm");
        let r = disks(&[(64.0, 64.0, 30.0)]);
        write_pgm(&path, &r).unwrap();
        let back = read_pgm(&path).unwrap();
        assert_eq!(back, r);
        let head = std::fs::read(&path).unwrap();
        assert_eq!(&head[..2], b"P5");
    }
}
