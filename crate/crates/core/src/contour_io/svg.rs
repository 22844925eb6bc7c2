//! Minimal SVG output: one polyline per contour or trajectory frame.

use std::fmt::Write as _;
use std::io::Write;

use crate::error::{Error, Result};
use crate::geometry::Point2;

#[derive(Clone, Debug, PartialEq)]
pub struct SvgPolyline {
    pub id: String,
    pub points: Vec<Point2>,
    pub closed: bool,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// SVG document text; y points up, the view box is the bounding box plus a
/// 5% margin.
pub fn svg_document(lines: &[SvgPolyline]) -> String {
    let all: Vec<Point2> = lines.iter().flat_map(|l| l.points.iter().copied()).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 1.0f64, 0.0f64, 1.0f64);
    if !all.is_empty() {
        x0 = all.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
        x1 = all.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
        y0 = all.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
        y1 = all.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
    }
    let pad = 0.05 * (x1 - x0).max(y1 - y0).max(1e-9);
    let (vx, vy, vw, vh) = (x0 - pad, -(y1 + pad), x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let stroke = vw.max(vh) / 500.0;
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vx} {vy} {vw} {vh}">"#);
    let _ = writeln!(out, r#"<g transform="scale(1,-1)" fill="none" stroke="black" stroke-width="{stroke}">"#);
    for l in lines {
        let mut pts: Vec<String> = l.points.iter().map(|p| format!("{},{}", p.x, p.y)).collect();
        if l.closed && !l.points.is_empty() {
            pts.push(pts[0].clone());
        }
        let _ = writeln!(out, r#"<polyline id="{}" points="{}"/>"#, escape(&l.id), pts.join(" "));
    }
    out.push_str("</g>\n</svg>\n");
    out
}

pub fn export_svg<W: Write>(mut writer: W, lines: &[SvgPolyline]) -> Result<()> {
    writer.write_all(svg_document(lines).as_bytes()).map_err(|e| Error::io("<svg>", e))
}
