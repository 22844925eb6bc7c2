//! Contour files: CSV (`contour_id,point_index,x,y,closed`) or JSON.

use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::curve_core::SampledCurve;
use crate::error::{Error, Result};
use crate::geometry::Point2;

pub const CONTOUR_HEADER: [&str; 5] = ["contour_id", "point_index", "x", "y", "closed"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContourFormat {
    Csv,
    Json,
}

impl ContourFormat {
    /// `.json` means JSON; anything else is read as CSV.
    pub fn from_path(path: &Path) -> ContourFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => ContourFormat::Json,
            _ => ContourFormat::Csv,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedContour {
    pub id: String,
    pub curve: SampledCurve,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContourFile {
    pub format: ContourFormat,
    pub contours: Vec<NamedContour>,
}

impl ContourFile {
    pub fn get(&self, id: &str) -> Option<&SampledCurve> {
        self.contours.iter().find(|c| c.id == id).map(|c| &c.curve)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonContour {
    id: String,
    closed: bool,
    points: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct JsonFile {
    contours: Vec<JsonContour>,
}

pub(crate) fn parse_error(line: u64, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

pub(crate) fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    parse_error(line, 0, e.to_string())
}

pub(crate) fn field<T: std::str::FromStr>(rec: &csv::StringRecord, col: usize, name: &str) -> Result<T> {
    let line = rec.position().map(|p| p.line()).unwrap_or(0);
    let raw = rec.get(col).ok_or_else(|| parse_error(line, col + 1, format!("missing field '{name}'")))?;
    raw.trim().parse().map_err(|_| parse_error(line, col + 1, format!("invalid {name} '{raw}'")))
}

pub(crate) fn check_header(rdr: &mut csv::Reader<impl Read>, expected: &[&str]) -> Result<()> {
    let header = rdr.headers().map_err(csv_error)?;
    let got: Vec<&str> = header.iter().map(str::trim).collect();
    if got != expected {
        return Err(parse_error(1, 1, format!("expected header '{}', found '{}'", expected.join(","), got.join(","))));
    }
    Ok(())
}

fn parse_bool(rec: &csv::StringRecord, col: usize) -> Result<bool> {
    let line = rec.position().map(|p| p.line()).unwrap_or(0);
    match rec.get(col).map(str::trim) {
        Some("true") | Some("1") => Ok(true),
        Some("false") | Some("0") => Ok(false),
        other => Err(parse_error(line, col + 1, format!("invalid closed flag '{}'", other.unwrap_or("")))),
    }
}

fn build(id: String, points: Vec<Point2>, closed: bool, out: &mut Vec<NamedContour>) -> Result<()> {
    if out.iter().any(|c| c.id == id) {
        return Err(Error::InvariantViolation { contour: id, message: "duplicate contour id".into() });
    }
    let curve = SampledCurve::new(points, closed).map_err(|e| Error::InvariantViolation { contour: id.clone(), message: e.to_string() })?;
    out.push(NamedContour { id, curve });
    Ok(())
}

pub fn read_contours_csv<R: Read>(reader: R) -> Result<Vec<NamedContour>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    check_header(&mut rdr, &CONTOUR_HEADER)?;
    let mut out = Vec::new();
    // (id, points, closed)
    let mut cur: Option<(String, Vec<Point2>, bool)> = None;
    for rec in rdr.records() {
        let rec = rec.map_err(csv_error)?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        let id = rec.get(0).map(|s| s.trim().to_string()).unwrap_or_default();
        let index: usize = field(&rec, 1, "point_index")?;
        let x: f64 = field(&rec, 2, "x")?;
        let y: f64 = field(&rec, 3, "y")?;
        let closed = parse_bool(&rec, 4)?;
        if !x.is_finite() || !y.is_finite() {
            return Err(parse_error(line, 3, "coordinates must be finite"));
        }
        if cur.as_ref().is_some_and(|c| c.0 != id) {
            let (cid, pts, cl) = cur.take().expect("checked above");
            build(cid, pts, cl, &mut out)?;
        }
        match cur.as_mut() {
            None => {
                if out.iter().any(|c| c.id == id) {
                    return Err(parse_error(line, 1, format!("points of contour '{id}' are not contiguous")));
                }
                if index != 0 {
                    return Err(parse_error(line, 2, format!("contour '{id}' must start at point_index 0")));
                }
                cur = Some((id, vec![Point2::new(x, y)], closed));
            }
            Some((_, pts, cl)) => {
                if index != pts.len() {
                    return Err(parse_error(line, 2, format!("expected point_index {}, found {index}", pts.len())));
                }
                if *cl != closed {
                    return Err(parse_error(line, 5, "closed flag changes within a contour"));
                }
                pts.push(Point2::new(x, y));
            }
        }
    }
    if let Some((cid, pts, cl)) = cur {
        build(cid, pts, cl, &mut out)?;
    }
    Ok(out)
}

pub fn read_contours_json<R: Read>(reader: R) -> Result<Vec<NamedContour>> {
    let file: JsonFile = serde_json::from_reader(reader).map_err(|e| parse_error(e.line() as u64, e.column(), e.to_string()))?;
    let mut out = Vec::new();
    for c in file.contours {
        let pts = c.points.iter().map(|p| Point2::new(p[0], p[1])).collect();
        build(c.id, pts, c.closed, &mut out)?;
    }
    Ok(out)
}

pub fn load_contours(path: &Path, format: ContourFormat) -> Result<ContourFile> {
    let f = File::open(path).map_err(|e| Error::io(path, e))?;
    let r = BufReader::new(f);
    let contours = match format {
        ContourFormat::Csv => read_contours_csv(r)?,
        ContourFormat::Json => read_contours_json(r)?,
    };
    Ok(ContourFile { format, contours })
}

/// Numbers are written with 17 significant digits so they read back exactly.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_contours_csv<W: Write>(writer: W, contours: &[NamedContour]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CONTOUR_HEADER).map_err(csv_error)?;
    for c in contours {
        let closed = if c.curve.is_closed() { "true" } else { "false" };
        for (i, p) in c.curve.points().iter().enumerate() {
            w.write_record([c.id.as_str(), &i.to_string(), &fmt_num(p.x), &fmt_num(p.y), closed]).map_err(csv_error)?;
        }
    }
    w.flush().map_err(|e| Error::io("<csv>", e))
}

pub fn write_contours_json<W: Write>(writer: W, contours: &[NamedContour]) -> Result<()> {
    let file = JsonFile {
        contours: contours
            .iter()
            .map(|c| JsonContour {
                id: c.id.clone(),
                closed: c.curve.is_closed(),
                points: c.curve.points().iter().map(|p| [p.x, p.y]).collect(),
            })
            .collect(),
    };
    serde_json::to_writer_pretty(writer, &file).map_err(|e| Error::InvalidInput(e.to_string()))
}

pub fn save_contours(path: &Path, format: ContourFormat, contours: &[NamedContour]) -> Result<()> {
    let f = File::create(path).map_err(|e| Error::io(path, e))?;
    let w = std::io::BufWriter::new(f);
    match format {
        ContourFormat::Csv => write_contours_csv(w, contours),
        ContourFormat::Json => write_contours_json(w, contours),
    }
    .map_err(|e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    })
}
