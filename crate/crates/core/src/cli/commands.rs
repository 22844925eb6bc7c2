use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::contour_io::{
    export_svg, fmt_num, generate_synthetic, load_contours, read_correspondences_csv, read_profile_csv,
    save_contours, write_correspondences_csv, write_homography_csv, write_profile_csv, write_signatures_csv,
    write_trajectory_csv, ContourFile, ContourFormat, Correspondence, NamedContour, SvgPolyline, SyntheticSpec,
};
use crate::curve_core::{classify_constant, signature_of, Eps, InvariantSignature, SampledCurve};
use crate::error::{Error, Result};
use crate::flows::{burgers_characteristics, evolve, kappa_over_g, upwind_reference, EvolveOptions, FlowState, Profile};
use crate::geometry::{signed_area, Point2};
use crate::matching::{correlation, descriptor, estimate_homography, match_contours, Assignment, MatchItem};
use crate::preprocess::{fit_bspline_open, run_pipeline, PipelineConfig, PipelineOutput};

use super::{
    BurgersArgs, ClassifyArgs, Cli, CliConfig, Command, FlowArgs, HomographyArgs, InvariantsArgs, MatchArgs, SynthArgs,
};

/// Runs one parsed command line, writing human-readable lines to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let config = CliConfig::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Invariants(a) => invariants(a, &config, out),
        Command::Flow(a) => flow(a, &config, out),
        Command::Burgers(a) => burgers(a, out),
        Command::Match(a) => match_cmd(a, &config, out),
        Command::Synth(a) => synth(a, out),
        Command::Homography(a) => homography(a, out),
        Command::Classify(a) => classify(a, out),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

fn say(out: &mut dyn Write, line: std::fmt::Arguments<'_>) -> Result<()> {
    out.write_fmt(line).and_then(|_| out.write_all(b"\n")).map_err(|e| Error::io("<stdout>", e))
}

fn load(path: &Path) -> Result<ContourFile> {
    load_contours(path, ContourFormat::from_path(path))
}

/// Signature of one contour: the full pipeline for closed contours, an
/// interpolating spline through the samples for open arcs.
fn contour_signature(curve: &SampledCurve, cfg: &PipelineConfig) -> Result<(InvariantSignature, Option<PipelineOutput>)> {
    if curve.is_closed() {
        let p = run_pipeline(curve, cfg)?;
        Ok((p.signature.clone(), Some(p)))
    } else {
        let spline = fit_bspline_open(curve, cfg.degree)?;
        Ok((signature_of(&spline, spline.fit_params(), cfg.clip)?, None))
    }
}

fn with_contour<T>(id: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::InvalidInput(m) => Error::InvalidInput(format!("contour '{id}': {m}")),
        other => other,
    })
}

fn invariants(a: &InvariantsArgs, config: &CliConfig, out: &mut dyn Write) -> Result<()> {
    let mut cfg = config.pipeline.clone();
    a.pipeline.apply(&mut cfg);
    let file = load(&a.input)?;
    let mut sigs = Vec::with_capacity(file.contours.len());
    let mut lines = Vec::new();
    for c in &file.contours {
        let (sig, pipe) = with_contour(&c.id, contour_signature(&c.curve, &cfg))?;
        say(out, format_args!("{}: {} samples, {} dropped, length {}", c.id, sig.len(), sig.dropped.len(), fmt_num(sig.total_length)))?;
        let points = match &pipe {
            Some(p) => p.resampled.points().iter().map(|q| *q + p.barycenter).collect(),
            None => c.curve.points().to_vec(),
        };
        lines.push(SvgPolyline { id: c.id.clone(), points, closed: c.curve.is_closed() });
        sigs.push((c.id.clone(), sig));
    }
    write_signatures_csv(create(&a.out)?, &sigs)?;
    if let Some(svg) = &a.svg {
        export_svg(create(svg)?, &lines)?;
    }
    Ok(())
}

/// Largest change of κ/g on labels active at the end.
fn conservation_drift(states: &[FlowState]) -> f64 {
    let (Some(first), Some(last)) = (states.first(), states.last()) else { return 0.0 };
    let (r0, r1) = (kappa_over_g(first), kappa_over_g(last));
    (0..last.len()).filter(|&i| last.active[i]).map(|i| (r1[i] - r0[i]).abs()).fold(0.0, f64::max)
}

fn flow(a: &FlowArgs, config: &CliConfig, out: &mut dyn Write) -> Result<()> {
    let fc = &config.flow;
    let t_end = a.t_end.unwrap_or(fc.t_end);
    let dt = a.dt.unwrap_or(fc.dt);
    let beta = a.beta.clone().unwrap_or_else(|| fc.beta.clone());
    let opts = EvolveOptions { record_every: a.record_every.unwrap_or(fc.record_every), max_kappa_gradient: fc.max_kappa_gradient };
    let file = load(&a.input)?;
    let contour = match &a.contour {
        Some(id) => file.contours.iter().find(|c| &c.id == id).ok_or_else(|| Error::InvalidInput(format!("no contour '{id}' in the input")))?,
        None => file.contours.first().ok_or_else(|| Error::InvalidInput("input holds no contours".into()))?,
    };
    let states = evolve(&contour.curve, &beta, t_end, dt, &opts)?;
    write_trajectory_csv(create(&a.out)?, &states)?;
    let (first, last) = (&states[0], &states[states.len() - 1]);
    say(out, format_args!("evolved '{}' to t = {} in {} recorded frames", contour.id, fmt_num(last.t), states.len()))?;
    if contour.curve.is_closed() {
        let scale = (signed_area(last.trace()) / signed_area(first.trace())).abs().sqrt();
        say(out, format_args!("final scale {}", fmt_num(scale)))?;
        if beta.is_constant() {
            let rate = beta.eval(0.0) * first.eps.as_f64();
            say(out, format_args!("expected scale exp(-eps*T) {}", fmt_num((-rate * last.t).exp())))?;
        }
    }
    if let Some(svg) = &a.svg {
        let lines: Vec<SvgPolyline> = states
            .iter()
            .map(|s| SvgPolyline { id: format!("t={}", s.t), points: s.trace().to_vec(), closed: s.is_closed() })
            .collect();
        export_svg(create(svg)?, &lines)?;
    }
    if a.check_conservation {
        let drift = conservation_drift(&states);
        say(out, format_args!("max kappa/g drift {}", fmt_num(drift)))?;
        if !(drift <= fc.conservation_limit) {
            return Err(Error::ConservationViolated { drift, limit: fc.conservation_limit });
        }
    }
    Ok(())
}

fn burgers(a: &BurgersArgs, out: &mut dyn Write) -> Result<()> {
    let (s, k) = read_profile_csv(open(&a.kappa0)?)?;
    let profile = Profile::new(s, k, a.period)?;
    let values = burgers_characteristics(&profile, a.t)?;
    write_profile_csv(create(&a.out)?, &profile.s, &values)?;
    let st = profile.shock_time();
    say(out, format_args!("shock time {}", if st.is_finite() { fmt_num(st) } else { "inf".into() }))?;
    if a.oracle.is_some() {
        let reference = upwind_reference(&profile, a.t, a.cells)?;
        let sup = profile
            .s
            .iter()
            .zip(&values)
            .filter_map(|(s, v)| Some((v.as_ref()? - reference.eval(*s)?).abs()))
            .fold(0.0, f64::max);
        say(out, format_args!("sup |characteristics - upwind| {}", fmt_num(sup)))?;
    }
    Ok(())
}

struct Prepared {
    id: String,
    item: MatchItem,
    /// Original sample index of each resampled point.
    source_index: Vec<usize>,
}

fn nearest_index(points: &[Point2], q: Point2) -> usize {
    let mut best = (0, f64::INFINITY);
    for (i, p) in points.iter().enumerate() {
        let d = p.distance(q);
        if d < best.1 {
            best = (i, d);
        }
    }
    best.0
}

fn prepare(c: &NamedContour, cfg: &PipelineConfig) -> Result<Prepared> {
    if !c.curve.is_closed() {
        return Err(Error::InvalidInput(format!("contour '{}' is open; matching needs closed contours", c.id)));
    }
    let p = with_contour(&c.id, run_pipeline(&c.curve, cfg))?;
    let mut d = descriptor(&p.resampled)?;
    d.barycenter = p.barycenter;
    let source_index = p.resampled.points().iter().map(|q| nearest_index(c.curve.points(), *q + p.barycenter)).collect();
    Ok(Prepared { id: c.id.clone(), item: MatchItem { descriptor: d, signature: p.signature }, source_index })
}

fn match_cmd(a: &MatchArgs, config: &CliConfig, out: &mut dyn Write) -> Result<()> {
    let mut cfg = config.pipeline.clone();
    a.pipeline.apply(&mut cfg);
    let mut mcfg = config.matching.clone();
    if a.optimal {
        mcfg.assignment = Assignment::Optimal;
    }
    let prep = |path: &Path| -> Result<Vec<Prepared>> { load(path)?.contours.iter().map(|c| prepare(c, &cfg)).collect() };
    let (set_a, set_b) = (prep(&a.a)?, prep(&a.b)?);
    let items_a: Vec<MatchItem> = set_a.iter().map(|p| p.item.clone()).collect();
    let items_b: Vec<MatchItem> = set_b.iter().map(|p| p.item.clone()).collect();
    let outcome = match_contours(&items_a, &items_b, &mcfg)?;

    let mut rows = Vec::new();
    for pair in &outcome.pairs {
        let (pa, pb) = (&set_a[pair.a], &set_b[pair.b]);
        let (ia, ib) = (&pa.item.signature.indices, &pb.item.signature.indices);
        for &(i, j) in &pair.alignment.dtw_path {
            rows.push(Correspondence {
                contour_a: pa.id.clone(),
                contour_b: pb.id.clone(),
                sample_a: pa.source_index[ia[i]],
                sample_b: pb.source_index[ib[j]],
            });
        }
        say(
            out,
            format_args!(
                "{} -> {}: cost {} error1 {} error2 {} shift {}{}",
                pa.id,
                pb.id,
                fmt_num(pair.cost),
                fmt_num(pair.alignment.error1),
                fmt_num(pair.alignment.error2),
                pair.alignment.cyclic_shift,
                if pair.alignment.reversed { " reversed" } else { "" }
            ),
        )?;
    }
    for &i in &outcome.unmatched_a {
        say(out, format_args!("{} unmatched in A", set_a[i].id))?;
    }
    for &j in &outcome.unmatched_b {
        say(out, format_args!("{} unmatched in B", set_b[j].id))?;
    }
    write_correspondences_csv(create(&a.out)?, &rows)?;

    if let Some(path) = &a.report {
        let mut w = csv::Writer::from_writer(create(path)?);
        let csv_err = |e: csv::Error| Error::InvalidInput(format!("writing report: {e}"));
        w.write_record(["section", "a", "b", "v1", "v2"]).map_err(csv_err)?;
        let mut la = Vec::new();
        let mut lb = Vec::new();
        for pair in &outcome.pairs {
            let (pa, pb) = (&set_a[pair.a], &set_b[pair.b]);
            w.write_record(["pair", &pa.id, &pb.id, &fmt_num(pair.alignment.error1), &fmt_num(pair.alignment.error2)]).map_err(csv_err)?;
            la.push(pa.item.descriptor.total_arclength);
            lb.push(pb.item.descriptor.total_arclength);
        }
        for (pair, (x, y)) in outcome.pairs.iter().zip(la.iter().zip(&lb)) {
            w.write_record(["arclength", &set_a[pair.a].id, &set_b[pair.b].id, &fmt_num(*x), &fmt_num(*y)]).map_err(csv_err)?;
        }
        let r = correlation(&la, &lb).map(fmt_num).unwrap_or_else(|_| "nan".into());
        let one = fmt_num(1.0);
        for (x, y, v) in [("A", "A", &one), ("A", "B", &r), ("B", "A", &r), ("B", "B", &one)] {
            w.write_record(["correlation", x, y, v, ""]).map_err(csv_err)?;
        }
        w.flush().map_err(|e| Error::io(path, e))?;
        say(out, format_args!("arc-length correlation {r}"))?;
    }
    Ok(())
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct NamedSpec {
    id: String,
    spec: SyntheticSpec,
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum SpecFile {
    Many(Vec<NamedSpec>),
    One(SyntheticSpec),
}

fn synth(a: &SynthArgs, out: &mut dyn Write) -> Result<()> {
    let text = std::fs::read_to_string(&a.spec).map_err(|e| Error::io(&a.spec, e))?;
    let specs = match serde_json::from_str::<SpecFile>(&text) {
        Ok(SpecFile::One(s)) => vec![NamedSpec { id: "synthetic".into(), spec: s }],
        Ok(SpecFile::Many(v)) => v,
        Err(e) => {
            // report the single-spec error, which is the more specific one
            let inner = serde_json::from_str::<SyntheticSpec>(&text).err().unwrap_or(e);
            return Err(Error::Parse { line: inner.line() as u64, column: inner.column(), message: inner.to_string() });
        }
    };
    let mut contours = Vec::with_capacity(specs.len());
    for ns in &specs {
        let s = with_contour(&ns.id, generate_synthetic(&ns.spec))?;
        contours.push(NamedContour { id: ns.id.clone(), curve: s.curve });
    }
    save_contours(&a.out, ContourFormat::from_path(&a.out), &contours)?;
    say(out, format_args!("wrote {} contours", contours.len()))
}

fn sample_point(file: &ContourFile, id: &str, index: usize, side: &str) -> Result<Point2> {
    let c = file.get(id).ok_or_else(|| Error::InvalidInput(format!("contour '{id}' not found in the {side} points")))?;
    c.points()
        .get(index)
        .copied()
        .ok_or_else(|| Error::InvalidInput(format!("sample {index} out of range for contour '{id}' ({} points)", c.len())))
}

fn homography(a: &HomographyArgs, out: &mut dyn Write) -> Result<()> {
    let rows = read_correspondences_csv(open(&a.pairs)?)?;
    let fa = load(&a.points[0])?;
    let fb = load(&a.points[1])?;
    // DTW paths repeat samples; keep the first pair for each sample on either side
    let mut seen_a = std::collections::HashSet::new();
    let mut seen_b = std::collections::HashSet::new();
    let pairs = rows
        .iter()
        .filter(|r| seen_a.insert((&r.contour_a, r.sample_a)) & seen_b.insert((&r.contour_b, r.sample_b)))
        .map(|r| Ok((sample_point(&fa, &r.contour_a, r.sample_a, "A")?, sample_point(&fb, &r.contour_b, r.sample_b, "B")?)))
        .collect::<Result<Vec<_>>>()?;
    let fit = estimate_homography(&pairs)?;
    write_homography_csv(create(&a.out)?, &fit.homography)?;
    say(out, format_args!("{} pairs, rms residual {}", pairs.len(), fmt_num(fit.rms_residual)))
}

fn classify(a: &ClassifyArgs, out: &mut dyn Write) -> Result<()> {
    let eps = match a.eps {
        1 => Eps::Plus,
        -1 => Eps::Minus,
        e => return Err(Error::InvalidInput(format!("eps must be 1 or -1, got {e}"))),
    };
    let c = classify_constant(a.kappa, eps)?;
    say(out, format_args!("{}{}", c.class, if c.reversed { " (reversed)" } else { "" }))
}
