//! End-to-end runs of the command-line front end on temporary files.

mod common;

use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use tempfile::TempDir;

use centroaffine::cli::{run, Cli};
use centroaffine::contour_io::{save_contours, ContourFormat, NamedContour};
use centroaffine::curve_core::{Harmonic, ParametricCurve, PolarCurve, SampledCurve};
use centroaffine::Result;

fn exec(args: &[&str]) -> Result<String> {
    let cli = Cli::try_parse_from(std::iter::once("centroaffine").chain(args.iter().copied())).expect("valid arguments");
    let mut out = Vec::new();
    run(&cli, &mut out)?;
    Ok(String::from_utf8(out).expect("utf-8 output"))
}

fn blob(harmonics: &[(f64, f64, f64)], n: usize) -> SampledCurve {
    let h = harmonics.iter().map(|&(order, amplitude, phase)| Harmonic { order, amplitude, phase }).collect();
    let c = PolarCurve::perturbed_circle(1.0, h).sample_closed(n, 0.0).unwrap();
    SampledCurve::closed(c.into_points()).unwrap()
}

fn shapes() -> Vec<NamedContour> {
    vec![
        NamedContour { id: "lobed".into(), curve: blob(&[(2.0, 0.12, 0.0), (3.0, 0.05, 0.4)], 400) },
        NamedContour { id: "egg".into(), curve: blob(&[(1.0, 0.25, 0.3), (2.0, 0.06, 1.1)], 400) },
        NamedContour { id: "trefoil".into(), curve: blob(&[(3.0, 0.1, 0.2), (1.0, 0.1, 2.0)], 400) },
    ]
}

fn write(dir: &TempDir, name: &str, contours: &[NamedContour]) -> PathBuf {
    let path = dir.path().join(name);
    save_contours(&path, ContourFormat::from_path(&path), contours).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn column(path: &Path, name: &str) -> Vec<String> {
    let mut r = csv::Reader::from_path(path).unwrap();
    let idx = r.headers().unwrap().iter().position(|h| h == name).unwrap();
    r.records().map(|rec| rec.unwrap()[idx].to_string()).collect()
}

#[test]
fn classify_names_each_family() {
    assert_eq!(exec(&["classify", "--kappa", "2.5"]).unwrap().trim(), "PowerCurve alpha=0.2500");
    assert_eq!(exec(&["classify", "--kappa", "2"]).unwrap().trim(), "XLogX");
    assert_eq!(exec(&["classify", "--kappa", "0"]).unwrap().trim(), "UnitCircle");
    assert_eq!(exec(&["classify", "--kappa", "1"]).unwrap().trim(), "LogSpiral phi=1.0472");
    assert!(exec(&["classify", "--kappa", "-1"]).unwrap().contains("(reversed)"));
}

#[test]
fn missing_input_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("sig.csv");
    let err = exec(&["invariants", "--in", s(&dir.path().join("absent.csv")), "--out", s(&out)]).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn circle_has_vanishing_curvature() {
    let dir = TempDir::new().unwrap();
    let circle = PolarCurve::circle(2.0).sample_closed(300, 0.0).unwrap().into_points();
    let input = write(&dir, "circle.csv", &[NamedContour { id: "c".into(), curve: SampledCurve::closed(circle).unwrap() }]);
    let out = dir.path().join("sig.csv");
    exec(&["invariants", "--in", s(&input), "--out", s(&out), "--clip", "50"]).unwrap();
    let kappa: Vec<f64> = column(&out, "kappa").iter().map(|v| v.parse().unwrap()).collect();
    assert_eq!(kappa.len(), 85);
    assert!(kappa.iter().all(|k| k.abs() < 1e-6), "{kappa:?}");
    assert!(column(&out, "eps").iter().all(|e| e == "1"));
}

#[test]
fn invariants_are_deterministic_and_format_independent() {
    let dir = TempDir::new().unwrap();
    let csv_in = write(&dir, "in.csv", &shapes());
    let json_in = write(&dir, "in.json", &shapes());
    let outs: Vec<PathBuf> = (0..3).map(|k| dir.path().join(format!("sig{k}.csv"))).collect();
    exec(&["invariants", "--in", s(&csv_in), "--out", s(&outs[0])]).unwrap();
    exec(&["invariants", "--in", s(&csv_in), "--out", s(&outs[1])]).unwrap();
    exec(&["invariants", "--in", s(&json_in), "--out", s(&outs[2])]).unwrap();
    let text = |p: &PathBuf| fs::read_to_string(p).unwrap();
    assert_eq!(text(&outs[0]), text(&outs[1]));
    assert_eq!(text(&outs[0]), text(&outs[2]));
}

#[test]
fn matching_a_set_with_itself_pairs_every_contour() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.csv", &shapes());
    let pairs = dir.path().join("pairs.csv");
    let report = dir.path().join("report.csv");
    let stdout = exec(&["match", "--a", s(&a), "--b", s(&a), "--out", s(&pairs), "--report", s(&report)]).unwrap();
    assert!(!stdout.contains("unmatched"), "{stdout}");
    let ids_a = column(&pairs, "contourA_id");
    let ids_b = column(&pairs, "contourB_id");
    assert!(!ids_a.is_empty());
    assert!(ids_a.iter().zip(&ids_b).all(|(x, y)| x == y));
    let sections = column(&report, "section");
    let v1 = column(&report, "v1");
    let r = sections.iter().zip(&v1).filter(|(sec, _)| sec.as_str() != "pair" && sec.as_str() != "arclength");
    for (_, v) in r {
        assert!((v.parse::<f64>().unwrap() - 1.0).abs() < 1e-12);
    }

    let h = dir.path().join("h.csv");
    let stdout = exec(&["homography", "--pairs", s(&pairs), "--points", s(&a), s(&a), "--out", s(&h)]).unwrap();
    let rms: f64 = stdout.trim().rsplit(' ').next().unwrap().parse().unwrap();
    assert!(rms < 1e-9, "{stdout}");
    let mut rows = [[0.0; 3]; 3];
    let mut reader = csv::Reader::from_path(&h).unwrap();
    for (i, rec) in reader.records().enumerate() {
        for (j, v) in rec.unwrap().iter().enumerate() {
            rows[i][j] = v.parse().unwrap();
        }
    }
    let identity = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    assert!(common::projective_distance(&rows, &identity) < 1e-9);
}

#[test]
fn oversized_time_step_is_a_numeric_error() {
    let dir = TempDir::new().unwrap();
    let circle = PolarCurve::circle(1.0).sample_closed(64, 0.0).unwrap().into_points();
    let input = write(&dir, "c.csv", &[NamedContour { id: "c".into(), curve: SampledCurve::closed(circle).unwrap() }]);
    let out = dir.path().join("traj.csv");
    let err = exec(&["flow", "--in", s(&input), "--T", "10", "--dt", "5", "--out", s(&out)]).unwrap_err();
    assert!(matches!(err, centroaffine::Error::StabilityViolation { .. }), "{err}");
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn circle_flow_shrinks_by_the_expected_factor() {
    let dir = TempDir::new().unwrap();
    let circle = PolarCurve::circle(1.0).sample_closed(96, 0.0).unwrap().into_points();
    let input = write(&dir, "c.csv", &[NamedContour { id: "c".into(), curve: SampledCurve::closed(circle).unwrap() }]);
    let out = dir.path().join("traj.csv");
    let stdout =
        exec(&["flow", "--in", s(&input), "--T", "0.5", "--dt", "1e-3", "--out", s(&out), "--check-conservation"]).unwrap();
    let scale: f64 = stdout.lines().find(|l| l.starts_with("final scale")).unwrap().rsplit(' ').next().unwrap().parse().unwrap();
    assert!((scale - (-0.5f64).exp()).abs() < 1e-6, "{stdout}");
}

#[test]
fn burgers_matches_the_implicit_sine_solution() {
    let dir = TempDir::new().unwrap();
    let kappa0 = dir.path().join("k0.csv");
    let mut text = String::from("s,kappa\n");
    let n = 256;
    for i in 0..n {
        let s = std::f64::consts::TAU * i as f64 / n as f64;
        text.push_str(&format!("{s},{}\n", 1.0 + 0.5 * s.sin()));
    }
    fs::write(&kappa0, text).unwrap();
    let out = dir.path().join("k.csv");
    let period = std::f64::consts::TAU.to_string();
    exec(&["burgers", "--kappa0", s(&kappa0), "--t", "1", "--period", &period, "--out", s(&out)]).unwrap();
    let ss = column(&out, "s");
    let ks = column(&out, "kappa");
    for (sv, kv) in ss.iter().zip(&ks) {
        let (sv, kv): (f64, f64) = (sv.parse().unwrap(), kv.parse().unwrap());
        assert!((kv - common::sine_burgers(1.0, 0.5, sv, 1.0)).abs() < 1e-6);
    }
    let err = exec(&["burgers", "--kappa0", s(&kappa0), "--t", "3", "--period", &period, "--out", s(&out)]).unwrap_err();
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn synth_output_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let spec = dir.path().join("spec.json");
    fs::write(
        &spec,
        r#"{"base": {"kind": "Ellipse", "a": 2.0, "b": 1.0}, "transform": [[1.0, 0.3], [0.0, 1.2]], "noise_sigma": 0.001, "n_points": 200, "seed": 9}"#,
    )
    .unwrap();
    let (x, y) = (dir.path().join("x.csv"), dir.path().join("y.csv"));
    exec(&["synth", "--spec", s(&spec), "--out", s(&x)]).unwrap();
    exec(&["synth", "--spec", s(&spec), "--out", s(&y)]).unwrap();
    assert_eq!(fs::read_to_string(&x).unwrap(), fs::read_to_string(&y).unwrap());
    assert_eq!(column(&x, "x").len(), 200);
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"pipeline": {"sigmaa": 3}}"#).unwrap();
    let err = exec(&["--config", s(&cfg), "classify", "--kappa", "1"]).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}
