//! Acceptance harness: runs every acceptance criterion, prints one PASS/FAIL
//! line each with the measured value and the pinned tolerance, and exits
//! nonzero if a criterion outside `KNOWN_GAPS` fails.

mod common;

use std::f64::consts::{FRAC_PI_3, FRAC_PI_6, TAU};
use std::time::{Duration, Instant};

use nalgebra::Matrix2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use centroaffine::contour_io::random_matrix;
use centroaffine::curve_core::{
    invariantize_jet3, invariantize_jet4, linspace, recurrence_rhs, reconstruct_with, signature_of, CurveJet, Eps, Harmonic, Hyperbola,
    ParametricCurve, PolarCurve, PowerCurve, SampledCurve, Transformed, XLogX,
};
use centroaffine::flows::{
    burgers_at, evolve, kappa_over_g, upwind_reference, BetaSpec, CharacteristicField, EvolveOptions, Profile,
};
use centroaffine::geometry::diameter;
use centroaffine::matching::{correlation, descriptor, dtw_align, estimate_homography, match_contours, MatchConfig, MatchItem};
use centroaffine::preprocess::{fit_bspline_open, run_pipeline, PipelineConfig};
use centroaffine::Point2;

/// Criteria that fail with the faithful implementation; see the README.
const KNOWN_GAPS: &[u32] = &[10];

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn max_abs_diff(a: impl IntoIterator<Item = f64>, target: f64) -> f64 {
    a.into_iter().map(|v| (v - target).abs()).fold(0.0, f64::max)
}

/// Samples at each end of an open spline fit where the free end conditions
/// dominate the third derivative; excluded from the spline comparison.
const END_LAYER: usize = 3;

/// κ along an open analytic arc, directly and through a degree-4 spline
/// fitted to `n` samples.
fn analytic_and_spline<C: ParametricCurve>(curve: &C, range: (f64, f64), n: usize) -> (Vec<f64>, Vec<f64>) {
    let params = linspace(range.0, range.1, n);
    let exact = signature_of(curve, &params, 1e6).expect("analytic signature").kappa;
    let samples = curve.sample(&params).expect("samples");
    let spline = fit_bspline_open(&samples, 4).expect("spline fit");
    let fitted = signature_of(&spline, spline.fit_params(), 1e6).expect("spline signature").kappa;
    (exact, fitted)
}

fn c1_closed_form_curvature() -> Outcome {
    let mut worst_exact: f64 = 0.0;
    let mut worst_spline: f64 = 0.0;
    let mut worst_end: f64 = 0.0;
    let mut lines = Vec::new();
    let mut spline_error = |s: &[f64], target: f64| {
        let n = s.len();
        worst_end = worst_end.max(max_abs_diff(s.iter().copied(), target));
        max_abs_diff(s[END_LAYER..n - END_LAYER].iter().copied(), target)
    };
    for alpha in [1.0f64 / 9.0, 0.25, 4.0 / 9.0] {
        let target = 1.0 / alpha.sqrt() + alpha.sqrt();
        let (e, s) = analytic_and_spline(&PowerCurve { alpha }, (0.5, 2.0), 256);
        let (de, ds) = (max_abs_diff(e, target), spline_error(&s, target));
        lines.push(format!("x^{alpha:.4}: {de:.1e}/{ds:.1e}"));
        worst_exact = worst_exact.max(de);
        worst_spline = worst_spline.max(ds);
    }
    for phi in [FRAC_PI_6, FRAC_PI_3] {
        let target = 2.0 * phi.cos();
        let (e, s) = analytic_and_spline(&PolarCurve::log_spiral(phi), (0.0, TAU), 256);
        let (de, ds) = (max_abs_diff(e, target), spline_error(&s, target));
        lines.push(format!("spiral {phi:.4}: {de:.1e}/{ds:.1e}"));
        worst_exact = worst_exact.max(de);
        worst_spline = worst_spline.max(ds);
    }
    let (e, _) = analytic_and_spline(&XLogX, (0.5, 2.0), 256);
    let dx = max_abs_diff(e, 2.0);
    lines.push(format!("xlogx: {dx:.1e}"));
    worst_exact = worst_exact.max(dx);
    check(
        worst_exact < 1e-6 && worst_spline < 1e-3,
        format!(
            "analytic {worst_exact:.1e} (tol 1e-6), spline N=256 {worst_spline:.1e} (tol 1e-3, {END_LAYER} end samples excluded; {worst_end:.1e} with them) [{}]",
            lines.join(", ")
        ),
    )
}

fn c2_zero_curvature() -> Outcome {
    let circle = signature_of(&PolarCurve::circle(1.0), &linspace(0.0, TAU, 200)[..199], 1e6).map_err(|e| e.to_string())?;
    let hyper = signature_of(&Hyperbola, &linspace(0.3, 3.0, 200), 1e6).map_err(|e| e.to_string())?;
    let kc = max_abs_diff(circle.kappa.iter().copied(), 0.0);
    let kh = max_abs_diff(hyper.kappa.iter().copied(), 0.0);
    let eps_ok = circle.eps.iter().all(|e| *e == Eps::Plus) && hyper.eps.iter().all(|e| *e == Eps::Minus);
    check(
        kc < 1e-8 && kh < 1e-8 && eps_ok,
        format!("circle |kappa| {kc:.1e}, hyperbola |kappa| {kh:.1e} (tol 1e-8), eps +1/-1: {eps_ok}"),
    )
}

fn perturbed(harmonics: &[(f64, f64, f64)]) -> PolarCurve {
    PolarCurve::perturbed_circle(
        1.0,
        harmonics.iter().map(|&(order, amplitude, phase)| Harmonic { order, amplitude, phase }).collect(),
    )
}

fn c3_gl2_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let matrices: Vec<Matrix2<f64>> = (0..100).map(|_| random_matrix(&mut rng, 50.0)).collect();

    let open: Vec<(Box<dyn ParametricCurve>, (f64, f64))> = vec![
        (Box::new(PowerCurve { alpha: 0.25 }), (0.5, 2.0)),
        (Box::new(PolarCurve::log_spiral(FRAC_PI_3)), (0.0, 4.0)),
        (Box::new(XLogX), (0.5, 2.0)),
        (Box::new(perturbed(&[(2.0, 0.1, 0.0), (3.0, 0.04, 0.5)])), (0.0, TAU)),
        (Box::new(perturbed(&[(1.0, 0.25, 0.3), (2.0, 0.08, 1.0)])), (0.0, TAU)),
    ];
    let mut worst_exact: f64 = 0.0;
    for (curve, (a, b)) in &open {
        let params = linspace(*a, *b, 60);
        let base = signature_of(curve.as_ref(), &params, 1e6).map_err(|e| e.to_string())?;
        for m in &matrices {
            let moved = signature_of(&Transformed::new(curve.as_ref(), *m), &params, 1e6).map_err(|e| e.to_string())?;
            for (x, y) in base.kappa.iter().zip(&moved.kappa) {
                worst_exact = worst_exact.max((x - y).abs());
            }
        }
    }

    let closed = [
        perturbed(&[(2.0, 0.1, 0.0), (3.0, 0.04, 0.5)]),
        perturbed(&[(1.0, 0.25, 0.3), (2.0, 0.08, 1.0)]),
        perturbed(&[(3.0, 0.06, 0.0), (2.0, 0.05, 2.0)]),
        perturbed(&[(1.0, 0.2, 0.0), (3.0, 0.03, 0.2), (4.0, 0.02, 1.0)]),
        perturbed(&[(2.0, 0.15, 0.4)]),
    ];
    let cfg = PipelineConfig::default();
    let mut worst_kappa: f64 = 0.0;
    let mut worst_length: f64 = 0.0;
    for curve in &closed {
        let contour = SampledCurve::closed(curve.sample_closed(512, 0.0).map_err(|e| e.to_string())?.into_points())
            .map_err(|e| e.to_string())?;
        let base = run_pipeline(&contour, &cfg).map_err(|e| e.to_string())?.signature;
        for m in &matrices {
            let shift = Point2::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let moved = contour.map_points(|p| p.transform(m) + shift).map_err(|e| e.to_string())?;
            let sig = run_pipeline(&moved, &cfg).map_err(|e| e.to_string())?.signature;
            if sig.indices != base.indices {
                return Err("clipped samples differ between a contour and its image".into());
            }
            for (x, y) in base.kappa.iter().zip(&sig.kappa) {
                worst_kappa = worst_kappa.max((x - y).abs());
            }
            worst_length = worst_length.max((sig.total_length - base.total_length).abs() / base.total_length);
        }
    }
    check(
        worst_exact < 1e-6 && worst_kappa < 1e-3 && worst_length < 1e-3,
        format!(
            "analytic sup |dkappa| {worst_exact:.1e} (tol 1e-6), pipeline N=85 sup |dkappa| {worst_kappa:.1e} (tol 1e-3), arc-length rel {worst_length:.1e} (tol 1e-3)"
        ),
    )
}

/// Graph `y = f(x)` with derivatives up to order 4.
struct Graph {
    name: &'static str,
    jet: fn(f64) -> [f64; 5],
    range: (f64, f64),
}

fn graph_jet(g: &Graph, x: f64) -> CurveJet {
    let [y, y1, y2, y3, y4] = (g.jet)(x);
    CurveJet::new(x, y, y1, y2, y3).with_y4(y4)
}

/// Largest gap between `ι(y_xxxx)` and `expected(κ, κ_s)` over 50 points of
/// the graph, with `κ = ι(y_xxx)` differentiated in graph arc-length.
fn recurrence_residual(g: &Graph, eps: Eps, expected: impl Fn(f64, f64) -> f64) -> Result<f64, String> {
    let h = 1e-4;
    let iota3 = |x: f64| invariantize_jet3(&graph_jet(g, x)).expect("regular jet");
    let mut worst: f64 = 0.0;
    for x in linspace(g.range.0, g.range.1, 50) {
        let jet = graph_jet(g, x);
        if jet.eps() != eps {
            return Err(format!("{} is not an eps = {} curve at x = {x}", g.name, eps.as_f64()));
        }
        let kappa = iota3(x);
        let dk = (-iota3(x + 2.0 * h) + 8.0 * iota3(x + h) - 8.0 * iota3(x - h) + iota3(x - 2.0 * h)) / (12.0 * h);
        let kappa_s = dk / jet.arc_density().map_err(|e| e.to_string())?;
        let lhs = invariantize_jet4(&jet).map_err(|e| e.to_string())?;
        worst = worst.max((lhs - expected(kappa, kappa_s)).abs());
    }
    Ok(worst)
}

fn c4_recurrence() -> Outcome {
    let minus = [
        Graph { name: "exp", jet: |x| [x.exp(); 5], range: (-1.0, 0.5) },
        Graph { name: "cosh", jet: |x| [x.cosh(), x.sinh(), x.cosh(), x.sinh(), x.cosh()], range: (-0.9, 0.9) },
        Graph {
            name: "1/x+x^2",
            jet: |x| [1.0 / x + x * x, -1.0 / (x * x) + 2.0 * x, 2.0 / x.powi(3) + 2.0, -6.0 / x.powi(4), 24.0 / x.powi(5)],
            range: (0.5, 1.2),
        },
    ];
    let plus = [
        Graph {
            name: "1+ln(1+x)",
            jet: |x| {
                let u = 1.0 + x;
                [1.0 + u.ln(), 1.0 / u, -1.0 / (u * u), 2.0 / u.powi(3), -6.0 / u.powi(4)]
            },
            range: (0.5, 2.0),
        },
        Graph {
            name: "x^0.3",
            jet: |x| [x.powf(0.3), 0.3 * x.powf(-0.7), -0.21 * x.powf(-1.7), 0.357 * x.powf(-2.7), -0.9639 * x.powf(-3.7)],
            range: (0.5, 2.0),
        },
    ];
    let mut printed: f64 = 0.0;
    for g in &minus {
        printed = printed.max(recurrence_residual(g, Eps::Minus, |k, ks| ks + 1.5 * k * k - 3.0)?);
    }
    let mut general: f64 = 0.0;
    for g in minus.iter().chain(&plus) {
        let eps = graph_jet(g, g.range.0).eps();
        general = general.max(recurrence_residual(g, eps, |k, ks| recurrence_rhs(k, ks, eps))?);
    }
    check(
        printed < 1e-5 && general < 1e-5,
        format!(
            "sup residual {printed:.1e} over 3x50 points on eps = -1 graphs (tol 1e-5); eps-aware form on 5 graphs incl. eps = +1: {general:.1e}"
        ),
    )
}

fn c5_exponential_shrinking() -> Outcome {
    let circle = PolarCurve::circle(1.0).sample_closed(256, 0.0).map_err(|e| e.to_string())?;
    let traj = evolve(&circle, &BetaSpec::ConstantOne, 1.0, 1e-3, &EvolveOptions { record_every: 1000, ..Default::default() })
        .map_err(|e| e.to_string())?;
    let last = traj.last().expect("final state");
    let max_r = last.curve.points().iter().map(|p| p.norm()).fold(0.0, f64::max);
    let ratio = max_r / (-1.0f64).exp();
    check((ratio - 1.0).abs() <= 1e-3, format!("max radius / e^-1 = {ratio:.9} at t = {} (tol 1e-3)", last.t))
}

fn c6_conservation() -> Outcome {
    let curve = PolarCurve::log_spiral(FRAC_PI_3)
        .with_harmonics(vec![Harmonic { order: 2.0, amplitude: 0.05, phase: 0.3 }, Harmonic { order: 3.0, amplitude: 0.02, phase: 1.0 }])
        .sample(&linspace(0.0, 8.0, 512))
        .map_err(|e| e.to_string())?;
    let traj = evolve(&curve, &BetaSpec::ConstantOne, 1.0, 1e-3, &EvolveOptions { record_every: 100, ..Default::default() })
        .map_err(|e| e.to_string())?;
    let r0 = kappa_over_g(&traj[0]);
    let mut drift: f64 = 0.0;
    let mut active = 0;
    for st in &traj {
        let r = kappa_over_g(st);
        for i in (0..st.len()).filter(|&i| st.active[i]) {
            drift = drift.max((r[i] - r0[i]).abs());
        }
        active = st.active.iter().filter(|a| **a).count();
    }
    check(drift < 1e-4, format!("max kappa/g drift {drift:.1e} over T = 1, {active}/{} labels active at the end (tol 1e-4)", r0.len()))
}

fn c7_burgers() -> Outcome {
    let kappa0 = |s: f64| 1.0 + 0.3 * s.sin();
    let s_grid = linspace(0.0, 12.0, 600);
    let arc = reconstruct_with(kappa0, Eps::Plus, Point2::new(1.0, 0.0), Point2::new(0.0, 1.0), &s_grid).map_err(|e| e.to_string())?;
    let wide = linspace(-1.0, 13.0, 4000);
    let open_profile = Profile::new(wide.clone(), wide.iter().map(|&s| kappa0(s)).collect(), None).map_err(|e| e.to_string())?;
    let t_max = 0.5 * open_profile.shock_time();
    let traj = evolve(&arc, &BetaSpec::ConstantOne, t_max, 1e-3, &EvolveOptions { record_every: 200, ..Default::default() })
        .map_err(|e| e.to_string())?;
    let mut lagrangian: f64 = 0.0;
    for st in &traj {
        let s = st.trace_arclength().map_err(|e| e.to_string())?;
        for i in (0..st.len()).filter(|&i| st.active[i]) {
            // label coordinate in which κ_t = κ κ_s holds at fixed s
            if let Some(k) = burgers_at(&open_profile, s[i] - st.kappa[i] * st.t, st.t) {
                lagrangian = lagrangian.max((k - st.kappa[i]).abs());
            }
        }
    }

    let n = 1024;
    let s: Vec<f64> = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
    let periodic = Profile::new(s.clone(), s.iter().map(|&v| kappa0(v)).collect(), Some(TAU)).map_err(|e| e.to_string())?;
    let t_check = 0.5 * periodic.shock_time();
    let reference = upwind_reference(&periodic, t_check, 1 << 15).map_err(|e| e.to_string())?;
    let mut upwind: f64 = 0.0;
    let mut implicit: f64 = 0.0;
    for &x in &s {
        let k = burgers_at(&periodic, x, t_check).ok_or("characteristic solution undefined")?;
        upwind = upwind.max((k - reference.eval(x).expect("periodic")).abs());
        implicit = implicit.max((k - common::sine_burgers(1.0, 0.3, x, t_check)).abs());
    }
    check(
        lagrangian < 1e-2 && upwind < 1e-3 && implicit < 1e-6,
        format!(
            "Lagrangian vs characteristics {lagrangian:.1e} up to t = {:.3} (tol 1e-2); characteristics vs upwind {upwind:.1e} at t = {t_check:.3} (tol 1e-3); vs implicit fixed point {implicit:.1e}",
            traj.last().map(|s| s.t).unwrap_or(0.0)
        ),
    )
}

fn c8_exact_solution() -> Outcome {
    let arc = PolarCurve::log_spiral(FRAC_PI_3).sample(&linspace(0.0, 4.0, 300)).map_err(|e| e.to_string())?;
    let field = CharacteristicField::new(&arc).map_err(|e| e.to_string())?;
    let t = 0.1;
    let traj = evolve(&arc, &BetaSpec::ConstantOne, t, 1e-3, &EvolveOptions { record_every: 100, ..Default::default() })
        .map_err(|e| e.to_string())?;
    let last = traj.last().expect("final state");
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for i in (0..last.len()).filter(|&i| last.active[i] && field.is_defined(i, t)) {
        let p = field.point_at(i, t).map_err(|e| e.to_string())?;
        worst = worst.max((p - last.curve.points()[i]).norm());
        count += 1;
    }
    check(worst < 1e-3 && count > 0, format!("sup |exact - Lagrangian| {worst:.1e} over {count} labels at t = {t} (tol 1e-3)"))
}

fn c9_table_correlations() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut route: f64 = 0.0;
    for &(i, j, reference) in &common::CORRELATION_TABLE {
        let r = correlation(&common::ARCLENGTH_TABLE[i], &common::ARCLENGTH_TABLE[j]).map_err(|e| e.to_string())?;
        worst = worst.max((r - reference).abs());
        route = route.max((r - common::pearson_zscore(&common::ARCLENGTH_TABLE[i], &common::ARCLENGTH_TABLE[j])).abs());
    }
    let elapsed = start.elapsed();
    check(
        worst < 1e-2 && route < 1e-12 && elapsed < Duration::from_millis(1),
        format!("max |r - reference| {worst:.1e} over 6 entries (tol 1e-2), z-score route {route:.1e}, {elapsed:?} (limit 1 ms)"),
    )
}

/// Dense samples of random smooth blobs: low-order radial harmonics with
/// random amplitudes and phases.
fn random_blobs(rng: &mut ChaCha8Rng, count: usize, n: usize) -> Vec<SampledCurve> {
    (0..count)
        .map(|_| {
            let c = PolarCurve::perturbed_circle(
                1.0,
                vec![
                    Harmonic { order: 1.0, amplitude: rng.gen_range(0.15..0.3), phase: rng.gen_range(0.0..TAU) },
                    Harmonic { order: 2.0, amplitude: rng.gen_range(0.05..0.12), phase: rng.gen_range(0.0..TAU) },
                    Harmonic { order: 3.0, amplitude: rng.gen_range(0.01..0.04), phase: rng.gen_range(0.0..TAU) },
                ],
            );
            SampledCurve::closed(c.sample_closed(n, 0.0).expect("blob").into_points()).expect("blob")
        })
        .collect()
}

struct Prepared {
    item: MatchItem,
    /// Original sample index nearest to each resampled point.
    source: Vec<usize>,
}

fn prepare(c: &SampledCurve, cfg: &PipelineConfig) -> Result<Prepared, String> {
    let out = run_pipeline(c, cfg).map_err(|e| e.to_string())?;
    let mut d = descriptor(&out.resampled).map_err(|e| e.to_string())?;
    d.barycenter = out.barycenter;
    let source = out
        .resampled
        .points()
        .iter()
        .map(|q| {
            let q = *q + out.barycenter;
            (0..c.len()).min_by(|&a, &b| c.points()[a].distance(q).total_cmp(&c.points()[b].distance(q))).expect("nonempty")
        })
        .collect();
    Ok(Prepared { item: MatchItem { descriptor: d, signature: out.signature }, source })
}

fn c10_synthetic_matching() -> Outcome {
    let n = 2000;
    // smoothing over 6% of the contour; 0.2% noise swamps third derivatives otherwise
    let cfg = PipelineConfig { sigma: 0.06 * n as f64, ..Default::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let originals = random_blobs(&mut rng, 8, n);
    let mut order: Vec<usize> = (0..8).collect();
    for k in (1..8).rev() {
        order.swap(k, rng.gen_range(0..=k));
    }
    let mut rolls = Vec::new();
    let mut images = Vec::new();
    for &src in &order {
        let m = random_matrix(&mut rng, 50.0);
        let shift = Point2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let pts: Vec<Point2> = originals[src].points().iter().map(|p| p.transform(&m) + shift).collect();
        let noise = Normal::new(0.0, 0.002 * diameter(&pts)).map_err(|e| e.to_string())?;
        let mut pts: Vec<Point2> = pts.iter().map(|p| *p + Point2::new(noise.sample(&mut rng), noise.sample(&mut rng))).collect();
        let roll = rng.gen_range(0..n);
        pts.rotate_left(roll);
        rolls.push(roll);
        images.push(SampledCurve::closed(pts).map_err(|e| e.to_string())?);
    }
    let set_a = originals.iter().map(|c| prepare(c, &cfg)).collect::<Result<Vec<_>, _>>()?;
    let set_b = images.iter().map(|c| prepare(c, &cfg)).collect::<Result<Vec<_>, _>>()?;
    let items = |s: &[Prepared]| s.iter().map(|p| p.item.clone()).collect::<Vec<_>>();
    let outcome = match_contours(&items(&set_a), &items(&set_b), &MatchConfig::default()).map_err(|e| e.to_string())?;

    let cyclic = |a: usize, b: usize, m: usize| {
        let d = (a as i64 - b as i64).rem_euclid(m as i64) as usize;
        d.min(m - d)
    };
    let mut recovered = 0;
    let (mut near, mut total) = (0, 0);
    for pair in &outcome.pairs {
        if order[pair.b] == pair.a {
            recovered += 1;
        }
        let (pa, pb) = (&set_a[pair.a], &set_b[pair.b]);
        let roll = rolls[pair.b];
        // base index of every resampled point of the image
        let base_b: Vec<usize> = pb.source.iter().map(|&k| (k + roll) % n).collect();
        let m = base_b.len();
        for &(i, j) in &pair.alignment.dtw_path {
            let target = pa.source[pa.item.signature.indices[i]];
            let truth = (0..m).min_by_key(|&x| cyclic(base_b[x], target, n)).expect("nonempty");
            total += 1;
            if cyclic(pb.item.signature.indices[j], truth, m) <= 2 {
                near += 1;
            }
        }
    }
    let frac = near as f64 / total as f64;
    check(
        recovered == 8 && outcome.pairs.len() == 8 && frac >= 0.9,
        format!("permutation {recovered}/8 recovered; {:.1}% of {total} DTW pairs within +-2 samples (need 90%)", 100.0 * frac),
    )
}

fn c11_homography() -> Outcome {
    let generator = [[1.2, 0.3, 0.5], [-0.2, 0.9, -0.4], [0.05, -0.03, 1.0]];
    let src: Vec<Point2> = (0..8).map(|k| {
        let a = TAU * k as f64 / 8.0 + 0.1 * k as f64;
        Point2::new((1.0 + 0.3 * k as f64 / 8.0) * a.cos(), (0.8 + 0.2 * (k % 3) as f64) * a.sin())
    }).collect();
    let pairs: Vec<(Point2, Point2)> = src.iter().map(|&p| (p, common::project(&generator, p))).collect();
    let fit = estimate_homography(&pairs).map_err(|e| e.to_string())?;
    let rel = common::projective_distance(&fit.homography.rows(), &generator);
    let identity = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let same: Vec<(Point2, Point2)> = src.iter().map(|&p| (p, p)).collect();
    let id_fit = estimate_homography(&same).map_err(|e| e.to_string())?;
    let id_err = common::projective_distance(&id_fit.homography.rows(), &identity);
    check(
        rel < 1e-6 && id_err < 1e-9,
        format!("relative Frobenius error {rel:.1e} on 8 exact pairs (tol 1e-6); identity pairs {id_err:.1e}"),
    )
}

fn c12_dtw_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let (n, m) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let a: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let b: Vec<f64> = (0..m).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let (path, cost) = dtw_align(&a, &b, None).map_err(|e| e.to_string())?;
        let brute = common::dtw_brute_force(&a, &b);
        worst = worst.max((cost - brute).abs()).max((common::path_cost(&a, &b, &path) - cost).abs());
    }
    check(worst < 1e-12, format!("max |DP - exhaustive| {worst:.1e} over 500 instances up to 6x6"))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome, Option<Duration>); 12] = [
        (1, "closed-form curvature", c1_closed_form_curvature, Some(Duration::from_secs(1))),
        (2, "zero curvature", c2_zero_curvature, None),
        (3, "GL(2) invariance", c3_gl2_invariance, Some(Duration::from_secs(10))),
        (4, "order-4 recurrence", c4_recurrence, None),
        (5, "exponential shrinking", c5_exponential_shrinking, None),
        (6, "kappa/g conservation", c6_conservation, None),
        (7, "Burgers equivalence", c7_burgers, Some(Duration::from_secs(30))),
        (8, "exact heat-flow solution", c8_exact_solution, None),
        (9, "arc-length correlations", c9_table_correlations, None),
        (10, "synthetic matching", c10_synthetic_matching, None),
        (11, "homography", c11_homography, None),
        (12, "DTW oracle", c12_dtw_oracle, None),
    ];
    let suite = Instant::now();
    let mut unexpected = Vec::new();
    let mut passed = 0;
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let (Some(limit), Ok(detail)) = (limit, &outcome) {
            if elapsed > limit {
                outcome = Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => {
                passed += 1;
                println!("PASS {id:>2} {name}: {detail} [{elapsed:.2?}]");
            }
            Err(detail) => {
                println!("FAIL {id:>2} {name}: {detail} [{elapsed:.2?}]");
                if !KNOWN_GAPS.contains(&id) {
                    unexpected.push(id);
                }
            }
        }
    }
    println!("{passed}/12 criteria passed in {:.2?}", suite.elapsed());
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
