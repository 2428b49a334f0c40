//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::f64::consts::PI;
use std::process::ExitCode;

use crimelab::analysis::{discrepancy_scan, mismatch_sweep, multi_frequency_disambiguate};
use crimelab::experiment::{csv_string, load_config, load_report, render_svg, run, to_json};
use crimelab::models::synthesize;
use crimelab::solver::{solve_grid, solve_mirror, solve_polynomial, Classification};
use crimelab::{
    ComparisonProblem, Complex64, Error, ParameterRange, SeriesModel, SyntheticDatum, Tolerances,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DRAWS: usize = 100;
const FREQUENCY_DRAWS: usize = 50;
const GRID_POINTS: usize = 4096;
const SCAN_SAMPLES: usize = 4096;
const LATTICE_BOUND: u32 = 16;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn signed_magnitude(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let m = rng.gen_range(lo..=hi);
    if rng.gen_bool(0.5) {
        m
    } else {
        -m
    }
}

fn draw_phi(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let phi = rng.gen_range(0.05..0.95);
        if phi > 0.05 {
            return phi;
        }
    }
}

fn crime(model: SeriesModel, truth: f64) -> ComparisonProblem {
    let range = ParameterRange::default();
    let datum = synthesize(&model, truth, range, 0.0, 0).expect("truth inside range");
    ComparisonProblem::new(model, datum, range).expect("compatible")
}

/// Equal as sets: same size and sorted values pairwise within `tol`.
fn same_set(a: &[f64], b: &[f64], tol: f64) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
}

/// The problems of criteria 1-3, regenerated from fixed seeds.
fn quadratic_problems() -> Vec<(ComparisonProblem, f64, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..DRAWS)
        .map(|_| {
            let a0 = rng.gen_range(-2.0..=2.0);
            let a1 = signed_magnitude(&mut rng, 0.1, 2.0);
            let a2 = signed_magnitude(&mut rng, 0.1, 2.0);
            let phi = draw_phi(&mut rng);
            let model = SeriesModel::monomial(&[a0, a1, a2]).unwrap();
            (crime(model, phi), a1, a2, phi)
        })
        .collect()
}

fn linear_problems() -> Vec<(ComparisonProblem, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    (0..DRAWS)
        .map(|_| {
            let a0 = rng.gen_range(-2.0..=2.0);
            let a1 = signed_magnitude(&mut rng, 0.1, 2.0);
            let phi = draw_phi(&mut rng);
            (crime(SeriesModel::monomial(&[a0, a1]).unwrap(), phi), phi)
        })
        .collect()
}

fn mirror_problems() -> Vec<(ComparisonProblem, f64, f64)> {
    let mut out = Vec::new();
    for k in [5.0, 10.0, 25.0] {
        for phi in [0.1, 0.5, 0.9] {
            let model = SeriesModel::mirror(k, c(-1.0)).unwrap();
            out.push((crime(model, phi), k, phi));
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let tol = Tolerances::default();
    let mut worst: f64 = 0.0;
    for (p, a1, a2, phi) in quadratic_problems() {
        let set = solve_polynomial(&p, &tol).map_err(|e| e.to_string())?;
        if set.candidates.len() != 2 || set.root_count() != 2 {
            return Err(format!(
                "phi={phi}: expected 2 roots, got {}",
                set.candidates.len()
            ));
        }
        let mut expected = [phi, -phi - a1 / a2];
        expected.sort_by(f64::total_cmp);
        for (cand, e) in set.candidates.iter().zip(expected) {
            let err = (cand.epsilon - c(e)).norm();
            worst = worst.max(err);
            if err > 1e-9 {
                return Err(format!(
                    "root {} vs closed form {e}: error {err:e}",
                    cand.epsilon
                ));
            }
        }
    }
    Ok(format!("{DRAWS} draws, max |error| = {worst:.1e} <= 1e-9"))
}

fn criterion_2() -> Outcome {
    let tol = Tolerances::default();
    let mut worst: f64 = 0.0;
    for (p, phi) in linear_problems() {
        let set = solve_polynomial(&p, &tol).map_err(|e| e.to_string())?;
        if set.candidates.len() != 1 {
            return Err(format!("phi={phi}: {} roots", set.candidates.len()));
        }
        let err = (set.candidates[0].epsilon - c(phi)).norm();
        worst = worst.max(err);
        if err > 1e-10 {
            return Err(format!("phi={phi}: error {err:e}"));
        }
    }
    Ok(format!(
        "{DRAWS} draws, single root, max |error| = {worst:.1e} <= 1e-10"
    ))
}

fn criterion_3() -> Outcome {
    let tol = Tolerances::default();
    let mut ghosts = 0;
    for (p, k, phi) in mirror_problems() {
        let set = solve_mirror(&p, LATTICE_BOUND, &tol).map_err(|e| e.to_string())?;
        for w in set.candidates.windows(2) {
            let gap = w[1].epsilon.re - w[0].epsilon.re;
            if (gap - PI / k).abs() > 1e-12 {
                return Err(format!("k={k}: spacing {gap} differs from pi/k"));
            }
        }
        if !set
            .candidates
            .iter()
            .any(|cand| (cand.epsilon.re - phi).abs() <= 1e-10)
        {
            return Err(format!("k={k}, phi={phi}: truth missing"));
        }
        for g in set
            .candidates
            .iter()
            .filter(|x| x.classification == Classification::Ghost)
        {
            ghosts += 1;
            // a0 [exp(-2ik eps) - exp(-2ik phi)] with a0 = -1
            let (e, t) = (-2.0 * k * g.epsilon.re, -2.0 * k * phi);
            let residual = (e.cos() - t.cos()).hypot(e.sin() - t.sin());
            if residual > 1e-10 {
                return Err(format!(
                    "k={k}: ghost {} has |K| = {residual:e}",
                    g.epsilon.re
                ));
            }
        }
    }
    Ok(format!(
        "9 (k, phi) pairs, {ghosts} in-range ghosts with |K| <= 1e-10"
    ))
}

fn criterion_4() -> Outcome {
    let tol = Tolerances::default();
    let template = SeriesModel::mirror(1.0, c(-1.0)).unwrap();
    let range = ParameterRange::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);

    let near_rational = |r: f64| {
        (1..=20u32).any(|q| {
            let p = (r * q as f64).round();
            (r - p / q as f64).abs() < 1e-3
        })
    };
    let mut incommensurate = 0;
    while incommensurate < FREQUENCY_DRAWS {
        let phi = draw_phi(&mut rng);
        let k1 = rng.gen_range(3.0..30.0);
        let ratio = rng.gen_range(1.05..3.0);
        if near_rational(ratio) {
            continue;
        }
        let k2 = k1 * ratio;
        let r = multi_frequency_disambiguate(&template, phi, &[k1, k2], range, &tol)
            .map_err(|e| e.to_string())?;
        if !same_set(&r.intersection, &[phi], 1e-6) {
            return Err(format!(
                "phi={phi}, k=({k1}, {k2}): intersection {:?}",
                r.intersection
            ));
        }
        incommensurate += 1;
    }

    let mut commensurate = 0;
    for _ in 0..FREQUENCY_DRAWS {
        let phi = draw_phi(&mut rng);
        let k1 = rng.gen_range(3.0..15.0);
        let q = rng.gen_range(1..=4u32);
        let p = q + rng.gen_range(1..=4u32);
        let k2 = k1 * p as f64 / q as f64;
        let r = multi_frequency_disambiguate(&template, phi, &[k1, k2], range, &tol)
            .map_err(|e| e.to_string())?;
        if !r.intersection.iter().any(|&x| (x - phi).abs() <= 1e-6) {
            return Err(format!("truth {phi} lost for commensurate k=({k1}, {k2})"));
        }
        commensurate += 1;
    }
    Ok(format!(
        "{incommensurate} incommensurate draws give exactly {{phi}}; truth survives {commensurate} commensurate draws"
    ))
}

fn criterion_5() -> Outcome {
    let tol = Tolerances::default();
    let range = ParameterRange::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut worst_eps, mut worst_delta): (f64, f64) = (0.0, 0.0);
    for _ in 0..DRAWS {
        let a0 = rng.gen_range(-2.0..=2.0);
        let a1 = signed_magnitude(&mut rng, 0.1, 2.0);
        let a2 = rng.gen_range(-2.0..=2.0);
        let phi = draw_phi(&mut rng);
        let rows = mismatch_sweep(&[c(a0), c(a1), c(a2)], 1, 2, &[phi], range, &tol)
            .map_err(|e| e.to_string())?;
        let row = &rows[0];
        let (Some(eps), Some(delta)) = (row.epsilon_recovered, row.delta_measured) else {
            return Err(format!("phi={phi}: no reconstruction ({:?})", row.status));
        };
        let eps_closed = phi + (a2 / a1) * phi * phi;
        let delta_closed = ((a2 / a1) * phi).abs();
        worst_eps = worst_eps.max((eps - eps_closed).abs());
        worst_delta = worst_delta.max((delta - delta_closed).abs());
        if worst_eps > 1e-9 || worst_delta > 1e-9 {
            return Err(format!(
                "phi={phi}: eps {eps} vs {eps_closed}, delta {delta} vs {delta_closed}"
            ));
        }
    }
    Ok(format!(
        "{DRAWS} draws, max |eps error| = {worst_eps:.1e}, max |delta error| = {worst_delta:.1e} (<= 1e-9)"
    ))
}

fn all_problems() -> Vec<(ComparisonProblem, bool)> {
    let mut v: Vec<(ComparisonProblem, bool)> = quadratic_problems()
        .into_iter()
        .map(|t| (t.0, false))
        .collect();
    v.extend(linear_problems().into_iter().map(|t| (t.0, false)));
    v.extend(mirror_problems().into_iter().map(|t| (t.0, true)));
    v
}

fn exact_roots(p: &ComparisonProblem, mirror: bool) -> Result<Vec<f64>, String> {
    let tol = Tolerances::default();
    let set = if mirror {
        solve_mirror(p, LATTICE_BOUND, &tol)
    } else {
        solve_polynomial(p, &tol)
    };
    set.map(|s| s.in_range_real()).map_err(|e| e.to_string())
}

fn criterion_6() -> Outcome {
    let problems = all_problems();
    for (p, mirror) in &problems {
        let exact = exact_roots(p, *mirror)?;
        let curve = discrepancy_scan(p, SCAN_SAMPLES).map_err(|e| e.to_string())?;
        let zeros = curve.zeros(1e-20);
        if !same_set(&zeros, &exact, 1e-7) {
            return Err(format!("scan zeros {zeros:?} vs solver roots {exact:?}"));
        }
    }
    Ok(format!(
        "{} problems, scan minima with J <= 1e-20 match solver roots within 1e-7",
        problems.len()
    ))
}

fn criterion_7() -> Outcome {
    let tol = Tolerances::default();
    let problems = all_problems();
    for (p, mirror) in &problems {
        let exact = exact_roots(p, *mirror)?;
        let grid = solve_grid(p, GRID_POINTS, &tol)
            .map_err(|e| e.to_string())?
            .in_range_real();
        if !same_set(&grid, &exact, 1e-7) {
            return Err(format!("grid roots {grid:?} vs exact {exact:?}"));
        }
    }
    Ok(format!(
        "{} problems, grid and exact in-range roots agree within 1e-7",
        problems.len()
    ))
}

fn criterion_8() -> Outcome {
    let tol = Tolerances::default();
    let range = ParameterRange::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..DRAWS {
        let a0 = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let offset = Complex64::from_polar(rng.gen_range(1e-6..1.0), rng.gen_range(0.0..2.0 * PI));
        let estimator = SeriesModel::new(crimelab::BasisKind::Monomial, vec![a0]).unwrap();
        let datum = |value| SyntheticDatum {
            value,
            truth: 0.5,
            wavenumber: None,
            noise_magnitude: 0.0,
        };
        let unequal = ComparisonProblem::new(estimator.clone(), datum(a0 + offset), range).unwrap();
        match solve_polynomial(&unequal, &tol) {
            Err(Error::NoSolutionPossible { .. }) => {}
            other => return Err(format!("unequal datum gave {other:?}")),
        }
        let equal = ComparisonProblem::new(estimator, datum(a0), range).unwrap();
        match solve_polynomial(&equal, &tol) {
            Err(Error::EverywhereSolution) => {}
            other => return Err(format!("equal datum gave {other:?}")),
        }
    }
    Ok(format!(
        "{DRAWS} constant estimators: NoSolutionPossible / EverywhereSolution as expected"
    ))
}

const CONFIGS: [&str; 6] = [
    r#"{"kind": "Invert", "coefficients": [[0, 0], [1, 0], [1, 0]], "truth": 0.3}"#,
    r#"{"kind": "Invert", "coefficients": [[0.2, 0.1], [1, -0.5], [0.3, 0], [-0.7, 0.2]], "truth": 0.6,
        "noise_magnitude": 1e-3, "seed": 11}"#,
    r#"{"kind": "MirrorInvert", "basis": {"kind": "mirror_exponential", "wavenumber": 10},
        "coefficients": [[-1, 0]], "truth": 0.5}"#,
    r#"{"kind": "MultiFrequency", "basis": {"kind": "mirror_exponential"}, "coefficients": [[-1, 0]],
        "truth": 0.5, "wavenumbers": [10, 13]}"#,
    r#"{"kind": "MismatchSweep", "coefficients": [[0, 0], [1, 0], [0.5, 0]], "estimator_order": 1,
        "predictor_order": 2, "phi_grid": [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]}"#,
    r#"{"kind": "DiscrepancyScan", "basis": {"kind": "mirror_exponential", "wavenumber": 10},
        "coefficients": [[-1, 0]], "truth": 0.5, "samples": 512}"#,
];

fn criterion_9() -> Outcome {
    for text in CONFIGS {
        let config = load_config(text).map_err(|e| e.to_string())?;
        let (first, second) = (run(&config), run(&config));
        if !first.is_ok() {
            return Err(format!("{:?} failed: {:?}", config.kind, first.error));
        }
        let json = to_json(&first);
        if json != to_json(&second) {
            return Err(format!("{:?}: reports differ between runs", config.kind));
        }
        if csv_string(&first).ok() != csv_string(&second).ok()
            || render_svg(&first).ok() != render_svg(&second).ok()
        {
            return Err(format!("{:?}: CSV or SVG differ between runs", config.kind));
        }
        let parsed = load_report(&json).map_err(|e| e.to_string())?;
        if parsed != first {
            return Err(format!("{:?}: report does not round-trip", config.kind));
        }
    }
    Ok(format!(
        "{} configs: byte-identical reruns, structural round-trip",
        CONFIGS.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 quadratic inverse crime", criterion_1),
        ("2 uniqueness at M = 1", criterion_2),
        ("3 mirror lattice", criterion_3),
        ("4 multi-frequency disambiguation", criterion_4),
        ("5 mismatch closed form", criterion_5),
        ("6 zeros-minima equivalence", criterion_6),
        ("7 grid oracle equivalence", criterion_7),
        ("8 constant-estimator non-existence", criterion_8),
        ("9 determinism and round-trip", criterion_9),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
