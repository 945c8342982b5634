//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! lines always reach stdout; exits non-zero if any criterion fails.

use std::path::PathBuf;
use std::time::Instant;

use num_complex::Complex64;

use hyponormal::config::parse_config;
use hyponormal::determinants::{determining_det, multiplicative_commutator_pitfall};
use hyponormal::experiments::{
    change_of_variable_check, constancy_check, default_exterior_points, default_interior_points, default_witness_grid,
    determinant_calculus_checks, mobius_invariance_checks, theorem_inequality_eval, witness_search,
};
use hyponormal::mobius::MobiusMap;
use hyponormal::principal::{closed_form_oracle, disc_cauchy_exponential, principal_value_at, GridFunction};
use hyponormal::run_experiment;
use hyponormal::shift::ShiftModel;
use hyponormal::trace_formulas::{berger_shaw_putnam_check, jacobian_integral, tracial_form, BivariatePolynomial};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn require(ok: bool, msg: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg)
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn shift_commutator() -> Outcome {
    let s = ShiftModel::unilateral();
    let exact = s.exact_trace().map_err(err)?;
    require((exact - 1.0).abs() <= f64::EPSILON, format!("exact trace {exact}"))?;
    let windowed =
        tracial_form(&BivariatePolynomial::zbar_pow(1), &BivariatePolynomial::z_pow(1), &s, 256).map_err(err)?;
    let dev = (windowed - c(1.0, 0.0)).norm();
    require(dev <= 1e-12, format!("windowed trace {windowed}, deviation {dev:e}"))?;
    Ok(format!("exact tr = {exact}, windowed N=256 deviation {dev:e}"))
}

fn pincus_triangle() -> Outcome {
    let start = Instant::now();
    let s = ShiftModel::unilateral();
    let g = GridFunction::constant(400, 400, 1.0).map_err(err)?;
    let n = 64;
    let x = s.rank_one_vector(n).map_err(err)?;
    let mut worst_quad = 0.0f64;
    let mut worst_exact = 0.0f64;
    let mut at_22 = c(0.0, 0.0);
    for (z, w) in [(c(2.0, 0.0), c(2.0, 0.0)), (c(2.0, 0.0), c(3.0, 0.0)), (c(0.0, 2.0), c(0.0, 2.0))] {
        let det = determining_det(&s, &x, z, w, n).map_err(err)?;
        let quad = disc_cauchy_exponential(&g, z, w).map_err(err)?;
        let closed = closed_form_oracle(z, w, 1.0).map_err(err)?;
        if z == c(2.0, 0.0) && w == z {
            at_22 = det;
        }
        worst_quad = worst_quad.max((det - quad).norm()).max((quad - closed).norm());
        worst_exact = worst_exact.max((det - closed).norm());
    }
    let secs = start.elapsed().as_secs_f64();
    require(worst_quad <= 5e-3, format!("quadrature deviation {worst_quad:e}"))?;
    require(worst_exact <= 1e-12, format!("resolvent vs closed form {worst_exact:e}"))?;
    require((at_22 - c(0.75, 0.0)).norm() <= 1e-12, format!("value at (2,2) {at_22}"))?;
    require(secs < 10.0, format!("runtime {secs:.2}s"))?;
    Ok(format!(
        "max quadrature gap {worst_quad:.2e}, max exact gap {worst_exact:.1e}, E(2,2) = {}, {secs:.2}s",
        at_22.re
    ))
}

fn multiplicative_tripwire() -> Outcome {
    let s = ShiftModel::unilateral();
    let pairs = [
        (c(2.0, 0.0), c(2.0, 0.0)),
        (c(2.0, 0.0), c(3.0, 0.0)),
        (c(0.0, 2.0), c(0.0, 2.0)),
        (c(1.5, -1.0), c(-2.0, 0.5)),
    ];
    let mut worst = 0.0f64;
    let mut closest_det = f64::INFINITY;
    let mut count = 0;
    for n in [16, 64] {
        let t = s.materialize(n).map_err(err)?;
        let x = s.rank_one_vector(n).map_err(err)?;
        for &(z, w) in &pairs {
            let finite = multiplicative_commutator_pitfall(&t, z, w).map_err(err)?;
            let det = determining_det(&s, &x, z, w, n).map_err(err)?;
            worst = worst.max((finite - c(1.0, 0.0)).norm());
            closest_det = closest_det.min((det - c(1.0, 0.0)).norm());
            count += 1;
        }
    }
    require(worst <= 1e-10, format!("finite multiplicative det deviates by {worst:e}"))?;
    require(closest_det > 1e-6, format!("determining det within {closest_det:e} of 1"))?;
    Ok(format!("{count} inputs: max |det - 1| = {worst:.1e}, min |E - 1| = {closest_det:.3}"))
}

fn helton_howe() -> Outcome {
    let s = ShiftModel::unilateral();
    let g = GridFunction::constant(400, 400, 1.0).map_err(err)?;
    let cases = [
        ("(zbar, z)", BivariatePolynomial::zbar_pow(1), BivariatePolynomial::z_pow(1), 1.0, 1e-6),
        ("(zbar, z^2)", BivariatePolynomial::zbar_pow(1), BivariatePolynomial::z_pow(2), 0.0, 1e-10),
        ("(zbar^2, z^2)", BivariatePolynomial::zbar_pow(2), BivariatePolynomial::z_pow(2), 2.0, 1e-3),
    ];
    let mut notes = Vec::new();
    for (label, p, q, expected, tol) in cases {
        let lhs = tracial_form(&p, &q, &s, 512).map_err(err)?;
        let rhs = jacobian_integral(&p, &q, &g);
        let e = c(expected, 0.0);
        require(
            (lhs - e).norm() <= tol && (rhs - e).norm() <= tol,
            format!("{label}: lhs {lhs}, rhs {rhs}, tol {tol:e}"),
        )?;
        notes.push(format!("{label} {:.2e}/{:.2e}", (lhs - e).norm(), (rhs - e).norm()));
    }
    Ok(notes.join(", "))
}

fn berger_shaw_putnam() -> Outcome {
    let checks = berger_shaw_putnam_check(&ShiftModel::unilateral(), 1, Some(std::f64::consts::PI)).map_err(err)?;
    for ch in &checks {
        require(ch.pass, format!("{} failed: {} vs {}", ch.name, ch.lhs[0], ch.rhs[0]))?;
        require(
            (ch.lhs[0] - ch.rhs[0]).abs() <= 1e-12,
            format!("{} not an equality: {} vs {}", ch.name, ch.lhs[0], ch.rhs[0]),
        )?;
    }
    Ok(format!(
        "tr = {} <= {}, norm = {} <= {}",
        checks[0].lhs[0], checks[0].rhs[0], checks[1].lhs[0], checks[1].rhs[0]
    ))
}

fn mobius_invariance() -> Outcome {
    let checks = mobius_invariance_checks(&ShiftModel::unilateral(), &MobiusMap::default_grid(), 150).map_err(err)?;
    if let Some(bad) = checks.iter().find(|ch| !ch.pass) {
        return Err(format!("{}: {} (tol {:e})", bad.name, bad.lhs[0], bad.tolerance));
    }
    let worst =
        |key: &str| checks.iter().filter(|ch| ch.name.contains(key)).map(|ch| ch.lhs[0]).fold(f64::MIN, f64::max);
    Ok(format!(
        "{} maps, window 150/300: max -min eig {:.1e}, max s2/s1 {:.1e}, max closed-form gap {:.1e}",
        MobiusMap::default_grid().len(),
        worst("min eig"),
        worst("s2/s1"),
        worst("closed form")
    ))
}

fn principal_function() -> Outcome {
    let mut models = vec![("shift".to_string(), ShiftModel::unilateral())];
    for lambda in [1.5, 2.0, 5.0] {
        models.push((format!("T_{lambda}"), ShiftModel::rational(lambda).map_err(err)?));
    }
    let inner = default_interior_points();
    let outer = default_exterior_points();
    let maps = MobiusMap::default_grid();
    let mut count = 0;
    for (name, model) in &models {
        for &z in &inner {
            let g = principal_value_at(model, z).map_err(err)?.g_value;
            require(g == 1, format!("{name}: g({z}) = {g}"))?;
        }
        for &z in &outer {
            let g = principal_value_at(model, z).map_err(err)?.g_value;
            require(g == 0, format!("{name}: g({z}) = {g}"))?;
        }
        let all: Vec<Complex64> = inner.iter().chain(&outer).copied().collect();
        for phi in &maps {
            let checks = change_of_variable_check(model, phi, &all).map_err(err)?;
            if let Some(bad) = checks.iter().find(|ch| !ch.pass) {
                return Err(format!("{name}: {}", bad.name));
            }
            count += checks.len();
        }
        for (points, expected) in [(&inner, 1), (&outer, 0)] {
            let checks = constancy_check(model, &maps, points, Some(expected)).map_err(err)?;
            if let Some(bad) = checks.iter().find(|ch| !ch.pass) {
                return Err(format!("{name}: {}", bad.name));
            }
            count += checks.len();
        }
    }
    Ok(format!("4 models x (20 interior + 5 exterior points), {count} change-of-variable/constancy comparisons"))
}

fn main_theorem() -> Outcome {
    let grid = default_witness_grid();
    let mut notes = Vec::new();
    for cv in [0.1, 0.3, 0.5, 0.7, 0.9, 0.99] {
        match witness_search(cv, &grid).map_err(err)? {
            Some(p) => notes.push(format!("c={cv}: r={}", p.r)),
            None => return Err(format!("no witness for c = {cv}")),
        }
    }
    let p = theorem_inequality_eval(0.5, 2.0).map_err(err)?;
    require(p.lhs == 0.875 && (p.rhs - 0.8660254).abs() < 1e-7, format!("c=0.5, r=2: {} vs {}", p.lhs, p.rhs))?;
    require(p.lhs - p.rhs >= 8e-3, format!("margin {}", p.lhs - p.rhs))?;
    require(witness_search(1.0, &grid).map_err(err)?.is_none(), "witness found for c = 1".into())?;
    let mut gap = 0.0f64;
    for &r in &grid {
        let q = theorem_inequality_eval(1.0, r).map_err(err)?;
        gap = gap.max((q.lhs - q.rhs).abs());
    }
    require(gap <= 1e-12, format!("c = 1 gap {gap:e}"))?;
    Ok(format!("{}; c=0.5,r=2 margin {:.4}; c=1 max gap {gap:e}", notes.join(" "), p.lhs - p.rhs))
}

fn t_lambda_family() -> Outcome {
    let n = 100_000;
    let mut notes = Vec::new();
    for lambda in [1.5, 2.0, 5.0] {
        let t = ShiftModel::rational(lambda).map_err(err)?;
        let partial = t.partial_trace(n).map_err(err)?;
        let dev = (partial - 1.0).abs();
        require(dev <= 2.0 * lambda / n as f64, format!("lambda {lambda}: deviation {dev:e}"))?;
        notes.push(format!("lambda={lambda}: {dev:.2e}"));
    }
    let p = ShiftModel::rational(2.0).map_err(err)?.partial_trace(1000).map_err(err)?;
    require((p - 0.998003).abs() < 1e-6, format!("lambda 2, N 1000: {p}"))?;
    Ok(format!("N=1e5 {}; lambda=2,N=1000 -> {p:.6}", notes.join(", ")))
}

fn determinant_calculus() -> Outcome {
    let checks = determinant_calculus_checks(100, 8, 20).map_err(err)?;
    for ch in &checks {
        require(ch.pass, format!("{}: {:e}", ch.name, ch.lhs[0]))?;
    }
    Ok(format!(
        "100 random 8x8: eig vs log-series {:.1e}, rank-one identity {:.1e}",
        checks[0].lhs[0], checks[1].lhs[0]
    ))
}

fn determinism() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut paths: Vec<_> =
        std::fs::read_dir(&dir).map_err(err)?.map(|e| e.map(|e| e.path())).collect::<Result<_, _>>().map_err(err)?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "json"));
    paths.sort();
    for path in &paths {
        let config = parse_config(&std::fs::read_to_string(path).map_err(err)?).map_err(err)?;
        let a = run_experiment(&config).canonical_json();
        let b = run_experiment(&config).canonical_json();
        require(a == b, format!("{} differs between runs", path.display()))?;
    }
    Ok(format!("{} bundled configs byte-identical across reruns", paths.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("shift commutator trace", shift_commutator),
        ("Pincus triangle", pincus_triangle),
        ("multiplicative-determinant tripwire", multiplicative_tripwire),
        ("Helton-Howe trace formula", helton_howe),
        ("Berger-Shaw and Putnam equality", berger_shaw_putnam),
        ("Mobius invariance", mobius_invariance),
        ("principal function via index", principal_function),
        ("main inequality witnesses", main_theorem),
        ("T_lambda trace partial sums", t_lambda_family),
        ("determinant calculus", determinant_calculus),
        ("report determinism", determinism),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s",
        criteria.len() - failures,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
