//! End-to-end experiments: change of variables for the principal function,
//! its constancy under the Mobius group, the scalar inequality that forces
//! `c = 1`, resolvent norms and the `T_lambda` family, plus the operator-level
//! checks that back them.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::determinants::{det_eigenproduct, det_logseries, determining_det, multiplicative_commutator_pitfall};
use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_min_eig, invert, resolvent_solve, self_commutator, singular_spectrum, trace, ComplexMatrix,
    ComplexVector, RankOne, DEFAULT_RANK_TOL,
};
use crate::mobius::{internal_dim, MobiusMap};
use crate::principal::{fmt_complex, principal_value_at, winding_adaptive};
use crate::report::Check;
use crate::shift::ShiftModel;
use crate::trace_formulas::{full_truncated_trace, tracial_form, BivariatePolynomial};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Twenty points inside the unit disc: four rings of five.
pub fn default_interior_points() -> Vec<Complex64> {
    let mut out = Vec::with_capacity(20);
    for (ring, r) in [0.0, 0.25, 0.5, 0.75].into_iter().enumerate() {
        for k in 0..5 {
            let theta = 2.0 * PI * k as f64 / 5.0 + ring as f64 * 0.3;
            out.push(Complex64::from_polar(r, theta) + Complex64::new(0.01 * k as f64, 0.0));
        }
    }
    out
}

pub fn default_exterior_points() -> Vec<Complex64> {
    vec![
        Complex64::new(1.5, 0.0),
        Complex64::new(0.0, 2.0),
        Complex64::new(-3.0, 0.0),
        Complex64::new(1.2, 1.2),
        Complex64::new(-0.5, -5.0),
    ]
}

/// `g` for `phi(T)` at `zeta`, as the winding of the image of the symbol
/// circle under `phi`.
pub fn transformed_principal_value(model: &ShiftModel, phi: &MobiusMap, zeta: Complex64) -> Result<i64> {
    let radius = model.limit().ok_or(Error::NoLimitDeclared)?;
    winding_adaptive(|t| phi.eval(Complex64::from_polar(radius, 2.0 * PI * t)), zeta).map_err(|e| match e {
        Error::TooCloseToCurve { .. } => Error::OnEssentialSpectrum { re: zeta.re, im: zeta.im },
        other => other,
    })
}

/// `g_{phi(T)}(zeta) = g_T(phi^{-1}(zeta))` at each point.
pub fn change_of_variable_check(model: &ShiftModel, phi: &MobiusMap, points: &[Complex64]) -> Result<Vec<Check>> {
    let inverse = phi.invert();
    points
        .iter()
        .map(|&zeta| {
            let lhs = transformed_principal_value(model, phi, zeta)?;
            let rhs = principal_value_at(model, inverse.eval(zeta)?)?.g_value;
            Ok(Check::equal_int(
                format!("change-of-variable[{}, zeta={}]", describe_map(phi), fmt_complex(zeta)),
                lhs,
                rhs,
            ))
        })
        .collect()
}

/// `g_{phi(T)}` takes one value over `points` and across `maps`. With
/// `expected` given, that value must be `expected`; otherwise the value at
/// the first point under the first map is the reference.
pub fn constancy_check(
    model: &ShiftModel,
    maps: &[MobiusMap],
    points: &[Complex64],
    expected: Option<i64>,
) -> Result<Vec<Check>> {
    let (Some(first_map), Some(&first_point)) = (maps.first(), points.first()) else {
        return Err(Error::Domain("constancy needs at least one map and one point".into()));
    };
    let reference = match expected {
        Some(v) => v,
        None => transformed_principal_value(model, first_map, first_point)?,
    };
    let mut out = Vec::with_capacity(maps.len() * points.len());
    for phi in maps {
        for &zeta in points {
            let g = transformed_principal_value(model, phi, zeta)?;
            out.push(Check::equal_int(
                format!("constancy[{}, zeta={}]", describe_map(phi), fmt_complex(zeta)),
                g,
                reference,
            ));
        }
    }
    Ok(out)
}

pub fn describe_map(phi: &MobiusMap) -> String {
    format!("beta={},a={}", fmt_complex(phi.beta()), fmt_complex(phi.a()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityProbe {
    pub c: f64,
    pub r: f64,
    /// `1 - c/r^2`
    pub lhs: f64,
    /// `(1 - 1/r^2)^c`
    pub rhs: f64,
}

impl InequalityProbe {
    /// `lhs > rhs + margin`: the inequality `lhs <= rhs` fails at `r`.
    pub fn violates(&self, margin: f64) -> bool {
        self.lhs > self.rhs + margin
    }
}

pub fn theorem_inequality_eval(c: f64, r: f64) -> Result<InequalityProbe> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::Domain(format!("c must lie in (0, 1], got {c}")));
    }
    if !(r > 1.0 && r.is_finite()) {
        return Err(Error::Domain(format!("r must exceed 1, got {r}")));
    }
    let u = 1.0 / (r * r);
    let rhs = if c == 1.0 { 1.0 - u } else { (1.0 - u).powf(c) };
    Ok(InequalityProbe { c, r, lhs: 1.0 - c * u, rhs })
}

pub const WITNESS_MARGIN: f64 = 1e-12;

/// `r = 1.05, 1.10, ..., 10`.
pub fn default_witness_grid() -> Vec<f64> {
    (0..=179).map(|k| (105 + 5 * k) as f64 / 100.0).collect()
}

/// Smallest grid radius where `1 - c/r^2 > (1 - 1/r^2)^c + 1e-12`.
pub fn witness_search(c: f64, grid: &[f64]) -> Result<Option<InequalityProbe>> {
    let mut sorted = grid.to_vec();
    sorted.sort_by(f64::total_cmp);
    for r in sorted {
        let probe = theorem_inequality_eval(c, r)?;
        if probe.violates(WITNESS_MARGIN) {
            return Ok(Some(probe));
        }
    }
    Ok(None)
}

/// Witness search for each `c`, plus the largest `|lhs - rhs|` over the grid
/// when `c = 1`.
pub fn theorem_inequality_checks(cs: &[f64], grid: &[f64]) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &c in cs {
        if c == 1.0 {
            let found = witness_search(c, grid)?;
            out.push(Check::equal_int("theorem-inequality[c=1] witnesses", found.is_some() as i64, 0));
            let gap = grid
                .iter()
                .map(|&r| theorem_inequality_eval(c, r).map(|p| (p.lhs - p.rhs).abs()))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            out.push(Check::at_most("theorem-inequality[c=1] max |lhs-rhs|", gap, 0.0, 1e-12));
        } else {
            match witness_search(c, grid)? {
                Some(p) => out.push(Check::exceeds(
                    format!("theorem-inequality[c={c}] witness r={}", p.r),
                    p.lhs,
                    p.rhs,
                    WITNESS_MARGIN,
                )),
                None => out.push(Check::failed(format!("theorem-inequality[c={c}]"), "no witness on grid")),
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResolventProbe {
    /// `||(T_N* - conj w)^{-1}||`
    pub norm: f64,
    pub inverse_modulus: f64,
    /// `1/(|w| - 1)`
    pub inverse_gap: f64,
    /// `||(T_N* - conj w)^{-1} x||` for the rank-one vector, when there is one.
    pub rank_one_norm: Option<f64>,
    pub x_norm: Option<f64>,
}

pub fn resolvent_norm_probe(model: &ShiftModel, w: Complex64, dim: usize) -> Result<ResolventProbe> {
    if w.norm() <= 1.0 + 1e-6 {
        return Err(Error::Domain(format!("|w| must exceed 1 + 1e-6, got {}", w.norm())));
    }
    let ta = model.materialize(dim)?.adjoint();
    let shifted = ta.shift_diagonal(-w.conj());
    let inv = invert(&shifted).map_err(|_| Error::SpectrumHit { re: w.re, im: w.im })?;
    let norm = singular_spectrum(&inv).operator_norm();
    let (rank_one_norm, x_norm) = match model.rank_one_vector(dim) {
        Ok(x) => (Some(resolvent_solve(&ta, w.conj(), &x)?.norm()), Some(x.norm())),
        Err(Error::NotRankOne(_)) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(ResolventProbe {
        norm,
        inverse_modulus: 1.0 / w.norm(),
        inverse_gap: 1.0 / (w.norm() - 1.0),
        rank_one_norm,
        x_norm,
    })
}

pub fn resolvent_probe_checks(model: &ShiftModel, w: Complex64, dim: usize, norm_tolerance: f64) -> Result<Vec<Check>> {
    let p = resolvent_norm_probe(model, w, dim)?;
    let tag = format!("w={},N={dim}", fmt_complex(w));
    let mut out =
        vec![Check::close_real(format!("resolvent[{tag}] ||R|| vs 1/(|w|-1)"), p.norm, p.inverse_gap, norm_tolerance)];
    if let (Some(rx), Some(xn)) = (p.rank_one_norm, p.x_norm) {
        out.push(Check::close_real(
            format!("resolvent[{tag}] ||R x|| vs ||x||/|w|"),
            rx,
            xn * p.inverse_modulus,
            1e-12,
        ));
        out.push(Check::at_most(format!("resolvent[{tag}] ||R x|| <= ||x|| ||R||"), rx, xn * p.norm, 1e-12));
    }
    Ok(out)
}

/// Partial trace `w_{N-1}(lambda)^2` against 1, the first commutator entry
/// `1/lambda^2` that separates the family members, and `g = 1` inside the disc.
pub fn t_lambda_trace_experiment(lambda: f64, dim: usize) -> Result<Vec<Check>> {
    if !(lambda > 1.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!("lambda must exceed 1, got {lambda}")));
    }
    let model = ShiftModel::rational(lambda)?;
    let partial = model.partial_trace(dim)?;
    let first = model.exact_commutator_diagonal(1)?[0];
    let mut out = vec![
        Check::close_real(
            format!("t-lambda[lambda={lambda},N={dim}] partial trace"),
            partial,
            1.0,
            2.0 * lambda / dim as f64,
        ),
        Check::close_real(
            format!("t-lambda[lambda={lambda}] [T*,T]_00 = 1/lambda^2"),
            first,
            1.0 / (lambda * lambda),
            1e-15,
        ),
    ];
    for z in default_interior_points() {
        let g = principal_value_at(&model, z)?.g_value;
        out.push(Check::equal_int(format!("t-lambda[lambda={lambda}] g({})", fmt_complex(z)), g, 1));
    }
    Ok(out)
}

/// Exact-model trace and rank of `[T*, T]`, the windowed truncation trace,
/// and the vanishing full truncation trace.
pub fn shift_commutator_checks(model: &ShiftModel, dim: usize) -> Result<Vec<Check>> {
    let exact = model.exact_trace()?;
    let expected = model.weight(0)?.powi(2);
    let diag = model.exact_commutator_diagonal(dim)?;
    let rank = diag.iter().filter(|d| d.abs() > DEFAULT_RANK_TOL * diag[0].abs().max(1.0)).count();
    let zb = BivariatePolynomial::zbar_pow(1);
    let z = BivariatePolynomial::z_pow(1);
    let windowed = tracial_form(&zb, &z, model, dim)?;
    let full = full_truncated_trace(&zb, &z, model, dim)?;
    Ok(vec![
        Check::close_real("shift-commutator exact tr[T*,T]", exact, expected, f64::EPSILON),
        Check::equal_int(format!("shift-commutator exact rank (first {dim})"), rank as i64, 1),
        Check::close(
            format!("shift-commutator windowed trace N={dim}"),
            windowed,
            Complex64::new(expected, 0.0),
            1e-12,
        ),
        Check::close(format!("shift-commutator full truncated trace N={dim}"), full, Complex64::new(0.0, 0.0), 1e-12),
    ])
}

/// The multiplicative commutator of a finite matrix has determinant 1, while
/// the determining function of the infinite model does not.
pub fn multiplicative_tripwire_checks(
    model: &ShiftModel,
    pairs: &[(Complex64, Complex64)],
    dim: usize,
) -> Result<Vec<Check>> {
    let t = model.materialize(dim)?;
    let x = model.rank_one_vector(dim)?;
    let mut out = Vec::with_capacity(2 * pairs.len());
    for &(z, w) in pairs {
        let tag = format!("z={},w={}", fmt_complex(z), fmt_complex(w));
        let finite = multiplicative_commutator_pitfall(&t, z, w)?;
        let det = determining_det(model, &x, z, w, dim)?;
        out.push(Check::close(format!("tripwire[{tag}] finite det = 1"), finite, ONE, 1e-10));
        out.push(Check::exceeds(format!("tripwire[{tag}] |E(z,w) - 1| > 0"), (det - ONE).norm(), 0.0, 1e-6));
    }
    Ok(out)
}

/// Stampfli positivity and rank one of `[phi(S)*, phi(S)]` on an `n x n`
/// window of an internal truncation, and agreement with the closed form.
pub fn mobius_invariance_checks(model: &ShiftModel, maps: &[MobiusMap], window: usize) -> Result<Vec<Check>> {
    let m = internal_dim(window);
    let t = model.materialize(m)?;
    let x = match model.rank_one_vector(m) {
        Ok(x) => Some(x),
        Err(Error::NotRankOne(_)) => None,
        Err(e) => return Err(e),
    };
    let mut out = Vec::new();
    for phi in maps {
        let tag = format!("{},N={window}/{m}", describe_map(phi));
        let direct = self_commutator(&phi.apply_to_operator(&t)?).window(window);
        out.push(Check::at_most(format!("mobius[{tag}] -min eig"), -hermitian_min_eig(&direct)?, 0.0, 1e-9));
        if let Some(x) = &x {
            let spec = singular_spectrum(&direct);
            out.push(Check::at_most(format!("mobius[{tag}] s2/s1"), spec.second_ratio(), 0.0, 1e-6));
            let closed = if phi.a() == Complex64::new(0.0, 0.0) {
                RankOne::new(x.clone()).to_matrix().window(window)
            } else {
                phi.closed_form_selfcommutator(&t, x)?.window(window)
            };
            out.push(Check::at_most(
                format!("mobius[{tag}] closed form vs direct (Frobenius)"),
                (&closed - &direct).frobenius_norm(),
                0.0,
                1e-6,
            ));
        }
    }
    Ok(out)
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> ComplexVector {
    let scale = 1.0 / (n as f64).sqrt();
    ComplexVector::from_fn(n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale)
}

/// Eigenproduct vs log-series determinants on `count` seeded random `K` with
/// `||K||_1 <= 0.9`, and `det(I - x y*) = 1 - <x, y>`.
pub fn determinant_calculus_checks(count: usize, dim: usize, seed: u64) -> Result<Vec<Check>> {
    if dim == 0 {
        return Err(Error::InvalidDimension { dim, reason: "matrices need N >= 1" });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_series = 0.0f64;
    let mut worst_rank_one = 0.0f64;
    for _ in 0..count {
        let raw = random_matrix(&mut rng, dim);
        let target = rng.gen_range(0.05..0.9);
        let norm = singular_spectrum(&raw).trace_norm();
        let k = raw.scale(Complex64::new(target / norm, 0.0));
        worst_series = worst_series.max((det_eigenproduct(&k) - det_logseries(&k)?).norm());

        let x = random_vector(&mut rng, dim);
        let y = random_vector(&mut rng, dim);
        let r = ComplexMatrix::try_from(&x * y.adjoint())?;
        let det = det_eigenproduct(&r.scale(Complex64::new(-1.0, 0.0)));
        worst_rank_one = worst_rank_one.max((det - (ONE - trace(&r))).norm());
    }
    Ok(vec![
        Check::at_most(format!("determinants[{count} x {dim}x{dim}] max |eig - logseries|"), worst_series, 0.0, 1e-10),
        Check::at_most(
            format!("determinants[{count} x {dim}x{dim}] max |det(I-xy*) - (1 - tr)|"),
            worst_rank_one,
            0.0,
            1e-12,
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn default_points_are_well_placed() {
        let inner = default_interior_points();
        assert_eq!(inner.len(), 20);
        assert!(inner.iter().all(|z| z.norm() < 0.9));
        assert!(default_exterior_points().iter().all(|z| z.norm() > 1.4));
    }

    #[test]
    fn change_of_variable_examples() {
        let s = ShiftModel::unilateral();
        let id = change_of_variable_check(&s, &MobiusMap::identity(), &[c(0.5, 0.0)]).unwrap();
        assert!(id[0].pass && id[0].lhs[0] == 1.0);
        let phi = MobiusMap::new(c(1.0, 0.0), c(0.5, 0.0)).unwrap();
        let checks = change_of_variable_check(&s, &phi, &[c(0.3, 0.0), c(3.0, 0.0)]).unwrap();
        assert_eq!((checks[0].lhs[0], checks[0].rhs[0]), (1.0, 1.0));
        assert_eq!((checks[1].lhs[0], checks[1].rhs[0]), (0.0, 0.0));
        assert!(matches!(change_of_variable_check(&s, &phi, &[c(1.0, 0.0)]), Err(Error::OnEssentialSpectrum { .. })));
    }

    #[test]
    fn change_of_variable_on_full_grid() {
        let s = ShiftModel::unilateral();
        let points: Vec<_> = default_interior_points().into_iter().chain(default_exterior_points()).collect();
        for phi in MobiusMap::default_grid() {
            assert!(change_of_variable_check(&s, &phi, &points).unwrap().iter().all(|c| c.pass));
        }
    }

    #[test]
    fn constancy_examples() {
        let maps: Vec<_> = MobiusMap::default_grid().into_iter().take(5).collect();
        let inner = default_interior_points();
        for model in [ShiftModel::unilateral(), ShiftModel::rational(2.0).unwrap()] {
            let checks = constancy_check(&model, &maps, &inner, Some(1)).unwrap();
            assert_eq!(checks.len(), 100);
            assert!(checks.iter().all(|c| c.pass));
        }
        let outer = constancy_check(&ShiftModel::unilateral(), &maps, &default_exterior_points(), None).unwrap();
        assert!(outer.iter().all(|c| c.pass && c.rhs[0] == 0.0));
    }

    #[test]
    fn inequality_examples() {
        let p = theorem_inequality_eval(1.0, 2.0).unwrap();
        assert_eq!((p.lhs, p.rhs), (0.75, 0.75));
        let p = theorem_inequality_eval(0.5, 2.0).unwrap();
        assert_eq!(p.lhs, 0.875);
        assert!((p.rhs - 0.8660254037844386).abs() < 1e-15);
        assert!(p.lhs - p.rhs >= 8e-3);
        let p = theorem_inequality_eval(0.1, 2.0).unwrap();
        assert!((p.lhs - 0.975).abs() < 1e-15);
        assert!((p.lhs - p.rhs - 3.36e-3).abs() < 1e-4);
        assert!(theorem_inequality_eval(0.0, 2.0).is_err());
        assert!(theorem_inequality_eval(0.5, 1.0).is_err());
        assert!(theorem_inequality_eval(1.5, 2.0).is_err());
    }

    #[test]
    fn witness_examples() {
        let grid: Vec<f64> = (11..=100).map(|k| k as f64 / 10.0).collect();
        let w = witness_search(0.5, &grid).unwrap().unwrap();
        assert_eq!(w.r, 1.1);
        assert!((w.lhs - 0.58678).abs() < 1e-5 && (w.rhs - 0.41660).abs() < 1e-5);
        assert!(witness_search(1.0, &default_witness_grid()).unwrap().is_none());
        for c in [0.1, 0.3, 0.5, 0.7, 0.9, 0.99] {
            assert!(witness_search(c, &default_witness_grid()).unwrap().is_some(), "c={c}");
        }
        let grid = default_witness_grid();
        assert_eq!(grid.len(), 180);
        assert_eq!((grid[0], grid[179]), (1.05, 10.0));
    }

    #[test]
    fn inequality_asymptotics() {
        // rhs - lhs = -c(1-c)/(2 r^4) + O(r^-6)
        for c in [0.3, 0.5, 0.9] {
            let r = 30.0;
            let p = theorem_inequality_eval(c, r).unwrap();
            let predicted = -c * (1.0 - c) / (2.0 * r.powi(4));
            assert!(((p.rhs - p.lhs) - predicted).abs() < 2.0 / r.powi(6), "c={c}");
        }
    }

    proptest! {
        #[test]
        fn inequality_sides_increase_in_r(c in 0.01f64..=1.0, r in 1.001f64..50.0, dr in 0.001f64..5.0) {
            let a = theorem_inequality_eval(c, r).unwrap();
            let b = theorem_inequality_eval(c, r + dr).unwrap();
            prop_assert!(b.lhs > a.lhs && b.rhs > a.rhs);
            prop_assert!(a.lhs > 0.0 && a.lhs < 1.0 && a.rhs > 0.0 && a.rhs < 1.0);
        }

        #[test]
        fn every_c_below_one_has_a_witness(c in 0.01f64..0.999) {
            prop_assert!(witness_search(c, &default_witness_grid()).unwrap().is_some());
        }
    }

    #[test]
    fn resolvent_probe_examples() {
        let s = ShiftModel::unilateral();
        let p = resolvent_norm_probe(&s, c(2.0, 0.0), 64).unwrap();
        assert_eq!(p.rank_one_norm, Some(0.5));
        assert_eq!(p.inverse_modulus, 0.5);
        assert_eq!(p.inverse_gap, 1.0);
        assert!(p.rank_one_norm.unwrap() <= p.x_norm.unwrap() * p.norm);
        let p = resolvent_norm_probe(&s, c(10.0, 0.0), 64).unwrap();
        assert!((p.norm - 1.0 / 9.0).abs() < 1e-4);
        assert!(resolvent_norm_probe(&s, c(1.0, 0.0), 16).is_err());
        let t = resolvent_norm_probe(&ShiftModel::rational(2.0).unwrap(), c(3.0, 0.0), 32).unwrap();
        assert_eq!(t.rank_one_norm, None);
    }

    #[test]
    fn resolvent_norm_approaches_gap_bound() {
        let s = ShiftModel::unilateral();
        let small = resolvent_norm_probe(&s, c(2.0, 0.0), 64).unwrap();
        let large = resolvent_norm_probe(&s, c(2.0, 0.0), 256).unwrap();
        assert!(large.norm > small.norm && large.norm <= 1.0 + 1e-12);
        assert!(1.0 - large.norm < 2e-2);
    }

    #[test]
    fn t_lambda_examples() {
        let m = ShiftModel::rational(2.0).unwrap();
        assert!((m.partial_trace(1000).unwrap() - 0.998003).abs() < 1e-6);
        for (lambda, n, tol) in [(2.0, 1000, 4e-3), (1.5, 100_000, 3e-5), (5.0, 100_000, 1e-4)] {
            let checks = t_lambda_trace_experiment(lambda, n).unwrap();
            assert!(checks.iter().all(|c| c.pass), "{checks:?}");
            assert!((checks[0].lhs[0] - 1.0).abs() <= tol);
        }
        assert!(t_lambda_trace_experiment(0.5, 100).is_err());
        assert!(t_lambda_trace_experiment(1.0, 100).is_err());
    }

    #[test]
    fn operator_level_experiments() {
        assert!(shift_commutator_checks(&ShiftModel::unilateral(), 256).unwrap().iter().all(|c| c.pass));
        let pairs = [(c(2.0, 0.0), c(2.0, 0.0)), (c(0.0, 2.0), c(3.0, 1.0))];
        assert!(multiplicative_tripwire_checks(&ShiftModel::unilateral(), &pairs, 32).unwrap().iter().all(|c| c.pass));
        let checks = mobius_invariance_checks(&ShiftModel::unilateral(), &MobiusMap::default_grid(), 24).unwrap();
        assert_eq!(checks.len(), 24);
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
        let checks = determinant_calculus_checks(20, 6, 1).unwrap();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
        assert_eq!(checks, determinant_calculus_checks(20, 6, 1).unwrap());
    }
}
