//! Principal functions: pointwise values from the Fredholm index of the
//! symbol curve, and the disc integral that turns `g` back into a
//! determinant value.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::determinants::determining_det;
use crate::error::{Error, Result};
use crate::report::{Check, GRID_CSV_HEADER};
use crate::shift::{circle_points, ShiftModel};

const MIN_SAMPLES: usize = 1024;
const MAX_SAMPLES: usize = 1 << 22;

/// Values of a function on the midpoint polar grid of the unit disc,
/// `r_i = (i + 1/2)/n_r`, `theta_j = 2 pi (j + 1/2)/n_theta`, stored row-major
/// in `(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    n_r: usize,
    n_theta: usize,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn from_fn(n_r: usize, n_theta: usize, mut f: impl FnMut(Complex64) -> f64) -> Result<Self> {
        if n_r == 0 || n_theta == 0 {
            return Err(Error::InvalidDimension { dim: n_r.min(n_theta), reason: "grid sizes must be positive" });
        }
        let mut values = Vec::with_capacity(n_r * n_theta);
        for i in 0..n_r {
            for j in 0..n_theta {
                let v = f(midpoint(n_r, n_theta, i, j));
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::Domain(format!("grid values must lie in [0, 1], got {v}")));
                }
                values.push(v);
            }
        }
        Ok(Self { n_r, n_theta, values })
    }

    pub fn constant(n_r: usize, n_theta: usize, value: f64) -> Result<Self> {
        Self::from_fn(n_r, n_theta, |_| value)
    }

    /// Samples the model's principal value on the grid. The symbol curve is a
    /// circle about the origin, so the index only depends on the radius and is
    /// computed once per ring.
    pub fn from_model(model: &ShiftModel, n_r: usize, n_theta: usize) -> Result<Self> {
        let rings: Vec<f64> = (0..n_r)
            .map(|i| {
                let r = (i as f64 + 0.5) / n_r as f64;
                principal_value_at(model, Complex64::new(r, 0.0)).map(|e| e.g_value as f64)
            })
            .collect::<Result<_>>()?;
        let mut values = Vec::with_capacity(n_r * n_theta);
        for g in &rings {
            if !(0.0..=1.0).contains(g) {
                return Err(Error::Domain(format!("principal value {g} outside [0, 1]")));
            }
            values.extend(std::iter::repeat_n(*g, n_theta));
        }
        Ok(Self { n_r, n_theta, values })
    }

    pub fn n_r(&self) -> usize {
        self.n_r
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n_theta + j]
    }

    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        midpoint(self.n_r, self.n_theta, i, j)
    }

    /// `sum_{i,j} g(zeta_ij) f(zeta_ij) r_i dr dtheta`, the midpoint rule for
    /// `int_D g f dA`. Rings are summed in parallel, then reduced in ring
    /// order, so the result does not depend on the worker count.
    pub fn integrate(&self, f: impl Fn(Complex64) -> Complex64 + Sync) -> Complex64 {
        let dr = 1.0 / self.n_r as f64;
        let dtheta = 2.0 * PI / self.n_theta as f64;
        let rings: Vec<Complex64> = (0..self.n_r)
            .into_par_iter()
            .map(|i| {
                let r = (i as f64 + 0.5) * dr;
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..self.n_theta {
                    let g = self.value(i, j);
                    if g != 0.0 {
                        acc += f(self.point(i, j)) * g;
                    }
                }
                acc * (r * dr * dtheta)
            })
            .collect();
        rings.into_iter().fold(Complex64::new(0.0, 0.0), |a, b| a + b)
    }

    /// Writes `r,theta,re,im,g` rows, one per grid node.
    pub fn write_csv(&self, path: &Path) -> std::io::Result<()> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(out, "{GRID_CSV_HEADER}")?;
        for i in 0..self.n_r {
            for j in 0..self.n_theta {
                let z = self.point(i, j);
                let (r, theta) = polar(self.n_r, self.n_theta, i, j);
                writeln!(out, "{r},{theta},{},{},{}", z.re, z.im, self.value(i, j))?;
            }
        }
        out.flush()
    }
}

fn polar(n_r: usize, n_theta: usize, i: usize, j: usize) -> (f64, f64) {
    ((i as f64 + 0.5) / n_r as f64, 2.0 * PI * (j as f64 + 0.5) / n_theta as f64)
}

fn midpoint(n_r: usize, n_theta: usize, i: usize, j: usize) -> Complex64 {
    let (r, theta) = polar(n_r, n_theta, i, j);
    Complex64::from_polar(r, theta)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexEstimate {
    pub lambda: Complex64,
    pub winding: i64,
    /// `g(lambda) = -ind(T - lambda)`, equal to the winding number.
    pub g_value: i64,
}

/// Winding number of the closed polygon `curve` about `lambda`.
///
/// Requires the distance from `lambda` to the sample points to exceed ten
/// times the largest gap between consecutive samples.
pub fn winding_number(curve: &[Complex64], lambda: Complex64) -> Result<i64> {
    if curve.len() < 3 {
        return Err(Error::Domain(format!("curve needs at least 3 points, got {}", curve.len())));
    }
    let n = curve.len();
    let spacing = (0..n).map(|k| (curve[(k + 1) % n] - curve[k]).norm()).fold(0.0, f64::max);
    let distance = curve.iter().map(|p| (p - lambda).norm()).fold(f64::INFINITY, f64::min);
    let required = 10.0 * spacing;
    if distance <= required {
        return Err(Error::TooCloseToCurve { distance, required });
    }
    let total: f64 = (0..n).map(|k| ((curve[(k + 1) % n] - lambda) / (curve[k] - lambda)).arg()).sum();
    Ok((total / (2.0 * PI)).round() as i64)
}

/// Winding of the closed curve `t -> f(t)`, `t` in `[0, 1)`, refining the
/// sampling until [`winding_number`]'s spacing condition holds.
pub fn winding_adaptive(f: impl Fn(f64) -> Result<Complex64>, lambda: Complex64) -> Result<i64> {
    let mut samples = MIN_SAMPLES;
    loop {
        let curve: Vec<Complex64> = (0..samples).map(|k| f(k as f64 / samples as f64)).collect::<Result<_>>()?;
        match winding_number(&curve, lambda) {
            Err(Error::TooCloseToCurve { .. }) if samples < MAX_SAMPLES => samples *= 2,
            other => return other,
        }
    }
}

/// `g(lambda)` for a weighted shift: the winding of its essential circle.
pub fn principal_value_at(model: &ShiftModel, lambda: Complex64) -> Result<IndexEstimate> {
    let radius = model.limit().ok_or(Error::NoLimitDeclared)?;
    let on_circle = Error::OnEssentialSpectrum { re: lambda.re, im: lambda.im };
    if lambda.norm() == radius {
        return Err(on_circle);
    }
    let winding =
        winding_adaptive(|t| Ok(Complex64::from_polar(radius, 2.0 * PI * t)), lambda).map_err(|e| match e {
            Error::TooCloseToCurve { .. } => on_circle,
            other => other,
        })?;
    Ok(IndexEstimate { lambda, winding, g_value: winding })
}

/// `symbol_curve`-based variant with a fixed sample count.
pub fn principal_value_sampled(model: &ShiftModel, lambda: Complex64, samples: usize) -> Result<IndexEstimate> {
    let curve = model.symbol_curve(samples)?;
    let winding = winding_number(&curve, lambda)?;
    Ok(IndexEstimate { lambda, winding, g_value: winding })
}

fn outside_disc(p: Complex64) -> Result<()> {
    if p.norm() > 1.0 {
        Ok(())
    } else {
        Err(Error::EvaluationInsideDisc { re: p.re, im: p.im })
    }
}

/// `exp(-(1/pi) int_D g(zeta) / ((zeta - z)(conj zeta - conj w)) dA)` by the
/// midpoint polar rule.
pub fn disc_cauchy_exponential(g: &GridFunction, z: Complex64, w: Complex64) -> Result<Complex64> {
    outside_disc(z)?;
    outside_disc(w)?;
    let wc = w.conj();
    let integral = g.integrate(|zeta| 1.0 / ((zeta - z) * (zeta.conj() - wc)));
    Ok((-integral / PI).exp())
}

/// `(1 - 1/(z conj w))^c` with the logarithm summed term by term,
/// `log(1 - u) = -sum_{m>=0} u^{m+1}/(m+1)`, until terms fall below 1e-15.
pub fn closed_form_oracle(z: Complex64, w: Complex64, c: f64) -> Result<Complex64> {
    outside_disc(z)?;
    outside_disc(w)?;
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::Domain(format!("exponent c must lie in (0, 1], got {c}")));
    }
    let u = 1.0 / (z * w.conj());
    let mut power = u;
    let mut log = Complex64::new(0.0, 0.0);
    let mut m = 0usize;
    loop {
        let term = power / (m as f64 + 1.0);
        log -= term;
        if term.norm() < 1e-15 || m > 10_000_000 {
            break;
        }
        power *= u;
        m += 1;
    }
    Ok((log * c).exp())
}

/// Tolerances for the three-way comparison in [`pincus_consistency`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PincusTolerances {
    pub quadrature: f64,
    pub resolvent: f64,
}

impl Default for PincusTolerances {
    fn default() -> Self {
        Self { quadrature: 5e-3, resolvent: 1e-12 }
    }
}

/// Compares the resolvent value of the determining function, the disc integral
/// with `g = 1`, and the closed form `1 - 1/(z conj w)`.
pub fn pincus_consistency(
    model: &ShiftModel,
    z: Complex64,
    w: Complex64,
    dim: usize,
    n_r: usize,
    n_theta: usize,
    tol: PincusTolerances,
) -> Result<Vec<Check>> {
    if model.limit() != Some(1.0) || model.weight(0)? != 1.0 {
        return Err(Error::Domain("the g = 1 disc integral describes the unilateral shift only".into()));
    }
    let x = model.rank_one_vector(dim)?;
    let det = determining_det(model, &x, z, w, dim)?;
    let quad = disc_cauchy_exponential(&GridFunction::constant(n_r, n_theta, 1.0)?, z, w)?;
    let closed = closed_form_oracle(z, w, 1.0)?;
    let tag = format!("z={},w={}", fmt_complex(z), fmt_complex(w));
    Ok(vec![
        Check::close(format!("pincus[{tag}] resolvent vs closed form"), det, closed, tol.resolvent),
        Check::close(format!("pincus[{tag}] resolvent vs disc integral"), det, quad, tol.quadrature),
        Check::close(format!("pincus[{tag}] disc integral vs closed form"), quad, closed, tol.quadrature),
    ])
}

pub(crate) fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

/// Unit circle sampled `samples` times.
pub fn unit_circle(samples: usize) -> Vec<Complex64> {
    circle_points(1.0, samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn winding_examples() {
        let circle = unit_circle(1024);
        assert_eq!(winding_number(&circle, c(0.3, 0.0)).unwrap(), 1);
        assert_eq!(winding_number(&circle, c(1.5, 0.0)).unwrap(), 0);
        assert_eq!(winding_number(&circle, c(0.0, 0.0)).unwrap(), 1);
        assert!(matches!(winding_number(&circle, c(0.999, 0.0)), Err(Error::TooCloseToCurve { .. })));
        let reversed: Vec<Complex64> = circle.iter().rev().copied().collect();
        assert_eq!(winding_number(&reversed, c(0.3, 0.0)).unwrap(), -1);
        let twice: Vec<Complex64> = (0..1024).map(|k| circle[(2 * k) % 1024]).collect();
        assert_eq!(winding_number(&twice, c(0.1, 0.2)).unwrap(), 2);
    }

    #[test]
    fn winding_is_refinement_stable() {
        let coarse = unit_circle(1024);
        let fine = unit_circle(4096);
        for lambda in [c(0.3, 0.0), c(-0.5, 0.5), c(1.2, -0.3), c(0.0, 3.0)] {
            assert_eq!(winding_number(&coarse, lambda).unwrap(), winding_number(&fine, lambda).unwrap());
        }
    }

    #[test]
    fn principal_values_of_models() {
        let s = ShiftModel::unilateral();
        assert_eq!(principal_value_at(&s, c(0.5, 0.0)).unwrap().g_value, 1);
        assert_eq!(principal_value_at(&s, c(2.0, 0.0)).unwrap().g_value, 0);
        for lambda in [1.5, 2.0, 5.0] {
            let t = ShiftModel::rational(lambda).unwrap();
            assert_eq!(principal_value_at(&t, c(0.5, 0.0)).unwrap().g_value, 1);
        }
        assert!(matches!(principal_value_at(&s, c(1.0, 0.0)), Err(Error::OnEssentialSpectrum { .. })));
        assert!(matches!(principal_value_at(&s, c(1.0 + 1e-9, 0.0)), Err(Error::OnEssentialSpectrum { .. })));
        // adaptive refinement handles points a few 1e-3 from the circle
        assert_eq!(principal_value_at(&s, c(0.0, 0.997)).unwrap().g_value, 1);
        assert_eq!(principal_value_sampled(&s, c(0.5, 0.0), 1024).unwrap().g_value, 1);
    }

    #[test]
    fn grid_function_validation() {
        assert!(GridFunction::constant(4, 4, 1.5).is_err());
        let g = GridFunction::from_model(&ShiftModel::tabulated(vec![0.5; 4], Some(0.5)).unwrap(), 8, 16).unwrap();
        assert_eq!(g.value(0, 0), 1.0);
        assert_eq!(g.value(7, 3), 0.0);
    }

    #[test]
    fn disc_exponential_matches_closed_form() {
        let g = GridFunction::constant(400, 400, 1.0).unwrap();
        let got = disc_cauchy_exponential(&g, c(2.0, 0.0), c(2.0, 0.0)).unwrap();
        assert!((got - c(0.75, 0.0)).norm() < 5e-3);
        let got = disc_cauchy_exponential(&g, c(2.0, 0.0), c(3.0, 0.0)).unwrap();
        assert!((got - c(5.0 / 6.0, 0.0)).norm() < 5e-3);
        let zero = GridFunction::constant(40, 40, 0.0).unwrap();
        assert_eq!(disc_cauchy_exponential(&zero, c(2.0, 0.0), c(3.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert!(matches!(
            disc_cauchy_exponential(&g, c(0.5, 0.0), c(3.0, 0.0)),
            Err(Error::EvaluationInsideDisc { .. })
        ));
    }

    #[test]
    fn disc_exponential_kernel_symmetry() {
        let g = GridFunction::from_fn(64, 64, |z| if z.re > 0.0 { 1.0 } else { 0.25 }).unwrap();
        let z = c(1.7, 0.4);
        let w = c(-0.3, 2.5);
        let a = disc_cauchy_exponential(&g, z, w).unwrap();
        let b = disc_cauchy_exponential(&g, w, z).unwrap();
        assert!((a - b.conj()).norm() < 1e-10);
    }

    #[test]
    fn quadrature_converges_monotonically() {
        for (z, w) in [(c(2.0, 0.0), c(2.0, 0.0)), (c(2.0, 0.0), c(3.0, 0.0)), (c(0.0, 2.0), c(0.0, 2.0))] {
            let exact = closed_form_oracle(z, w, 1.0).unwrap();
            let mut prev = f64::INFINITY;
            for n in [16usize, 32, 64, 128, 256] {
                let g = GridFunction::constant(n, n, 1.0).unwrap();
                let err = (disc_cauchy_exponential(&g, z, w).unwrap() - exact).norm();
                if prev > 1e-6 {
                    assert!(err * 2.0 <= prev, "n={n} err={err} prev={prev}");
                }
                prev = err;
            }
        }
    }

    #[test]
    fn monomial_orthogonality() {
        // int_D zeta^m conj(zeta)^n dA = pi/(m+1) delta_mn
        let g = GridFunction::constant(2048, 64, 1.0).unwrap();
        for m in 0..=5i32 {
            for n in 0..=5i32 {
                let got = g.integrate(|z| z.powi(m) * z.conj().powi(n));
                let expected = if m == n { PI / (m as f64 + 1.0) } else { 0.0 };
                assert!((got - c(expected, 0.0)).norm() < 1e-6, "m={m} n={n} got={got}");
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert!((closed_form_oracle(c(2.0, 0.0), c(2.0, 0.0), 1.0).unwrap() - c(0.75, 0.0)).norm() < 1e-15);
        assert!((closed_form_oracle(c(2.0, 0.0), c(3.0, 0.0), 1.0).unwrap() - c(5.0 / 6.0, 0.0)).norm() < 1e-15);
        let half = closed_form_oracle(c(2.0, 0.0), c(2.0, 0.0), 0.5).unwrap();
        assert!((half.re - 0.75f64.sqrt()).abs() < 1e-15 && half.im == 0.0);
        assert!((half.re - 0.8660254).abs() < 1e-7);
        // principal branch away from the positive axis
        let z = c(0.0, 1.6);
        let w = c(1.2, -0.9);
        let direct = (c(1.0, 0.0) - 1.0 / (z * w.conj())).powf(0.3);
        assert!((closed_form_oracle(z, w, 0.3).unwrap() - direct).norm() < 1e-14);
        assert!(closed_form_oracle(c(0.5, 0.0), c(2.0, 0.0), 1.0).is_err());
        assert!(closed_form_oracle(c(2.0, 0.0), c(2.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn pincus_triangle() {
        for (z, w) in [(c(2.0, 0.0), c(2.0, 0.0)), (c(2.0, 0.0), c(3.0, 0.0)), (c(0.0, 2.0), c(0.0, 2.0))] {
            let checks =
                pincus_consistency(&ShiftModel::unilateral(), z, w, 64, 400, 400, PincusTolerances::default()).unwrap();
            assert_eq!(checks.len(), 3);
            assert!(checks.iter().all(|c| c.pass), "{checks:?}");
        }
        assert!(pincus_consistency(
            &ShiftModel::rational(2.0).unwrap(),
            c(2.0, 0.0),
            c(2.0, 0.0),
            16,
            32,
            32,
            PincusTolerances::default()
        )
        .is_err());
    }
}
