//! Polynomials in `z, z̄`, the tracial bilinear form
//! `(p, q) -> tr [p(T, T*), q(T, T*)]`, and the area inequalities for
//! `tr [T*, T]` and `||[T*, T]||`.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Banded, ComplexMatrix};
use crate::principal::GridFunction;
use crate::report::Check;
use crate::shift::ShiftModel;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `sum a_jk z^j z̄^k` with finitely many nonzero coefficients.
///
/// Serializes as a list of `[j, k, re, im]` terms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BivariatePolynomial {
    coeffs: BTreeMap<(u32, u32), Complex64>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(j: u32, k: u32, c: Complex64) -> Self {
        let mut p = Self::zero();
        p.add_term(j, k, c);
        p
    }

    /// `z^j`
    pub fn z_pow(j: u32) -> Self {
        Self::monomial(j, 0, Complex64::new(1.0, 0.0))
    }

    /// `z̄^k`
    pub fn zbar_pow(k: u32) -> Self {
        Self::monomial(0, k, Complex64::new(1.0, 0.0))
    }

    pub fn from_terms(terms: &[(u32, u32, Complex64)]) -> Result<Self> {
        let mut p = Self::zero();
        for &(j, k, c) in terms {
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::NonFinite);
            }
            p.add_term(j, k, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, j: u32, k: u32, c: Complex64) {
        let slot = self.coeffs.entry((j, k)).or_insert(ZERO);
        *slot += c;
        if *slot == ZERO {
            self.coeffs.remove(&(j, k));
        }
    }

    pub fn coefficient(&self, j: u32, k: u32) -> Complex64 {
        self.coeffs.get(&(j, k)).copied().unwrap_or(ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, Complex64)> + '_ {
        self.coeffs.iter().map(|(&(j, k), &c)| (j, k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_z(&self) -> u32 {
        self.coeffs.keys().map(|&(j, _)| j).max().unwrap_or(0)
    }

    pub fn deg_zbar(&self) -> u32 {
        self.coeffs.keys().map(|&(_, k)| k).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (j, k, c) in other.terms() {
            out.add_term(j, k, c);
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = Self::zero();
        for (j, k, c) in self.terms() {
            out.add_term(j, k, c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (j1, k1, a) in self.terms() {
            for (j2, k2, b) in other.terms() {
                out.add_term(j1 + j2, k1 + k2, a * b);
            }
        }
        out
    }

    /// `∂/∂z`
    pub fn d_dz(&self) -> Self {
        let mut out = Self::zero();
        for (j, k, c) in self.terms() {
            if j > 0 {
                out.add_term(j - 1, k, c * j as f64);
            }
        }
        out
    }

    /// `∂/∂z̄`
    pub fn d_dzbar(&self) -> Self {
        let mut out = Self::zero();
        for (j, k, c) in self.terms() {
            if k > 0 {
                out.add_term(j, k - 1, c * k as f64);
            }
        }
        out
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zc = z.conj();
        self.terms().map(|(j, k, c)| c * z.powu(j) * zc.powu(k)).sum()
    }
}

impl Serialize for BivariatePolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(u32, u32, f64, f64)> = self.terms().map(|(j, k, c)| (j, k, c.re, c.im)).collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BivariatePolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms: Vec<(u32, u32, f64, f64)> = Vec::deserialize(d)?;
        let terms: Vec<_> = terms.into_iter().map(|(j, k, re, im)| (j, k, Complex64::new(re, im))).collect();
        Self::from_terms(&terms).map_err(serde::de::Error::custom)
    }
}

/// `J(p, q) = ∂p/∂z̄ ∂q/∂z - ∂p/∂z ∂q/∂z̄`
pub fn wirtinger_jacobian(p: &BivariatePolynomial, q: &BivariatePolynomial) -> BivariatePolynomial {
    p.d_dzbar().mul(&q.d_dz()).add(&p.d_dz().mul(&q.d_dzbar()).scale(Complex64::new(-1.0, 0.0)))
}

/// `sum a_jk T^j (T*)^k`
pub fn eval_poly_at_operator(p: &BivariatePolynomial, t: &ComplexMatrix) -> ComplexMatrix {
    let ts = t.adjoint();
    let mut out = ComplexMatrix::zeros(t.dim());
    for (j, k, c) in p.terms() {
        let term = &t.pow(j) * &ts.pow(k);
        out = &out + &term.scale(c);
    }
    out
}

struct PowerCache {
    t: Banded,
    ts: Banded,
    t_pows: HashMap<u32, Banded>,
    ts_pows: HashMap<u32, Banded>,
}

impl PowerCache {
    fn new(t: Banded) -> Self {
        let ts = t.adjoint();
        Self { t, ts, t_pows: HashMap::new(), ts_pows: HashMap::new() }
    }

    fn t_pow(&mut self, j: u32) -> Banded {
        let t = &self.t;
        self.t_pows.entry(j).or_insert_with(|| t.pow(j)).clone()
    }

    fn ts_pow(&mut self, k: u32) -> Banded {
        let ts = &self.ts;
        self.ts_pows.entry(k).or_insert_with(|| ts.pow(k)).clone()
    }

    fn eval(&mut self, p: &BivariatePolynomial) -> Banded {
        let mut out = Banded::zeros(self.t.dim());
        for (j, k, c) in p.terms() {
            let term = self.t_pow(j).mul(&self.ts_pow(k));
            out = out.add(&term.scale(c));
        }
        out
    }
}

/// `deg_z + deg_z̄` of `p` plus that of `q`: the number of trailing diagonal
/// entries of a truncated commutator that differ from the infinite one.
pub fn window_margin(p: &BivariatePolynomial, q: &BivariatePolynomial) -> usize {
    (p.deg_z() + p.deg_zbar() + q.deg_z() + q.deg_zbar()) as usize
}

fn truncated_commutator(
    p: &BivariatePolynomial,
    q: &BivariatePolynomial,
    model: &ShiftModel,
    dim: usize,
) -> Result<Banded> {
    let mut cache = PowerCache::new(model.materialize_banded(dim)?);
    let pt = cache.eval(p);
    let qt = cache.eval(q);
    Ok(pt.mul(&qt).sub(&qt.mul(&pt)))
}

/// Windowed trace of `[p(T_N, T_N*), q(T_N, T_N*)]` over indices
/// `0 ..= N - 1 - margin`.
pub fn tracial_form(
    p: &BivariatePolynomial,
    q: &BivariatePolynomial,
    model: &ShiftModel,
    dim: usize,
) -> Result<Complex64> {
    let margin = window_margin(p, q);
    let required = 4 * margin;
    if dim <= required {
        return Err(Error::DimensionTooSmall { dim, required });
    }
    let diag = truncated_commutator(p, q, model, dim)?.diagonal();
    Ok(diag[..dim - margin].iter().sum())
}

/// Unwindowed trace of the truncated commutator, zero up to rounding.
pub fn full_truncated_trace(
    p: &BivariatePolynomial,
    q: &BivariatePolynomial,
    model: &ShiftModel,
    dim: usize,
) -> Result<Complex64> {
    Ok(truncated_commutator(p, q, model, dim)?.diagonal().iter().sum())
}

/// `(1/pi) int_D J(p, q) g dA` on the grid.
pub fn jacobian_integral(p: &BivariatePolynomial, q: &BivariatePolynomial, g: &GridFunction) -> Complex64 {
    let j = wirtinger_jacobian(p, q);
    g.integrate(|z| j.eval(z)) / PI
}

fn coefficient_weight(p: &BivariatePolynomial) -> f64 {
    p.terms().map(|(j, k, c)| c.norm() * (j + k) as f64).sum()
}

/// Default tolerance for [`helton_howe_check`]: rounding, plus the midpoint
/// error of the Jacobian's monomials, plus the tail of the trace past the
/// window.
pub fn helton_howe_tolerance(
    p: &BivariatePolynomial,
    q: &BivariatePolynomial,
    model: &ShiftModel,
    g: &GridFunction,
    dim: usize,
) -> Result<f64> {
    let h = 1.0 / g.n_r() as f64;
    let j = wirtinger_jacobian(p, q);
    let mut quadrature: f64 = j.terms().map(|(m, n, c)| c.norm() * (m + n + 2) as f64 * h * h / 4.0).sum();
    let flat = (0..g.n_r()).all(|i| (0..g.n_theta()).all(|k| g.value(i, k) == g.value(0, 0)));
    if !flat {
        quadrature += j.terms().map(|(_, _, c)| c.norm()).sum::<f64>() * 2.0 * h;
    }
    let margin = window_margin(p, q);
    let edge = dim.saturating_sub(margin + 1);
    let tail = match model.limit() {
        Some(l) => {
            let w = model.weight(edge)?;
            (l * l - w * w).abs()
        }
        None => return Err(Error::NoLimitDeclared),
    };
    let degree = margin.max(2) as i32;
    let window = 2.0
        * coefficient_weight(p).max(1.0)
        * coefficient_weight(q).max(1.0)
        * model.declared_norm().max(1.0).powi(degree)
        * tail;
    Ok(1e-10 + quadrature + window)
}

/// Compares the windowed trace with the Jacobian integral against `g`.
pub fn helton_howe_check(
    p: &BivariatePolynomial,
    q: &BivariatePolynomial,
    model: &ShiftModel,
    g: &GridFunction,
    dim: usize,
    tolerance: Option<f64>,
) -> Result<Check> {
    let lhs = tracial_form(p, q, model, dim)?;
    let rhs = jacobian_integral(p, q, g);
    let tol = match tolerance {
        Some(t) => t,
        None => helton_howe_tolerance(p, q, model, g, dim)?,
    };
    Ok(Check::close(format!("helton-howe[p={},q={},N={dim}]", describe(p), describe(q)), lhs, rhs, tol))
}

/// Short human-readable form, e.g. `z̄^2+2z`.
pub fn describe(p: &BivariatePolynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = p
        .terms()
        .map(|(j, k, c)| {
            let mut s = String::new();
            if c != Complex64::new(1.0, 0.0) || (j == 0 && k == 0) {
                s.push_str(&crate::principal::fmt_complex(c));
            }
            for (e, sym) in [(j, "z"), (k, "zbar")] {
                match e {
                    0 => {}
                    1 => s.push_str(sym),
                    _ => s.push_str(&format!("{sym}^{e}")),
                }
            }
            s
        })
        .collect();
    parts.join("+")
}

/// Berger-Shaw `tr [T*, T] <= (m/pi) area` and Putnam
/// `||[T*, T]|| <= area/pi`, from the exact commutator diagonal. `area`
/// defaults to that of the closed disc of radius `lim w_n`.
pub fn berger_shaw_putnam_check(model: &ShiftModel, multiplicity: u32, area: Option<f64>) -> Result<Vec<Check>> {
    if multiplicity == 0 {
        return Err(Error::Domain("multiplicity must be at least 1".into()));
    }
    let limit = model.limit().ok_or(Error::NoLimitDeclared)?;
    let area = area.unwrap_or(PI * limit * limit);
    if !(area.is_finite() && area >= 0.0) {
        return Err(Error::Domain(format!("area must be finite and nonnegative, got {area}")));
    }
    let trace = model.exact_trace()?;
    let norm = model.exact_commutator_norm(4096)?;
    Ok(vec![
        Check::at_most("berger-shaw tr[T*,T] <= (m/pi) area", trace, multiplicity as f64 / PI * area, 1e-12),
        Check::at_most("putnam ||[T*,T]|| <= area/pi", norm, area / PI, 1e-12),
    ])
}
