//! Disc automorphisms `z -> beta (z - a) / (1 - conj(a) z)` and their action
//! on operators through the holomorphic functional calculus.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{singular_spectrum, solve, solve_matrix, ComplexMatrix, ComplexVector};

const UNIMODULAR_TOL: f64 = 1e-12;
const CONTRACTION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    beta: Complex64,
    a: Complex64,
}

impl MobiusMap {
    pub fn new(beta: Complex64, a: Complex64) -> Result<Self> {
        if !(beta.re.is_finite() && beta.im.is_finite() && a.re.is_finite() && a.im.is_finite()) {
            return Err(Error::InvalidMobius("non-finite parameter".into()));
        }
        if (beta.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::InvalidMobius(format!("|beta| = {} is not 1", beta.norm())));
        }
        if a.norm() >= 1.0 {
            return Err(Error::InvalidMobius(format!("|a| = {} must be < 1", a.norm())));
        }
        Ok(Self { beta, a })
    }

    /// `beta = exp(i beta_arg)`.
    pub fn from_angle(beta_arg: f64, a: Complex64) -> Result<Self> {
        Self::new(Complex64::from_polar(1.0, beta_arg), a)
    }

    pub fn identity() -> Self {
        Self { beta: Complex64::new(1.0, 0.0), a: Complex64::new(0.0, 0.0) }
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let denom = Complex64::new(1.0, 0.0) - self.a.conj() * z;
        if denom.norm() <= f64::EPSILON * (1.0 + (self.a.conj() * z).norm()) {
            return Err(Error::PoleHit { re: z.re, im: z.im });
        }
        Ok(self.beta * (z - self.a) / denom)
    }

    /// `phi^{-1}(w) = conj(beta) (w + beta a) / (1 + conj(beta a) w)`.
    pub fn invert(&self) -> Self {
        Self { beta: self.beta.conj(), a: -self.beta * self.a }
    }

    /// `self o other`.
    pub fn compose(&self, other: &Self) -> Self {
        // z -> (p z + q) / (r z + s), normalised so that s = 1
        let [p1, q1, r1, s1] = self.coefficients();
        let [p2, q2, r2, s2] = other.coefficients();
        let p = p1 * p2 + q1 * r2;
        let r = r1 * p2 + s1 * r2;
        let s = r1 * q2 + s1 * s2;
        let beta = p / s;
        let a = -(r / s).conj();
        Self { beta: beta / beta.norm(), a }
    }

    fn coefficients(&self) -> [Complex64; 4] {
        [self.beta, -self.beta * self.a, -self.a.conj(), Complex64::new(1.0, 0.0)]
    }

    /// `beta (T - a)(I - conj(a) T)^{-1}` for a contraction `T`.
    pub fn apply_to_operator(&self, t: &ComplexMatrix) -> Result<ComplexMatrix> {
        let norm = singular_spectrum(t).operator_norm();
        if norm > 1.0 + CONTRACTION_TOL {
            return Err(Error::NotAContraction { norm });
        }
        let numerator = t.shift_diagonal(-self.a);
        let denominator = &ComplexMatrix::identity(t.dim()) - &t.scale(self.a.conj());
        // the two factors commute, so the left solve equals the right product
        Ok(solve_matrix(&denominator, &numerator)?.scale(self.beta))
    }

    /// `[phi(T)*, phi(T)]` from the partial-fraction form of `phi`, given the
    /// model `[T*, T] = x (x)*`:
    ///
    /// `|c|^2 ((T - b)(T - b)*)^{-1} (x (x)*) ((T - b)*(T - b))^{-1}`,
    /// `b = 1/conj(a)`, `c = (a - b) / conj(a)`.
    ///
    /// Both outer factors are Hermitian, so the result is `|c|^2 u v*` with
    /// `u`, `v` obtained from two linear solves.
    pub fn closed_form_selfcommutator(&self, t: &ComplexMatrix, x: &ComplexVector) -> Result<ComplexMatrix> {
        if self.a == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroCenter);
        }
        if x.len() != t.dim() {
            return Err(Error::DimensionMismatch { expected: t.dim(), got: x.len() });
        }
        let b = 1.0 / self.a.conj();
        let c = (self.a - b) / self.a.conj();
        let q = t.shift_diagonal(-b);
        let qa = q.adjoint();
        let u = solve(&(&q * &qa), x)?;
        let v = solve(&(&qa * &q), x)?;
        outer(&u, &v, c.norm_sqr())
    }

    /// The grid `a in {0, 0.3, 0.5 e^{i pi/4}, 0.7 i}` x `beta in {1, e^{i pi/7}}`.
    pub fn default_grid() -> Vec<Self> {
        let centers = [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.3, 0.0),
            Complex64::from_polar(0.5, PI / 4.0),
            Complex64::new(0.0, 0.7),
        ];
        let mut out = Vec::with_capacity(8);
        for a in centers {
            for arg in [0.0, PI / 7.0] {
                out.push(Self { beta: Complex64::from_polar(1.0, arg), a });
            }
        }
        out
    }
}

/// `scale * u v*`
fn outer(u: &ComplexVector, v: &ComplexVector, scale: f64) -> Result<ComplexMatrix> {
    ComplexMatrix::try_from(u * v.adjoint() * Complex64::new(scale, 0.0))
}

/// `[(T*)^{-1}, T^{-1}] = (T T*)^{-1} (x (x)*) (T* T)^{-1}` for invertible `T`
/// with `[T*, T] = x (x)*`.
pub fn inverse_commutator_rank_one(t: &ComplexMatrix, x: &ComplexVector) -> Result<ComplexMatrix> {
    if x.len() != t.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), got: x.len() });
    }
    let ta = t.adjoint();
    let u = solve(&(t * &ta), x)?;
    let v = solve(&(&ta * t), x)?;
    outer(&u, &v, 1.0)
}

/// Internal truncation used when comparing an `n x n` corner against the
/// infinite model.
pub fn internal_dim(n: usize) -> usize {
    (2 * n).max(n + 64)
}
