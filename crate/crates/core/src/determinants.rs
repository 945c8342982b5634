//! Determinants of trace-class perturbations of the identity and the
//! determining function of a shift model.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_min_eig, inner, invert, psd_sqrt, resolvent_solve, self_commutator, singular_spectrum, trace,
    ComplexMatrix, ComplexVector,
};
use crate::shift::ShiftModel;

const LOG_SERIES_TERM_FLOOR: f64 = 1e-16;
const LOG_SERIES_MAX_TERMS: usize = 200;

/// `T = A + iB` together with the self-commutator model `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct CartesianPair {
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
    pub d: ComplexMatrix,
    /// `max |2i[A, B] - (T*T - TT*)|` on the finite matrices.
    pub identity_residual: f64,
}

/// Splits `T` into Hermitian parts and attaches the PSD commutator model `D`.
pub fn cartesian_parts(t: &ComplexMatrix, d: &ComplexMatrix) -> Result<CartesianPair> {
    if d.dim() != t.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), got: d.dim() });
    }
    let min_eig = hermitian_min_eig(d)?;
    if min_eig < -1e-12 * d.max_abs_entry().max(1.0) {
        return Err(Error::NotPsd { min_eig });
    }
    let ta = t.adjoint();
    let a = (t + &ta).scale(Complex64::new(0.5, 0.0));
    let b = (t - &ta).scale(Complex64::new(0.0, -0.5));
    let commutator = &(&a * &b) - &(&b * &a);
    let identity_residual = (&commutator.scale(Complex64::new(0.0, 2.0)) - &self_commutator(t)).max_abs_entry();
    Ok(CartesianPair { a, b, d: d.clone(), identity_residual })
}

/// `prod_j (1 + lambda_j(K))`.
pub fn det_eigenproduct(k: &ComplexMatrix) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    if k.dim() == 0 {
        return one;
    }
    match k.as_dmatrix().clone().schur().eigenvalues() {
        Some(eigs) => eigs.iter().map(|l| one + l).product(),
        None => k.shift_diagonal(one).as_dmatrix().determinant(),
    }
}

/// `exp tr log(I + K)` with `log(I + K) = sum_{n>=1} (-1)^{n+1} K^n / n`.
///
/// Summation stops once a term's trace norm drops below 1e-16, or after 200
/// terms; the discarded tail is bounded by `||K||_1^201 / (201 (1 - ||K||_1))`.
pub fn det_logseries(k: &ComplexMatrix) -> Result<Complex64> {
    let trace_norm = singular_spectrum(k).trace_norm();
    if trace_norm >= 1.0 {
        return Err(Error::SeriesDivergent { trace_norm });
    }
    let mut power = ComplexMatrix::identity(k.dim());
    let mut log_trace = Complex64::new(0.0, 0.0);
    for n in 1..=LOG_SERIES_MAX_TERMS {
        power = &power * k;
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        log_trace += trace(&power) * (sign / n as f64);
        if singular_spectrum(&power).trace_norm() / (n as f64) < LOG_SERIES_TERM_FLOOR {
            break;
        }
    }
    Ok(log_trace.exp())
}

/// `1 - <(T* - conj w)^{-1} x, (T* - conj z)^{-1} x>` on the N-truncation of a
/// shift whose infinite self-commutator is `x (x)*`.
pub fn determining_det(
    model: &ShiftModel,
    x: &ComplexVector,
    z: Complex64,
    w: Complex64,
    dim: usize,
) -> Result<Complex64> {
    let norm = model.declared_norm();
    for p in [z, w] {
        if p.norm() <= norm {
            return Err(Error::SpectrumHit { re: p.re, im: p.im });
        }
    }
    let expected = model.rank_one_vector(dim)?;
    if x.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: x.len() });
    }
    check_rank_one_vector(x, &expected)?;
    let ta = model.materialize(dim)?.adjoint();
    let u = resolvent_solve(&ta, w.conj(), x)?;
    let v = resolvent_solve(&ta, z.conj(), x)?;
    Ok(Complex64::new(1.0, 0.0) - inner(&u, &v))
}

// x (x)* must equal the model's commutator, so x may differ only by a phase
fn check_rank_one_vector(x: &ComplexVector, expected: &ComplexVector) -> Result<()> {
    let gram = inner(x, expected);
    let scale = expected.norm_squared().max(f64::MIN_POSITIVE);
    let aligned = (gram.norm() - x.norm() * expected.norm()).abs() <= 1e-12 * scale;
    let same_norm = (x.norm_squared() - expected.norm_squared()).abs() <= 1e-12 * scale;
    if aligned && same_norm {
        Ok(())
    } else {
        Err(Error::VectorMismatch(format!(
            "|x|^2 = {}, model needs {} along e_0",
            x.norm_squared(),
            expected.norm_squared()
        )))
    }
}

impl CartesianPair {
    /// `E(z, w) = I - 2i D^{1/2} (A - z)^{-1} (B - w)^{-1} D^{1/2}`.
    pub fn determining_function(&self, z: Complex64, w: Complex64) -> Result<ComplexMatrix> {
        let n = self.a.dim();
        let ra = invert(&self.a.shift_diagonal(-z)).map_err(|_| Error::SpectrumHit { re: z.re, im: z.im })?;
        let rb = invert(&self.b.shift_diagonal(-w)).map_err(|_| Error::SpectrumHit { re: w.re, im: w.im })?;
        let root = psd_sqrt(&self.d)?;
        let inner = &(&(&root * &ra) * &rb) * &root;
        Ok(&ComplexMatrix::identity(n) - &inner.scale(Complex64::new(0.0, 2.0)))
    }

    /// `det E(z, w)` through [`det_eigenproduct`].
    pub fn determining_det(&self, z: Complex64, w: Complex64) -> Result<Complex64> {
        let e = self.determining_function(z, w)?;
        Ok(det_eigenproduct(&e.shift_diagonal(Complex64::new(-1.0, 0.0))))
    }
}

/// Determinant of the finite multiplicative commutator
/// `(T - z)(T* - conj w)(T - z)^{-1}(T* - conj w)^{-1}`.
///
/// On any finite matrix this is 1 by multiplicativity of `det`; the value of
/// the determining function only appears once the commutator is reduced to
/// `I - (x (x)*)(T - z)^{-1}(T* - conj w)^{-1}` on the infinite model, which is
/// why [`determining_det`] works through the rank-one vector instead.
pub fn multiplicative_commutator_pitfall(t: &ComplexMatrix, z: Complex64, w: Complex64) -> Result<Complex64> {
    let x = t.shift_diagonal(-z);
    let y = t.adjoint().shift_diagonal(-w.conj());
    let singular = |p: Complex64| move |_| Error::SingularResolvent { ratio: p.norm() };
    let xi = invert(&x).map_err(singular(z))?;
    let yi = invert(&y).map_err(singular(w))?;
    let product = &(&(&x * &y) * &xi) * &yi;
    Ok(det_eigenproduct(&product.shift_diagonal(Complex64::new(-1.0, 0.0))))
}
