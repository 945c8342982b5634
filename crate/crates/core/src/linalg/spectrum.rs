use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ComplexVector};
use crate::error::{Error, Result};

/// Default relative threshold for [`SingularSpectrum::numerical_rank`].
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Max entrywise `|M - M*|` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Relative `s_min / s_max` below which a shifted matrix counts as singular.
const SINGULAR_RATIO: f64 = 1e-13;

pub fn trace(m: &ComplexMatrix) -> Complex64 {
    m.as_dmatrix().trace()
}

/// s-numbers of a matrix, non-increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum {
    values: Vec<f64>,
}

impl SingularSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn trace_norm(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn operator_norm(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn smallest(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// `#{j : s_j > tol * s_1}`; zero for the zero matrix.
    pub fn numerical_rank(&self, tol: f64) -> usize {
        let s1 = self.operator_norm();
        if s1 == 0.0 {
            return 0;
        }
        self.values.iter().filter(|&&s| s > tol * s1).count()
    }

    /// `s_2 / s_1`, or 0 when there is no second value or `s_1 = 0`.
    pub fn second_ratio(&self) -> f64 {
        match (self.values.first(), self.values.get(1)) {
            (Some(&s1), Some(&s2)) if s1 > 0.0 => s2 / s1,
            _ => 0.0,
        }
    }
}

pub fn singular_spectrum(m: &ComplexMatrix) -> SingularSpectrum {
    let mut values: Vec<f64> = m.as_dmatrix().clone().singular_values().iter().map(|s| s.max(0.0)).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    SingularSpectrum { values }
}

/// `M*M - MM*`.
pub fn self_commutator(m: &ComplexMatrix) -> ComplexMatrix {
    let adj = m.adjoint();
    &(&adj * m) - &(m * &adj)
}

fn symmetrized(m: &ComplexMatrix) -> Result<DMatrix<Complex64>> {
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NonHermitianInput { deviation });
    }
    let a = m.as_dmatrix();
    Ok((a + a.adjoint()) * Complex64::new(0.5, 0.0))
}

/// Eigenvalues (ascending) and orthonormal eigenvectors (as columns) of a
/// Hermitian matrix.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
    let eig = SymmetricEigen::new(symmetrized(m)?);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.dim(), m.dim(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

pub fn hermitian_min_eig(m: &ComplexMatrix) -> Result<f64> {
    if m.dim() == 0 {
        return Ok(0.0);
    }
    let values = symmetrized(m)?.symmetric_eigenvalues();
    Ok(values.iter().copied().fold(f64::INFINITY, f64::min))
}

/// Square root of a Hermitian PSD matrix. Eigenvalues in `[-1e-12 * scale, 0)`
/// are treated as roundoff and clipped.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (values, vectors) = hermitian_eigen(m)?;
    let scale = values.iter().fold(1.0f64, |s, v| s.max(v.abs()));
    let min_eig = values.first().copied().unwrap_or(0.0);
    if min_eig < -1e-12 * scale {
        return Err(Error::NotPsd { min_eig });
    }
    let roots = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        values.len(),
        values.iter().map(|&v| Complex64::new(v.max(0.0).sqrt(), 0.0)),
    ));
    ComplexMatrix::try_from(&vectors * roots * vectors.adjoint())
}

fn singular_ratio(a: &ComplexMatrix) -> f64 {
    let s = singular_spectrum(a);
    if s.operator_norm() == 0.0 {
        0.0
    } else {
        s.smallest() / s.operator_norm()
    }
}

fn lu_solve(a: &ComplexMatrix, v: &ComplexVector) -> Option<ComplexVector> {
    a.as_dmatrix().clone().lu().solve(v)
}

/// Solves `(M - lambda I) u = v`, refusing numerically singular shifts.
pub fn resolvent_solve(m: &ComplexMatrix, lambda: Complex64, v: &ComplexVector) -> Result<ComplexVector> {
    if v.len() != m.dim() {
        return Err(Error::DimensionMismatch { expected: m.dim(), got: v.len() });
    }
    let shifted = m.shift_diagonal(-lambda);
    let ratio = singular_ratio(&shifted);
    if ratio <= SINGULAR_RATIO {
        return Err(Error::SingularResolvent { ratio });
    }
    let mut u = lu_solve(&shifted, v).ok_or(Error::SingularResolvent { ratio })?;
    // one step of refinement keeps the residual contract on ill-conditioned shifts
    let residual = v - shifted.apply(&u);
    if residual.norm() > 1e-12 * v.norm() {
        if let Some(du) = lu_solve(&shifted, &residual) {
            u += du;
        }
    }
    Ok(u)
}

/// Solves `A u = v` for invertible `A`.
pub fn solve(a: &ComplexMatrix, v: &ComplexVector) -> Result<ComplexVector> {
    resolvent_solve(a, Complex64::new(0.0, 0.0), v).map_err(|e| match e {
        Error::SingularResolvent { ratio } => Error::SingularInput { ratio },
        other => other,
    })
}

pub fn invert(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let ratio = singular_ratio(a);
    if ratio <= SINGULAR_RATIO {
        return Err(Error::SingularInput { ratio });
    }
    let inv = a.as_dmatrix().clone().lu().try_inverse().ok_or(Error::SingularInput { ratio })?;
    ComplexMatrix::try_from(inv)
}

/// Solves `A X = B` for invertible `A`.
pub fn solve_matrix(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let ratio = singular_ratio(a);
    if ratio <= SINGULAR_RATIO {
        return Err(Error::SingularInput { ratio });
    }
    let x = a.as_dmatrix().clone().lu().solve(b.as_dmatrix()).ok_or(Error::SingularInput { ratio })?;
    ComplexMatrix::try_from(x)
}
