//! Weighted unilateral shifts `T e_n = w_n e_{n+1}`.
//!
//! Besides N x N truncations, a [`ShiftModel`] knows the exact diagonal of the
//! infinite operator's self-commutator. Claims about the trace or rank of
//! `[T*, T]` go through that diagonal, never through the commutator of a
//! truncation: the latter always has trace zero, with the missing mass piled
//! into the bottom-right corner.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Banded, ComplexMatrix, ComplexVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum WeightSequence {
    /// `w_n = 1`
    Unilateral,
    /// `w_n = (n + 1) / (n + lambda)`
    Rational { lambda: f64 },
    /// Finite table; indices past the end take the declared limit.
    Tabulated {
        weights: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        limit: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftModel {
    weights: WeightSequence,
    declared_norm: f64,
}

impl ShiftModel {
    pub fn new(weights: WeightSequence) -> Result<Self> {
        let declared_norm = match &weights {
            WeightSequence::Unilateral => 1.0,
            WeightSequence::Rational { lambda } => {
                if !lambda.is_finite() || *lambda <= 0.0 {
                    return Err(Error::InvalidWeights(format!("lambda must be positive, got {lambda}")));
                }
                // decreasing from 1/lambda when lambda < 1, increasing to 1 otherwise
                (1.0 / lambda).max(1.0)
            }
            WeightSequence::Tabulated { weights, limit } => {
                if weights.is_empty() && limit.is_none() {
                    return Err(Error::InvalidWeights("empty table without a limit".into()));
                }
                if let Some(w) = weights.iter().chain(limit.iter()).find(|w| !w.is_finite() || **w <= 0.0) {
                    return Err(Error::InvalidWeights(format!("weights must be positive and finite, got {w}")));
                }
                weights.iter().chain(limit.iter()).copied().fold(0.0, f64::max)
            }
        };
        Ok(Self { weights, declared_norm })
    }

    pub fn unilateral() -> Self {
        Self { weights: WeightSequence::Unilateral, declared_norm: 1.0 }
    }

    pub fn rational(lambda: f64) -> Result<Self> {
        Self::new(WeightSequence::Rational { lambda })
    }

    pub fn tabulated(weights: Vec<f64>, limit: Option<f64>) -> Result<Self> {
        Self::new(WeightSequence::Tabulated { weights, limit })
    }

    pub fn weights(&self) -> &WeightSequence {
        &self.weights
    }

    /// `sup_n w_n`.
    pub fn declared_norm(&self) -> f64 {
        self.declared_norm
    }

    /// `lim w_n`, when known.
    pub fn limit(&self) -> Option<f64> {
        match &self.weights {
            WeightSequence::Unilateral | WeightSequence::Rational { .. } => Some(1.0),
            WeightSequence::Tabulated { limit, .. } => *limit,
        }
    }

    pub fn weight(&self, n: usize) -> Result<f64> {
        match &self.weights {
            WeightSequence::Unilateral => Ok(1.0),
            WeightSequence::Rational { lambda } => Ok((n as f64 + 1.0) / (n as f64 + lambda)),
            WeightSequence::Tabulated { weights, limit } => match weights.get(n) {
                Some(&w) => Ok(w),
                None => limit.ok_or(Error::WeightsExhausted { available: weights.len(), needed: n + 1 }),
            },
        }
    }

    /// `w_0, ..., w_{count-1}`.
    pub fn weight_prefix(&self, count: usize) -> Result<Vec<f64>> {
        (0..count).map(|n| self.weight(n)).collect()
    }

    /// N x N truncation: `w_k` at `(k + 1, k)`.
    pub fn materialize(&self, dim: usize) -> Result<ComplexMatrix> {
        if dim < 2 {
            return Err(Error::InvalidDimension { dim, reason: "truncation needs N >= 2" });
        }
        let w = self.weight_prefix(dim - 1)?;
        Ok(ComplexMatrix::from_fn(
            dim,
            |i, j| {
                if i == j + 1 {
                    Complex64::new(w[j], 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            },
        ))
    }

    /// The same truncation in banded storage.
    pub fn materialize_banded(&self, dim: usize) -> Result<Banded> {
        if dim < 2 {
            return Err(Error::InvalidDimension { dim, reason: "truncation needs N >= 2" });
        }
        let w = self.weight_prefix(dim - 1)?;
        Ok(Banded::subdiagonal(dim, w.into_iter().map(|x| Complex64::new(x, 0.0)).collect()))
    }

    /// First `dim` diagonal entries of the infinite operator's `[T*, T]`:
    /// `(w_0^2, w_1^2 - w_0^2, ..., w_{N-1}^2 - w_{N-2}^2)`.
    pub fn exact_commutator_diagonal(&self, dim: usize) -> Result<Vec<f64>> {
        let w = self.weight_prefix(dim)?;
        Ok((0..dim).map(|k| if k == 0 { w[0] * w[0] } else { w[k] * w[k] - w[k - 1] * w[k - 1] }).collect())
    }

    /// Telescoped partial trace `w_{N-1}^2` of the infinite commutator.
    pub fn partial_trace(&self, dim: usize) -> Result<f64> {
        if dim == 0 {
            return Ok(0.0);
        }
        let w = self.weight(dim - 1)?;
        Ok(w * w)
    }

    /// `tr [T*, T] = lim w_n^2`.
    pub fn exact_trace(&self) -> Result<f64> {
        self.limit().map(|l| l * l).ok_or(Error::NoLimitDeclared)
    }

    /// Operator norm of the exact (diagonal) self-commutator, scanning the
    /// first `horizon` entries plus the jump onto the limit for tables.
    pub fn exact_commutator_norm(&self, horizon: usize) -> Result<f64> {
        let mut count = horizon.max(1);
        let mut tail = 0.0;
        if let WeightSequence::Tabulated { weights, limit } = &self.weights {
            count = weights.len().max(1);
            if let (Some(l), Some(last)) = (limit, weights.last()) {
                tail = (l * l - last * last).abs();
            }
        }
        let diag = self.exact_commutator_diagonal(count)?;
        Ok(diag.iter().fold(tail, |m, d| m.max(d.abs())))
    }

    /// `x` with `[T*, T] = x (x)* ` when the infinite commutator has rank one,
    /// i.e. the weights are constant: `x = w_0 e_0`. Checked on `dim` weights.
    pub fn rank_one_vector(&self, dim: usize) -> Result<ComplexVector> {
        let diag = self.exact_commutator_diagonal(dim)?;
        if let Some((k, d)) = diag.iter().enumerate().skip(1).find(|(_, d)| **d != 0.0) {
            return Err(Error::NotRankOne(format!("diagonal entry {k} is {d:e}")));
        }
        if let (Some(l), Ok(w0)) = (self.limit(), self.weight(0)) {
            if l != w0 {
                return Err(Error::NotRankOne(format!("weights jump from {w0} to limit {l}")));
            }
        }
        let mut x = ComplexVector::zeros(dim);
        x[0] = Complex64::new(diag[0].sqrt(), 0.0);
        Ok(x)
    }

    /// Essential-spectrum circle `|z| = w_inf`, sampled counter-clockwise.
    pub fn symbol_curve(&self, samples: usize) -> Result<Vec<Complex64>> {
        if samples < 16 {
            return Err(Error::Domain(format!("symbol curve needs at least 16 samples, got {samples}")));
        }
        let radius = self.limit().ok_or(Error::NoLimitDeclared)?;
        Ok(circle_points(radius, samples))
    }
}

/// `radius * exp(2 pi i k / samples)` for `k = 0..samples`.
pub fn circle_points(radius: f64, samples: usize) -> Vec<Complex64> {
    (0..samples).map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / samples as f64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{basis_vector, self_commutator};
    use proptest::prelude::*;

    #[test]
    fn materialize_examples() {
        let s = ShiftModel::unilateral().materialize(3).unwrap();
        assert_eq!(s[(1, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(s[(2, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(s.pow(3).max_abs_entry(), 0.0);

        let t = ShiftModel::rational(2.0).unwrap().materialize(3).unwrap();
        assert_eq!(t[(1, 0)].re, 1.0 / 2.0);
        assert_eq!(t[(2, 1)].re, 2.0 / 3.0);

        let t2 = ShiftModel::rational(2.0).unwrap().materialize(2).unwrap();
        assert_eq!(t2[(0, 0)], Complex64::new(0.0, 0.0));
        assert!(matches!(ShiftModel::unilateral().materialize(1), Err(Error::InvalidDimension { .. })));
    }

    #[test]
    fn commutator_diagonal_examples() {
        let d = ShiftModel::unilateral().exact_commutator_diagonal(5).unwrap();
        assert_eq!(d, vec![1.0, 0.0, 0.0, 0.0, 0.0]);

        let d = ShiftModel::rational(2.0).unwrap().exact_commutator_diagonal(3).unwrap();
        assert!((d[0] - 0.25).abs() < 1e-16);
        assert!((d[1] - 7.0 / 36.0).abs() < 1e-16);
        assert!((d[2] - 17.0 / 144.0).abs() < 1e-16);
    }

    #[test]
    fn partial_sums_telescope() {
        let m = ShiftModel::rational(2.0).unwrap();
        let n = 1000;
        let d = m.exact_commutator_diagonal(n).unwrap();
        let sum: f64 = d.iter().sum();
        let closed = (1000.0f64 / 1001.0).powi(2);
        assert!((sum - closed).abs() < 1e-13);
        assert!((m.partial_trace(n).unwrap() - closed).abs() < 1e-16);
        assert!((closed - 0.998003).abs() < 1e-6);
    }

    #[test]
    fn rational_family_is_hyponormal() {
        for lambda in [1.01, 1.5, 2.0, 5.0, 40.0] {
            let d = ShiftModel::rational(lambda).unwrap().exact_commutator_diagonal(2000).unwrap();
            assert!(d.iter().all(|&x| x > 0.0), "lambda {lambda}");
        }
    }

    #[test]
    fn symbol_curves() {
        let pts = ShiftModel::unilateral().symbol_curve(16).unwrap();
        let quarter: Vec<Complex64> = pts.iter().step_by(4).copied().collect();
        let expected =
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, -1.0)];
        for (a, b) in quarter.iter().zip(expected) {
            assert!((a - b).norm() < 1e-15);
        }
        let r = ShiftModel::rational(3.7).unwrap().symbol_curve(64).unwrap();
        assert!(r.iter().all(|z| (z.norm() - 1.0).abs() < 1e-15));
        let t = ShiftModel::tabulated(vec![0.5; 4], Some(0.5)).unwrap().symbol_curve(32).unwrap();
        assert!(t.iter().all(|z| (z.norm() - 0.5).abs() < 1e-15));
        let nolimit = ShiftModel::tabulated(vec![0.5; 4], None).unwrap();
        assert_eq!(nolimit.symbol_curve(32), Err(Error::NoLimitDeclared));
        assert!(ShiftModel::unilateral().symbol_curve(4).is_err());
    }

    #[test]
    fn tabulated_needs_limit_past_table() {
        let m = ShiftModel::tabulated(vec![0.5, 0.6], None).unwrap();
        assert!(matches!(m.materialize(5), Err(Error::WeightsExhausted { .. })));
        assert!(m.materialize(3).is_ok());
        assert!(ShiftModel::tabulated(vec![0.5, -1.0], None).is_err());
        assert!(ShiftModel::rational(0.0).is_err());
    }

    #[test]
    fn rank_one_detection() {
        assert_eq!(ShiftModel::unilateral().rank_one_vector(4).unwrap(), basis_vector(4, 0));
        assert!(matches!(ShiftModel::rational(2.0).unwrap().rank_one_vector(4), Err(Error::NotRankOne(_))));
        let half = ShiftModel::tabulated(vec![0.5; 3], Some(0.5)).unwrap();
        assert_eq!(half.rank_one_vector(8).unwrap()[0].re, 0.5);
    }

    #[test]
    fn truncated_commutator_differs_only_in_corner() {
        for model in [ShiftModel::unilateral(), ShiftModel::rational(2.0).unwrap()] {
            let n = 12;
            let finite = self_commutator(&model.materialize(n).unwrap());
            let exact = model.exact_commutator_diagonal(n).unwrap();
            for k in 0..n - 1 {
                assert!((finite[(k, k)].re - exact[k]).abs() < 1e-15);
            }
            assert!((finite[(n - 1, n - 1)].re - exact[n - 1]).abs() > 0.5);
        }
    }

    proptest! {
        #[test]
        fn leading_corner_matches_infinite_model(lambda in 1.01f64..10.0, j in 0usize..10, k in 0usize..10) {
            let n = 24;
            let model = ShiftModel::rational(lambda).unwrap();
            let t = model.materialize(n).unwrap();
            let got = t.pow(k as u32).apply(&basis_vector(n, j));
            // T^k e_j = (w_j ... w_{j+k-1}) e_{j+k}
            let coeff: f64 = (j..j + k).map(|i| model.weight(i).unwrap()).product();
            let expected = basis_vector(n, j + k) * Complex64::new(coeff, 0.0);
            prop_assert!((got - expected).norm() < 1e-14);
        }
    }
}
