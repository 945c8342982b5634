use std::collections::BTreeMap;

use num_complex::Complex64;

use super::matrix::ComplexMatrix;

/// Square matrix stored by diagonals, keyed by `row - col`.
///
/// The diagonal with offset `d` holds `n - |d|` entries indexed by
/// `min(row, col)`. Products of banded shift polynomials stay banded, which
/// is what lets windowed commutator traces run at N ~ 10^4.
#[derive(Debug, Clone, PartialEq)]
pub struct Banded {
    dim: usize,
    diags: BTreeMap<isize, Vec<Complex64>>,
}

impl Banded {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, diags: BTreeMap::new() }
    }

    pub fn identity(dim: usize) -> Self {
        let mut b = Self::zeros(dim);
        b.diags.insert(0, vec![Complex64::new(1.0, 0.0); dim]);
        b
    }

    /// Matrix with `values[k]` at `(k + 1, k)`; `values.len()` must be `dim - 1`.
    pub fn subdiagonal(dim: usize, values: Vec<Complex64>) -> Self {
        assert_eq!(values.len() + 1, dim.max(1), "subdiagonal length");
        let mut b = Self::zeros(dim);
        if dim > 1 {
            b.diags.insert(1, values);
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored diagonals.
    pub fn band_count(&self) -> usize {
        self.diags.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        let d = row as isize - col as isize;
        self.diags.get(&d).map(|v| v[row.min(col)]).unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    pub fn adjoint(&self) -> Self {
        let diags = self.diags.iter().map(|(&d, v)| (-d, v.iter().map(|z| z.conj()).collect())).collect();
        Self { dim: self.dim, diags }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let diags = self.diags.iter().map(|(&d, v)| (d, v.iter().map(|z| z * s).collect())).collect();
        Self { dim: self.dim, diags }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (&d, v) in &other.diags {
            let slot = out.diags.entry(d).or_insert_with(|| vec![Complex64::new(0.0, 0.0); v.len()]);
            for (a, b) in slot.iter_mut().zip(v) {
                *a += b;
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim as isize;
        let mut out = Self::zeros(self.dim);
        for (&da, va) in &self.diags {
            for (&db, vb) in &other.diags {
                let d = da + db;
                if d.abs() >= n {
                    continue;
                }
                let slot = out.diags.entry(d).or_insert_with(|| vec![Complex64::new(0.0, 0.0); (n - d.abs()) as usize]);
                // (r, k) on diagonal da, (k, c) on diagonal db
                for c in 0..n {
                    let k = c + db;
                    let r = k + da;
                    if k < 0 || k >= n || r < 0 || r >= n {
                        continue;
                    }
                    let a = va[r.min(k) as usize];
                    let b = vb[k.min(c) as usize];
                    slot[r.min(c) as usize] += a * b;
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.dim);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        self.diags.get(&0).cloned().unwrap_or_else(|| vec![Complex64::new(0.0, 0.0); self.dim])
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim, |r, c| self.get(r, c))
    }
}
