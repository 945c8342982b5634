//! Dense complex matrix algebra: trace, s-numbers, self-commutators,
//! Hermitian spectra and resolvent solves.
//!
//! Every operator in the crate is modelled by a [`ComplexMatrix`]; the
//! [`Banded`] form is used only where the truncation is too large to hold
//! densely (windowed polynomial traces at N ~ 10^4).

mod banded;
mod matrix;
mod spectrum;

pub use banded::Banded;
pub use matrix::{basis_vector, inner, ComplexMatrix, ComplexVector, RankOne};
pub use spectrum::{
    hermitian_eigen, hermitian_min_eig, invert, psd_sqrt, resolvent_solve, self_commutator, singular_spectrum, solve,
    solve_matrix, trace, SingularSpectrum, DEFAULT_RANK_TOL, HERMITIAN_TOL,
};
