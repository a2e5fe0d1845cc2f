//! The generalized Bessel kernel in continuous and Fourier-mode form, and the
//! Fredholm determinant det(𝟙 − K), K = (0, a; d, 0).

pub mod bessel;
pub mod modes;
pub mod quadrature;

pub use bessel::{bessel_kernel_j, bessel_kernel_j_dz, kernel_a, kernel_d};
pub use modes::{
    fredholm_det, fredholm_det_adaptive, fredholm_det_block, mode_indices, mode_matrix_a, mode_matrix_a_with,
    mode_matrix_d, mode_matrix_d_with, psi, psi_bar, rank_one_residual, rank_one_residual_d, rank_one_residual_of,
    AdaptiveDet, Color, ModeIndex, ModeMatrices, ShiftedMomentum, SqrtBranch,
};
pub use quadrature::{modes_by_quadrature, modes_by_quadrature_with, AKernel, ContinuousKernel, DKernel, ModeKind};
