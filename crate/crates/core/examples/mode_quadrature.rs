// Fourier modes of the continuous kernels by quadrature on a circle, compared
// with the closed-form Cauchy matrices.

use num_complex::Complex64;
use piii_tau::kernel::{
    mode_matrix_a, mode_matrix_d, modes_by_quadrature, rank_one_residual, AKernel, ContinuousKernel, DKernel,
};
use piii_tau::monodromy::MonodromyParams;

pub fn run_example() -> piii_tau::error::Result<f64> {
    let p = MonodromyParams::from_nu(Complex64::new(0.31, 0.07), Complex64::new(0.2, -0.1))?;
    let t = Complex64::new(0.05, 0.0);
    let n = 8;
    let ak = AKernel { params: p };
    let dk = DKernel { params: p, t };
    let da = modes_by_quadrature(&ak, n, ak.default_radius())?.max_abs_diff(&mode_matrix_a(&p, n)?);
    let dd = modes_by_quadrature(&dk, n, dk.default_radius())?.max_abs_diff(&mode_matrix_d(&p, t, n)?);
    println!("N = {n}: max |a_quad - a| = {da:.2e}, max |d_quad - d| = {dd:.2e}");
    println!("rank-one residual: {:.2e}", rank_one_residual(&p, n)?);
    Ok(da.max(dd))
}

fn main() {
    run_example().expect("mode quadrature");
}
