// The Fredholm determinant det(1 − AD) on the Fourier-mode basis, its block
// form, and adaptive truncation.

use num_complex::Complex64;
use piii_tau::kernel::{fredholm_det, fredholm_det_adaptive, fredholm_det_block, ModeMatrices, SqrtBranch};
use piii_tau::monodromy::MonodromyParams;

pub fn run_example() -> piii_tau::error::Result<Complex64> {
    let p = MonodromyParams::from_nu(Complex64::new(0.37, 0.0), Complex64::new(0.11, 0.0))?;
    let t = Complex64::new(0.05, 0.0);
    for n in [2, 4, 8, 12] {
        let m = ModeMatrices::new(&p, t, n)?;
        println!("N = {n:2}: det = {:.15}", fredholm_det(&m));
    }
    let m = ModeMatrices::new(&p, t, 12)?;
    println!("block form: {:.15}", fredholm_det_block(&m));
    let flipped = ModeMatrices::with_branch(&p, t, 12, SqrtBranch { flip_plus: true, flip_minus: true })?;
    println!("flipped square-root branches: {:.15}", fredholm_det(&flipped));
    let adaptive = fredholm_det_adaptive(&p, t, 2, 1e-14)?;
    println!("adaptive: {:.15} at N = {} (converged: {})", adaptive.det, adaptive.n, adaptive.converged);
    Ok(fredholm_det(&m))
}

fn main() {
    run_example().expect("fredholm");
}
