// Instanton and dual partition functions; the elementary solution at ν = 1/4
// where the dual sum collapses to e^{±4√t}.

use num_complex::Complex64;
use piii_tau::nekrasov::{check_lemma_identities, dual_series, z_bif, z_inst_coefficients, SeriesTruncation};
use piii_tau::partitions::YoungDiagram;

pub fn run_example() -> piii_tau::error::Result<Vec<Complex64>> {
    let nu = Complex64::new(0.37, 0.0);
    let y = YoungDiagram::new(vec![2, 1])?;
    println!("Z_bif(nu | (2,1), ()) = {}", z_bif(nu, &y, &YoungDiagram::empty()));
    let k = z_inst_coefficients(nu, 3)?;
    println!("instanton coefficients: {k:?}");
    println!("1/(2 nu^2) = {}", 1.0 / (2.0 * nu * nu));

    let report = check_lemma_identities(Complex64::new(0.23, 0.17), SeriesTruncation::new(3, 2))?;
    println!("factorization identities: {report:?}");

    // η = 1/4 gives e^{+4√t}: coefficients of t^{k/2} are 4^k/k!.
    let series = dual_series(Complex64::new(0.25, 0.0), Complex64::new(0.25, 0.0), SeriesTruncation::new(8, 4))?;
    let coeffs = series.half_integer_coefficients(8)?;
    let mut fact = 1.0;
    for (j, c) in coeffs.iter().enumerate() {
        if j > 0 {
            fact *= j as f64;
        }
        println!("t^{}/2: {:>14.8} expected {:>14.8}", j, c.re, 4f64.powi(j as i32) / fact);
    }
    Ok(coeffs)
}

fn main() {
    run_example().expect("nekrasov series");
}
