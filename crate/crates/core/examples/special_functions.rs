// Gamma, Pochhammer, j_σ and Barnes-G ratios on a few complex points.

use num_complex::Complex64;
use piii_tau::special_functions::{barnes_g_ratio, gamma, j_sigma, ln_gamma, pochhammer, upsilon};

pub fn run_example() -> piii_tau::error::Result<Complex64> {
    let z = Complex64::new(0.3, 0.4);
    println!("ln Gamma({z}) = {}", ln_gamma(z)?);
    println!("Gamma({z}) = {}", gamma(z)?);
    println!("(0.3)_3 = {}", pochhammer(Complex64::new(0.3, 0.0), 3));
    let j = j_sigma(Complex64::new(0.5, 0.0), Complex64::new(1.0, 0.0))?;
    println!("j_1/2(1) = {j}");
    // G(z+2)/G(z) = Gamma(z) Gamma(z+1)
    let g = barnes_g_ratio(z, 2)?;
    println!("G(z+2)/G(z) = {g}, Gamma(z)Gamma(z+1) = {}", gamma(z)? * gamma(z + 1.0)?);
    println!("Upsilon(0.37|-1) = {}", upsilon(Complex64::new(0.37, 0.0), -1)?);
    Ok(j)
}

fn main() {
    run_example().expect("special functions");
}
