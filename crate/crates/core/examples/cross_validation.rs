// The three routes to tau side by side, with every identity residual.

use num_complex::Complex64;
use piii_tau::monodromy::MonodromyParams;
use piii_tau::tau_engine::{cross_validate, Truncation};

pub fn run_example() -> piii_tau::error::Result<f64> {
    let p = MonodromyParams::from_nu(Complex64::new(0.37, 0.0), Complex64::new(0.11, 0.0))?;
    let trunc = Truncation::new(12, 6, 2);
    let mut worst: f64 = 0.0;
    for t in [0.01, 0.05, 0.1, 0.2] {
        let r = cross_validate(Complex64::new(t, 0.0), &p, &trunc)?;
        println!("t = {t}");
        for v in &r.values {
            println!("  {:9} {:.15}  est_error {:.1e}", v.method.name(), v.tau, v.est_error);
        }
        println!("  pairwise {:?}, identities {:.1e}", r.pairwise, r.max_identity());
        worst = worst.max(r.max_identity());
    }
    Ok(worst)
}

fn main() {
    run_example().expect("cross validation");
}
