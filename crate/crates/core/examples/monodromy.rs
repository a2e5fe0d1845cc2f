// Stokes and connection matrices for one (σ, η) and their algebraic relations.

use num_complex::Complex64;
use piii_tau::monodromy::{check_relations, connection_matrix, m0, stokes_matrix, MonodromyParams};

pub fn run_example() -> piii_tau::error::Result<f64> {
    let p = MonodromyParams::new(Complex64::new(-0.13, 0.02), Complex64::new(0.11, -0.05))?;
    println!("E  = {:?}", connection_matrix(&p)?);
    println!("S  = {:?}", stokes_matrix(&p));
    println!("M0 = {:?}", m0(&p));
    let report = check_relations(&p)?;
    println!("{report:#?}");
    println!("largest residual: {:.3e}", report.max());
    Ok(report.max())
}

fn main() {
    run_example().expect("monodromy");
}
