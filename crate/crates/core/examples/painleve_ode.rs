// ζ = t d/dt ln τ, the sigma-form residual, q = −tζ′ with its Painlevé III
// residual, and the radial sine-Gordon variable u.

use num_complex::Complex64;
use piii_tau::monodromy::MonodromyParams;
use piii_tau::tau_engine::{painleve_q, sine_gordon_map, zeta_jet, Differentiation, Method, Truncation};

pub fn run_example() -> piii_tau::error::Result<f64> {
    let p = MonodromyParams::from_nu(Complex64::new(0.37, 0.0), Complex64::new(0.11, 0.0))?;
    let trunc = Truncation::new(12, 10, 3);
    let mut worst: f64 = 0.0;
    for t in [0.02, 0.05, 0.1] {
        let a = zeta_jet(t, &p, Method::Maya, &trunc, Differentiation::Analytic)?;
        let s = zeta_jet(t, &p, Method::Fredholm, &trunc, Differentiation::default_for(t))?;
        let q = painleve_q(t, &p, Method::Maya, &trunc, Differentiation::Analytic)?;
        println!(
            "t = {t}: zeta = {:.12}, sigma-form residual analytic {:.1e} stencil {:.1e}, q = {:.10}, PIII residual {:.1e}",
            a.zeta,
            a.sigma_form_residual(),
            s.sigma_form_residual(),
            q.q,
            q.residual
        );
        worst = worst.max(a.sigma_form_residual());
    }
    let r = (4096.0f64 * 0.05).powf(0.25);
    let sg = sine_gordon_map(r, &p, Method::Maya, &trunc, Differentiation::Analytic)?;
    println!("u({r:.4}) = {:.12}, sine-Gordon residual {:.1e}", sg.u, sg.residual);
    Ok(worst)
}

fn main() {
    run_example().expect("painleve ode");
}
