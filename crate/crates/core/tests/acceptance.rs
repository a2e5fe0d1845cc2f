//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::ExitCode;

use num_complex::Complex64;

use piii_tau::kernel::{
    fredholm_det, mode_matrix_a, mode_matrix_d, modes_by_quadrature, rank_one_residual, rank_one_residual_d, AKernel,
    ContinuousKernel, DKernel, ModeMatrices, SqrtBranch,
};
use piii_tau::monodromy::MonodromyParams;
use piii_tau::nekrasov::{
    check_lemma_identities, dual_series, quasi_periodicity_residual, z_bif, z_inst_coefficients, SeriesTruncation,
};
use piii_tau::partitions::{hook, maya_from_young, partitions_of, young_from_maya, MayaDiagram, YoungDiagram};
use piii_tau::special_functions::factorial;
use piii_tau::tau_engine::{cross_validate, painleve_q, zeta_jet, Differentiation, Method, Truncation};

type C64 = Complex64;
type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rel(a: C64, b: C64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).norm() / b.norm()
    }
}

fn params(nu: C64, eta: C64) -> MonodromyParams {
    MonodromyParams::from_nu(nu, eta).expect("generic parameters")
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn elementary_solutions() -> Outcome {
    // η = 0 pairs with e^{−4√t} and η = 1/4 with e^{+4√t}.
    let mut worst: f64 = 0.0;
    for (eta, sign) in [(0.0, -1.0), (0.25, 1.0)] {
        let s = dual_series(c(0.25, 0.0), c(eta, 0.0), SeriesTruncation::new(8, 4)).map_err(|e| e.to_string())?;
        let coeffs = s.half_integer_coefficients(8).map_err(|e| e.to_string())?;
        for (k, a) in coeffs.iter().enumerate() {
            let expected = c((sign * 4.0f64).powi(k as i32) / factorial(k as u32), 0.0);
            worst = worst.max(rel(*a, expected));
        }
    }
    verdict(worst < 1e-8, format!("max relative coefficient error {worst:.2e} through k = 8"))
}

fn one_instanton() -> Outcome {
    let mut worst: f64 = 0.0;
    for nu in [c(0.37, 0.0), c(0.2, 0.1)] {
        let k = z_inst_coefficients(nu, 1).map_err(|e| e.to_string())?;
        worst = worst.max(rel(k[1], 1.0 / (2.0 * nu * nu)));
    }
    verdict(worst < 1e-12, format!("max relative error {worst:.2e}"))
}

fn three_routes() -> Outcome {
    let p = params(c(0.37, 0.0), c(0.11, 0.0));
    let trunc = Truncation::new(12, 6, 2);
    let mut ok = true;
    let mut parts = Vec::new();
    for t in [0.01, 0.05, 0.1, 0.2] {
        let r = cross_validate(c(t, 0.0), &p, &trunc).map_err(|e| e.to_string())?;
        let diff = r.max_pairwise();
        // Up to t = 0.1 the strict bound; beyond, the documented truncation error.
        let bound = if t <= 0.1 { 1e-8 } else { 10.0 * r.max_est_error };
        ok &= diff < bound;
        parts.push(format!("t={t}: {diff:.1e} (est {:.1e})", r.max_est_error));
    }
    verdict(ok, parts.join(", "))
}

fn mode_oracle() -> Outcome {
    let t = c(0.05, 0.0);
    let mut worst: f64 = 0.0;
    for p in [params(c(0.37, 0.0), c(0.11, 0.0)), params(c(0.29, 0.08), c(0.2, -0.15))] {
        let ak = AKernel { params: p };
        let dk = DKernel { params: p, t };
        let qa = modes_by_quadrature(&ak, 8, ak.default_radius()).map_err(|e| e.to_string())?;
        let qd = modes_by_quadrature(&dk, 8, dk.default_radius()).map_err(|e| e.to_string())?;
        worst = worst.max(qa.max_abs_diff(&mode_matrix_a(&p, 8).map_err(|e| e.to_string())?));
        worst = worst.max(qd.max_abs_diff(&mode_matrix_d(&p, t, 8).map_err(|e| e.to_string())?));
    }
    verdict(worst < 1e-10, format!("max entry difference {worst:.2e} at N = 8"))
}

fn rank_one() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in [params(c(0.37, 0.0), c(0.11, 0.0)), params(c(0.29, 0.08), c(0.2, -0.15))] {
        worst = worst.max(rank_one_residual(&p, 8).map_err(|e| e.to_string())?);
        worst = worst.max(rank_one_residual_d(&p, c(0.05, 0.0), 8).map_err(|e| e.to_string())?);
    }
    verdict(worst < 1e-10, format!("max residual {worst:.2e} at N = 8"))
}

fn structure_constants() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut signs = 0;
    for nu in [c(0.37, 0.0), c(0.23, 0.17)] {
        let r = check_lemma_identities(nu, SeriesTruncation::new(4, 2)).map_err(|e| e.to_string())?;
        worst = worst.max(r.structure_constant).max(r.factorized_bifundamental);
        signs += r.sign_violations;
    }
    verdict(worst < 1e-10 && signs == 0, format!("max relative error {worst:.2e}, sign violations {signs}"))
}

fn bifundamental_identities() -> Outcome {
    let nu = c(0.37, -0.21);
    let all: Vec<YoungDiagram> = (0..=6).flat_map(partitions_of).collect();
    let mut worst: f64 = 0.0;
    for a in &all {
        for b in &all {
            let sign = if (a.weight() + b.weight()) % 2 == 0 { 1.0 } else { -1.0 };
            worst = worst.max(rel(z_bif(-nu, b, a), sign * z_bif(nu, a, b)));
        }
        let hooks: f64 = a.boxes().map(|(i, j)| hook(a, i, j).unwrap() as f64).product();
        let sign = if a.weight() % 2 == 0 { 1.0 } else { -1.0 };
        worst = worst.max(rel(z_bif(c(0.0, 0.0), a, a), c(sign * hooks * hooks, 0.0)));
    }
    verdict(worst < 1e-13, format!("{} diagrams, max relative error {worst:.2e}", all.len()))
}

fn sigma_form() -> Outcome {
    let p = params(c(0.37, 0.0), c(0.11, 0.0));
    let deep = Truncation::new(12, 10, 3);
    let (mut a_worst, mut s_worst): (f64, f64) = (0.0, 0.0);
    for t in [0.02, 0.05, 0.1] {
        let a = zeta_jet(t, &p, Method::Maya, &deep, Differentiation::Analytic).map_err(|e| e.to_string())?;
        let s = zeta_jet(t, &p, Method::Fredholm, &deep, Differentiation::Stencil { h: 1e-3, points: 9 })
            .map_err(|e| e.to_string())?;
        a_worst = a_worst.max(a.sigma_form_residual());
        s_worst = s_worst.max(s.sigma_form_residual());
    }
    verdict(a_worst < 1e-6 && s_worst < 1e-5, format!("analytic {a_worst:.2e}, Fredholm stencil {s_worst:.2e}"))
}

fn painleve_three() -> Outcome {
    let t = 0.05f64;
    let p = params(c(0.37, 0.0), c(0.11, 0.0));
    let tr = Truncation::new(12, 10, 3);
    let q = painleve_q(t, &p, Method::Maya, &tr, Differentiation::Analytic).map_err(|e| e.to_string())?;
    let elem = params(c(0.25, 0.0), c(0.25, 0.0));
    let qe = painleve_q(t, &elem, Method::Fredholm, &tr, Differentiation::Stencil { h: 1e-3, points: 9 })
        .map_err(|e| e.to_string())?;
    let dev = (qe.q + t.sqrt()).norm();
    verdict(
        q.residual < 1e-5 && dev < 1e-8,
        format!("PIII residual {:.2e}, elementary |q + sqrt t| {dev:.2e}", q.residual),
    )
}

fn quasi_periodicity() -> Outcome {
    let mut worst: f64 = 0.0;
    for (nu, eta) in [(c(0.37, 0.0), c(0.11, 0.0)), (c(0.23, 0.17), c(0.1, -0.05))] {
        worst = worst.max(quasi_periodicity_residual(nu, eta, SeriesTruncation::new(6, 2)).map_err(|e| e.to_string())?);
    }
    verdict(worst < 1e-11, format!("max term mismatch {worst:.2e}"))
}

fn bijection() -> Outcome {
    // Every finite deviation from the vacuum supported in [−19/2, 19/2].
    let mut failures = 0u32;
    for mask in 0u32..(1 << 20) {
        let particles: Vec<i32> = (0..10).filter(|k| mask >> k & 1 == 1).map(|k| 2 * k + 1).collect();
        let holes: Vec<i32> = (0..10).filter(|k| mask >> (10 + k) & 1 == 1).map(|k| -(2 * k + 1)).collect();
        let m = MayaDiagram::from_doubled(&particles, &holes).unwrap();
        let (y, q) = young_from_maya(&m);
        if maya_from_young(&y, q) != m || m.energy_doubled() != (q * q) as i64 + 2 * y.weight() as i64 {
            failures += 1;
        }
    }
    let fig = MayaDiagram::from_doubled(&[5], &[-3, -11]).unwrap();
    let (y, q) = young_from_maya(&fig);
    let sum_rule = fig.energy_doubled() == (q * q) as i64 + 2 * y.weight() as i64;
    verdict(
        failures == 0 && sum_rule && y.weight() == 9 && q == -1,
        format!("{} diagrams, {failures} failures; example |Y| = {}, Q = {q}", 1u32 << 20, y.weight()),
    )
}

fn branch_independence() -> Outcome {
    let p = params(c(0.37, 0.0), c(0.11, 0.0));
    let t = c(0.05, 0.0);
    let base = fredholm_det(&ModeMatrices::new(&p, t, 12).map_err(|e| e.to_string())?);
    let mut worst: f64 = 0.0;
    for (fp, fm) in [(true, false), (false, true), (true, true)] {
        let m = ModeMatrices::with_branch(&p, t, 12, SqrtBranch { flip_plus: fp, flip_minus: fm })
            .map_err(|e| e.to_string())?;
        worst = worst.max(rel(fredholm_det(&m), base));
    }
    verdict(worst < 1e-12, format!("max relative change {worst:.2e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("elementary solutions from the dual series", elementary_solutions),
        ("one-instanton coefficient 1/(2 nu^2)", one_instanton),
        ("Fredholm, Maya and dual routes agree", three_routes),
        ("mode matrices match quadrature", mode_oracle),
        ("rank-one identity", rank_one),
        ("structure-constant identity", structure_constants),
        ("Z_bif reflection and diagonal identities", bifundamental_identities),
        ("sigma-form ODE residual", sigma_form),
        ("Painleve III residual and elementary q", painleve_three),
        ("quasi-periodicity re-indexing", quasi_periodicity),
        ("Maya/Young bijection and sum rule", bijection),
        ("square-root branch independence", branch_independence),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:2} {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:2} {name}: {detail}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
