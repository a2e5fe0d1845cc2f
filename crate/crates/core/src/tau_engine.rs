//! Tau evaluation by any of the three routes, the log-derivative ζ, the
//! sigma-form and Painlevé III residuals, and the cross-validation battery.
//!
//! All tau values are normalized as t^{−ν²}τ with leading coefficient 1.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{
    fredholm_det, mode_matrix_a, mode_matrix_d, modes_by_quadrature, rank_one_residual, rank_one_residual_d, AKernel,
    ContinuousKernel, DKernel, ModeMatrices,
};
use crate::monodromy::MonodromyParams;
use crate::nekrasov::{
    check_lemma_identities, compare_maya_dual, dual_series, maya_series, quasi_periodicity_constant,
    quasi_periodicity_residual, SeriesTruncation,
};
use crate::series::PowerSeries;

type C64 = Complex64;

/// Beyond this |t| the truncations are no longer trusted and results carry a
/// warning flag.
pub const RELIABLE_RADIUS: f64 = 0.5;
/// |q| below this is reported as near zero in the Painlevé residual.
pub const Q_NEAR_ZERO: f64 = 1e-12;
/// dist(2ν, ℤ) below this marks a run as near-resonant.
pub const RESONANCE_WARN: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Fredholm,
    Maya,
    Nekrasov,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Fredholm, Method::Maya, Method::Nekrasov];

    pub fn name(self) -> &'static str {
        match self {
            Method::Fredholm => "fredholm",
            Method::Maya => "maya",
            Method::Nekrasov => "nekrasov",
        }
    }
}

/// Truncation of every route: N modes per color for the determinant, and the
/// weight and charge cutoffs for the two series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub n_modes: usize,
    pub series: SeriesTruncation,
}

impl Truncation {
    pub fn new(n_modes: usize, weight_cutoff: u32, charge_cutoff: u32) -> Self {
        Self { n_modes, series: SeriesTruncation::new(weight_cutoff, charge_cutoff) }
    }

    pub fn next(self) -> Self {
        Self { n_modes: self.n_modes + 1, series: self.series.next() }
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Self::new(12, 6, 2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TauValue {
    pub t: C64,
    pub tau: C64,
    pub method: Method,
    pub truncation: Truncation,
    /// |value − value at the next-larger truncation|.
    pub est_error: f64,
    /// Set when |t| exceeds [`RELIABLE_RADIUS`] and no override was given.
    pub outside_region: bool,
}

fn series_for(params: &MonodromyParams, method: Method, trunc: SeriesTruncation) -> Result<PowerSeries> {
    match method {
        Method::Maya => maya_series(params.nu(), params.eta(), trunc),
        Method::Nekrasov => dual_series(params.nu(), params.eta(), trunc),
        Method::Fredholm => Err(Error::InvalidInput("the Fredholm route has no series form".into())),
    }
}

/// The normalized tau at one truncation, without an error estimate.
pub fn tau_raw(t: C64, params: &MonodromyParams, method: Method, trunc: &Truncation) -> Result<C64> {
    if t.norm() == 0.0 {
        return Ok(C64::new(1.0, 0.0));
    }
    match method {
        Method::Fredholm => Ok(fredholm_det(&ModeMatrices::new(params, t, trunc.n_modes)?)),
        _ => series_for(params, method, trunc.series)?.evaluate(t),
    }
}

pub fn tau(t: C64, params: &MonodromyParams, method: Method, trunc: &Truncation) -> Result<TauValue> {
    tau_with_override(t, params, method, trunc, false)
}

/// As [`tau`]; `allow_outside` suppresses the region warning.
pub fn tau_with_override(
    t: C64,
    params: &MonodromyParams,
    method: Method,
    trunc: &Truncation,
    allow_outside: bool,
) -> Result<TauValue> {
    let value = tau_raw(t, params, method, trunc)?;
    let finer = tau_raw(t, params, method, &trunc.next())?;
    Ok(TauValue {
        t,
        tau: value,
        method,
        truncation: *trunc,
        est_error: (finer - value).norm(),
        outside_region: !allow_outside && t.norm() > RELIABLE_RADIUS,
    })
}

/// How ζ and its t-derivatives are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Differentiation {
    /// Term-by-term differentiation of the series (Maya and Nekrasov routes).
    Analytic,
    /// Central stencil in x = ln t with step h/t; `points` is 5 or 9.
    Stencil { h: f64, points: usize },
}

impl Differentiation {
    /// Nine-point stencil with h = max(1e−3, t/100).
    pub fn default_for(t: f64) -> Self {
        Differentiation::Stencil { h: (t / 100.0).max(1e-3), points: 9 }
    }
}

/// ζ = t d/dt ln(t^{ν²}·tau) and its first three t-derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaJet {
    pub t: f64,
    pub zeta: C64,
    pub d1: C64,
    pub d2: C64,
    pub d3: C64,
}

impl ZetaJet {
    /// From G_k = d^k ln τ/dx^k, x = ln t (G1 already includes ν²).
    fn from_log_derivatives(t: f64, g: [C64; 4]) -> Self {
        let [g1, g2, g3, g4] = g;
        Self { t, zeta: g1, d1: g2 / t, d2: (g3 - g2) / (t * t), d3: (g4 - 3.0 * g3 + 2.0 * g2) / (t * t * t) }
    }

    /// |(tζ″)² − 4ζ′²(ζ − tζ′) + 4ζ′|.
    pub fn sigma_form_residual(&self) -> f64 {
        let t = self.t;
        let lhs = (t * self.d2).powi(2);
        (lhs - 4.0 * self.d1 * self.d1 * (self.zeta - t * self.d1) + 4.0 * self.d1).norm()
    }
}

const STENCIL_5: [[f64; 5]; 4] = [
    [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0],
    [-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0],
    [-0.5, 1.0, 0.0, -1.0, 0.5],
    [1.0, -4.0, 6.0, -4.0, 1.0],
];

const STENCIL_9: [[f64; 9]; 4] = [
    [1.0 / 280.0, -4.0 / 105.0, 1.0 / 5.0, -4.0 / 5.0, 0.0, 4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0],
    [-1.0 / 560.0, 8.0 / 315.0, -1.0 / 5.0, 8.0 / 5.0, -205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0],
    [-7.0 / 240.0, 3.0 / 10.0, -169.0 / 120.0, 61.0 / 30.0, 0.0, -61.0 / 30.0, 169.0 / 120.0, -3.0 / 10.0, 7.0 / 240.0],
    [
        7.0 / 240.0,
        -2.0 / 5.0,
        169.0 / 60.0,
        -122.0 / 15.0,
        91.0 / 8.0,
        -122.0 / 15.0,
        169.0 / 60.0,
        -2.0 / 5.0,
        7.0 / 240.0,
    ],
];

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidInput(format!("zeta needs real t > 0, got {t}")));
    }
    Ok(())
}

fn stencil_log_derivatives(t: f64, h: f64, points: usize, f: impl Fn(f64) -> Result<C64>) -> Result<[C64; 4]> {
    if !(h > 0.0) || h >= t / 4.0 {
        return Err(Error::StepTooLarge { h, t });
    }
    let half = match points {
        5 => 2,
        9 => 4,
        _ => return Err(Error::InvalidInput(format!("stencil must have 5 or 9 points, got {points}"))),
    };
    let hx = h / t;
    let f0 = f(t)?;
    if f0.norm() == 0.0 {
        return Err(Error::NearZero(format!("tau vanishes at t = {t}")));
    }
    // ln f at the nodes, unwrapped relative to the centre.
    let mut logs = Vec::with_capacity(2 * half + 1);
    for k in -(half as i32)..=half as i32 {
        let v = if k == 0 { f0 } else { f(t * (k as f64 * hx).exp())? };
        logs.push(f0.ln() + (v / f0).ln());
    }
    let mut out = [C64::new(0.0, 0.0); 4];
    for (order, slot) in out.iter_mut().enumerate() {
        let weights: &[f64] = if half == 2 { &STENCIL_5[order] } else { &STENCIL_9[order] };
        let s: C64 = weights.iter().zip(&logs).map(|(w, l)| w * l).sum();
        *slot = s / hx.powi(order as i32 + 1);
    }
    Ok(out)
}

/// ζ, ζ′, ζ″, ζ‴ at real t > 0.
pub fn zeta_jet(
    t: f64,
    params: &MonodromyParams,
    method: Method,
    trunc: &Truncation,
    diff: Differentiation,
) -> Result<ZetaJet> {
    check_t(t)?;
    let nu2 = params.nu() * params.nu();
    let mut g = match diff {
        Differentiation::Analytic => {
            series_for(params, method, trunc.series)?.log_theta_derivatives(C64::new(t, 0.0))?
        }
        Differentiation::Stencil { h, points } => {
            stencil_log_derivatives(t, h, points, |s| tau_raw(C64::new(s, 0.0), params, method, trunc))?
        }
    };
    g[0] += nu2;
    Ok(ZetaJet::from_log_derivatives(t, g))
}

/// ζ(t) = t ∂_t ln τ.
pub fn zeta(
    t: f64,
    params: &MonodromyParams,
    method: Method,
    trunc: &Truncation,
    diff: Differentiation,
) -> Result<C64> {
    Ok(zeta_jet(t, params, method, trunc, diff)?.zeta)
}

/// Residual of the sigma form (tζ″)² = 4ζ′²(ζ − tζ′) − 4ζ′.
pub fn ode_residual(
    t: f64,
    params: &MonodromyParams,
    method: Method,
    trunc: &Truncation,
    diff: Differentiation,
) -> Result<f64> {
    Ok(zeta_jet(t, params, method, trunc, diff)?.sigma_form_residual())
}

/// q = −tζ′ with its derivatives and the residual of
/// q_tt = q_t²/q − q_t/t + 2q²/t² − 2/t.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PainleveQ {
    pub t: f64,
    pub q: C64,
    pub q_t: C64,
    pub q_tt: C64,
    pub residual: f64,
    pub near_zero: bool,
}

impl PainleveQ {
    pub fn from_jet(jet: &ZetaJet) -> Self {
        let t = jet.t;
        let q = -t * jet.d1;
        let q_t = -jet.d1 - t * jet.d2;
        let q_tt = -2.0 * jet.d2 - t * jet.d3;
        let near_zero = q.norm() < Q_NEAR_ZERO;
        let residual = if near_zero {
            f64::NAN
        } else {
            (q_tt - (q_t * q_t / q - q_t / t + 2.0 * q * q / (t * t) - 2.0 / t)).norm()
        };
        Self { t, q, q_t, q_tt, residual, near_zero }
    }
}

pub fn painleve_q(
    t: f64,
    params: &MonodromyParams,
    method: Method,
    trunc: &Truncation,
    diff: Differentiation,
) -> Result<PainleveQ> {
    Ok(PainleveQ::from_jet(&zeta_jet(t, params, method, trunc, diff)?))
}

/// u(r) from q(2^{−12}r⁴) = −2^{−6}r² e^{iu(r)}, with the residual of
/// u_rr + u_r/r + sin u.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SineGordon {
    pub r: f64,
    pub u: C64,
    pub residual: f64,
}

impl SineGordon {
    pub fn from_q(r: f64, pq: &PainleveQ) -> Result<Self> {
        if pq.q.norm() == 0.0 {
            return Err(Error::ZeroArgument(format!("q vanishes at t = {}", pq.t)));
        }
        let i = C64::i();
        let u = -i * (-64.0 * pq.q / (r * r)).ln();
        // t = r⁴/4096: dt/dr = r³/1024, d²t/dr² = 3r²/1024.
        let (tr, trr) = (r.powi(3) / 1024.0, 3.0 * r * r / 1024.0);
        let q_r = pq.q_t * tr;
        let q_rr = pq.q_tt * tr * tr + pq.q_t * trr;
        let u_r = -i * (q_r / pq.q - 2.0 / r);
        let u_rr = -i * (q_rr / pq.q - q_r * q_r / (pq.q * pq.q) + 2.0 / (r * r));
        Ok(Self { r, u, residual: (u_rr + u_r / r + u.sin()).norm() })
    }
}

pub fn sine_gordon_map(
    r: f64,
    params: &MonodromyParams,
    method: Method,
    trunc: &Truncation,
    diff: Differentiation,
) -> Result<SineGordon> {
    if !(r > 0.0) {
        return Err(Error::InvalidInput(format!("r must be positive, got {r}")));
    }
    let t = r.powi(4) / 4096.0;
    SineGordon::from_q(r, &painleve_q(t, params, method, trunc, diff)?)
}

/// det(ν+1)/det(ν)·t^{2ν+1} on the Fredholm route, which should equal
/// [`quasi_periodicity_constant`] for every t.
pub fn quasi_periodicity_ratio(t: C64, params: &MonodromyParams, n_modes: usize) -> Result<C64> {
    let shifted = params.shift_sigma(1)?;
    let trunc = Truncation { n_modes, ..Truncation::default() };
    let r = tau_raw(t, &shifted, Method::Fredholm, &trunc)? / tau_raw(t, params, Method::Fredholm, &trunc)?;
    Ok(r * ((2.0 * params.nu() + 1.0) * t.ln()).exp())
}

/// Everything [`cross_validate`] measures.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossValidationReport {
    pub t: C64,
    pub values: Vec<TauValue>,
    /// Relative differences fredholm–maya, fredholm–nekrasov, maya–nekrasov.
    pub pairwise: [f64; 3],
    pub max_est_error: f64,
    pub rank_one: f64,
    pub rank_one_d: f64,
    pub quadrature_a: f64,
    pub quadrature_d: f64,
    pub identities: f64,
    pub maya_vs_dual: f64,
    pub quasi_periodicity: f64,
    pub quasi_periodicity_ratio: f64,
    /// dist(2ν, ℤ) is small enough that agreement may degrade.
    pub near_resonance: bool,
}

impl CrossValidationReport {
    pub fn max_pairwise(&self) -> f64 {
        self.pairwise.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_identity(&self) -> f64 {
        [
            self.rank_one,
            self.rank_one_d,
            self.quadrature_a,
            self.quadrature_d,
            self.identities,
            self.maya_vs_dual,
            self.quasi_periodicity,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn rel(a: C64, b: C64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).norm() / b.norm()
    }
}

/// Modes used for the quadrature comparison inside [`cross_validate`].
const CHECK_MODES: usize = 8;

/// Evaluates tau by all three routes and runs the identity checks. Never
/// fails on a mismatch; the caller decides what to assert.
pub fn cross_validate(t: C64, params: &MonodromyParams, trunc: &Truncation) -> Result<CrossValidationReport> {
    let values: Vec<TauValue> = Method::ALL.iter().map(|&m| tau(t, params, m, trunc)).collect::<Result<_>>()?;
    let v: Vec<C64> = values.iter().map(|x| x.tau).collect();
    let pairwise = [rel(v[0], v[1]), rel(v[0], v[2]), rel(v[1], v[2])];
    let max_est_error = values.iter().map(|x| x.est_error).fold(0.0, f64::max);

    let nc = CHECK_MODES.min(trunc.n_modes.max(1));
    let ak = AKernel { params: *params };
    let quadrature_a = modes_by_quadrature(&ak, nc, ak.default_radius())?.max_abs_diff(&mode_matrix_a(params, nc)?);
    let dk = DKernel { params: *params, t };
    let quadrature_d = modes_by_quadrature(&dk, nc, dk.default_radius())?.max_abs_diff(&mode_matrix_d(params, t, nc)?);

    let small = SeriesTruncation::new(trunc.series.weight_cutoff.min(4), trunc.series.charge_cutoff.min(2));
    let (nu, eta) = (params.nu(), params.eta());
    let qp_ratio = if t.norm() == 0.0 {
        0.0
    } else {
        rel(quasi_periodicity_ratio(t, params, trunc.n_modes)?, quasi_periodicity_constant(nu, eta)?)
    };
    let two_nu = 2.0 * nu;
    let resonance = (two_nu.re - two_nu.re.round()).abs().hypot(two_nu.im);

    Ok(CrossValidationReport {
        t,
        pairwise,
        max_est_error,
        rank_one: rank_one_residual(params, trunc.n_modes)?,
        rank_one_d: rank_one_residual_d(params, t, trunc.n_modes)?,
        quadrature_a,
        quadrature_d,
        identities: check_lemma_identities(nu, small)?.max_error(),
        maya_vs_dual: compare_maya_dual(nu, eta, small)?,
        quasi_periodicity: quasi_periodicity_residual(nu, eta, small)?,
        quasi_periodicity_ratio: qp_ratio,
        near_resonance: resonance < RESONANCE_WARN,
        values,
    })
}
