//! Complex special functions: log-Gamma, Pochhammer symbols, the entire
//! Bessel-type function `j_σ`, and Barnes-G ratios realized through the
//! Gamma recurrence.
//!
//! All fractional powers, square roots and logarithms in this crate use the
//! principal branch, `arg ∈ (−π, π]`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Distance below which a real argument counts as sitting on a Gamma pole.
const POLE_TOL: f64 = 1e-13;

/// j_σ stops once two consecutive terms fall below this fraction of the sum.
const J_SERIES_TOL: f64 = 1e-18;
const J_SERIES_MAX_TERMS: usize = 200;

fn non_positive_integer(z: C64) -> bool {
    z.im.abs() < POLE_TOL && z.re < 0.5 && (z.re - z.re.round()).abs() < POLE_TOL
}

/// ln sin(πz) without overflow for large |Im z|.
fn ln_sin_pi(z: C64) -> C64 {
    let w = z * PI;
    let i = C64::i();
    if w.im >= 0.0 {
        // sin w = e^{-iw} (e^{2iw} - 1) / (2i)
        -i * w + ((i * w * 2.0).exp() - 1.0).ln() - (2.0 * i).ln()
    } else {
        // sin w = e^{iw} (1 - e^{-2iw}) / (2i)
        i * w + (1.0 - (-i * w * 2.0).exp()).ln() - (2.0 * i).ln()
    }
}

fn wrap_principal(mut z: C64) -> C64 {
    let two_pi = 2.0 * PI;
    z.im -= two_pi * (z.im / two_pi).round();
    if z.im <= -PI {
        z.im += two_pi;
    }
    z
}

fn ln_gamma_lanczos(z: C64) -> C64 {
    let z = z - 1.0;
    let mut x = C64::from(LANCZOS_COEF[0]);
    for (k, &ck) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += ck / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// Principal branch of log Γ(z): `exp(ln_gamma(z)) == Γ(z)` and the imaginary
/// part lies in (−π, π].
pub fn ln_gamma(z: C64) -> Result<C64> {
    if non_positive_integer(z) {
        return Err(Error::Pole(format!("Gamma at non-positive integer {z}")));
    }
    let raw =
        if z.re < 0.5 { C64::from(PI.ln()) - ln_sin_pi(z) - ln_gamma_lanczos(1.0 - z) } else { ln_gamma_lanczos(z) };
    Ok(wrap_principal(raw))
}

pub fn gamma(z: C64) -> Result<C64> {
    Ok(ln_gamma(z)?.exp())
}

/// 1/Γ(z), entire: zero at the poles of Γ.
pub fn rgamma(z: C64) -> C64 {
    match ln_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => C64::new(0.0, 0.0),
    }
}

/// Rising factorial (α)_k = α(α+1)…(α+k−1).
pub fn pochhammer(alpha: C64, k: u32) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    for i in 0..k {
        acc *= alpha + i as f64;
    }
    acc
}

pub fn factorial(k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// j_σ(z) = z^{−σ} I_{2σ}(2√z) = Σ_k z^k / (k! Γ(2σ+1+k)).
pub fn j_sigma(sigma: C64, z: C64) -> Result<C64> {
    let b = 2.0 * sigma + 1.0;
    if non_positive_integer(b) {
        return Err(Error::Pole(format!("j_sigma with 2 sigma + 1 = {b}")));
    }
    let mut term = rgamma(b);
    let mut sum = term;
    let mut small = 0;
    for k in 0..J_SERIES_MAX_TERMS {
        term *= z / ((k as f64 + 1.0) * (b + k as f64));
        sum += term;
        if term.norm() <= J_SERIES_TOL * sum.norm() {
            small += 1;
            if small == 2 {
                break;
            }
        } else {
            small = 0;
        }
    }
    Ok(sum)
}

/// G(z+n)/G(z) from G(z+1) = Γ(z) G(z).
pub fn barnes_g_ratio(z: C64, n: i32) -> Result<C64> {
    let mut acc = C64::new(1.0, 0.0);
    if n >= 0 {
        for k in 0..n {
            acc *= gamma(z + k as f64)?;
        }
    } else {
        for k in 1..=(-n) {
            acc /= gamma(z - k as f64)?;
        }
    }
    Ok(acc)
}

/// Structure constant Υ(ν|Q) = Γ^Q(1+ν) G(1+ν) / G(1+ν+Q).
pub fn upsilon(nu: C64, q: i32) -> Result<C64> {
    let g1 = gamma(1.0 + nu)?;
    Ok(g1.powi(q) / barnes_g_ratio(1.0 + nu, q)?)
}
