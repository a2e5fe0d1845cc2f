//! The continuous generalized Bessel kernel 𝕁_σ and the two blocks a, d.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::monodromy::{Matrix2, MonodromyParams, SIN_TOL};
use crate::special_functions::j_sigma;

type C64 = Complex64;

/// Relative distance |z − z′| below which the difference quotient is
/// replaced by the derivative at the midpoint.
pub const DIAGONAL_TOL: f64 = 1e-6;

fn prefactor(sigma: C64) -> Result<C64> {
    let s = (2.0 * PI * sigma).sin();
    if s.norm() < SIN_TOL {
        return Err(Error::Degenerate(format!("sin 2 pi sigma = {s}")));
    }
    Ok(PI / s)
}

/// The j-functions of one argument that enter 𝕁_σ and its derivative.
struct JValues {
    plus: C64,       // j_σ
    plus_half: C64,  // j_{σ+1/2}
    plus_one: C64,   // j_{σ+1}
    minus: C64,      // j_{−σ}
    minus_half: C64, // j_{−σ−1/2}
    minus_up: C64,   // j_{−σ+1/2}
}

impl JValues {
    fn new(sigma: C64, z: C64, with_derivatives: bool) -> Result<Self> {
        let zero = C64::new(0.0, 0.0);
        Ok(Self {
            plus: j_sigma(sigma, z)?,
            plus_half: j_sigma(sigma + 0.5, z)?,
            plus_one: if with_derivatives { j_sigma(sigma + 1.0, z)? } else { zero },
            minus: j_sigma(-sigma, z)?,
            minus_half: j_sigma(-sigma - 0.5, z)?,
            minus_up: if with_derivatives { j_sigma(-sigma + 0.5, z)? } else { zero },
        })
    }
}

/// 𝕁_σ(z′, z), bilinear in the entire functions j_{±σ}, j_{±σ±1/2}.
pub fn bessel_kernel_j(sigma: C64, zp: C64, z: C64) -> Result<Matrix2> {
    let pre = prefactor(sigma)?;
    let (a, b) = (JValues::new(sigma, zp, false)?, JValues::new(sigma, z, false)?);
    let i = C64::i();
    let m11 = zp * b.plus_half * a.minus - b.plus * a.minus_half;
    let m12 = i * zp * b.minus_half * a.minus - i * z * b.minus * a.minus_half;
    let m21 = i * b.plus_half * a.plus - i * b.plus * a.plus_half;
    let m22 = z * b.minus * a.plus_half - b.minus_half * a.plus;
    Ok(Matrix2::new(m11, m12, m21, m22).scale(pre))
}

/// ∂𝕁_σ(z′, z)/∂z, using j_σ′ = j_{σ+1/2}.
pub fn bessel_kernel_j_dz(sigma: C64, zp: C64, z: C64) -> Result<Matrix2> {
    let pre = prefactor(sigma)?;
    let (a, b) = (JValues::new(sigma, zp, false)?, JValues::new(sigma, z, true)?);
    let i = C64::i();
    let m11 = zp * b.plus_one * a.minus - b.plus_half * a.minus_half;
    let m12 = i * zp * b.minus * a.minus - i * (b.minus + z * b.minus_up) * a.minus_half;
    let m21 = i * b.plus_one * a.plus - i * b.plus_half * a.plus_half;
    let m22 = (b.minus + z * b.minus_up) * a.plus_half - b.minus * a.plus;
    Ok(Matrix2::new(m11, m12, m21, m22).scale(pre))
}

fn near_diagonal(zp: C64, z: C64) -> bool {
    (z - zp).norm() <= DIAGONAL_TOL * z.norm().max(zp.norm())
}

fn color(k: usize) -> f64 {
    if k == 0 {
        1.0
    } else {
        -1.0
    }
}

/// a(z′, z) = e^{iπ(σ−2η)σ_z} (𝕁_σ(z′,z) − 𝟙)/(z − z′) e^{iπ(2η−σ)σ_z}.
pub fn kernel_a(params: &MonodromyParams, zp: C64, z: C64) -> Result<Matrix2> {
    let sigma = params.sigma();
    let quotient = if near_diagonal(zp, z) {
        bessel_kernel_j_dz(sigma, zp, (z + zp) / 2.0)?
    } else {
        (bessel_kernel_j(sigma, zp, z)? - Matrix2::identity()).scale((z - zp).inv())
    };
    let w = C64::i() * PI * (2.0 * params.eta() - sigma);
    let mut out = quotient;
    for r in 0..2 {
        for c in 0..2 {
            out.0[r][c] *= (w * (color(c) - color(r))).exp();
        }
    }
    Ok(out)
}

/// d(z′, z) = t^𝔖 e^{iπσσ_z} σ_y (𝟙 − 𝕁_σ(t/z′, t/z))/(z − z′) σ_y e^{−iπσσ_z} t^{−𝔖}.
///
/// Vanishes identically at t = 0.
pub fn kernel_d(params: &MonodromyParams, t: C64, zp: C64, z: C64) -> Result<Matrix2> {
    if z.norm() == 0.0 || zp.norm() == 0.0 {
        return Err(Error::ZeroArgument("d-kernel needs z, z' != 0".into()));
    }
    let sigma = params.sigma();
    prefactor(sigma)?;
    if t.norm() == 0.0 {
        return Ok(Matrix2::zero());
    }
    let (wp, w) = (t / zp, t / z);
    let m = if near_diagonal(zp, z) {
        bessel_kernel_j_dz(sigma, wp, (w + wp) / 2.0)?.scale(t / (z * zp))
    } else {
        (Matrix2::identity() - bessel_kernel_j(sigma, wp, w)?).scale((z - zp).inv())
    };
    let sy = Matrix2::sigma_y();
    let inner = sy * m * sy;
    let ln_t = t.ln();
    let mut out = inner;
    for r in 0..2 {
        for c in 0..2 {
            let ds = color(r) - color(c);
            out.0[r][c] *= (C64::i() * PI * sigma * ds + params.nu() * ds * ln_t).exp();
        }
    }
    Ok(out)
}
