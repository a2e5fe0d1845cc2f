//! Fourier modes of a continuous kernel by discrete Fourier transform on a
//! circle. This is an oracle for the closed-form Cauchy matrices and shares
//! no code with them beyond the kernel evaluation itself.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::monodromy::{Matrix2, MonodromyParams};

use super::bessel::{kernel_a, kernel_d};
use super::modes::mode_indices;

type C64 = Complex64;

pub const DEFAULT_SAMPLES: usize = 64;
/// Tail modes at the Nyquist index must fall below this (relative to the
/// largest sample).
pub const NYQUIST_TOL: f64 = 1e-10;

/// Which block a continuous kernel represents; fixes the power convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeKind {
    /// a(z′,z) = Σ a z′^{p−1/2} z^{q−1/2}; entry [s′][s] goes to A[(q,s),(p,s′)].
    A,
    /// d(z′,z) = Σ d z′^{−q−1/2} z^{−p−1/2}; entry [s][s′] goes to D[(p,s′),(q,s)].
    D,
}

/// A 2×2 kernel that can be sampled on a circle.
pub trait ContinuousKernel: Sync {
    fn kind(&self) -> ModeKind;
    fn eval(&self, zp: C64, z: C64) -> Result<Matrix2>;
    /// Radius of the sampling circle used when the caller has no preference.
    fn default_radius(&self) -> f64 {
        1.0
    }
}

pub struct AKernel {
    pub params: MonodromyParams,
}

impl ContinuousKernel for AKernel {
    fn kind(&self) -> ModeKind {
        ModeKind::A
    }

    fn eval(&self, zp: C64, z: C64) -> Result<Matrix2> {
        kernel_a(&self.params, zp, z)
    }
}

pub struct DKernel {
    pub params: MonodromyParams,
    pub t: C64,
}

impl ContinuousKernel for DKernel {
    fn kind(&self) -> ModeKind {
        ModeKind::D
    }

    fn eval(&self, zp: C64, z: C64) -> Result<Matrix2> {
        kernel_d(&self.params, self.t, zp, z)
    }

    fn default_radius(&self) -> f64 {
        (4.0 * self.t.norm()).max(1.0)
    }
}

/// Mode matrix of `kernel` with the default sample count.
pub fn modes_by_quadrature(kernel: &dyn ContinuousKernel, n: usize, radius: f64) -> Result<CMatrix> {
    modes_by_quadrature_with(kernel, n, radius, DEFAULT_SAMPLES)
}

/// Samples z on the circle |z| = R at the M-th roots of unity and z′ on the
/// same circle rotated by half a step, so the diagonal z = z′ is never hit.
pub fn modes_by_quadrature_with(
    kernel: &dyn ContinuousKernel,
    n: usize,
    radius: f64,
    samples: usize,
) -> Result<CMatrix> {
    if !(radius > 0.0) {
        return Err(Error::InvalidInput(format!("quadrature radius must be positive, got {radius}")));
    }
    if samples < 2 * n + 4 {
        return Err(Error::InvalidInput(format!("{samples} samples cannot resolve {n} modes")));
    }
    let m = samples;
    let root = |k: f64| C64::from_polar(radius, 2.0 * PI * k / m as f64);
    let zs: Vec<C64> = (0..m).map(|k| root(k as f64)).collect();
    let zps: Vec<C64> = (0..m).map(|k| root(k as f64 + 0.5)).collect();

    let values: Vec<Matrix2> =
        (0..m * m).into_par_iter().map(|k| kernel.eval(zps[k / m], zs[k % m])).collect::<Result<_>>()?;
    let scale = values.iter().map(|v| v.max_abs_diff(&Matrix2::zero())).fold(0.0, f64::max).max(1.0);

    // Integer exponents in z′ and z we need, and the Nyquist probe.
    let (exps_p, exps_z): (Vec<i64>, Vec<i64>) = match kernel.kind() {
        ModeKind::A => ((0..n as i64).collect(), (0..n as i64).collect()),
        ModeKind::D => ((1..=n as i64).map(|e| -e).collect(), (1..=n as i64).map(|e| -e).collect()),
    };
    let nyq = (m / 2 - 1) as i64;
    let probe = match kernel.kind() {
        ModeKind::A => nyq,
        ModeKind::D => -nyq,
    };

    let coefficient = |ep: i64, ez: i64| -> Matrix2 {
        let mut acc = Matrix2::zero();
        for (a, zp) in zps.iter().enumerate() {
            let wp = zp.powi(-ep as i32);
            let mut row = Matrix2::zero();
            for (b, z) in zs.iter().enumerate() {
                row = row + values[a * m + b].scale(z.powi(-ez as i32));
            }
            acc = acc + row.scale(wp);
        }
        acc.scale(C64::new(1.0 / (m * m) as f64, 0.0))
    };

    let tail = [(probe, exps_z[0]), (exps_p[0], probe), (probe, probe)]
        .iter()
        .map(|&(ep, ez)| coefficient(ep, ez).max_abs_diff(&Matrix2::zero()) * radius.powi((ep + ez) as i32))
        .fold(0.0, f64::max);
    if tail > NYQUIST_TOL * scale {
        return Err(Error::NonConvergence(format!(
            "Fourier modes at the Nyquist index are {tail:.3e}; increase samples or adjust the radius"
        )));
    }

    let idx = mode_indices(n);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let blocks: Vec<((usize, usize), Matrix2)> =
        pairs.par_iter().map(|&(i, j)| ((i, j), coefficient(exps_p[i], exps_z[j]))).collect();

    let mut out = CMatrix::zeros(2 * n, 2 * n);
    for ((i, j), c) in blocks {
        // i indexes the z′ power, j the z power. For a, z′ carries the
        // particle and z the hole; for d the roles swap, and in both cases
        // the kernel row color belongs to z′.
        for mp in idx.iter().filter(|x| x.k as usize == i) {
            for mz in idx.iter().filter(|x| x.k as usize == j) {
                out[(mz.position(), mp.position())] = c.0[mp.color.index()][mz.color.index()];
            }
        }
    }
    Ok(out)
}
