//! Stokes and connection data parameterized by (σ, η).
//!
//! The constructors here double as parameter validation for every other
//! module: a [`MonodromyParams`] can only exist off the lattice 2σ ∈ ℤ.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

type C64 = Complex64;

/// Minimum distance from 2σ to the integers.
pub const LATTICE_TOL: f64 = 1e-8;
/// Threshold on |sin 2πσ| below which the connection matrix is refused.
pub const SIN_TOL: f64 = 1e-10;

/// The monodromy parameters (σ, η) together with ν = σ + 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct MonodromyParams {
    sigma: C64,
    eta: C64,
    nu: C64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    sigma: [f64; 2],
    eta: [f64; 2],
}

impl TryFrom<RawParams> for MonodromyParams {
    type Error = Error;
    fn try_from(r: RawParams) -> Result<Self> {
        MonodromyParams::new(C64::new(r.sigma[0], r.sigma[1]), C64::new(r.eta[0], r.eta[1]))
    }
}

impl From<MonodromyParams> for RawParams {
    fn from(p: MonodromyParams) -> Self {
        RawParams { sigma: [p.sigma.re, p.sigma.im], eta: [p.eta.re, p.eta.im] }
    }
}

impl MonodromyParams {
    /// Accepts any (σ, η) ∈ ℂ² with 2σ at least [`LATTICE_TOL`] away from ℤ.
    /// The usual strips −1/2 ≤ Re σ ≤ 0, −1/2 < Re η ≤ 1/2 are not imposed.
    pub fn new(sigma: C64, eta: C64) -> Result<Self> {
        if !(sigma.re.is_finite() && sigma.im.is_finite() && eta.re.is_finite() && eta.im.is_finite()) {
            return Err(Error::InvalidInput("sigma and eta must be finite".into()));
        }
        let two = 2.0 * sigma;
        let dist = C64::new(two.re - two.re.round(), two.im).norm();
        if dist < LATTICE_TOL {
            return Err(Error::Degenerate(format!("sigma on half-integer lattice (sigma = {sigma})")));
        }
        Ok(Self { sigma, eta, nu: sigma + 0.5 })
    }

    pub fn from_nu(nu: C64, eta: C64) -> Result<Self> {
        Self::new(nu - 0.5, eta)
    }

    pub fn sigma(&self) -> C64 {
        self.sigma
    }

    pub fn eta(&self) -> C64 {
        self.eta
    }

    pub fn nu(&self) -> C64 {
        self.nu
    }

    /// Same η, σ shifted by an integer (ν ↦ ν + k).
    pub fn shift_sigma(&self, k: i32) -> Result<Self> {
        Self::new(self.sigma + k as f64, self.eta)
    }

    /// The ℤ₂ Bäcklund relabeling σ ↦ 1/2 − σ, η ↦ −η relating the
    /// determinant normalization to the alternative tau-function convention.
    /// Never applied implicitly.
    pub fn backlund(&self) -> Result<Self> {
        Self::new(0.5 - self.sigma, -self.eta)
    }
}

/// A 2×2 complex matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[C64; 2]; 2]);

impl Matrix2 {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Matrix2([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        Self::diag(C64::new(1.0, 0.0), C64::new(1.0, 0.0))
    }

    pub fn zero() -> Self {
        Self::diag(C64::new(0.0, 0.0), C64::new(0.0, 0.0))
    }

    pub fn diag(a: C64, d: C64) -> Self {
        let z = C64::new(0.0, 0.0);
        Self::new(a, z, z, d)
    }

    pub fn sigma_x() -> Self {
        let (o, z) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        Self::new(z, o, o, z)
    }

    pub fn sigma_y() -> Self {
        let (i, z) = (C64::i(), C64::new(0.0, 0.0));
        Self::new(z, -i, i, z)
    }

    pub fn sigma_z() -> Self {
        Self::diag(C64::new(1.0, 0.0), C64::new(-1.0, 0.0))
    }

    pub fn det(&self) -> C64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Self::new(m[0][0], m[1][0], m[0][1], m[1][1])
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if d.norm() < 1e-300 {
            return Err(Error::Degenerate("singular 2x2 matrix".into()));
        }
        let m = &self.0;
        Ok(Self::new(m[1][1] / d, -m[0][1] / d, -m[1][0] / d, m[0][0] / d))
    }

    pub fn scale(&self, k: C64) -> Self {
        let m = &self.0;
        Self::new(m[0][0] * k, m[0][1] * k, m[1][0] * k, m[1][1] * k)
    }

    /// Both eigenvalues, the one with the larger real part first.
    pub fn eigenvalues(&self) -> (C64, C64) {
        let tr = self.trace();
        let disc = (tr * tr - 4.0 * self.det()).sqrt();
        let (a, b) = ((tr + disc) / 2.0, (tr - disc) / 2.0);
        if a.re >= b.re {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn max_abs_diff(&self, other: &Matrix2) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        m
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, r: Matrix2) -> Matrix2 {
        let (a, b) = (&self.0, &r.0);
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        Matrix2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;
    fn add(self, r: Matrix2) -> Matrix2 {
        let (a, b) = (&self.0, &r.0);
        Matrix2::new(a[0][0] + b[0][0], a[0][1] + b[0][1], a[1][0] + b[1][0], a[1][1] + b[1][1])
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;
    fn sub(self, r: Matrix2) -> Matrix2 {
        self + r.scale(C64::new(-1.0, 0.0))
    }
}

fn sin2pi(z: C64) -> C64 {
    (2.0 * PI * z).sin()
}

/// Connection matrix E; det E = 1.
pub fn connection_matrix(p: &MonodromyParams) -> Result<Matrix2> {
    let s = sin2pi(p.sigma);
    if s.norm() < SIN_TOL {
        return Err(Error::Degenerate(format!("sin 2 pi sigma = {s}")));
    }
    let i = C64::i();
    let diag = sin2pi(p.eta) / s;
    Ok(Matrix2::new(diag, -i * sin2pi(p.eta + p.sigma) / s, i * sin2pi(p.eta - p.sigma) / s, diag))
}

/// Upper-triangular Stokes matrix S with corner −2i cos 2πσ.
pub fn stokes_matrix(p: &MonodromyParams) -> Matrix2 {
    let one = C64::new(1.0, 0.0);
    Matrix2::new(one, -2.0 * C64::i() * (2.0 * PI * p.sigma).cos(), C64::new(0.0, 0.0), one)
}

/// M₀ = iσ_x S⁻¹, eigenvalues −e^{±2πiσ}.
pub fn m0(p: &MonodromyParams) -> Matrix2 {
    let s = stokes_matrix(p);
    // S is unimodular upper-triangular; its inverse negates the corner.
    let s_inv = Matrix2::new(s.0[0][0], -s.0[0][1], s.0[1][0], s.0[1][1]);
    (Matrix2::sigma_x() * s_inv).scale(C64::i())
}

/// The diagonalizing matrix U with U M₀ U⁻¹ = e^{2πi𝔖}, det U = 1.
pub fn u_matrix(p: &MonodromyParams) -> Result<Matrix2> {
    let s = sin2pi(p.sigma);
    if s.norm() < SIN_TOL {
        return Err(Error::Degenerate(format!("sin 2 pi sigma = {s}")));
    }
    let norm = (2.0 * s).sqrt();
    let ph = (C64::i() * PI * (p.sigma + 0.25)).exp();
    Ok(Matrix2::new(ph.inv(), ph, ph, -ph.inv()).scale(norm.inv()))
}

/// e^{2πi𝔖} with 𝔖 = ν σ_z.
pub fn exp_frak_s(p: &MonodromyParams) -> Matrix2 {
    let e = (2.0 * PI * C64::i() * p.nu).exp();
    Matrix2::diag(e, e.inv())
}

/// Residuals of the algebraic constraints on the Stokes data.
#[derive(Debug, Clone, Serialize)]
pub struct RelationsReport {
    pub det_e: f64,
    pub det_s: f64,
    pub det_m0: f64,
    pub det_u: f64,
    pub m0_trace: f64,
    pub m0_eigenvalues: f64,
    /// ‖SSᵀ − ESᵀSE⁻¹‖
    pub sst: f64,
    /// ‖(−M₀²)⁻¹ − SSᵀ‖
    pub tilde_m0: f64,
    /// ‖U M₀ U⁻¹ − e^{2πi𝔖}‖
    pub diagonalization: f64,
    /// ‖σ_x E σ_x − S⁻¹ E Sᵀ‖
    pub connection_symmetry: f64,
    /// ‖E⁻¹ M₀ E − σ_x M₀ σ_x‖
    pub infinity_monodromy: f64,
}

impl RelationsReport {
    pub fn max(&self) -> f64 {
        [
            self.det_e,
            self.det_s,
            self.det_m0,
            self.det_u,
            self.m0_trace,
            self.m0_eigenvalues,
            self.sst,
            self.tilde_m0,
            self.diagonalization,
            self.connection_symmetry,
            self.infinity_monodromy,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn check_relations(p: &MonodromyParams) -> Result<RelationsReport> {
    let one = C64::new(1.0, 0.0);
    let e = connection_matrix(p)?;
    let s = stokes_matrix(p);
    let m = m0(p);
    let u = u_matrix(p)?;
    let sx = Matrix2::sigma_x();
    let (e_inv, s_inv) = (e.inverse()?, s.inverse()?);
    let sst = s * s.transpose();

    let q = (2.0 * PI * C64::i() * p.sigma).exp();
    let (l1, l2) = m.eigenvalues();
    let (x1, x2) = {
        let (a, b) = (-q, -q.inv());
        if a.re >= b.re {
            (a, b)
        } else {
            (b, a)
        }
    };
    let eig = (l1 - x1).norm().max((l2 - x2).norm());
    let eig_swapped = (l1 - x2).norm().max((l2 - x1).norm());

    Ok(RelationsReport {
        det_e: (e.det() - one).norm(),
        det_s: (s.det() - one).norm(),
        det_m0: (m.det() - one).norm(),
        det_u: (u.det() - one).norm(),
        m0_trace: (m.trace() + 2.0 * (2.0 * PI * p.sigma).cos()).norm(),
        m0_eigenvalues: eig.min(eig_swapped),
        sst: sst.max_abs_diff(&(e * s.transpose() * s * e_inv)),
        tilde_m0: (m * m).scale(-one).inverse()?.max_abs_diff(&sst),
        diagonalization: (u * m * u.inverse()?).max_abs_diff(&exp_frak_s(p)),
        connection_symmetry: (sx * e * sx).max_abs_diff(&(s_inv * e * s.transpose())),
        infinity_monodromy: (e_inv * m * e).max_abs_diff(&(sx * m * sx)),
    })
}
