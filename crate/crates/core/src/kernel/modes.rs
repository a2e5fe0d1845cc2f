//! Fourier-mode (Cauchy matrix) form of the kernel blocks and the truncated
//! Fredholm determinant.
//!
//! Index layout: rows of `A` are hole modes (q, s), columns particle modes
//! (p, s′); `D` has the roles swapped. Both use the interleaved ordering
//! (1/2,+), (1/2,−), (3/2,+), (3/2,−), … so growing N only appends.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::monodromy::MonodromyParams;
use crate::special_functions::{factorial, gamma, pochhammer};

type C64 = Complex64;

/// Cauchy denominators closer to zero than this are treated as collisions.
pub const COLLISION_TOL: f64 = 1e-10;
/// Upper bound for adaptive truncation.
pub const MAX_MODES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Color {
    Plus,
    Minus,
}

impl Color {
    pub fn sign(self) -> f64 {
        match self {
            Color::Plus => 1.0,
            Color::Minus => -1.0,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Color::Plus => 0,
            Color::Minus => 1,
        }
    }

    pub fn from_sign(s: i32) -> Self {
        if s >= 0 {
            Color::Plus
        } else {
            Color::Minus
        }
    }
}

/// A mode (p, s) with p = k + 1/2 a positive half-integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ModeIndex {
    pub k: u32,
    pub color: Color,
}

impl ModeIndex {
    pub fn new(k: u32, color: Color) -> Self {
        Self { k, color }
    }

    /// The half-integer p.
    pub fn p(&self) -> f64 {
        self.k as f64 + 0.5
    }

    pub fn s(&self) -> f64 {
        self.color.sign()
    }

    /// Position in the interleaved ordering.
    pub fn position(&self) -> usize {
        2 * self.k as usize + self.color.index()
    }
}

/// The 2N retained modes in matrix order.
pub fn mode_indices(n: usize) -> Vec<ModeIndex> {
    (0..n as u32).flat_map(|k| [ModeIndex::new(k, Color::Plus), ModeIndex::new(k, Color::Minus)]).collect()
}

/// Shifted momentum x_{p;s} = p − sν for any half-integer p.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedMomentum {
    pub value: C64,
}

impl ShiftedMomentum {
    /// `p2` is twice the (possibly negative) half-integer p.
    pub fn new(p2: i32, color: Color, nu: C64) -> Self {
        Self { value: p2 as f64 / 2.0 - color.sign() * nu }
    }
}

/// Choice of square-root branch inside ψ, ψ̄, per color. The principal branch
/// is the default; flipping a color negates every ψ^{·;s} and ψ̄_{·;s} of that
/// color in both blocks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SqrtBranch {
    pub flip_plus: bool,
    pub flip_minus: bool,
}

impl SqrtBranch {
    pub const PRINCIPAL: SqrtBranch = SqrtBranch { flip_plus: false, flip_minus: false };

    fn sign(&self, color: Color) -> f64 {
        let flip = match color {
            Color::Plus => self.flip_plus,
            Color::Minus => self.flip_minus,
        };
        if flip {
            -1.0
        } else {
            1.0
        }
    }
}

/// √(Γ(1+2sν)/Γ(1−2sν)), principal branch.
fn gamma_root(s: f64, nu: C64) -> Result<C64> {
    Ok((gamma(1.0 + 2.0 * s * nu)? / gamma(1.0 - 2.0 * s * nu)?).sqrt())
}

/// ψ^{p;s}(ν) = √(Γ(1+2sν)/Γ(1−2sν)) e^{−iπs/4} / ((p−1/2)! (1−2sν)_{p−1/2}).
pub fn psi(m: ModeIndex, nu: C64) -> Result<C64> {
    let s = m.s();
    let den = factorial(m.k) * pochhammer(1.0 - 2.0 * s * nu, m.k);
    check_nonzero(den, "psi Pochhammer")?;
    Ok(gamma_root(s, nu)? * (C64::i() * (-PI * s / 4.0)).exp() / den)
}

/// ψ̄_{p;s}(ν) = √(Γ(1−2sν)/Γ(1+2sν)) e^{iπs/4} / ((p−1/2)! (2sν)_{p+1/2}).
pub fn psi_bar(m: ModeIndex, nu: C64) -> Result<C64> {
    let s = m.s();
    let den = factorial(m.k) * pochhammer(2.0 * s * nu, m.k + 1);
    check_nonzero(den, "psi-bar Pochhammer")?;
    Ok(gamma_root(s, nu)?.inv() * (C64::i() * (PI * s / 4.0)).exp() / den)
}

fn check_nonzero(z: C64, what: &str) -> Result<()> {
    if z.norm() < COLLISION_TOL {
        return Err(Error::DenominatorZero(what.to_string()));
    }
    Ok(())
}

/// x_{p;s′} − x_{−q;s} = p + q + (s − s′)ν.
fn cauchy_denominator(particle: ModeIndex, hole: ModeIndex, nu: C64) -> Result<C64> {
    let den = particle.p() + hole.p() + (hole.s() - particle.s()) * nu;
    if den.norm() < COLLISION_TOL {
        return Err(Error::DenominatorZero(format!(
            "Cauchy collision between particle ({}, {:?}) and hole (-{}, {:?})",
            particle.p(),
            particle.color,
            hole.p(),
            hole.color
        )));
    }
    Ok(den)
}

/// The a-mode entry with rows (q, s) = `hole`, columns (p, s′) = `particle`.
pub fn a_entry(params: &MonodromyParams, hole: ModeIndex, particle: ModeIndex, branch: SqrtBranch) -> Result<C64> {
    let nu = params.nu();
    let den = cauchy_denominator(particle, hole, nu)?;
    let phase = (C64::i() * PI * (2.0 * params.eta() - params.sigma()) * (hole.s() - particle.s())).exp();
    let signs = branch.sign(particle.color) * branch.sign(hole.color);
    Ok(psi(particle, nu)? * psi_bar(hole, nu)? / den * phase * signs)
}

/// The d-mode entry with rows (p, s′) = `particle`, columns (q, s) = `hole`.
pub fn d_entry(
    params: &MonodromyParams,
    t: C64,
    particle: ModeIndex,
    hole: ModeIndex,
    branch: SqrtBranch,
) -> Result<C64> {
    let nu = params.nu();
    let den = cauchy_denominator(particle, hole, nu)?;
    let ds = hole.s() - particle.s();
    let power = t_power(t, ds * nu + particle.p() + hole.p());
    let phase = (C64::i() * PI * params.sigma() * ds).exp();
    let signs = branch.sign(particle.color) * branch.sign(hole.color);
    Ok(psi(hole, -nu)? * psi_bar(particle, -nu)? / den * phase * power * signs)
}

/// Principal t^e; zero at t = 0 (every exponent used has positive real part).
fn t_power(t: C64, e: C64) -> C64 {
    if t.norm() == 0.0 {
        C64::new(0.0, 0.0)
    } else {
        (e * t.ln()).exp()
    }
}

fn assemble(n: usize, f: impl Fn(ModeIndex, ModeIndex) -> Result<C64> + Sync) -> Result<CMatrix> {
    let idx = mode_indices(n);
    let entries: Vec<C64> = (0..idx.len() * idx.len())
        .into_par_iter()
        .map(|k| f(idx[k / idx.len()], idx[k % idx.len()]))
        .collect::<Result<_>>()?;
    Ok(CMatrix::from_rows(idx.len(), idx.len(), entries))
}

pub fn mode_matrix_a(params: &MonodromyParams, n: usize) -> Result<CMatrix> {
    mode_matrix_a_with(params, n, SqrtBranch::PRINCIPAL)
}

pub fn mode_matrix_a_with(params: &MonodromyParams, n: usize, branch: SqrtBranch) -> Result<CMatrix> {
    assemble(n, |hole, particle| a_entry(params, hole, particle, branch))
}

pub fn mode_matrix_d(params: &MonodromyParams, t: C64, n: usize) -> Result<CMatrix> {
    mode_matrix_d_with(params, t, n, SqrtBranch::PRINCIPAL)
}

pub fn mode_matrix_d_with(params: &MonodromyParams, t: C64, n: usize, branch: SqrtBranch) -> Result<CMatrix> {
    assemble(n, |particle, hole| d_entry(params, t, particle, hole, branch))
}

/// Truncated mode blocks of K = (0, a; d, 0).
#[derive(Debug, Clone)]
pub struct ModeMatrices {
    pub a: CMatrix,
    pub d: CMatrix,
    pub n: usize,
}

impl ModeMatrices {
    pub fn new(params: &MonodromyParams, t: C64, n: usize) -> Result<Self> {
        Self::with_branch(params, t, n, SqrtBranch::PRINCIPAL)
    }

    pub fn with_branch(params: &MonodromyParams, t: C64, n: usize, branch: SqrtBranch) -> Result<Self> {
        Ok(Self { a: mode_matrix_a_with(params, n, branch)?, d: mode_matrix_d_with(params, t, n, branch)?, n })
    }
}

/// det(I − A·D) by partial-pivot LU.
pub fn fredholm_det(modes: &ModeMatrices) -> C64 {
    let ad = &modes.a * &modes.d;
    (&CMatrix::identity(2 * modes.n) - &ad).det()
}

/// The same determinant through the 4N×4N block matrix (I, −A; −D, I).
pub fn fredholm_det_block(modes: &ModeMatrices) -> C64 {
    let m = 2 * modes.n;
    let block = CMatrix::from_fn(2 * m, 2 * m, |i, j| match (i < m, j < m) {
        (true, true) | (false, false) => {
            if i == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        }
        (true, false) => -modes.a[(i, j - m)],
        (false, true) => -modes.d[(i - m, j)],
    });
    block.det()
}

/// Result of doubling the truncation until the determinant stabilizes.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AdaptiveDet {
    pub det: C64,
    pub n: usize,
    pub delta: f64,
    pub converged: bool,
}

/// Doubles N from `n_start` until |Δ det| < `tol` or N reaches [`MAX_MODES`].
pub fn fredholm_det_adaptive(params: &MonodromyParams, t: C64, n_start: usize, tol: f64) -> Result<AdaptiveDet> {
    let mut n = n_start.clamp(1, MAX_MODES);
    let mut prev = fredholm_det(&ModeMatrices::new(params, t, n)?);
    loop {
        let next_n = (2 * n).min(MAX_MODES);
        if next_n == n {
            return Ok(AdaptiveDet { det: prev, n, delta: f64::INFINITY, converged: false });
        }
        let next = fredholm_det(&ModeMatrices::new(params, t, next_n)?);
        let delta = (next - prev).norm();
        if delta < tol {
            return Ok(AdaptiveDet { det: next, n: next_n, delta, converged: true });
        }
        if next_n == MAX_MODES {
            return Ok(AdaptiveDet { det: next, n: next_n, delta, converged: false });
        }
        n = next_n;
        prev = next;
    }
}

/// Max over retained entries of |(p+q)·a − [𝔖, a] − twisted ψ ⊗ ψ̄| for a
/// given a-block (closed form or quadrature).
pub fn rank_one_residual_of(params: &MonodromyParams, a: &CMatrix) -> Result<f64> {
    let n = a.rows() / 2;
    let nu = params.nu();
    let w = C64::i() * PI * (2.0 * params.eta() - params.sigma());
    let idx = mode_indices(n);
    let mut worst: f64 = 0.0;
    for hole in &idx {
        for particle in &idx {
            let entry = a[(hole.position(), particle.position())];
            let lhs = (particle.p() + hole.p()) * entry - (particle.s() - hole.s()) * nu * entry;
            let rhs = psi(*particle, nu)? * psi_bar(*hole, nu)? * (w * (hole.s() - particle.s())).exp();
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}

/// Rank-one identity for the closed-form a-modes truncated at N.
pub fn rank_one_residual(params: &MonodromyParams, n: usize) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    rank_one_residual_of(params, &mode_matrix_a(params, n)?)
}

/// The d-block analogue: the same factorization with ν ↦ −ν, the σ-twist,
/// and the t-power stripped.
pub fn rank_one_residual_d(params: &MonodromyParams, t: C64, n: usize) -> Result<f64> {
    let nu = params.nu();
    let d = mode_matrix_d(params, t, n)?;
    let idx = mode_indices(n);
    let mut worst: f64 = 0.0;
    for particle in &idx {
        for hole in &idx {
            let ds = hole.s() - particle.s();
            let strip = (C64::i() * PI * params.sigma() * ds).exp() * t_power(t, ds * nu + particle.p() + hole.p());
            let entry = d[(particle.position(), hole.position())] / strip;
            let lhs = (particle.p() + hole.p()) * entry + ds * nu * entry;
            let rhs = psi(*hole, -nu)? * psi_bar(*particle, -nu)?;
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn generic() -> MonodromyParams {
        MonodromyParams::from_nu(c(0.37, 0.0), c(0.11, 0.0)).unwrap()
    }

    #[test]
    fn ordering_is_interleaved() {
        let idx = mode_indices(2);
        assert_eq!(idx[0], ModeIndex::new(0, Color::Plus));
        assert_eq!(idx[1], ModeIndex::new(0, Color::Minus));
        assert_eq!(idx[2], ModeIndex::new(1, Color::Plus));
        assert!(idx.iter().enumerate().all(|(i, m)| m.position() == i));
    }

    #[test]
    fn shifted_momentum() {
        let nu = c(0.37, 0.1);
        assert_eq!(ShiftedMomentum::new(3, Color::Minus, nu).value, 1.5 + nu);
        assert_eq!(ShiftedMomentum::new(-1, Color::Plus, nu).value, -0.5 - nu);
    }

    #[test]
    fn leading_entries() {
        let p = MonodromyParams::from_nu(c(0.29, 0.13), c(0.2, 0.1)).unwrap();
        let nu = p.nu();
        let a = mode_matrix_a(&p, 2).unwrap();
        assert!((a[(0, 0)] - 1.0 / (2.0 * nu)).norm() < 1e-14);
        let t = c(0.07, 0.0);
        let d = mode_matrix_d(&p, t, 2).unwrap();
        assert!((d[(0, 0)] + t / (2.0 * nu)).norm() < 1e-14);
    }

    #[test]
    fn d_vanishes_at_t_zero() {
        let d = mode_matrix_d(&generic(), c(0.0, 0.0), 3).unwrap();
        assert_eq!(d.max_abs(), 0.0);
        assert_eq!(fredholm_det(&ModeMatrices::new(&generic(), c(0.0, 0.0), 3).unwrap()), c(1.0, 0.0));
    }

    #[test]
    fn near_lattice_parameters() {
        // 2σ within the lattice tolerance is refused before any denominator is formed.
        let p = MonodromyParams::from_nu(c(1.0 + 1e-12, 0.0), c(0.1, 0.0));
        assert!(p.is_err());
        let p = MonodromyParams::from_nu(c(1.0 + 2e-8, 0.0), c(0.1, 0.0)).unwrap();
        assert!(mode_matrix_a(&p, 1).is_ok());
    }

    #[test]
    fn one_mode_closed_form() {
        let p = generic();
        let m = ModeMatrices::new(&p, c(0.05, 0.0), 1).unwrap();
        let ad = &m.a * &m.d;
        let tr = ad[(0, 0)] + ad[(1, 1)];
        let det = ad[(0, 0)] * ad[(1, 1)] - ad[(0, 1)] * ad[(1, 0)];
        assert!((fredholm_det(&m) - (1.0 - tr + det)).norm() < 1e-15);
    }

    #[test]
    fn fredholm_oracle() {
        let p = generic();
        for (t, re, im) in [
            (0.01, 0.930_205_426_850_737_7, 0.561_305_151_392_537_9),
            (0.05, 1.044_333_774_430_946_8, 0.867_707_318_486_984_6),
            (0.2, 1.983_245_760_239_924_4, 1.333_442_588_637_445_9),
        ] {
            let v = fredholm_det(&ModeMatrices::new(&p, c(t, 0.0), 12).unwrap());
            assert!((v - c(re, im)).norm() < 1e-13 * c(re, im).norm(), "t={t}: {v}");
        }
    }

    #[test]
    fn block_form_agrees() {
        let p = MonodromyParams::from_nu(c(0.31, -0.07), c(0.2, 0.15)).unwrap();
        let m = ModeMatrices::new(&p, c(0.1, 0.02), 6).unwrap();
        let (a, b) = (fredholm_det(&m), fredholm_det_block(&m));
        assert!((a - b).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn rank_one_identities() {
        let p = MonodromyParams::from_nu(c(0.23, 0.17), c(-0.3, 0.1)).unwrap();
        assert!(rank_one_residual(&p, 8).unwrap() < 1e-10);
        assert!(rank_one_residual_d(&p, c(0.05, 0.0), 8).unwrap() < 1e-10);
        assert_eq!(rank_one_residual(&p, 0).unwrap(), 0.0);
    }

    #[test]
    fn cauchy_minors() {
        let p = MonodromyParams::from_nu(c(0.23, 0.17), c(-0.3, 0.1)).unwrap();
        let nu = p.nu();
        let a = mode_matrix_a(&p, 4).unwrap();
        let idx = mode_indices(4);
        let w = C64::i() * PI * (2.0 * p.eta() - p.sigma());
        for (rows, cols) in [(vec![0, 3], vec![1, 6]), (vec![1, 2, 7], vec![0, 4, 5]), (vec![5], vec![2])] {
            let direct = a.submatrix(&rows, &cols).det();
            // entry = r_i c_j / (x_i − y_j) with x_i = −x_{−q;s}, y_j = −x_{p;s′}
            let x: Vec<C64> = rows.iter().map(|&i| -(-idx[i].p() - idx[i].s() * nu)).collect();
            let y: Vec<C64> = cols.iter().map(|&j| -(idx[j].p() - idx[j].s() * nu)).collect();
            let mut formula = C64::new(1.0, 0.0);
            for i in 0..x.len() {
                for j in (i + 1)..x.len() {
                    formula *= (x[j] - x[i]) * (y[i] - y[j]);
                }
                for yj in &y {
                    formula /= x[i] - yj;
                }
            }
            for &i in &rows {
                formula *= psi_bar(idx[i], nu).unwrap() * (w * idx[i].s()).exp();
            }
            for &j in &cols {
                formula *= psi(idx[j], nu).unwrap() * (-w * idx[j].s()).exp();
            }
            assert!((direct - formula).norm() < 1e-10 * formula.norm(), "{direct} vs {formula}");
        }
    }

    #[test]
    fn branch_flip_leaves_det_unchanged() {
        let p = generic();
        let t = c(0.05, 0.0);
        let base = fredholm_det(&ModeMatrices::new(&p, t, 8).unwrap());
        for branch in [
            SqrtBranch { flip_plus: true, flip_minus: false },
            SqrtBranch { flip_plus: false, flip_minus: true },
            SqrtBranch { flip_plus: true, flip_minus: true },
        ] {
            let m = ModeMatrices::with_branch(&p, t, 8, branch).unwrap();
            assert!((fredholm_det(&m) - base).norm() < 1e-12 * base.norm());
        }
    }

    #[test]
    fn adaptive_truncation_converges() {
        let r = fredholm_det_adaptive(&generic(), c(0.05, 0.0), 2, 1e-13).unwrap();
        assert!(r.converged && r.n <= 16);
        let reference = fredholm_det(&ModeMatrices::new(&generic(), c(0.05, 0.0), 12).unwrap());
        assert!((r.det - reference).norm() < 1e-12);
    }
}
