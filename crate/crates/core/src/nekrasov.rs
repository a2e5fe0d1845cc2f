//! Factorized series: Nekrasov bifundamental factors, the instanton and dual
//! partition functions, the Maya-diagram expansion of the tau function, and
//! the identities that tie them together.
//!
//! Everything here is normalized by C(ν)·t^{ν²}, so each series starts at 1.
//! C(ν) itself is never evaluated; only ratios C(ν+n)/C(ν) appear.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{Color, ModeIndex};
use crate::monodromy::MonodromyParams;
use crate::partitions::{
    arm, enumerate_pairs, leg, maya_from_young, young_pairs, ChargedTriple, MayaDiagram, YoungDiagram,
};
use crate::series::{PowerSeries, SeriesTerm};
use crate::special_functions::{barnes_g_ratio, factorial, gamma, pochhammer, upsilon};
use crate::summation::compensated_sum;

type C64 = Complex64;

/// Factors closer to zero than this (relative to max(1, |ν|)) are treated as
/// vanishing denominators.
pub const DENOMINATOR_TOL: f64 = 1e-10;

/// Truncation of the two-color sums: |Y⁺| + |Y⁻| ≤ W and |Q| ≤ Qmax.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTruncation {
    pub weight_cutoff: u32,
    pub charge_cutoff: u32,
}

impl SeriesTruncation {
    pub fn new(weight_cutoff: u32, charge_cutoff: u32) -> Self {
        Self { weight_cutoff, charge_cutoff }
    }

    /// One step larger in both cutoffs, used for error estimates.
    pub fn next(self) -> Self {
        Self::new(self.weight_cutoff + 1, self.charge_cutoff + 1)
    }
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn z_bif_factors<'a>(nu: C64, y_plus: &'a YoungDiagram, y_minus: &'a YoungDiagram) -> impl Iterator<Item = C64> + 'a {
    let plus = y_plus.boxes().map(move |(i, j)| nu + 1.0 + (arm(y_plus, i, j) + leg(y_minus, i, j)) as f64);
    let minus = y_minus.boxes().map(move |(i, j)| nu - 1.0 - (arm(y_minus, i, j) + leg(y_plus, i, j)) as f64);
    plus.chain(minus)
}

/// Z_bif(ν|Y⁺,Y⁻) = ∏_{□∈Y⁺}(ν+1+a_{Y⁺}+l_{Y⁻}) ∏_{□∈Y⁻}(ν−1−a_{Y⁻}−l_{Y⁺}).
pub fn z_bif(nu: C64, y_plus: &YoungDiagram, y_minus: &YoungDiagram) -> C64 {
    z_bif_factors(nu, y_plus, y_minus).product()
}

fn z_bif_checked(nu: C64, y_plus: &YoungDiagram, y_minus: &YoungDiagram) -> Result<C64> {
    let scale = nu.norm().max(1.0);
    let mut acc = c(1.0);
    for f in z_bif_factors(nu, y_plus, y_minus) {
        if f.norm() < DENOMINATOR_TOL * scale {
            return Err(Error::DenominatorZero(format!("Z_bif({nu}|{y_plus},{y_minus}) has a vanishing factor")));
        }
        acc *= f;
    }
    Ok(acc)
}

/// 1/∏_{s,s′} Z_bif(ν(s−s′)|Y^{s′},Y^s), the instanton measure of one pair.
pub fn instanton_weight(nu: C64, y_plus: &YoungDiagram, y_minus: &YoungDiagram) -> Result<C64> {
    let den = z_bif_checked(c(0.0), y_plus, y_plus)?
        * z_bif_checked(2.0 * nu, y_minus, y_plus)?
        * z_bif_checked(-2.0 * nu, y_plus, y_minus)?
        * z_bif_checked(c(0.0), y_minus, y_minus)?;
    Ok(den.inv())
}

/// Coefficients of t^k, k = 0..=W, of the normalized instanton sum.
pub fn z_inst_coefficients(nu: C64, weight_cutoff: u32) -> Result<Vec<C64>> {
    let pairs = young_pairs(weight_cutoff);
    let weights: Vec<(u32, C64)> = pairs
        .par_iter()
        .map(|(yp, ym)| Ok((yp.weight() + ym.weight(), instanton_weight(nu, yp, ym)?)))
        .collect::<Result<_>>()?;
    Ok((0..=weight_cutoff).map(|k| compensated_sum(weights.iter().filter(|(w, _)| *w == k).map(|&(_, v)| v))).collect())
}

/// Σ_{|Y⁺|+|Y⁻| ≤ W} t^{|Y⁺|+|Y⁻|}/∏ Z_bif, that is Z/(C(ν) t^{ν²}).
pub fn z_inst(t: C64, nu: C64, trunc: SeriesTruncation) -> Result<C64> {
    let coeffs = z_inst_coefficients(nu, trunc.weight_cutoff)?;
    let mut tk = c(1.0);
    Ok(compensated_sum(coeffs.into_iter().map(|a| {
        let v = a * tk;
        tk *= t;
        v
    })))
}

/// R(ν,n) = C(ν+n)/C(ν) = 1/(G(1+2ν+2n)/G(1+2ν) · G(1−2ν−2n)/G(1−2ν)).
pub fn barnes_prefactor_ratio(nu: C64, n: i32) -> Result<C64> {
    Ok((barnes_g_ratio(1.0 + 2.0 * nu, 2 * n)? * barnes_g_ratio(1.0 - 2.0 * nu, -2 * n)?).inv())
}

/// Terms of Σ_n e^{4πinη} R(ν,n) t^{(ν+n)²−ν²} z_inst(t, ν+n).
pub fn dual_series(nu: C64, eta: C64, trunc: SeriesTruncation) -> Result<PowerSeries> {
    let qmax = trunc.charge_cutoff as i32;
    let pairs = young_pairs(trunc.weight_cutoff);
    let jobs: Vec<(i32, usize)> = (-qmax..=qmax).flat_map(|n| (0..pairs.len()).map(move |k| (n, k))).collect();
    let prefactors: BTreeMap<i32, C64> = (-qmax..=qmax)
        .map(|n| Ok((n, barnes_prefactor_ratio(nu, n)? * (C64::i() * 4.0 * PI * n as f64 * eta).exp())))
        .collect::<Result<_>>()?;
    let terms = jobs
        .par_iter()
        .map(|&(n, k)| {
            let (yp, ym) = &pairs[k];
            let shifted = nu + n as f64;
            let weight = yp.weight() + ym.weight();
            Ok(SeriesTerm {
                exponent: shifted * shifted - nu * nu + weight as f64,
                coefficient: prefactors[&n] * instanton_weight(shifted, yp, ym)?,
                sector: n,
                weight,
            })
        })
        .collect::<Result<_>>()?;
    Ok(PowerSeries::new(terms))
}

/// The dual partition function normalized by C(ν) t^{ν²}.
pub fn z_dual(t: C64, nu: C64, eta: C64, trunc: SeriesTruncation) -> Result<C64> {
    dual_series(nu, eta, trunc)?.evaluate(t)
}

fn check_balance(p: &[ModeIndex], h: &[ModeIndex]) -> Result<()> {
    if p.len() != h.len() {
        return Err(Error::InvalidInput(format!("{} particles but {} holes", p.len(), h.len())));
    }
    for set in [p, h] {
        for (a, x) in set.iter().enumerate() {
            if set[..a].contains(x) {
                return Err(Error::InvalidInput(format!("coincident momenta at ({}, {:?})", x.p(), x.color)));
            }
        }
    }
    Ok(())
}

/// Q = #p⁺ − #h⁺.
fn sector_charge(p: &[ModeIndex], h: &[ModeIndex]) -> i32 {
    let plus = |v: &[ModeIndex]| v.iter().filter(|m| m.color == Color::Plus).count() as i32;
    plus(p) - plus(h)
}

/// Ξ for particles p = {(p, s′)} and holes h = {(−q, s)}. Holes are passed
/// through their positive label q, so `ModeIndex { k, .. }` stands for
/// −q = −(k + 1/2).
pub fn xi_coeff(nu: C64, p: &[ModeIndex], h: &[ModeIndex]) -> Result<C64> {
    check_balance(p, h)?;
    let q = sector_charge(p, h);
    let ratio = gamma(1.0 + 2.0 * nu)? / gamma(1.0 - 2.0 * nu)?;
    let checked = |alpha: C64, k: u32| -> Result<C64> {
        if (0..k).any(|i| (alpha + i as f64).norm() < DENOMINATOR_TOL) {
            return Err(Error::Pole(format!("({alpha})_{k} vanishes in Xi")));
        }
        Ok(pochhammer(alpha, k))
    };
    let mut den = c(1.0);
    for m in p {
        den *= factorial(m.k) * checked(1.0 - 2.0 * m.s() * nu, m.k)?;
    }
    for m in h {
        den *= factorial(m.k) * checked(2.0 * m.s() * nu, m.k + 1)?;
    }
    let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * ratio.powi(2 * q) / (den * den))
}

fn x_particle(m: &ModeIndex, nu: C64) -> C64 {
    m.p() - m.s() * nu
}

fn x_hole(m: &ModeIndex, nu: C64) -> C64 {
    -m.p() - m.s() * nu
}

/// Δ, the Cauchy-type ratio of shifted-momentum differences. Enters squared,
/// so the order of p and h only affects its sign.
pub fn delta_coeff(nu: C64, p: &[ModeIndex], h: &[ModeIndex]) -> Result<C64> {
    check_balance(p, h)?;
    let mut num = c(1.0);
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            num *= x_particle(&p[a], nu) - x_particle(&p[b], nu);
        }
    }
    for a in 0..h.len() {
        for b in a + 1..h.len() {
            num *= x_hole(&h[b], nu) - x_hole(&h[a], nu);
        }
    }
    let mut den = c(1.0);
    for mp in p {
        for mh in h {
            let d = x_particle(mp, nu) - x_hole(mh, nu);
            if d.norm() < DENOMINATOR_TOL {
                return Err(Error::DenominatorZero(format!("x_({},{:?}) meets a hole momentum", mp.p(), mp.color)));
            }
            den *= d;
        }
    }
    Ok(num / den)
}

fn to_modes(m: &MayaDiagram, color: Color) -> (Vec<ModeIndex>, Vec<ModeIndex>) {
    let p = m.particles().map(|x| ModeIndex::new(x.floor() as u32, color)).collect();
    let h = m.holes().map(|x| ModeIndex::new((-x.doubled() - 1) as u32 / 2, color)).collect();
    (p, h)
}

/// Colored particle and hole sets of the triple (Y⁺, Y⁻, Q), built from
/// 𝗆⁺ = maya(Y⁺, Q) and 𝗆⁻ = maya(Y⁻, −Q).
pub fn maya_configuration(triple: &ChargedTriple) -> (Vec<ModeIndex>, Vec<ModeIndex>) {
    let (mut p, mut h) = to_modes(&maya_from_young(&triple.y_plus, triple.q), Color::Plus);
    let (pm, hm) = to_modes(&maya_from_young(&triple.y_minus, -triple.q), Color::Minus);
    p.extend(pm);
    h.extend(hm);
    (p, h)
}

/// Ξ·Δ² for one triple.
pub fn xi_delta_squared(nu: C64, triple: &ChargedTriple) -> Result<C64> {
    let (p, h) = maya_configuration(triple);
    let d = delta_coeff(nu, &p, &h)?;
    Ok(xi_coeff(nu, &p, &h)? * d * d)
}

/// Terms e^{−4πiηQ} Ξ Δ² t^{Q²−2νQ+|Y⁺|+|Y⁻|}, filed under sector n = −Q.
pub fn maya_series(nu: C64, eta: C64, trunc: SeriesTruncation) -> Result<PowerSeries> {
    let triples: Vec<ChargedTriple> = enumerate_pairs(trunc.weight_cutoff, trunc.charge_cutoff).collect();
    let terms = triples
        .par_iter()
        .map(|tr| {
            let q = tr.q as f64;
            Ok(SeriesTerm {
                exponent: q * q - 2.0 * nu * q + tr.weight() as f64,
                coefficient: (-C64::i() * 4.0 * PI * eta * q).exp() * xi_delta_squared(nu, tr)?,
                sector: -tr.q,
                weight: tr.weight(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(PowerSeries::new(terms))
}

/// The Maya-diagram expansion of t^{−ν²} τ, normalized to start at 1.
pub fn tau_series_maya(t: C64, params: &MonodromyParams, trunc: SeriesTruncation) -> Result<C64> {
    maya_series(params.nu(), params.eta(), trunc)?.evaluate(t)
}

/// Z̃_bif(ν|𝗆⁺;𝗆⁻), the factorized form over particle and hole positions.
pub fn z_bif_tilde(nu: C64, m_plus: &MayaDiagram, m_minus: &MayaDiagram) -> Result<C64> {
    let pos = |m: &MayaDiagram| -> (Vec<f64>, Vec<f64>) {
        (m.particles().map(|x| x.value()).collect(), m.holes().map(|x| -x.value()).collect())
    };
    let ((pp, qp), (pm, qm)) = (pos(m_plus), pos(m_minus));
    let int = |x: f64| x.round() as u32;
    let mut num = c(1.0);
    for &q in &qp {
        num *= pochhammer(-nu, int(q + 0.5));
    }
    for &q in &qm {
        num *= pochhammer(nu + 1.0, int(q - 0.5));
    }
    for &p in &pm {
        num *= pochhammer(-nu, int(p + 0.5));
    }
    for &p in &pp {
        num *= pochhammer(nu + 1.0, int(p - 0.5));
    }
    for &q in &qp {
        for &p in &pm {
            num *= nu - q - p;
        }
    }
    for &q in &qm {
        for &p in &pp {
            num *= nu + p + q;
        }
    }
    let mut den = c(1.0);
    let scale = nu.norm().max(1.0);
    let factors = qm
        .iter()
        .flat_map(|&q2| qp.iter().map(move |&q| nu - q + q2))
        .chain(pm.iter().flat_map(|&p2| pp.iter().map(move |&p| nu + p - p2)));
    for f in factors {
        if f.norm() < DENOMINATOR_TOL * scale {
            return Err(Error::DenominatorZero(format!("Z~_bif at nu = {nu}")));
        }
        den *= f;
    }
    Ok(num / den)
}

/// Maximum deviations found by [`check_lemma_identities`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct IdentityReport {
    /// Configurations tested.
    pub configurations: usize,
    /// max ||Z̃_bif| / |Z_bif(ν+Q⁺−Q⁻)/Υ(ν|Q⁺−Q⁻)| − 1| (sign-insensitive).
    pub factorized_bifundamental: f64,
    /// max relative error of Ξ Δ² against its Υ/Z_bif closed form (exact).
    pub structure_constant: f64,
    /// Configurations where sign(Ξ Δ²) ≠ (−1)^Q; only counted for real ν.
    pub sign_violations: usize,
}

impl IdentityReport {
    pub fn max_error(&self) -> f64 {
        self.factorized_bifundamental.max(self.structure_constant)
    }
}

fn rel_err(a: C64, b: C64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).norm() / b.norm()
    }
}

/// Closed form of Ξ Δ² via structure constants and four Z_bif factors.
pub fn xi_delta_squared_closed_form(nu: C64, tr: &ChargedTriple) -> Result<C64> {
    let q = tr.q;
    let ratio = gamma(1.0 + 2.0 * nu)? / gamma(1.0 - 2.0 * nu)?;
    let ys = [(1.0, &tr.y_plus), (-1.0, &tr.y_minus)];
    let mut den = c(1.0);
    for (s, ys_) in ys {
        for (sp, ysp) in ys {
            den *= z_bif_checked((q as f64 - nu) * (sp - s), ysp, ys_)?;
        }
    }
    Ok(ratio.powi(2 * q) * upsilon(2.0 * nu, -2 * q)? * upsilon(-2.0 * nu, 2 * q)? / den)
}

/// Checks the factorization identities over every configuration with
/// |Y⁺| + |Y⁻| ≤ W and charges in [−Qmax, Qmax].
pub fn check_lemma_identities(nu: C64, trunc: SeriesTruncation) -> Result<IdentityReport> {
    let qmax = trunc.charge_cutoff as i32;
    let mut report = IdentityReport::default();
    for (yp, ym) in young_pairs(trunc.weight_cutoff) {
        for qp in -qmax..=qmax {
            for qm in -qmax..=qmax {
                let lhs = z_bif_tilde(nu, &maya_from_young(&yp, qp), &maya_from_young(&ym, qm))?;
                let rhs = z_bif(nu + (qp - qm) as f64, &yp, &ym) / upsilon(nu, qp - qm)?;
                report.factorized_bifundamental =
                    report.factorized_bifundamental.max((lhs.norm() / rhs.norm() - 1.0).abs());
                report.configurations += 1;
            }
        }
    }
    for tr in enumerate_pairs(trunc.weight_cutoff, trunc.charge_cutoff) {
        let lhs = xi_delta_squared(nu, &tr)?;
        let rhs = xi_delta_squared_closed_form(nu, &tr)?;
        report.structure_constant = report.structure_constant.max(rel_err(lhs, rhs));
        report.configurations += 1;
        if nu.im == 0.0 {
            let expected = if tr.q % 2 == 0 { 1.0 } else { -1.0 };
            if lhs.re.signum() != expected || lhs.im.abs() > 1e-12 * lhs.norm() {
                report.sign_violations += 1;
            }
        }
    }
    Ok(report)
}

/// Maximum relative difference between Maya and dual coefficients, matched
/// by (n, weight) with n = −Q. Exponents must agree as well.
pub fn compare_maya_dual(nu: C64, eta: C64, trunc: SeriesTruncation) -> Result<f64> {
    let maya = maya_series(nu, eta, trunc)?.collect();
    let dual = dual_series(nu, eta, trunc)?.collect();
    if maya.len() != dual.len() {
        return Err(Error::InvalidInput("Maya and dual series have different supports".into()));
    }
    let mut worst = 0.0f64;
    for (a, b) in maya.iter().zip(&dual) {
        if (a.sector, a.weight) != (b.sector, b.weight) || (a.exponent - b.exponent).norm() > 1e-12 {
            return Err(Error::InvalidInput(format!("term mismatch at sector {} weight {}", a.sector, a.weight)));
        }
        worst = worst.max(rel_err(a.coefficient, b.coefficient));
    }
    Ok(worst)
}

/// Re-indexing identity behind quasi-periodicity in σ: the dual terms at
/// ν + 1, multiplied by e^{4πiη} R(ν,1) t^{2ν+1}, coincide with the dual terms
/// at ν with n shifted by one. Returns the largest relative mismatch of
/// coefficients and exponents over the matched range.
pub fn quasi_periodicity_residual(nu: C64, eta: C64, trunc: SeriesTruncation) -> Result<f64> {
    let shifted = dual_series(nu + 1.0, eta, trunc)?.collect();
    let wide = SeriesTruncation::new(trunc.weight_cutoff, trunc.charge_cutoff + 1);
    let base: BTreeMap<(i32, u32), SeriesTerm> =
        dual_series(nu, eta, wide)?.collect().into_iter().map(|t| ((t.sector, t.weight), t)).collect();
    let factor = (C64::i() * 4.0 * PI * eta).exp() * barnes_prefactor_ratio(nu, 1)?;
    let mut worst = 0.0f64;
    for term in shifted {
        let other = base
            .get(&(term.sector + 1, term.weight))
            .ok_or_else(|| Error::InvalidInput(format!("no sector {} in the base series", term.sector + 1)))?;
        let exp_err = (term.exponent + 2.0 * nu + 1.0 - other.exponent).norm();
        worst = worst.max(rel_err(term.coefficient * factor, other.coefficient)).max(exp_err);
    }
    Ok(worst)
}

/// The t-independent constant det(ν+1)/det(ν) · t^{2ν+1} predicted by the
/// re-indexing identity: e^{−4πiη}/R(ν,1).
pub fn quasi_periodicity_constant(nu: C64, eta: C64) -> Result<C64> {
    Ok((-C64::i() * 4.0 * PI * eta).exp() / barnes_prefactor_ratio(nu, 1)?)
}
