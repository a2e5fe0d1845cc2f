//! Generalized power series Σ c_k t^{e_k} with complex exponents, as produced
//! by the Maya and dual sums, and their exact logarithmic derivatives.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::summation::CompensatedSum;

type C64 = Complex64;

/// One term c·t^e. `sector` is the charge n of the dual sum (for Maya terms
/// n = −Q) and `weight` is |Y⁺| + |Y⁻|.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesTerm {
    pub exponent: C64,
    pub coefficient: C64,
    pub sector: i32,
    pub weight: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct PowerSeries {
    pub terms: Vec<SeriesTerm>,
}

fn power(t: C64, e: C64) -> C64 {
    if e == C64::new(0.0, 0.0) {
        C64::new(1.0, 0.0)
    } else {
        (e * t.ln()).exp()
    }
}

impl PowerSeries {
    pub fn new(terms: Vec<SeriesTerm>) -> Self {
        Self { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Σ c t^e with compensated summation in term order. At t = 0 only the
    /// constant terms survive; a term with Re e < 0 there is an error.
    pub fn evaluate(&self, t: C64) -> Result<C64> {
        Ok(self.theta_moments(t, 0)?[0])
    }

    /// g_k = Σ c e^k t^e for k = 0..=order, i.e. (t d/dt)^k of the series.
    pub fn theta_moments(&self, t: C64, order: usize) -> Result<Vec<C64>> {
        let mut sums = vec![CompensatedSum::new(); order + 1];
        for term in &self.terms {
            let tp = if t.norm() == 0.0 {
                if term.exponent.norm() == 0.0 {
                    C64::new(1.0, 0.0)
                } else if term.exponent.re > 0.0 {
                    continue;
                } else {
                    return Err(Error::NonConvergence(format!("term t^{} diverges at t = 0", term.exponent)));
                }
            } else {
                power(t, term.exponent)
            };
            let mut v = term.coefficient * tp;
            for s in sums.iter_mut() {
                s.add(v);
                v *= term.exponent;
            }
        }
        Ok(sums.iter().map(|s| s.value()).collect())
    }

    /// ℓ_k = (t d/dt)^k ln f for k = 1..=4, the cumulants of the moments g_k.
    pub fn log_theta_derivatives(&self, t: C64) -> Result<[C64; 4]> {
        let g = self.theta_moments(t, 4)?;
        if g[0].norm() == 0.0 {
            return Err(Error::NearZero(format!("series vanishes at t = {t}")));
        }
        let m: Vec<C64> = g.iter().map(|x| x / g[0]).collect();
        let l1 = m[1];
        let l2 = m[2] - l1 * l1;
        let l3 = m[3] - 3.0 * m[2] * m[1] + 2.0 * l1.powi(3);
        let l4 = m[4] - 4.0 * m[3] * m[1] - 3.0 * m[2] * m[2] + 12.0 * m[2] * m[1] * m[1] - 6.0 * l1.powi(4);
        Ok([l1, l2, l3, l4])
    }

    /// Coefficients summed per (sector, weight); each group shares one exponent.
    pub fn collect(&self) -> Vec<SeriesTerm> {
        let mut groups: BTreeMap<(i32, u32), (C64, CompensatedSum)> = BTreeMap::new();
        for term in &self.terms {
            let entry = groups.entry((term.sector, term.weight)).or_insert((term.exponent, CompensatedSum::new()));
            entry.1.add(term.coefficient);
        }
        groups
            .into_iter()
            .map(|((sector, weight), (exponent, sum))| SeriesTerm {
                exponent,
                coefficient: sum.value(),
                sector,
                weight,
            })
            .collect()
    }

    /// Coefficients summed over terms whose exponents agree to 1e−9, sorted by
    /// the real part of the exponent. Sector and weight are those of the
    /// first term in each group.
    pub fn collect_by_exponent(&self) -> Vec<SeriesTerm> {
        let mut groups: Vec<(SeriesTerm, CompensatedSum)> = Vec::new();
        for term in &self.terms {
            match groups.iter_mut().find(|(g, _)| (g.exponent - term.exponent).norm() < 1e-9) {
                Some((_, sum)) => sum.add(term.coefficient),
                None => {
                    let mut sum = CompensatedSum::new();
                    sum.add(term.coefficient);
                    groups.push((*term, sum));
                }
            }
        }
        let mut out: Vec<SeriesTerm> =
            groups.into_iter().map(|(g, sum)| SeriesTerm { coefficient: sum.value(), ..g }).collect();
        out.sort_by(|a, b| a.exponent.re.total_cmp(&b.exponent.re).then(a.exponent.im.total_cmp(&b.exponent.im)));
        out
    }

    /// Coefficients of t^{j/2} for j = 0..=max_half_order when all exponents
    /// are real multiples of 1/2.
    pub fn half_integer_coefficients(&self, max_half_order: usize) -> Result<Vec<C64>> {
        let mut sums = vec![CompensatedSum::new(); max_half_order + 1];
        for term in &self.terms {
            let j = (2.0 * term.exponent.re).round();
            if (2.0 * term.exponent.re - j).abs() > 1e-9 || term.exponent.im.abs() > 1e-9 {
                return Err(Error::InvalidInput(format!("exponent {} is not a half-integer", term.exponent)));
            }
            if j >= 0.0 && (j as usize) <= max_half_order {
                sums[j as usize].add(term.coefficient);
            }
        }
        Ok(sums.iter().map(|s| s.value()).collect())
    }
}
