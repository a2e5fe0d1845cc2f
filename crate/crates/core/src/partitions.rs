//! Young diagrams, Maya diagrams and the charged bijection between them.
//!
//! Half-integers are stored doubled, so all combinatorics is exact integer
//! arithmetic.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A half-integer k + 1/2, stored as the odd integer 2k + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfInt(i32);

impl HalfInt {
    /// From the doubled value, which must be odd.
    pub fn from_doubled(d: i32) -> Result<Self> {
        if d % 2 == 0 {
            return Err(Error::InvalidInput(format!("{d}/2 is not a half-integer")));
        }
        Ok(HalfInt(d))
    }

    pub fn doubled(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// For p ∈ ℤ′₊ the integer p − 1/2.
    pub fn floor(self) -> i32 {
        (self.0 - 1).div_euclid(2)
    }

    pub fn shift(self, q: i32) -> Self {
        HalfInt(self.0 + 2 * q)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

/// A partition: weakly decreasing positive rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

impl YoungDiagram {
    pub fn new(mut rows: Vec<u32>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.contains(&0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("{rows:?} is not a partition")));
        }
        Ok(Self { rows })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn weight(&self) -> u32 {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Y_i for 1-based i, zero beyond the last row.
    pub fn row(&self, i: usize) -> u32 {
        if i >= 1 {
            self.rows.get(i - 1).copied().unwrap_or(0)
        } else {
            0
        }
    }

    /// Y′_j, the length of column j (1-based).
    pub fn column(&self, j: usize) -> u32 {
        self.rows.iter().take_while(|&&r| r as usize >= j).count() as u32
    }

    pub fn conjugate(&self) -> Self {
        let cols = (1..=self.row(1) as usize).map(|j| self.column(j)).collect();
        Self { rows: cols }
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && j as u32 <= self.row(i)
    }

    /// All boxes (i, j), 1-based, row by row.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, &r)| (1..=r as usize).map(move |j| (i + 1, j)))
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// a_Y(□) = Y_i − j, valid for boxes outside Y as well.
pub fn arm(y: &YoungDiagram, i: usize, j: usize) -> i32 {
    y.row(i) as i32 - j as i32
}

/// l_Y(□) = Y′_j − i, valid for boxes outside Y as well.
pub fn leg(y: &YoungDiagram, i: usize, j: usize) -> i32 {
    y.column(j) as i32 - i as i32
}

pub fn hook(y: &YoungDiagram, i: usize, j: usize) -> Result<u32> {
    if !y.contains(i, j) {
        return Err(Error::OutOfBounds { i, j });
    }
    Ok((arm(y, i, j) + leg(y, i, j) + 1) as u32)
}

/// Finite deviation from the Dirac sea: particles at positive, holes at
/// negative half-integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct MayaDiagram {
    particles: BTreeSet<HalfInt>,
    holes: BTreeSet<HalfInt>,
}

impl MayaDiagram {
    pub fn new(particles: impl IntoIterator<Item = HalfInt>, holes: impl IntoIterator<Item = HalfInt>) -> Result<Self> {
        let particles: BTreeSet<HalfInt> = particles.into_iter().collect();
        let holes: BTreeSet<HalfInt> = holes.into_iter().collect();
        if let Some(p) = particles.iter().find(|p| !p.is_positive()) {
            return Err(Error::InvalidInput(format!("particle at non-positive position {p}")));
        }
        if let Some(h) = holes.iter().find(|h| h.is_positive()) {
            return Err(Error::InvalidInput(format!("hole at positive position {h}")));
        }
        Ok(Self { particles, holes })
    }

    /// Convenience constructor from doubled positions.
    pub fn from_doubled(particles: &[i32], holes: &[i32]) -> Result<Self> {
        let p = particles.iter().map(|&d| HalfInt::from_doubled(d)).collect::<Result<Vec<_>>>()?;
        let h = holes.iter().map(|&d| HalfInt::from_doubled(d)).collect::<Result<Vec<_>>>()?;
        Self::new(p, h)
    }

    pub fn vacuum() -> Self {
        Self::default()
    }

    /// Particles in decreasing order.
    pub fn particles(&self) -> impl Iterator<Item = HalfInt> + '_ {
        self.particles.iter().rev().copied()
    }

    /// Holes in decreasing order (closest to zero first).
    pub fn holes(&self) -> impl Iterator<Item = HalfInt> + '_ {
        self.holes.iter().rev().copied()
    }

    pub fn num_particles(&self) -> usize {
        self.particles.len()
    }

    pub fn num_holes(&self) -> usize {
        self.holes.len()
    }

    /// Σ_holes q + Σ_particles p with q = −h > 0, doubled.
    pub fn energy_doubled(&self) -> i64 {
        self.particles.iter().map(|p| p.0 as i64).sum::<i64>() - self.holes.iter().map(|h| h.0 as i64).sum::<i64>()
    }
}

/// Q(m) = #particles − #holes.
pub fn charge(m: &MayaDiagram) -> i32 {
    m.num_particles() as i32 - m.num_holes() as i32
}

/// Inverse profile walk: S = {Y_i − i + 1/2 + Q}; particles are the positive
/// elements of S, holes the negative half-integers missing from S.
pub fn maya_from_young(y: &YoungDiagram, q: i32) -> MayaDiagram {
    let len = y.rows.len() as i32;
    // Every half-integer at or below this (doubled) level lies in S.
    let floor = 2 * q - 2 * len - 1;
    let count = (len + q.abs() + 1) as usize;
    let s: BTreeSet<i32> = (1..=count).map(|i| 2 * y.row(i) as i32 - 2 * i as i32 + 1 + 2 * q).collect();
    let particles = s.iter().filter(|&&d| d > 0).map(|&d| HalfInt(d));
    let holes = (floor + 2..0).filter(|d| d % 2 != 0 && !s.contains(d)).map(HalfInt);
    MayaDiagram { particles: particles.collect(), holes: holes.collect() }
}

/// Profile walk: sort S descending as s_1 > s_2 > …; Y_i = s_i + i − 1/2 − Q.
pub fn young_from_maya(m: &MayaDiagram) -> (YoungDiagram, i32) {
    let q = charge(m);
    let lowest_hole = m.holes.iter().next().map(|h| h.0).unwrap_or(-1);
    let mut s: Vec<i32> = m.particles().map(|p| p.0).collect();
    let mut d = -1;
    while d >= lowest_hole - 2 {
        if !m.holes.contains(&HalfInt(d)) {
            s.push(d);
        }
        d -= 2;
    }
    let rows: Vec<u32> = s
        .iter()
        .enumerate()
        .map(|(k, &sd)| (sd + 2 * (k as i32 + 1) - 1 - 2 * q) / 2)
        .take_while(|&r| r > 0)
        .map(|r| r as u32)
        .collect();
    (YoungDiagram { rows }, q)
}

/// A neutral pair of Maya diagrams, Q(m⁺) + Q(m⁻) = 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargedPair {
    pub m_plus: MayaDiagram,
    pub m_minus: MayaDiagram,
}

impl ChargedPair {
    pub fn new(m_plus: MayaDiagram, m_minus: MayaDiagram) -> Result<Self> {
        let (a, b) = (charge(&m_plus), charge(&m_minus));
        if a + b != 0 {
            return Err(Error::InvalidInput(format!("charges {a} and {b} do not cancel")));
        }
        Ok(Self { m_plus, m_minus })
    }

    pub fn from_young(y_plus: &YoungDiagram, y_minus: &YoungDiagram, q: i32) -> Self {
        Self { m_plus: maya_from_young(y_plus, q), m_minus: maya_from_young(y_minus, -q) }
    }

    /// Q ≡ Q(m⁺).
    pub fn charge(&self) -> i32 {
        charge(&self.m_plus)
    }
}

/// One term label of the two-color sums: (Y⁺, Y⁻, Q).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ChargedTriple {
    pub y_plus: YoungDiagram,
    pub y_minus: YoungDiagram,
    pub q: i32,
}

impl ChargedTriple {
    pub fn weight(&self) -> u32 {
        self.y_plus.weight() + self.y_minus.weight()
    }
}

/// All partitions of n, largest parts first (reverse lexicographic).
pub fn partitions_of(n: u32) -> Vec<YoungDiagram> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
        if n == 0 {
            out.push(YoungDiagram { rows: prefix.clone() });
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Pairs (Y⁺, Y⁻) with |Y⁺| + |Y⁻| ≤ w, ordered by total weight, then by
/// decreasing |Y⁺|, then reverse-lexicographically.
pub fn young_pairs(w: u32) -> Vec<(YoungDiagram, YoungDiagram)> {
    let parts: Vec<Vec<YoungDiagram>> = (0..=w).map(partitions_of).collect();
    let mut out = Vec::new();
    for total in 0..=w {
        for wp in (0..=total).rev() {
            for yp in &parts[wp as usize] {
                for ym in &parts[(total - wp) as usize] {
                    out.push((yp.clone(), ym.clone()));
                }
            }
        }
    }
    out
}

/// Every (Y⁺, Y⁻, Q) with |Y⁺| + |Y⁻| ≤ W and |Q| ≤ Qmax exactly once, in a
/// fixed order: the pair order of [`young_pairs`], charge ascending inside.
pub fn enumerate_pairs(weight_cutoff: u32, charge_cutoff: u32) -> impl Iterator<Item = ChargedTriple> {
    let qmax = charge_cutoff as i32;
    young_pairs(weight_cutoff).into_iter().flat_map(move |(yp, ym)| {
        (-qmax..=qmax).map(move |q| ChargedTriple { y_plus: yp.clone(), y_minus: ym.clone(), q })
    })
}
