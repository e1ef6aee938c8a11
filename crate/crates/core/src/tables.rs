//! Per-context outcome tables and the grid of contexts they belong to.
//!
//! A context is one pair of settings `(i, j)`: setting `i` on side A and
//! setting `j` on side B. Each context carries a table of four joint
//! probabilities for the outcome pairs `(ε, ε′) ∈ {−1,+1}²`, always stored
//! and serialized in the canonical order `(+,+), (+,−), (−,+), (−,−)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the total mass of a table or weight vector.
pub const PROBABILITY_TOLERANCE: f64 = 1e-12;

/// Marginal deviations above this are reported as signaling.
pub const SIGNALING_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

/// A setting on one side, indexed from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SettingId {
    pub side: Side,
    pub index: usize,
}

impl SettingId {
    pub fn new(side: Side, index: usize) -> Self {
        Self { side, index }
    }

    /// Checks `1 <= index <= count`.
    pub fn check(self, count: usize) -> Result<Self> {
        if self.index == 0 || self.index > count {
            return Err(Error::IndexOutOfRange {
                side: self.side,
                index: self.index,
                max: count,
            });
        }
        Ok(self)
    }
}

/// A dichotomic measurement value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    /// Both values, `−1` first.
    pub const ALL: [Sign; 2] = [Sign::Minus, Sign::Plus];

    pub fn value(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.value())
    }

    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            -1 => Some(Sign::Minus),
            1 => Some(Sign::Plus),
            _ => None,
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.value()
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> Result<Self, String> {
        Sign::from_value(i64::from(v)).ok_or_else(|| format!("outcome value must be -1 or +1, got {v}"))
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        })
    }
}

/// A joint outcome `(ε, ε′)` of one context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Outcome {
    pub a: Sign,
    pub b: Sign,
}

impl Outcome {
    /// Canonical outcome order used by every table and serialized form.
    pub const CANONICAL: [Outcome; 4] = [
        Outcome::new(Sign::Plus, Sign::Plus),
        Outcome::new(Sign::Plus, Sign::Minus),
        Outcome::new(Sign::Minus, Sign::Plus),
        Outcome::new(Sign::Minus, Sign::Minus),
    ];

    pub const fn new(a: Sign, b: Sign) -> Self {
        Self { a, b }
    }

    /// Position in [`Outcome::CANONICAL`].
    pub fn index(self) -> usize {
        match (self.a, self.b) {
            (Sign::Plus, Sign::Plus) => 0,
            (Sign::Plus, Sign::Minus) => 1,
            (Sign::Minus, Sign::Plus) => 2,
            (Sign::Minus, Sign::Minus) => 3,
        }
    }

    /// The product `ε·ε′`.
    pub fn product(self) -> f64 {
        f64::from(self.a.value() * self.b.value())
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A measurement orientation in radians, kept exactly as given.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub fn new(radians: f64) -> Result<Self> {
        if !radians.is_finite() {
            return Err(Error::NonFinite {
                what: "angle".into(),
                value: radians,
            });
        }
        Ok(Self(radians))
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

/// Joint outcome probabilities of one context.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeTable([f64; 4]);

impl OutcomeTable {
    /// Probability of `outcome`.
    pub fn get(&self, outcome: Outcome) -> f64 {
        self.0[outcome.index()]
    }

    /// Entries in canonical order.
    pub fn entries(&self) -> [f64; 4] {
        self.0
    }

    /// `Σ ε·ε′·p(ε, ε′)`.
    pub fn correlation(&self) -> f64 {
        Outcome::CANONICAL.iter().map(|o| o.product() * self.get(*o)).sum()
    }

    /// `Σ_ε′ p(ε, ε′)`.
    pub fn marginal_a(&self, eps: Sign) -> f64 {
        Sign::ALL.iter().map(|&b| self.get(Outcome::new(eps, b))).sum()
    }

    /// `Σ_ε p(ε, ε′)`.
    pub fn marginal_b(&self, eps_prime: Sign) -> f64 {
        Sign::ALL.iter().map(|&a| self.get(Outcome::new(a, eps_prime))).sum()
    }
}

/// Validates four probabilities given in canonical outcome order.
pub fn validate_table(raw: [f64; 4]) -> Result<OutcomeTable> {
    for (p, outcome) in raw.iter().zip(Outcome::CANONICAL) {
        if !p.is_finite() {
            return Err(Error::NonFinite {
                what: format!("entry {outcome}"),
                value: *p,
            });
        }
        if *p < 0.0 {
            return Err(Error::NegativeEntry { outcome, value: *p });
        }
        if *p > 1.0 {
            return Err(Error::EntryAboveOne { outcome, value: *p });
        }
    }
    let sum: f64 = raw.iter().sum();
    if (sum - 1.0).abs() > PROBABILITY_TOLERANCE {
        return Err(Error::SumNotOne(sum));
    }
    Ok(OutcomeTable(raw))
}

/// Singlet-state polarization statistics for orientations `theta` (side A)
/// and `theta_prime` (side B):
/// `p(ε,ε) = ½cos²(Δ/2)`, `p(ε,−ε) = ½sin²(Δ/2)` with `Δ = θ − θ′`.
pub fn singlet_table(theta: Angle, theta_prime: Angle) -> OutcomeTable {
    let half = 0.5 * (theta.radians() - theta_prime.radians());
    let same = 0.5 * half.cos().powi(2);
    let differ = 0.5 * half.sin().powi(2);
    OutcomeTable([same, differ, differ, same])
}

/// How a family's tables were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Explicit,
    Singlet,
}

/// An `m × n` grid of contexts, one validated table per `(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContextFamily {
    m: usize,
    n: usize,
    // row-major, (i, j) at (i - 1) * n + (j - 1)
    tables: Vec<OutcomeTable>,
    angles: Option<(Vec<Angle>, Vec<Angle>)>,
}

impl ContextFamily {
    /// Builds a family from an explicit table for every context.
    ///
    /// Keys are 1-based `(i, j)`; every pair in `1..=m × 1..=n` must be present.
    pub fn from_tables(m: usize, n: usize, tables: &BTreeMap<(usize, usize), OutcomeTable>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::EmptyGrid { m, n });
        }
        for &(i, j) in tables.keys() {
            SettingId::new(Side::A, i).check(m)?;
            SettingId::new(Side::B, j).check(n)?;
        }
        let mut grid = Vec::with_capacity(m * n);
        for i in 1..=m {
            for j in 1..=n {
                let table = tables.get(&(i, j)).ok_or(Error::MissingContext { i, j })?;
                grid.push(*table);
            }
        }
        Ok(Self {
            m,
            n,
            tables: grid,
            angles: None,
        })
    }

    /// Builds the singlet family: `table(i, j) = singlet_table(θ_i, θ′_j)`.
    pub fn singlet(angles_a: &[Angle], angles_b: &[Angle]) -> Result<Self> {
        let (m, n) = (angles_a.len(), angles_b.len());
        if m == 0 || n == 0 {
            return Err(Error::EmptyGrid { m, n });
        }
        let tables = angles_a
            .iter()
            .flat_map(|&a| angles_b.iter().map(move |&b| singlet_table(a, b)))
            .collect();
        Ok(Self {
            m,
            n,
            tables,
            angles: Some((angles_a.to_vec(), angles_b.to_vec())),
        })
    }

    /// Number of settings on side A.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of settings on side B.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn model(&self) -> Model {
        if self.angles.is_some() {
            Model::Singlet
        } else {
            Model::Explicit
        }
    }

    pub fn angles(&self) -> Option<(&[Angle], &[Angle])> {
        self.angles.as_ref().map(|(a, b)| (a.as_slice(), b.as_slice()))
    }

    pub fn check_indices(&self, i: usize, j: usize) -> Result<()> {
        SettingId::new(Side::A, i).check(self.m)?;
        SettingId::new(Side::B, j).check(self.n)?;
        Ok(())
    }

    pub fn table(&self, i: usize, j: usize) -> Result<&OutcomeTable> {
        self.check_indices(i, j)?;
        Ok(&self.tables[(i - 1) * self.n + (j - 1)])
    }

    /// All `(i, j, table)` in row-major order.
    pub fn contexts(&self) -> impl Iterator<Item = (usize, usize, &OutcomeTable)> + '_ {
        self.tables
            .iter()
            .enumerate()
            .map(move |(k, t)| (k / self.n + 1, k % self.n + 1, t))
    }
}

/// Largest marginal deviation across the other side's settings, for one
/// setting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MarginalDeviation {
    pub index: usize,
    pub max_deviation: f64,
    pub signaling: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoSignalingReport {
    pub side_a: Vec<MarginalDeviation>,
    pub side_b: Vec<MarginalDeviation>,
    pub signaling: bool,
}

impl NoSignalingReport {
    pub fn max_deviation(&self) -> f64 {
        self.side_a
            .iter()
            .chain(&self.side_b)
            .map(|d| d.max_deviation)
            .fold(0.0, f64::max)
    }
}

fn spread(values: impl Iterator<Item = f64>) -> f64 {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    hi - lo
}

/// Checks whether each side's outcome marginals are independent of the
/// other side's setting.
pub fn no_signaling_report(family: &ContextFamily) -> NoSignalingReport {
    let deviation = |index, value: f64| MarginalDeviation {
        index,
        max_deviation: value,
        signaling: value > SIGNALING_THRESHOLD,
    };
    let side_a: Vec<_> = (1..=family.m())
        .map(|i| {
            let worst = Sign::ALL
                .iter()
                .map(|&eps| {
                    spread((1..=family.n()).map(|j| family.tables[(i - 1) * family.n + (j - 1)].marginal_a(eps)))
                })
                .fold(0.0, f64::max);
            deviation(i, worst)
        })
        .collect();
    let side_b: Vec<_> = (1..=family.n())
        .map(|j| {
            let worst = Sign::ALL
                .iter()
                .map(|&eps| {
                    spread((1..=family.m()).map(|i| family.tables[(i - 1) * family.n + (j - 1)].marginal_b(eps)))
                })
                .fold(0.0, f64::max);
            deviation(j, worst)
        })
        .collect();
    let signaling = side_a.iter().chain(&side_b).any(|d| d.signaling);
    NoSignalingReport {
        side_a,
        side_b,
        signaling,
    }
}
