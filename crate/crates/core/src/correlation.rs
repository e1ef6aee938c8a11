//! Absolute and conditional correlations, CHSH statistics, and bound checks.
//!
//! Each correlation is computed twice: once from the space's measure by atom
//! enumeration, once from the context table in closed form. The two must
//! agree to within [`CROSS_CHECK_TOLERANCE`] or the computation fails with
//! [`Error::Invariant`].

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::space::{Event, KolmogorovSpace};
use crate::tables::Outcome;

/// A bound holds iff `value <= limit + BOUND_TOLERANCE`.
pub const BOUND_TOLERANCE: f64 = 1e-9;

/// Allowed disagreement between the measure route and the table route.
pub const CROSS_CHECK_TOLERANCE: f64 = 1e-12;

/// Context order shared by sign patterns and CHSH inputs.
pub const CHSH_CONTEXTS: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];

/// Signs applied to the correlations of contexts (1,1), (1,2), (2,1), (2,2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignPattern([i8; 4]);

impl SignPattern {
    /// The four single-minus patterns. The first is the textbook
    /// `C₁₁ + C₁₂ + C₂₁ − C₂₂`. Three-minus patterns are their negations and
    /// give the same absolute value.
    pub const CANONICAL: [SignPattern; 4] = [
        SignPattern([1, 1, 1, -1]),
        SignPattern([1, 1, -1, 1]),
        SignPattern([1, -1, 1, 1]),
        SignPattern([-1, 1, 1, 1]),
    ];

    pub fn new(signs: [i8; 4]) -> Result<Self> {
        let minus = signs.iter().filter(|&&s| s == -1).count();
        if signs.iter().any(|&s| s != 1 && s != -1) || minus % 2 == 0 {
            return Err(Error::BadSignPattern(signs));
        }
        Ok(Self(signs))
    }

    pub fn signs(&self) -> [i8; 4] {
        self.0
    }

    /// `Σ s_k · values_k`.
    pub fn apply(&self, values: [f64; 4]) -> f64 {
        self.0.iter().zip(values).map(|(&s, v)| f64::from(s) * v).sum()
    }
}

impl Default for SignPattern {
    fn default() -> Self {
        Self::CANONICAL[0]
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self.0.iter().map(|&x| if x > 0 { "+" } else { "-" }).collect();
        write!(f, "({})", s.join(","))
    }
}

impl Serialize for SignPattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationPair {
    pub i: usize,
    pub j: usize,
    pub conditional: f64,
    pub absolute: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChshStatistic {
    pub pattern: SignPattern,
    #[serde(rename = "conditional")]
    pub value_conditional: f64,
    #[serde(rename = "absolute")]
    pub value_absolute: f64,
}

impl ChshStatistic {
    /// Signed sums of correlations given in [`CHSH_CONTEXTS`] order.
    pub fn from_correlations(pattern: SignPattern, conditional: [f64; 4], absolute: [f64; 4]) -> Self {
        Self {
            pattern,
            value_conditional: pattern.apply(conditional),
            value_absolute: pattern.apply(absolute),
        }
    }

    /// The canonical pattern with the largest `|value_conditional|`; ties go
    /// to the earlier pattern.
    pub fn maximize(conditional: [f64; 4], absolute: [f64; 4]) -> Self {
        let mut best = Self::from_correlations(SignPattern::CANONICAL[0], conditional, absolute);
        for p in &SignPattern::CANONICAL[1..] {
            let s = Self::from_correlations(*p, conditional, absolute);
            if s.value_conditional.abs() > best.value_conditional.abs() {
                best = s;
            }
        }
        best
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    pub value: f64,
    pub limit: f64,
    pub pass: bool,
}

impl BoundCheck {
    pub fn new(value: f64, limit: f64) -> Self {
        Self {
            value,
            limit,
            pass: value <= limit + BOUND_TOLERANCE,
        }
    }
}

/// Verdicts for the four CHSH bounds.
///
/// `b2` and `b1` apply to the largest `|CHSH|` of absolute correlations over
/// the canonical patterns, `b4` and `b8` to the largest `|CHSH|` of
/// conditional correlations. `b1` is only evaluated at uniform weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub b2: BoundCheck,
    pub b1: Option<BoundCheck>,
    pub b4: BoundCheck,
    pub b8: BoundCheck,
}

impl BoundReport {
    pub fn evaluate(conditional: [f64; 4], absolute: [f64; 4], uniform_weights: bool) -> Self {
        let max_abs = |values: [f64; 4]| {
            SignPattern::CANONICAL
                .iter()
                .map(|p| p.apply(values).abs())
                .fold(0.0, f64::max)
        };
        let cond = max_abs(conditional);
        let abs = max_abs(absolute);
        Self {
            b2: BoundCheck::new(abs, 2.0),
            b1: uniform_weights.then(|| BoundCheck::new(abs, 1.0)),
            b4: BoundCheck::new(cond, 4.0),
            b8: BoundCheck::new(cond, 8.0),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.b2.pass && self.b1.is_none_or(|b| b.pass) && self.b4.pass && self.b8.pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub pairs: Vec<CorrelationPair>,
    /// `None` unless the grid is 2×2.
    pub chsh: Option<ChshStatistic>,
    pub bounds: Option<BoundReport>,
}

fn cross_check(what: &str, i: usize, j: usize, by_measure: f64, closed_form: f64) -> Result<()> {
    if (by_measure - closed_form).abs() > CROSS_CHECK_TOLERANCE {
        return Err(Error::Invariant(format!(
            "{what} correlation ({i},{j}): measure gives {by_measure}, table gives {closed_form}"
        )));
    }
    Ok(())
}

/// `E(A⁽ⁱ⁾B⁽ʲ⁾ | η_a=i, η_b=j) = Σ ε·ε′·p_ij(ε, ε′)`.
pub fn conditional_correlation(space: &KolmogorovSpace, i: usize, j: usize) -> Result<f64> {
    let closed_form = space.family().table(i, j)?.correlation();
    let given = Event::context(i, j);
    let mut by_measure = 0.0;
    for o in Outcome::CANONICAL {
        let ev = Event::a_equals(i, o.a.value()).and(&Event::b_equals(j, o.b.value()));
        by_measure += o.product() * space.conditional_probability(&ev, &given)?;
    }
    cross_check("conditional", i, j, by_measure, closed_form)?;
    Ok(closed_form)
}

/// `E(A⁽ⁱ⁾B⁽ʲ⁾)` over the whole space; equals `u_i·v_j` times the
/// conditional correlation.
pub fn absolute_correlation(space: &KolmogorovSpace, i: usize, j: usize) -> Result<f64> {
    let closed_form = space.weights().joint(i, j) * space.family().table(i, j)?.correlation();
    let by_measure: f64 = space
        .atoms()
        .iter()
        .map(|(w, p)| f64::from(w.a_value(i) * w.b_value(j)) * p)
        .sum();
    cross_check("absolute", i, j, by_measure, closed_form)?;
    Ok(by_measure)
}

pub fn correlation_pair(space: &KolmogorovSpace, i: usize, j: usize) -> Result<CorrelationPair> {
    Ok(CorrelationPair {
        i,
        j,
        conditional: conditional_correlation(space, i, j)?,
        absolute: absolute_correlation(space, i, j)?,
    })
}

fn require_2x2(space: &KolmogorovSpace) -> Result<()> {
    if (space.m(), space.n()) != (2, 2) {
        return Err(Error::NotTwoByTwo {
            m: space.m(),
            n: space.n(),
        });
    }
    Ok(())
}

fn chsh_inputs(space: &KolmogorovSpace) -> Result<([f64; 4], [f64; 4])> {
    require_2x2(space)?;
    let mut cond = [0.0; 4];
    let mut abs = [0.0; 4];
    for (k, &(i, j)) in CHSH_CONTEXTS.iter().enumerate() {
        let pair = correlation_pair(space, i, j)?;
        cond[k] = pair.conditional;
        abs[k] = pair.absolute;
    }
    Ok((cond, abs))
}

pub fn chsh(space: &KolmogorovSpace, pattern: SignPattern) -> Result<ChshStatistic> {
    let (cond, abs) = chsh_inputs(space)?;
    Ok(ChshStatistic::from_correlations(pattern, cond, abs))
}

pub fn max_chsh(space: &KolmogorovSpace) -> Result<ChshStatistic> {
    let (cond, abs) = chsh_inputs(space)?;
    Ok(ChshStatistic::maximize(cond, abs))
}

pub fn bound_report(space: &KolmogorovSpace) -> Result<BoundReport> {
    let (cond, abs) = chsh_inputs(space)?;
    Ok(BoundReport::evaluate(cond, abs, space.weights().is_uniform()))
}

/// Correlations for every context, plus CHSH and bounds when the grid is 2×2.
pub fn correlation_report(space: &KolmogorovSpace) -> Result<CorrelationReport> {
    let pairs = space
        .family()
        .contexts()
        .map(|(i, j, _)| correlation_pair(space, i, j))
        .collect::<Result<Vec<_>>>()?;
    let (chsh, bounds) = if (space.m(), space.n()) == (2, 2) {
        (Some(max_chsh(space)?), Some(bound_report(space)?))
    } else {
        (None, None)
    };
    Ok(CorrelationReport { pairs, chsh, bounds })
}
