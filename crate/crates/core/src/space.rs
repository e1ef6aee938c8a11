//! The unified sample space built from a family of contexts.
//!
//! Every atom records which channel was open on each side and the value
//! observed behind it. The measure of an atom for context `(i, j)` is the
//! gate weight `u_i · v_j` times the context's table entry, so conditioning
//! on `{η_a = i, η_b = j}` gives back the table exactly.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tables::{ContextFamily, Outcome, SettingId, Side, Sign, PROBABILITY_TOLERANCE};

/// Maximum `|P(η_a=i, η_b=j) − P(η_a=i)·P(η_b=j)|` accepted as independent.
pub const INDEPENDENCE_TOLERANCE: f64 = 1e-12;

/// One point of the sample space: channel `i` open on side A showing `eps`,
/// channel `j` open on side B showing `eps_prime`.
///
/// The derived ordering is lexicographic over `(i, eps, j, eps_prime)` with
/// `−1 < +1`, which is the order of the space dump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Atom {
    pub i: usize,
    pub eps: Sign,
    pub j: usize,
    pub eps_prime: Sign,
}

impl Atom {
    pub fn new(i: usize, eps: Sign, j: usize, eps_prime: Sign) -> Self {
        Self { i, eps, j, eps_prime }
    }

    pub fn outcome(&self) -> Outcome {
        Outcome::new(self.eps, self.eps_prime)
    }

    /// Value of `A⁽ⁱ⁾`: `ε` if channel `i` is the open one, otherwise 0.
    pub fn a_value(&self, i: usize) -> i8 {
        if self.i == i {
            self.eps.value()
        } else {
            0
        }
    }

    /// Value of `B⁽ʲ⁾`.
    pub fn b_value(&self, j: usize) -> i8 {
        if self.j == j {
            self.eps_prime.value()
        } else {
            0
        }
    }

    /// Zero-padded form for the two-setting case: slots 1–2 hold side A's
    /// channels, slots 3–4 side B's; the open channel carries its value and
    /// the closed one 0. `(1, ε, 2, ε′)` becomes `(ε, 0, 0, ε′)`.
    pub fn to_padded(&self) -> Option<[i8; 4]> {
        if !(1..=2).contains(&self.i) || !(1..=2).contains(&self.j) {
            return None;
        }
        Some([self.a_value(1), self.a_value(2), self.b_value(1), self.b_value(2)])
    }

    /// Inverse of [`Atom::to_padded`]. Exactly one nonzero ±1 entry per side.
    pub fn from_padded(w: [i8; 4]) -> Option<Self> {
        fn side(pair: [i8; 2]) -> Option<(usize, Sign)> {
            match pair {
                [v, 0] => Some((1, Sign::from_value(v.into())?)),
                [0, v] => Some((2, Sign::from_value(v.into())?)),
                _ => None,
            }
        }
        let (i, eps) = side([w[0], w[1]])?;
        let (j, eps_prime) = side([w[2], w[3]])?;
        Some(Self::new(i, eps, j, eps_prime))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.i, self.eps, self.j, self.eps_prime)
    }
}

/// Gate probabilities: `u` over side A's channels, `v` over side B's.
/// The context `(i, j)` is realized with probability `u_i · v_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContextWeights {
    u: Vec<f64>,
    v: Vec<f64>,
}

fn check_weights(side: Side, w: &[f64]) -> Result<()> {
    if w.is_empty() {
        return Err(Error::DimensionMismatch {
            side,
            expected: 1,
            got: 0,
        });
    }
    for (k, &x) in w.iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::NonFinite {
                what: format!("weight {} on side {side}", k + 1),
                value: x,
            });
        }
        if x <= 0.0 {
            return Err(Error::WeightNotPositive {
                side,
                index: k + 1,
                value: x,
            });
        }
    }
    let sum: f64 = w.iter().sum();
    if (sum - 1.0).abs() > PROBABILITY_TOLERANCE {
        return Err(Error::WeightSumNotOne { side, sum });
    }
    Ok(())
}

impl ContextWeights {
    pub fn new(u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        check_weights(Side::A, &u)?;
        check_weights(Side::B, &v)?;
        Ok(Self { u, v })
    }

    /// Equal gate probabilities `1/m` and `1/n`.
    pub fn uniform(m: usize, n: usize) -> Self {
        Self {
            u: vec![1.0 / m as f64; m],
            v: vec![1.0 / n as f64; n],
        }
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn v(&self) -> &[f64] {
        &self.v
    }

    /// `u_i · v_j` (1-based indices).
    pub fn joint(&self, i: usize, j: usize) -> f64 {
        self.u[i - 1] * self.v[j - 1]
    }

    /// True when every gate on each side is equally likely.
    pub fn is_uniform(&self) -> bool {
        let flat = |w: &[f64]| {
            w.iter()
                .all(|&x| (x - 1.0 / w.len() as f64).abs() <= PROBABILITY_TOLERANCE)
        };
        flat(&self.u) && flat(&self.v)
    }
}

/// A subset of the sample space, given as a predicate on atoms.
#[derive(Clone)]
pub struct Event(Arc<dyn Fn(&Atom) -> bool + Send + Sync>);

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Event(..)")
    }
}

impl Event {
    pub fn new(pred: impl Fn(&Atom) -> bool + Send + Sync + 'static) -> Self {
        Self(Arc::new(pred))
    }

    /// The whole space.
    pub fn always() -> Self {
        Self::new(|_| true)
    }

    pub fn never() -> Self {
        Self::new(|_| false)
    }

    /// `{η_a = i}`.
    pub fn eta_a(i: usize) -> Self {
        Self::new(move |w| w.i == i)
    }

    /// `{η_b = j}`.
    pub fn eta_b(j: usize) -> Self {
        Self::new(move |w| w.j == j)
    }

    /// `{A⁽ⁱ⁾ = value}` for `value ∈ {−1, 0, +1}`.
    pub fn a_equals(i: usize, value: i8) -> Self {
        Self::new(move |w| w.a_value(i) == value)
    }

    /// `{B⁽ʲ⁾ = value}`.
    pub fn b_equals(j: usize, value: i8) -> Self {
        Self::new(move |w| w.b_value(j) == value)
    }

    /// `{η_a = i, η_b = j}`.
    pub fn context(i: usize, j: usize) -> Self {
        Self::eta_a(i).and(&Self::eta_b(j))
    }

    pub fn and(&self, other: &Event) -> Self {
        let (a, b) = (self.0.clone(), other.0.clone());
        Self::new(move |w| a(w) && b(w))
    }

    pub fn or(&self, other: &Event) -> Self {
        let (a, b) = (self.0.clone(), other.0.clone());
        Self::new(move |w| a(w) || b(w))
    }

    pub fn not(&self) -> Self {
        let a = self.0.clone();
        Self::new(move |w| !a(w))
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        (self.0)(atom)
    }
}

/// Joint law of `(A⁽ⁱ⁾, B⁽ʲ⁾)` over `{−1, 0, +1}²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JointDistribution {
    pub i: usize,
    pub j: usize,
    /// `cells[a + 1][b + 1] = P(A⁽ⁱ⁾ = a, B⁽ʲ⁾ = b)`.
    pub cells: [[f64; 3]; 3],
}

impl JointDistribution {
    pub fn get(&self, a: i8, b: i8) -> f64 {
        self.cells[(a + 1) as usize][(b + 1) as usize]
    }

    pub fn total(&self) -> f64 {
        self.cells.iter().flatten().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndependenceReport {
    pub max_deviation: f64,
    pub independent: bool,
    pub p_eta_a: Vec<f64>,
    pub p_eta_b: Vec<f64>,
}

/// One line of the space dump.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomMass {
    pub i: usize,
    pub eps: Sign,
    pub j: usize,
    pub eps_prime: Sign,
    pub p: f64,
}

/// The finite probability space `(Ω, P)` unifying all contexts of a family.
#[derive(Debug, Clone)]
pub struct KolmogorovSpace {
    family: ContextFamily,
    weights: ContextWeights,
    // sorted by atom
    measure: Vec<(Atom, f64)>,
}

fn all_atoms(m: usize, n: usize) -> impl Iterator<Item = Atom> {
    (1..=m).flat_map(move |i| {
        Sign::ALL.into_iter().flat_map(move |eps| {
            (1..=n).flat_map(move |j| {
                Sign::ALL
                    .into_iter()
                    .map(move |eps_prime| Atom::new(i, eps, j, eps_prime))
            })
        })
    })
}

/// Builds the space: `P(i, ε, j, ε′) = u_i · v_j · p_ij(ε, ε′)` over all
/// `4·m·n` atoms.
pub fn build_space(family: ContextFamily, weights: ContextWeights) -> Result<KolmogorovSpace> {
    if weights.u.len() != family.m() {
        return Err(Error::DimensionMismatch {
            side: Side::A,
            expected: family.m(),
            got: weights.u.len(),
        });
    }
    if weights.v.len() != family.n() {
        return Err(Error::DimensionMismatch {
            side: Side::B,
            expected: family.n(),
            got: weights.v.len(),
        });
    }
    let measure = all_atoms(family.m(), family.n())
        .map(|atom| {
            let table = family
                .table(atom.i, atom.j)
                .expect("atom indices come from the family grid");
            (atom, weights.joint(atom.i, atom.j) * table.get(atom.outcome()))
        })
        .collect();
    let space = KolmogorovSpace {
        family,
        weights,
        measure,
    };
    let total = space.raw_total();
    if (total - 1.0).abs() > PROBABILITY_TOLERANCE {
        return Err(Error::Invariant(format!("space has total mass {total}")));
    }
    Ok(space)
}

impl KolmogorovSpace {
    /// Replaces the measure with arbitrary atom masses, bypassing the product
    /// construction. Only for exercising the checkers on measures the
    /// builder cannot produce.
    #[doc(hidden)]
    pub fn with_raw_measure(family: ContextFamily, weights: ContextWeights, masses: impl Fn(&Atom) -> f64) -> Self {
        let measure = all_atoms(family.m(), family.n()).map(|a| (a, masses(&a))).collect();
        Self {
            family,
            weights,
            measure,
        }
    }

    pub fn family(&self) -> &ContextFamily {
        &self.family
    }

    pub fn weights(&self) -> &ContextWeights {
        &self.weights
    }

    pub fn m(&self) -> usize {
        self.family.m()
    }

    pub fn n(&self) -> usize {
        self.family.n()
    }

    /// All atoms with their masses, in dump order.
    pub fn atoms(&self) -> &[(Atom, f64)] {
        &self.measure
    }

    /// Mass of a single atom (0 for atoms outside the grid).
    pub fn measure(&self, atom: &Atom) -> f64 {
        self.measure
            .binary_search_by(|(a, _)| a.cmp(atom))
            .map(|k| self.measure[k].1)
            .unwrap_or(0.0)
    }

    fn raw_total(&self) -> f64 {
        self.measure.iter().map(|(_, p)| p).sum()
    }

    pub fn eval_a(&self, atom: &Atom, i: usize) -> Result<i8> {
        SettingId::new(Side::A, i).check(self.m())?;
        Ok(atom.a_value(i))
    }

    pub fn eval_b(&self, atom: &Atom, j: usize) -> Result<i8> {
        SettingId::new(Side::B, j).check(self.n())?;
        Ok(atom.b_value(j))
    }

    /// Which channel was open on side A.
    pub fn eval_eta_a(atom: &Atom) -> usize {
        atom.i
    }

    /// Which channel was open on side B.
    pub fn eval_eta_b(atom: &Atom) -> usize {
        atom.j
    }

    /// Sum of the masses of atoms in `event`.
    pub fn probability(&self, event: &Event) -> f64 {
        self.measure
            .iter()
            .filter(|(a, _)| event.contains(a))
            .map(|(_, p)| p)
            .sum::<f64>()
            .clamp(0.0, 1.0)
    }

    /// `P(event | given) = P(event ∧ given) / P(given)`.
    pub fn conditional_probability(&self, event: &Event, given: &Event) -> Result<f64> {
        let denom = self.probability(given);
        if denom <= 0.0 {
            return Err(Error::ConditionHasZeroProbability);
        }
        Ok((self.probability(&event.and(given)) / denom).clamp(0.0, 1.0))
    }

    /// Joint law of `(A⁽ⁱ⁾, B⁽ʲ⁾)`, zero values included.
    pub fn joint_distribution(&self, i: usize, j: usize) -> Result<JointDistribution> {
        self.family.check_indices(i, j)?;
        let mut cells = [[0.0; 3]; 3];
        for (atom, p) in &self.measure {
            let a = (atom.a_value(i) + 1) as usize;
            let b = (atom.b_value(j) + 1) as usize;
            cells[a][b] += p;
        }
        Ok(JointDistribution { i, j, cells })
    }

    /// Checks `P(η_a=i, η_b=j) = P(η_a=i)·P(η_b=j)` for every context.
    pub fn independence_check_eta(&self) -> IndependenceReport {
        let p_eta_a: Vec<f64> = (1..=self.m()).map(|i| self.probability(&Event::eta_a(i))).collect();
        let p_eta_b: Vec<f64> = (1..=self.n()).map(|j| self.probability(&Event::eta_b(j))).collect();
        let mut max_deviation = 0.0f64;
        for i in 1..=self.m() {
            for j in 1..=self.n() {
                let joint = self.probability(&Event::context(i, j));
                max_deviation = max_deviation.max((joint - p_eta_a[i - 1] * p_eta_b[j - 1]).abs());
            }
        }
        IndependenceReport {
            max_deviation,
            independent: max_deviation < INDEPENDENCE_TOLERANCE,
            p_eta_a,
            p_eta_b,
        }
    }

    /// The canonical sorted atom dump.
    pub fn dump(&self) -> Vec<AtomMass> {
        self.measure
            .iter()
            .map(|(a, p)| AtomMass {
                i: a.i,
                eps: a.eps,
                j: a.j,
                eps_prime: a.eps_prime,
                p: *p,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

    use super::*;
    use crate::tables::{validate_table, Angle};

    use Sign::{Minus, Plus};

    fn singlet_2x2(a: [f64; 2], b: [f64; 2]) -> ContextFamily {
        let a = a.map(|x| Angle::new(x).unwrap());
        let b = b.map(|x| Angle::new(x).unwrap());
        ContextFamily::singlet(&a, &b).unwrap()
    }

    fn uniform_space(family: ContextFamily) -> KolmogorovSpace {
        let w = ContextWeights::uniform(family.m(), family.n());
        build_space(family, w).unwrap()
    }

    #[test]
    fn singlet_atom_mass() {
        let space = uniform_space(singlet_2x2([0.0, 1.0], [FRAC_PI_4, 0.3]));
        let p = space.measure(&Atom::new(1, Plus, 1, Plus));
        let expected = 0.25 * 0.5 * FRAC_PI_8.cos().powi(2);
        assert!((p - expected).abs() < 1e-15);
        assert!((p - 0.10669417).abs() < 1e-8);
        assert_eq!(space.atoms().len(), 16);
        assert!((space.probability(&Event::always()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_context_space() {
        let mut tables = BTreeMap::new();
        tables.insert((1, 1), validate_table([0.5, 0.0, 0.0, 0.5]).unwrap());
        let space = uniform_space(ContextFamily::from_tables(1, 1, &tables).unwrap());
        let masses: Vec<f64> = space.atoms().iter().map(|(_, p)| *p).collect();
        // dump order is (−,−), (−,+), (+,−), (+,+)
        assert_eq!(masses, vec![0.5, 0.0, 0.0, 0.5]);
    }

    #[test]
    fn weight_dimensions_must_match() {
        let fam = singlet_2x2([0.0, 1.0], [0.0, 1.0]);
        let w = ContextWeights::uniform(3, 2);
        assert!(matches!(
            build_space(fam, w),
            Err(Error::DimensionMismatch {
                side: Side::A,
                expected: 2,
                got: 3
            })
        ));
    }

    #[test]
    fn weights_validation() {
        assert!(ContextWeights::new(vec![0.3, 0.7], vec![1.0]).is_ok());
        assert!(matches!(
            ContextWeights::new(vec![0.0, 1.0], vec![1.0]),
            Err(Error::WeightNotPositive { index: 1, .. })
        ));
        assert!(matches!(
            ContextWeights::new(vec![0.5, 0.5], vec![0.6, 0.6]),
            Err(Error::WeightSumNotOne { side: Side::B, .. })
        ));
        assert!(ContextWeights::uniform(2, 2).is_uniform());
        assert!(!ContextWeights::new(vec![0.3, 0.7], vec![1.0]).unwrap().is_uniform());
    }

    #[test]
    fn random_variable_values() {
        let space = uniform_space(singlet_2x2([0.0, 1.0], [0.0, 1.0]));
        let w = Atom::new(1, Plus, 2, Minus);
        assert_eq!(space.eval_a(&w, 1).unwrap(), 1);
        assert_eq!(space.eval_a(&Atom::new(2, Plus, 1, Minus), 1).unwrap(), 0);
        assert_eq!(space.eval_b(&w, 2).unwrap(), -1);
        assert_eq!(space.eval_b(&w, 1).unwrap(), 0);
        assert!(matches!(
            space.eval_a(&w, 3),
            Err(Error::IndexOutOfRange {
                side: Side::A,
                index: 3,
                max: 2
            })
        ));
        assert!(space.eval_b(&w, 0).is_err());

        assert_eq!(KolmogorovSpace::eval_eta_a(&w), 1);
        assert_eq!(KolmogorovSpace::eval_eta_b(&w), 2);
        assert_eq!(KolmogorovSpace::eval_eta_a(&Atom::new(2, Minus, 1, Plus)), 2);
    }

    #[test]
    fn padded_notation_bijection() {
        let w = Atom::new(1, Plus, 2, Minus);
        assert_eq!(w.to_padded(), Some([1, 0, 0, -1]));
        assert_eq!(Atom::new(2, Minus, 1, Plus).to_padded(), Some([0, -1, 1, 0]));
        for atom in all_atoms(2, 2) {
            assert_eq!(Atom::from_padded(atom.to_padded().unwrap()), Some(atom));
        }
        assert_eq!(Atom::new(3, Plus, 1, Plus).to_padded(), None);
        assert_eq!(Atom::from_padded([1, 1, 1, 0]), None);
        assert_eq!(Atom::from_padded([0, 0, 1, 0]), None);
        assert_eq!(Atom::from_padded([2, 0, 1, 0]), None);
    }

    #[test]
    fn event_probabilities() {
        let space = uniform_space(singlet_2x2([0.0, 0.7], [0.2, -1.1]));
        assert!((space.probability(&Event::eta_a(1)) - 0.5).abs() < 1e-15);
        let both = Event::a_equals(1, 1).and(&Event::a_equals(2, 1));
        assert_eq!(space.probability(&both), 0.0);
        assert!((space.probability(&Event::always()) - 1.0).abs() < 1e-15);
        assert_eq!(space.probability(&Event::never()), 0.0);
        let e = Event::eta_a(1);
        assert!((space.probability(&e.or(&e.not())) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn conditioning_recovers_tables_and_closed_channels() {
        let space = uniform_space(singlet_2x2([0.0, 0.7], [0.2, -1.1]));
        let table = *space.family().table(1, 1).unwrap();
        for o in Outcome::CANONICAL {
            let ev = Event::a_equals(1, o.a.value()).and(&Event::b_equals(1, o.b.value()));
            let p = space.conditional_probability(&ev, &Event::context(1, 1)).unwrap();
            assert!((p - table.get(o)).abs() < 1e-12);
            let closed = space.conditional_probability(&ev, &Event::context(2, 1)).unwrap();
            assert_eq!(closed, 0.0);
        }
        let p = space
            .conditional_probability(&Event::always(), &Event::eta_a(1))
            .unwrap();
        assert!((p - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_probability_condition_is_an_error() {
        let space = uniform_space(singlet_2x2([0.0, 0.0], [0.0, 0.0]));
        // Δ = 0 everywhere: A and B never disagree
        let given = Event::a_equals(1, 1).and(&Event::b_equals(1, -1));
        assert!(matches!(
            space.conditional_probability(&Event::always(), &given),
            Err(Error::ConditionHasZeroProbability)
        ));
        assert!(space
            .conditional_probability(&Event::always(), &Event::never())
            .is_err());
    }

    #[test]
    fn joint_distribution_cells() {
        let space = uniform_space(singlet_2x2([0.0, std::f64::consts::FRAC_PI_2], [FRAC_PI_4, -FRAC_PI_4]));
        let jd = space.joint_distribution(1, 1).unwrap();
        let t = space.family().table(1, 1).unwrap();
        for o in Outcome::CANONICAL {
            assert!((jd.get(o.a.value(), o.b.value()) - 0.25 * t.get(o)).abs() < 1e-15);
        }
        // A⁽¹⁾ = +1, B⁽¹⁾ = 0 is context (1, 2) with ε = +1: ¼ · ½
        let expected: f64 = [Plus, Minus]
            .iter()
            .map(|&b| space.measure(&Atom::new(1, Plus, 2, b)))
            .sum();
        assert!((jd.get(1, 0) - expected).abs() < 1e-15);
        assert!((jd.get(1, 0) - 0.125).abs() < 1e-15);
        // both zero: context (2, 2)
        assert!((jd.get(0, 0) - 0.25).abs() < 1e-15);
        assert!((jd.total() - 1.0).abs() < 1e-15);
        assert!(space.joint_distribution(1, 3).is_err());
    }

    #[test]
    fn eta_independence_under_product_weights() {
        let space = uniform_space(singlet_2x2([0.0, 0.7], [0.2, -1.1]));
        let report = space.independence_check_eta();
        assert!(report.independent);
        assert!(report.max_deviation < 1e-12);
        assert!((space.probability(&Event::context(1, 1)) - 0.25).abs() < 1e-15);

        let fam = singlet_2x2([0.0, 0.7], [0.2, -1.1]);
        let w = ContextWeights::new(vec![0.2, 0.8], vec![0.65, 0.35]).unwrap();
        let space = build_space(fam, w).unwrap();
        let report = space.independence_check_eta();
        assert!(report.independent, "{report:?}");
        assert!((report.p_eta_a[0] - 0.2).abs() < 1e-12);
        assert!((report.p_eta_b[1] - 0.35).abs() < 1e-12);
    }

    #[test]
    fn non_product_measure_is_detected() {
        let fam = singlet_2x2([0.0, 0.7], [0.2, -1.1]);
        let w = ContextWeights::uniform(2, 2);
        // contexts (1,1) and (2,2) get 0.4 each, the others 0.1
        let raw = KolmogorovSpace::with_raw_measure(fam.clone(), w, |a| {
            let ctx = if a.i == a.j { 0.4 } else { 0.1 };
            ctx * fam.table(a.i, a.j).unwrap().get(a.outcome())
        });
        let report = raw.independence_check_eta();
        assert!(!report.independent);
        // P(η_a=1, η_b=1) = 0.4 vs 0.5 · 0.5
        assert!((report.max_deviation - 0.15).abs() < 1e-12);
    }

    #[test]
    fn dump_is_sorted_with_minus_first() {
        let space = uniform_space(singlet_2x2([0.0, 0.7], [0.2, -1.1]));
        let dump = space.dump();
        assert_eq!(dump.len(), 16);
        assert_eq!(
            (dump[0].i, dump[0].eps, dump[0].j, dump[0].eps_prime),
            (1, Minus, 1, Minus)
        );
        assert_eq!((dump[1].eps, dump[1].eps_prime), (Minus, Plus));
        assert_eq!((dump[2].j, dump[2].eps_prime), (2, Minus));
        assert_eq!((dump[4].eps, dump[4].j), (Plus, 1));
        assert!(dump
            .windows(2)
            .all(|w| { (w[0].i, w[0].eps, w[0].j, w[0].eps_prime) < (w[1].i, w[1].eps, w[1].j, w[1].eps_prime) }));
    }
}
