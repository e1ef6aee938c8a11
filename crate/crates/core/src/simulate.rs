//! Trial-by-trial simulation of the gated two-lab experiment.
//!
//! Each trial consumes exactly three uniform draws from one Xoshiro256++
//! stream (seeded from a `u64` through SplitMix64), in this order:
//!
//! 1. side A's open channel `i ~ u`,
//! 2. side B's open channel `j ~ v`,
//! 3. the outcome pair `(ε, ε′) ~ p_ij`.
//!
//! A uniform draw is `(next_u64 >> 11) · 2⁻⁵³`. Every categorical draw is an
//! inverse-CDF lookup: the first category whose running total exceeds the
//! draw. Outcomes use the canonical order `(+,+), (+,−), (−,+), (−,−)`.

use std::io::{Read, Write};

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlation::{BoundReport, ChshStatistic, CHSH_CONTEXTS};
use crate::error::{Error, Result};
use crate::space::{ContextWeights, KolmogorovSpace};
use crate::tables::{ContextFamily, Outcome, Side, Sign};

/// Column names of the trial-record CSV.
pub const CSV_HEADER: [&str; 5] = ["trial_id", "eta_a", "eta_b", "a", "b"];

/// One trial: which channel opened on each side and the value behind it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_id: u64,
    pub eta_a: usize,
    pub eta_b: usize,
    pub a: Sign,
    pub b: Sign,
}

impl TrialRecord {
    /// `A⁽ⁱ⁾` for this trial; 0 for a blocked channel.
    pub fn a_value(&self, i: usize) -> i8 {
        if i == self.eta_a {
            self.a.value()
        } else {
            0
        }
    }

    /// `B⁽ʲ⁾` for this trial; 0 for a blocked channel.
    pub fn b_value(&self, j: usize) -> i8 {
        if j == self.eta_b {
            self.b.value()
        } else {
            0
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimulationConfig {
    pub trials: u64,
    pub seed: u64,
    pub family: ContextFamily,
    pub weights: ContextWeights,
}

impl SimulationConfig {
    pub fn new(family: ContextFamily, weights: ContextWeights, trials: u64, seed: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::NoTrials);
        }
        if weights.u().len() != family.m() {
            return Err(Error::DimensionMismatch {
                side: Side::A,
                expected: family.m(),
                got: weights.u().len(),
            });
        }
        if weights.v().len() != family.n() {
            return Err(Error::DimensionMismatch {
                side: Side::B,
                expected: family.n(),
                got: weights.v().len(),
            });
        }
        Ok(Self {
            trials,
            seed,
            family,
            weights,
        })
    }
}

fn unit_draw(rng: &mut Xoshiro256PlusPlus) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Index of the first category whose cumulative probability exceeds `x`.
/// Falls back to the last category with positive mass if rounding leaves the
/// total just under `x`.
fn inverse_cdf(probs: &[f64], x: f64) -> usize {
    let mut acc = 0.0;
    for (k, p) in probs.iter().enumerate() {
        acc += p;
        if x < acc {
            return k;
        }
    }
    probs.iter().rposition(|&p| p > 0.0).unwrap_or(probs.len() - 1)
}

/// Iterator over the trials of one run.
#[derive(Debug, Clone)]
pub struct Simulator {
    rng: Xoshiro256PlusPlus,
    u: Vec<f64>,
    v: Vec<f64>,
    n: usize,
    tables: Vec<[f64; 4]>,
    next_id: u64,
    trials: u64,
}

/// Starts a run. Identical configs (including the seed) yield identical
/// streams.
pub fn simulate(config: &SimulationConfig) -> Simulator {
    Simulator {
        rng: Xoshiro256PlusPlus::seed_from_u64(config.seed),
        u: config.weights.u().to_vec(),
        v: config.weights.v().to_vec(),
        n: config.family.n(),
        tables: config.family.contexts().map(|(_, _, t)| t.entries()).collect(),
        next_id: 0,
        trials: config.trials,
    }
}

impl Iterator for Simulator {
    type Item = TrialRecord;

    fn next(&mut self) -> Option<TrialRecord> {
        if self.next_id >= self.trials {
            return None;
        }
        let i = inverse_cdf(&self.u, unit_draw(&mut self.rng));
        let j = inverse_cdf(&self.v, unit_draw(&mut self.rng));
        let outcome = Outcome::CANONICAL[inverse_cdf(&self.tables[i * self.n + j], unit_draw(&mut self.rng))];
        let record = TrialRecord {
            trial_id: self.next_id,
            eta_a: i + 1,
            eta_b: j + 1,
            a: outcome.a,
            b: outcome.b,
        };
        self.next_id += 1;
        Some(record)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.trials - self.next_id) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Simulator {}

/// Outcome counts per context, in canonical outcome order. Counts from
/// disjoint record sets merge by addition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counts {
    m: usize,
    n: usize,
    cells: Vec<[u64; 4]>,
}

impl Counts {
    pub fn new(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            cells: vec![[0; 4]; m * n],
        }
    }

    /// Tallies `records`, numbering rows from `first_row` in diagnostics.
    fn tally(records: &[TrialRecord], m: usize, n: usize, first_row: usize) -> Result<Self> {
        let mut counts = Self::new(m, n);
        for (k, r) in records.iter().enumerate() {
            if r.eta_a == 0 || r.eta_a > m || r.eta_b == 0 || r.eta_b > n {
                return Err(Error::InvalidRecord {
                    row: first_row + k,
                    reason: format!("context ({},{}) is outside the {m}x{n} grid", r.eta_a, r.eta_b),
                });
            }
            counts.cells[(r.eta_a - 1) * n + (r.eta_b - 1)][Outcome::new(r.a, r.b).index()] += 1;
        }
        Ok(counts)
    }

    pub fn merge(mut self, other: &Counts) -> Self {
        assert_eq!(
            (self.m, self.n),
            (other.m, other.n),
            "merging counts of different grids"
        );
        for (a, b) in self.cells.iter_mut().zip(&other.cells) {
            for k in 0..4 {
                a[k] += b[k];
            }
        }
        self
    }

    pub fn get(&self, i: usize, j: usize) -> [u64; 4] {
        self.cells[(i - 1) * self.n + (j - 1)]
    }

    pub fn total(&self) -> u64 {
        self.cells.iter().flatten().sum()
    }
}

const TALLY_CHUNK: usize = 1 << 16;

/// Counts records in parallel chunks. Row numbers in errors are 1-based.
pub fn tally(records: &[TrialRecord], m: usize, n: usize) -> Result<Counts> {
    records
        .par_chunks(TALLY_CHUNK)
        .enumerate()
        .map(|(c, chunk)| Counts::tally(chunk, m, n, c * TALLY_CHUNK + 1))
        .try_reduce(|| Counts::new(m, n), |a, b| Ok(a.merge(&b)))
}

/// Frequency estimates for one non-empty context.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContextEstimate {
    pub i: usize,
    pub j: usize,
    pub count: u64,
    pub counts: [u64; 4],
    pub p_hat: [f64; 4],
    pub p_stderr: [f64; 4],
    pub conditional: f64,
    pub conditional_stderr: f64,
    pub absolute: f64,
    pub absolute_stderr: f64,
}

/// Empirical counterpart of the exact space quantities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalEstimate {
    pub m: usize,
    pub n: usize,
    pub trials: u64,
    /// Row-major; `None` for contexts without trials.
    pub contexts: Vec<Option<ContextEstimate>>,
    pub gate_a: Vec<f64>,
    pub gate_b: Vec<f64>,
}

impl EmpiricalEstimate {
    pub fn from_counts(counts: &Counts) -> Self {
        let total = counts.total();
        let nf = total as f64;
        let mut contexts = Vec::with_capacity(counts.cells.len());
        let mut gate_a = vec![0u64; counts.m];
        let mut gate_b = vec![0u64; counts.n];
        for (k, cell) in counts.cells.iter().enumerate() {
            let (i, j) = (k / counts.n + 1, k % counts.n + 1);
            let count: u64 = cell.iter().sum();
            gate_a[i - 1] += count;
            gate_b[j - 1] += count;
            if count == 0 {
                contexts.push(None);
                continue;
            }
            let cf = count as f64;
            let p_hat = cell.map(|c| c as f64 / cf);
            let p_stderr = p_hat.map(|p| (p * (1.0 - p) / cf).sqrt());
            let signed: i64 = Outcome::CANONICAL
                .iter()
                .map(|o| i64::from(o.a.value() * o.b.value()) * cell[o.index()] as i64)
                .sum();
            let conditional = signed as f64 / cf;
            let absolute = signed as f64 / nf;
            contexts.push(Some(ContextEstimate {
                i,
                j,
                count,
                counts: *cell,
                p_hat,
                p_stderr,
                conditional,
                conditional_stderr: ((1.0 - conditional * conditional).max(0.0) / cf).sqrt(),
                absolute,
                absolute_stderr: ((cf / nf - absolute * absolute).max(0.0) / nf).sqrt(),
            }));
        }
        let freq = |g: Vec<u64>| g.into_iter().map(|c| c as f64 / nf).collect();
        Self {
            m: counts.m,
            n: counts.n,
            trials: total,
            contexts,
            gate_a: freq(gate_a),
            gate_b: freq(gate_b),
        }
    }

    pub fn context(&self, i: usize, j: usize) -> Result<&ContextEstimate> {
        if i == 0 || i > self.m || j == 0 || j > self.n {
            return Err(Error::IndexOutOfRange {
                side: if i == 0 || i > self.m { Side::A } else { Side::B },
                index: if i == 0 || i > self.m { i } else { j },
                max: if i == 0 || i > self.m { self.m } else { self.n },
            });
        }
        self.contexts[(i - 1) * self.n + (j - 1)]
            .as_ref()
            .ok_or(Error::EmptyContext { i, j })
    }

    pub fn empty_contexts(&self) -> Vec<(usize, usize)> {
        self.contexts
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_none())
            .map(|(k, _)| (k / self.n + 1, k % self.n + 1))
            .collect()
    }

    fn chsh_inputs(&self) -> Option<([f64; 4], [f64; 4])> {
        if (self.m, self.n) != (2, 2) {
            return None;
        }
        let mut cond = [0.0; 4];
        let mut abs = [0.0; 4];
        for (k, &(i, j)) in CHSH_CONTEXTS.iter().enumerate() {
            let c = self.context(i, j).ok()?;
            cond[k] = c.conditional;
            abs[k] = c.absolute;
        }
        Some((cond, abs))
    }

    /// Empirical CHSH with the pattern maximizing `|Ĉ|`; needs a 2×2 grid with
    /// every context observed.
    pub fn max_chsh(&self) -> Option<ChshStatistic> {
        self.chsh_inputs().map(|(c, a)| ChshStatistic::maximize(c, a))
    }

    /// Bound verdicts on the empirical correlations. The absolute estimates of
    /// the four contexts partition the trials, so the ≤ 1 check applies to any
    /// gate weights.
    pub fn bounds(&self) -> Option<BoundReport> {
        self.chsh_inputs().map(|(c, a)| BoundReport::evaluate(c, a, true))
    }
}

/// Estimates from a record set, failing on the first context with no trials.
pub fn estimate(records: &[TrialRecord], m: usize, n: usize) -> Result<EmpiricalEstimate> {
    let est = estimate_partial(records, m, n)?;
    if let Some(&(i, j)) = est.empty_contexts().first() {
        return Err(Error::EmptyContext { i, j });
    }
    Ok(est)
}

/// Like [`estimate`], but leaves empty contexts as `None`.
pub fn estimate_partial(records: &[TrialRecord], m: usize, n: usize) -> Result<EmpiricalEstimate> {
    if m == 0 || n == 0 {
        return Err(Error::EmptyGrid { m, n });
    }
    Ok(EmpiricalEstimate::from_counts(&tally(records, m, n)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantityCheck {
    pub quantity: String,
    /// `None` when the context had no trials.
    pub empirical: Option<f64>,
    pub exact: f64,
    pub allowed: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub tolerance: f64,
    pub checks: Vec<QuantityCheck>,
    pub all_pass: bool,
}

impl ConvergenceReport {
    pub fn failures(&self) -> impl Iterator<Item = &QuantityCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Compares every `p̂`, `Ĉ`, `Ê` with its exact value. A quantity fails when
/// it deviates by more than `max(tolerance, 5·stderr)`.
pub fn convergence_check(
    estimate: &EmpiricalEstimate,
    space: &KolmogorovSpace,
    tolerance: f64,
) -> Result<ConvergenceReport> {
    if (estimate.m, estimate.n) != (space.m(), space.n()) {
        return Err(Error::DimensionMismatch {
            side: if estimate.m != space.m() { Side::A } else { Side::B },
            expected: if estimate.m != space.m() { space.m() } else { space.n() },
            got: if estimate.m != space.m() {
                estimate.m
            } else {
                estimate.n
            },
        });
    }
    let check = |quantity: String, empirical: Option<f64>, stderr: f64, exact: f64| {
        let allowed = tolerance.max(5.0 * stderr);
        QuantityCheck {
            quantity,
            empirical,
            exact,
            allowed,
            pass: empirical.is_some_and(|e| (e - exact).abs() <= allowed),
        }
    };
    let mut checks = Vec::new();
    for (i, j, table) in space.family().contexts() {
        let est = estimate.context(i, j).ok();
        let exact_c = table.correlation();
        for o in Outcome::CANONICAL {
            let k = o.index();
            checks.push(check(
                format!("p({i},{j}){o}"),
                est.map(|e| e.p_hat[k]),
                est.map_or(0.0, |e| e.p_stderr[k]),
                table.get(o),
            ));
        }
        checks.push(check(
            format!("C({i},{j})"),
            est.map(|e| e.conditional),
            est.map_or(0.0, |e| e.conditional_stderr),
            exact_c,
        ));
        checks.push(check(
            format!("E({i},{j})"),
            Some(est.map_or(0.0, |e| e.absolute)),
            est.map_or(0.0, |e| e.absolute_stderr),
            space.weights().joint(i, j) * exact_c,
        ));
    }
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(ConvergenceReport {
        tolerance,
        checks,
        all_pass,
    })
}

/// Writes records as CSV with LF line endings.
pub fn write_records<W: Write>(records: impl IntoIterator<Item = TrialRecord>, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(true)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Deserialize)]
struct RawRecord {
    trial_id: String,
    eta_a: String,
    eta_b: String,
    a: String,
    b: String,
}

fn parse_int(row: usize, field: &str, raw: &str) -> Result<i64> {
    raw.trim().parse().map_err(|_| Error::InvalidRecord {
        row,
        reason: format!("{field} = {raw:?} is not an integer"),
    })
}

/// Reads and validates trial-record CSV against an `m × n` grid. Rows are
/// numbered from 1, not counting the header.
pub fn read_records<R: Read>(input: R, m: usize, n: usize) -> Result<Vec<TrialRecord>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let headers = rdr.headers()?.clone();
    if headers.iter().ne(CSV_HEADER) {
        return Err(Error::InvalidRecord {
            row: 0,
            reason: format!(
                "header must be {}, found {}",
                CSV_HEADER.join(","),
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut records = Vec::new();
    for (k, raw) in rdr.deserialize::<RawRecord>().enumerate() {
        let row = k + 1;
        let raw = raw.map_err(|e| Error::InvalidRecord {
            row,
            reason: e.to_string(),
        })?;
        let trial_id = parse_int(row, "trial_id", &raw.trial_id)?;
        let eta_a = parse_int(row, "eta_a", &raw.eta_a)?;
        let eta_b = parse_int(row, "eta_b", &raw.eta_b)?;
        let bad = |reason: String| Error::InvalidRecord { row, reason };
        if trial_id < 0 {
            return Err(bad(format!("trial_id {trial_id} is negative")));
        }
        if eta_a < 1 || eta_a > m as i64 {
            return Err(bad(format!("eta_a = {eta_a} is outside 1..={m}")));
        }
        if eta_b < 1 || eta_b > n as i64 {
            return Err(bad(format!("eta_b = {eta_b} is outside 1..={n}")));
        }
        let a = Sign::from_value(parse_int(row, "a", &raw.a)?)
            .ok_or_else(|| bad(format!("a = {} is not -1 or 1", raw.a)))?;
        let b = Sign::from_value(parse_int(row, "b", &raw.b)?)
            .ok_or_else(|| bad(format!("b = {} is not -1 or 1", raw.b)))?;
        records.push(TrialRecord {
            trial_id: trial_id as u64,
            eta_a: eta_a as usize,
            eta_b: eta_b as usize,
            a,
            b,
        });
    }
    Ok(records)
}
