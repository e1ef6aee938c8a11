//! Classical probability spaces that unify incompatible measurement contexts.
//!
//! Data from several contexts (pairs of settings `(i, j)`) is embedded into a
//! single finite sample space by treating the choice of context as random:
//! a gate on each side opens one channel with probabilities `u` and `v`, and
//! the outcome pair follows the context's table. Conditioning on the opened
//! channels recovers every table, so conditional correlations can reach
//! `2√2` in CHSH form, while the unconditional correlations, being random
//! variables on one space, obey the usual bound.
//!
//! ```
//! use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
//! use contextspace::{build_space, max_chsh, Angle, ContextFamily, ContextWeights};
//!
//! let a = [0.0, FRAC_PI_2].map(|x| Angle::new(x).unwrap());
//! let b = [FRAC_PI_4, -FRAC_PI_4].map(|x| Angle::new(x).unwrap());
//! let family = ContextFamily::singlet(&a, &b).unwrap();
//! let space = build_space(family, ContextWeights::uniform(2, 2)).unwrap();
//! let stat = max_chsh(&space).unwrap();
//! assert!((stat.value_conditional.abs() - 2.0 * 2f64.sqrt()).abs() < 1e-12);
//! assert!(stat.value_absolute.abs() <= 1.0);
//! ```

pub mod correlation;
pub mod error;
pub mod io;
pub mod simulate;
pub mod space;
pub mod tables;

pub use correlation::{
    absolute_correlation, bound_report, chsh, conditional_correlation, correlation_report, max_chsh, BoundCheck,
    BoundReport, ChshStatistic, CorrelationPair, CorrelationReport, SignPattern,
};
pub use error::{Error, Result};
pub use io::{build_family, parse_family, FamilyDocument};
pub use simulate::{
    convergence_check, estimate, estimate_partial, read_records, simulate, write_records, ConvergenceReport,
    EmpiricalEstimate, SimulationConfig, TrialRecord,
};
pub use space::{build_space, Atom, ContextWeights, Event, KolmogorovSpace};
pub use tables::{
    no_signaling_report, singlet_table, validate_table, Angle, ContextFamily, Model, NoSignalingReport, OutcomeTable,
    Side, Sign,
};
