//! Human-readable reports. Floats use `{}` so every value printed here is
//! the same shortest round-trip form the JSON report carries.

use std::fmt::Write;

use contextspace::correlation::{BoundCheck, BoundReport, ChshStatistic, CorrelationReport};
use contextspace::simulate::{ConvergenceReport, EmpiricalEstimate};
use contextspace::space::IndependenceReport;
use contextspace::tables::{NoSignalingReport, Outcome};

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn bound_line(out: &mut String, name: &str, what: &str, b: &BoundCheck) {
    let _ = writeln!(out, "  {name}: {what} {} <= {}: {}", b.value, b.limit, verdict(b.pass));
}

pub fn chsh_and_bounds(
    chsh: Option<&ChshStatistic>,
    bounds: Option<&BoundReport>,
    m: usize,
    n: usize,
    prefix: &str,
) -> String {
    let mut out = String::new();
    match chsh {
        Some(s) => {
            let _ = writeln!(out, "{prefix}CHSH pattern {}", s.pattern);
            let _ = writeln!(out, "  conditional: {}", s.value_conditional);
            let _ = writeln!(out, "  absolute: {}", s.value_absolute);
        }
        None if (m, n) != (2, 2) => {
            let _ = writeln!(out, "{prefix}CHSH: not applicable to a {m}x{n} grid");
        }
        None => {
            let _ = writeln!(out, "{prefix}CHSH: not available (some contexts have no trials)");
        }
    }
    if let Some(b) = bounds {
        let _ = writeln!(out, "bounds:");
        bound_line(&mut out, "b2", "|absolute CHSH|", &b.b2);
        match &b.b1 {
            Some(b1) => bound_line(&mut out, "b1", "|absolute CHSH|", b1),
            None => {
                let _ = writeln!(out, "  b1: not checked (non-uniform weights)");
            }
        }
        bound_line(&mut out, "b4", "|conditional CHSH|", &b.b4);
        bound_line(&mut out, "b8", "|conditional CHSH|", &b.b8);
    }
    out
}

pub fn correlation_report(report: &CorrelationReport, m: usize, n: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "correlations ({m}x{n}):");
    let _ = writeln!(out, "  i  j  conditional  absolute");
    for p in &report.pairs {
        let _ = writeln!(out, "  {}  {}  {}  {}", p.i, p.j, p.conditional, p.absolute);
    }
    out + &chsh_and_bounds(report.chsh.as_ref(), report.bounds.as_ref(), m, n, "")
}

pub fn estimate(est: &EmpiricalEstimate) -> String {
    let mut out = String::new();
    let list = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    let _ = writeln!(out, "gate frequencies A: [{}]", list(&est.gate_a));
    let _ = writeln!(out, "gate frequencies B: [{}]", list(&est.gate_b));
    for c in est.contexts.iter().flatten() {
        let _ = writeln!(out, "context ({},{}): {} trials", c.i, c.j, c.count);
        for o in Outcome::CANONICAL {
            let k = o.index();
            let _ = writeln!(
                out,
                "  p{o} = {} ± {} ({} counts)",
                c.p_hat[k], c.p_stderr[k], c.counts[k]
            );
        }
        let _ = writeln!(out, "  conditional = {} ± {}", c.conditional, c.conditional_stderr);
        let _ = writeln!(out, "  absolute = {} ± {}", c.absolute, c.absolute_stderr);
    }
    out
}

pub fn convergence(report: &ConvergenceReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "convergence (tolerance {}): {}",
        report.tolerance,
        verdict(report.all_pass)
    );
    for c in &report.checks {
        let empirical = c.empirical.map_or("n/a".to_string(), |e| e.to_string());
        let _ = writeln!(
            out,
            "  {}: empirical {empirical} exact {} allowed {} {}",
            c.quantity,
            c.exact,
            c.allowed,
            verdict(c.pass)
        );
    }
    out
}

pub fn check(signaling: &NoSignalingReport, independence: &IndependenceReport) -> String {
    let mut out = String::from("tables: valid\n");
    let _ = writeln!(
        out,
        "no-signaling: {}",
        if signaling.signaling { "SIGNALING" } else { "ok" }
    );
    for (side, devs) in [("A", &signaling.side_a), ("B", &signaling.side_b)] {
        for d in devs {
            let _ = writeln!(
                out,
                "  side {side} setting {}: max marginal deviation {}{}",
                d.index,
                d.max_deviation,
                if d.signaling { " (signaling)" } else { "" }
            );
        }
    }
    let _ = writeln!(
        out,
        "gate independence: {} (max deviation {})",
        if independence.independent { "ok" } else { "VIOLATED" },
        independence.max_deviation
    );
    let list = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    let _ = writeln!(out, "  P(eta_a = i): [{}]", list(&independence.p_eta_a));
    let _ = writeln!(out, "  P(eta_b = j): [{}]", list(&independence.p_eta_b));
    out
}
