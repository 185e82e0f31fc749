//! Seeded randomized audit engine.
//!
//! Every check is run for a fixed number of trials. Trial `t` of check `k`
//! draws all of its randomness from a generator seeded by
//! `derive(seed, k, t)`, so reports are independent of evaluation order and
//! can be reproduced from the `(seed, trials)` pair alone.

use std::fmt::Write as _;

use crate::rng::{derive, Rng};

/// Outcome of a single trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// A precondition was correctly refused (counted, not a failure).
    Refused,
    /// A property failed; carries a serialized counterexample.
    Fail(String),
}

/// A named randomized property over an instance `C`.
pub struct Check<C: ?Sized> {
    pub name: &'static str,
    pub run: Box<dyn Fn(&C, &mut Rng) -> Outcome + Send + Sync>,
}

impl<C: ?Sized> Check<C> {
    pub fn new(
        name: &'static str,
        run: impl Fn(&C, &mut Rng) -> Outcome + Send + Sync + 'static,
    ) -> Self {
        Check {
            name,
            run: Box::new(run),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: &'static str,
    pub trials: u64,
    pub failures: u64,
    pub refusals: u64,
    /// `(trial index, serialized diagram)` of the earliest failing trial.
    pub first_counterexample: Option<(u64, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub seed: u64,
    pub trials: u64,
    pub checks: Vec<CheckReport>,
}

impl AuditReport {
    pub fn total_failures(&self) -> u64 {
        self.checks.iter().map(|c| c.failures).sum()
    }

    pub fn total_refusals(&self) -> u64 {
        self.checks.iter().map(|c| c.refusals).sum()
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Deterministic textual rendering, one line per check.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "seed={} trials={}", self.seed, self.trials);
        for c in &self.checks {
            let _ = write!(
                out,
                "{}: trials={} failures={}",
                c.name, c.trials, c.failures
            );
            if c.refusals > 0 {
                let _ = write!(out, " refusals={}", c.refusals);
            }
            if let Some((t, cex)) = &c.first_counterexample {
                let _ = write!(out, " first_failure@{t}: {cex}");
            }
            let _ = writeln!(out);
        }
        let _ = writeln!(
            out,
            "total failures: {} (refusals: {})",
            self.total_failures(),
            self.total_refusals()
        );
        out
    }
}

fn run_trials<C: Sync + ?Sized>(
    instance: &C,
    check: &Check<C>,
    check_index: u64,
    trials: u64,
    seed: u64,
    jobs: usize,
) -> CheckReport {
    let outcome_of = |t: u64| {
        let mut rng = Rng::new(derive(seed, check_index, t));
        (check.run)(instance, &mut rng)
    };
    let outcomes: Vec<Outcome> = if jobs <= 1 || trials < 2 {
        (0..trials).map(outcome_of).collect()
    } else {
        // Fan trials out over a bounded set of worker threads; outcomes are
        // written by trial index, so the merge is schedule-independent.
        let mut slots: Vec<Option<Outcome>> = vec![None; trials as usize];
        let next = std::sync::atomic::AtomicU64::new(0);
        let slot_refs: Vec<std::sync::Mutex<&mut Option<Outcome>>> =
            slots.iter_mut().map(std::sync::Mutex::new).collect();
        std::thread::scope(|scope| {
            for _ in 0..jobs.min(trials as usize) {
                scope.spawn(|| loop {
                    let t = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if t >= trials {
                        break;
                    }
                    let outcome = outcome_of(t);
                    **slot_refs[t as usize].lock().expect("slot lock") = Some(outcome);
                });
            }
        });
        drop(slot_refs);
        slots
            .into_iter()
            .map(|s| s.expect("every trial ran"))
            .collect()
    };
    let mut failures = 0;
    let mut refusals = 0;
    let mut first = None;
    for (t, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Outcome::Pass => {}
            Outcome::Refused => refusals += 1,
            Outcome::Fail(cex) => {
                failures += 1;
                if first.is_none() {
                    first = Some((t as u64, cex));
                }
            }
        }
    }
    CheckReport {
        name: check.name,
        trials,
        failures,
        refusals,
        first_counterexample: first,
    }
}

/// Runs every check for `trials` trials. `jobs` bounds worker threads; the
/// report is byte-identical for any `jobs`.
pub fn audit<C: Sync + ?Sized>(
    instance: &C,
    checks: &[Check<C>],
    trials: u64,
    seed: u64,
    jobs: usize,
) -> AuditReport {
    assert!(trials >= 1, "audit requires at least one trial");
    let checks_out = checks
        .iter()
        .enumerate()
        .map(|(k, check)| run_trials(instance, check, k as u64, trials, seed, jobs))
        .collect();
    AuditReport {
        seed,
        trials,
        checks: checks_out,
    }
}
