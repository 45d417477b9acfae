//! Verification runner: builds a plan from a configuration, runs the claim
//! catalog and renders the ledger.

pub mod claims;
pub mod config;
pub mod ledger;
pub mod tables;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use claims::{Context, Miss};
use config::{ConfigError, Plan, RunConfig};
use ledger::{Entry, Ledger, Verdict};

/// Runs the selected suites in canonical order.
pub fn run(plan: Plan) -> Ledger {
    match plan.config.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run_in_place(plan)),
            Err(_) => run_in_place(plan),
        },
        None => run_in_place(plan),
    }
}

fn run_in_place(plan: Plan) -> Ledger {
    let selected = claims::selected(&plan);
    let (fail_fast, timings) = (plan.config.fail_fast, plan.config.timings);
    let cx = Context::new(plan);
    let mut entries = Vec::with_capacity(selected.len());
    let mut stopped = false;
    for c in selected {
        let t0 = Instant::now();
        let (verdict, witness) = if stopped {
            (Verdict::Skipped, "not run after an earlier failure".to_string())
        } else {
            match catch_unwind(AssertUnwindSafe(|| (c.check)(&cx))) {
                Ok(Ok(w)) => (Verdict::Pass, w),
                Ok(Err(Miss::Fail(w))) => (Verdict::Fail, w),
                Ok(Err(Miss::Skip(w))) => (Verdict::Skipped, w),
                Err(p) => {
                    let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
                    (Verdict::Fail, format!("panic: {}", msg.unwrap_or_default()))
                }
            }
        };
        let ms = timings.then(|| t0.elapsed().as_millis() as u64);
        stopped |= fail_fast && verdict == Verdict::Fail;
        entries.push(Entry { claim: c.id.to_string(), anchor: c.anchor.to_string(), verdict, witness, ms });
    }
    Ledger { entries }
}

/// Validates, runs and writes the report; returns the process exit code.
pub fn verify(config: RunConfig) -> Result<i32, ConfigError> {
    let plan = config.validate()?;
    let (format, output) = (plan.config.format, plan.config.output.clone());
    let ledger = run(plan);
    ledger::emit(&ledger.render(format), output.as_deref()).map_err(|e| ConfigError::Output(output.unwrap_or_default(), e))?;
    Ok(if ledger.passed() { 0 } else { 1 })
}
