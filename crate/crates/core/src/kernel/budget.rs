//! Per-thread inference budget. Every rule application costs one step.

use std::cell::Cell;

use crate::error::{Error, Result};

thread_local! {
    static LIMIT: Cell<Option<u64>> = const { Cell::new(None) };
    static USED: Cell<u64> = const { Cell::new(0) };
}

/// Sets the budget for this thread and resets the counter. `None` means
/// unlimited.
pub fn set_step_limit(limit: Option<u64>) {
    LIMIT.with(|l| l.set(limit));
    USED.with(|u| u.set(0));
}

pub fn steps_used() -> u64 {
    USED.with(|u| u.get())
}

/// Runs `f` with a fresh budget of `limit` steps, restoring the previous
/// budget afterwards.
pub fn with_step_limit<R>(limit: Option<u64>, f: impl FnOnce() -> R) -> R {
    let saved = (LIMIT.with(|l| l.get()), steps_used());
    set_step_limit(limit);
    let r = f();
    LIMIT.with(|l| l.set(saved.0));
    USED.with(|u| u.set(saved.1));
    r
}

pub(crate) fn tick() -> Result<()> {
    let used = USED.with(|u| {
        let n = u.get() + 1;
        u.set(n);
        n
    });
    match LIMIT.with(|l| l.get()) {
        Some(limit) if used > limit => Err(Error::StepLimit(limit)),
        _ => Ok(()),
    }
}
