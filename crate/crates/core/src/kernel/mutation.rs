//! Switches that disable individual side conditions of the rules, so that
//! tests can check that the suite notices. Only compiled in with the
//! `mutation-testing` feature; otherwise every check is always on.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// ABS_RULE stops checking that the bound variable is not free in the
    /// hypotheses.
    AbsFreeness,
    /// TRANS stops comparing the middle terms.
    TransMiddle,
    /// MP and IFF_MP stop comparing the antecedent.
    MpAntecedent,
    /// GEN stops checking freeness in the hypotheses.
    GenFreeness,
    /// INST stops checking that instantiated variables are absent from the
    /// hypotheses.
    InstHyps,
}

impl Mutation {
    pub const ALL: [Mutation; 5] = [
        Mutation::AbsFreeness,
        Mutation::TransMiddle,
        Mutation::MpAntecedent,
        Mutation::GenFreeness,
        Mutation::InstHyps,
    ];

    #[cfg(feature = "mutation-testing")]
    fn bit(self) -> u32 {
        1 << (self as u32)
    }
}

#[cfg(feature = "mutation-testing")]
thread_local! {
    static ACTIVE: std::cell::Cell<u32> = const { std::cell::Cell::new(0) };
}

#[cfg(feature = "mutation-testing")]
pub(crate) fn mutated(m: Mutation) -> bool {
    ACTIVE.with(|a| a.get() & m.bit() != 0)
}

#[cfg(not(feature = "mutation-testing"))]
#[inline(always)]
pub(crate) fn mutated(_: Mutation) -> bool {
    false
}

/// Runs `f` with the given side condition switched off on this thread.
#[cfg(feature = "mutation-testing")]
pub fn with_mutation<R>(m: Mutation, f: impl FnOnce() -> R) -> R {
    let saved = ACTIVE.with(|a| a.get());
    ACTIVE.with(|a| a.set(saved | m.bit()));
    let r = f();
    ACTIVE.with(|a| a.set(saved));
    r
}
