//! Optional recording of derivations, and replay through the rules.

use std::cell::Cell;
use std::collections::HashMap;

use super::{Proof, Thm};
use crate::error::{Error, Result};

thread_local! {
    static AUDIT: Cell<bool> = const { Cell::new(false) };
}

pub fn set_audit(on: bool) {
    AUDIT.with(|a| a.set(on));
}

pub fn audit_enabled() -> bool {
    AUDIT.with(|a| a.get())
}

/// Runs `f` with recording switched on for this thread.
pub fn with_audit<R>(f: impl FnOnce() -> R) -> R {
    let saved = audit_enabled();
    set_audit(true);
    let r = f();
    set_audit(saved);
    r
}

/// Re-derives `th` from its recorded proof by applying the primitive rules
/// again, and checks that the result is the same sequent. Axiom leaves are
/// taken as given.
pub fn replay(th: &Thm) -> Result<Thm> {
    let saved = audit_enabled();
    set_audit(false);
    let r = Replayer { memo: HashMap::new() }.run(th);
    set_audit(saved);
    r
}

struct Replayer {
    memo: HashMap<*const (), Thm>,
}

impl Replayer {
    fn run(&mut self, th: &Thm) -> Result<Thm> {
        if let Some(t) = self.memo.get(&th.ptr()) {
            return Ok(t.clone());
        }
        let proof = th
            .proof()
            .ok_or_else(|| Error::failure("replay: theorem has no audit trail"))?
            .clone();
        let out = match &proof {
            Proof::Axiom => Thm::axiom(th.concl().clone())?,
            Proof::Assume(a) => super::assume(a)?,
            Proof::Refl(t) => super::refl(t)?,
            Proof::Trans(a, b) => super::trans(&self.run(a)?, &self.run(b)?)?,
            Proof::Sym(a) => super::sym(&self.run(a)?)?,
            Proof::MkComb(a, b) => super::mk_comb(&self.run(a)?, &self.run(b)?)?,
            Proof::Abs(x, a) => super::abs_rule(x, &self.run(a)?)?,
            Proof::Beta(t) => super::beta(t)?,
            Proof::Mp(a, b) => super::mp(&self.run(a)?, &self.run(b)?)?,
            Proof::Disch(f, a) => super::disch(f, &self.run(a)?)?,
            Proof::Gen(x, a) => super::gen(x, &self.run(a)?)?,
            Proof::Spec(t, a) => super::spec(t, &self.run(a)?)?,
            Proof::Conj(a, b) => super::conj(&self.run(a)?, &self.run(b)?)?,
            Proof::Conjunct1(a) => super::conjunct1(&self.run(a)?)?,
            Proof::Conjunct2(a) => super::conjunct2(&self.run(a)?)?,
            Proof::Disj1(a, f) => super::disj1(&self.run(a)?, f)?,
            Proof::Disj2(f, a) => super::disj2(f, &self.run(a)?)?,
            Proof::DisjCases(a, b, c) => {
                super::disj_cases(&self.run(a)?, &self.run(b)?, &self.run(c)?)?
            }
            Proof::ExistsIntro(f, t, a) => super::exists_intro(f, t, &self.run(a)?)?,
            Proof::ExistsElim(a, y, b) => super::exists_elim(&self.run(a)?, y, &self.run(b)?)?,
            Proof::IffIntro(a, b) => super::iff_intro(&self.run(a)?, &self.run(b)?)?,
            Proof::IffMp(a, b) => super::iff_mp(&self.run(a)?, &self.run(b)?)?,
            Proof::IffMpr(a, b) => super::iff_mpr(&self.run(a)?, &self.run(b)?)?,
            Proof::Contr(f, a) => super::contr(f, &self.run(a)?)?,
            Proof::PredCong(p, a) => super::pred_cong(p, &self.run(a)?)?,
            Proof::Inst(tm, ty, a) => super::inst(tm, ty, &self.run(a)?)?,
        };
        if !out.same(th) {
            return Err(Error::failure(format!("replay: derived {out}, recorded {th}")));
        }
        self.memo.insert(th.ptr(), out.clone());
        Ok(out)
    }
}
