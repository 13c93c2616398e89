//! Goals, tactics and tacticals, and the rewriting tactics built on them.

mod canon;
mod chain;
mod rewrite;
mod state;

use std::fmt;
use std::sync::Arc;

use crate::conv::or_else;
use crate::error::{Error, Result};
use crate::kernel::Thm;
use crate::syntax::print::print_form;
use crate::syntax::{alpha_eq_form, Formula};

pub use canon::{fconv_canon, imp_canon};
pub use chain::{imp_search, imp_search_tac, imp_search_tac_depth, SearchNode, DEFAULT_SEARCH_DEPTH};
pub use rewrite::{asm_rewrite_tac, fconv_tac, imp_rew_conv, imp_rew_fconv, rewrite_tac};
pub use state::ProofState;

/// A sequent to be proved: assumptions and a target.
#[derive(Clone, Debug)]
pub struct Goal {
    pub asms: Vec<Formula>,
    pub target: Formula,
}

impl Goal {
    pub fn new(asms: Vec<Formula>, target: Formula) -> Goal {
        Goal { asms, target }
    }

    /// Whether `th` proves this goal: same conclusion up to alpha, and no
    /// hypotheses beyond the assumptions.
    pub fn achieved_by(&self, th: &Thm) -> bool {
        alpha_eq_form(th.concl(), &self.target)
            && th
                .hyps()
                .iter()
                .all(|h| self.asms.iter().any(|a| alpha_eq_form(a, h)))
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", print_form(&self.target))?;
        for a in &self.asms {
            write!(f, "\n  [ \"{}\" ]", print_form(a))?;
        }
        Ok(())
    }
}

/// Turns theorems achieving the subgoals, in order, into one achieving the
/// goal.
pub type Justification = Arc<dyn Fn(&[Thm]) -> Result<Thm> + Send + Sync>;

#[derive(Clone)]
pub struct Tactic(Arc<dyn Fn(&Goal) -> Result<(Vec<Goal>, Justification)> + Send + Sync>);

impl fmt::Debug for Tactic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "- : tactic")
    }
}

impl Tactic {
    pub fn new(
        f: impl Fn(&Goal) -> Result<(Vec<Goal>, Justification)> + Send + Sync + 'static,
    ) -> Tactic {
        Tactic(Arc::new(f))
    }

    pub fn apply(&self, g: &Goal) -> Result<(Vec<Goal>, Justification)> {
        (self.0)(g)
    }

    pub fn then(&self, other: &Tactic) -> Tactic {
        then(self, other)
    }

    pub fn orelse(&self, other: &Tactic) -> Tactic {
        orelse(self, other)
    }
}

/// A tactic that proves `g` outright, with no subgoals.
pub(crate) fn solved(th: Thm) -> (Vec<Goal>, Justification) {
    (Vec::new(), Arc::new(move |_: &[Thm]| Ok(th.clone())))
}

/// Runs `tac` on `g` and returns the theorem if no subgoals remain.
pub fn prove_goal(tac: &Tactic, g: &Goal) -> Result<Thm> {
    let (subs, just) = tac.apply(g)?;
    if !subs.is_empty() {
        return Err(Error::failure(format!("{} unsolved subgoals", subs.len())));
    }
    just(&[])
}

pub fn all_tac() -> Tactic {
    Tactic::new(|g| {
        let j: Justification = Arc::new(|ths: &[Thm]| {
            ths.first().cloned().ok_or_else(|| Error::failure("ALL_TAC"))
        });
        Ok((vec![g.clone()], j))
    })
}

pub fn no_tac() -> Tactic {
    Tactic::new(|_| Err(Error::failure("NO_TAC")))
}

/// Solves a goal that `th` achieves.
pub fn accept_tac(th: &Thm) -> Tactic {
    let th = th.clone();
    Tactic::new(move |g| {
        if g.achieved_by(&th) {
            Ok(solved(th.clone()))
        } else {
            Err(Error::failure("ACCEPT_TAC"))
        }
    })
}

/// Splits `A /\ B` into the goals `A` and `B`.
pub fn conj_tac() -> Tactic {
    Tactic::new(|g| match &g.target {
        Formula::Conj(a, b) => {
            let subs = vec![
                Goal::new(g.asms.clone(), (**a).clone()),
                Goal::new(g.asms.clone(), (**b).clone()),
            ];
            let j: Justification = Arc::new(|ths: &[Thm]| match ths {
                [x, y] => crate::kernel::conj(x, y),
                _ => Err(Error::failure("CONJ_TAC")),
            });
            Ok((subs, j))
        }
        _ => Err(Error::failure("CONJ_TAC")),
    })
}

/// Applies `t2` to every subgoal produced by `t1`.
pub fn then(t1: &Tactic, t2: &Tactic) -> Tactic {
    let (t1, t2) = (t1.clone(), t2.clone());
    Tactic::new(move |g| {
        let (subs, j1) = t1.apply(g)?;
        let mut all = Vec::new();
        let mut parts: Vec<(usize, Justification)> = Vec::new();
        for s in &subs {
            let (ss, j) = t2.apply(s)?;
            parts.push((ss.len(), j));
            all.extend(ss);
        }
        let j: Justification = Arc::new(move |ths: &[Thm]| {
            let mut rest = ths;
            let mut mid = Vec::new();
            for (n, j) in &parts {
                if rest.len() < *n {
                    return Err(Error::failure("THEN"));
                }
                let (now, later) = rest.split_at(*n);
                mid.push(j(now)?);
                rest = later;
            }
            j1(&mid)
        });
        Ok((all, j))
    })
}

pub fn orelse(t1: &Tactic, t2: &Tactic) -> Tactic {
    let (t1, t2) = (t1.clone(), t2.clone());
    Tactic::new(move |g| or_else(t1.apply(g), || t2.apply(g)))
}

/// `(t THEN REPEAT t) ORELSE ALL_TAC`: returns the subgoals on which `t`
/// fails.
pub fn repeat(t: &Tactic) -> Tactic {
    let t = t.clone();
    Tactic::new(move |g| orelse(&then(&t, &repeat(&t)), &all_tac()).apply(g))
}
