//! The goal stack behind `goal`, `expand` and `backup`.

use std::sync::Arc;

use super::{Goal, Justification, Tactic};
use crate::error::{Error, Result};
use crate::kernel::Thm;

#[derive(Clone)]
struct Frame {
    goal: Goal,
    subgoals: Vec<Goal>,
    /// Theorems for `subgoals[..proved.len()]`.
    proved: Vec<Thm>,
    just: Justification,
}

impl Frame {
    fn current(&self) -> Option<&Goal> {
        self.subgoals.get(self.proved.len())
    }
}

/// A partly expanded proof. Subgoals are solved left to right; finished
/// frames collapse into a theorem for their parent's current subgoal.
#[derive(Clone)]
pub struct ProofState {
    frames: Vec<Frame>,
    history: Vec<Vec<Frame>>,
    result: Option<Thm>,
}

impl ProofState {
    pub fn new(goal: Goal) -> ProofState {
        let just: Justification = Arc::new(|ths: &[Thm]| {
            ths.first().cloned().ok_or_else(|| Error::failure("goal"))
        });
        let frame = Frame { goal: goal.clone(), subgoals: vec![goal], proved: Vec::new(), just };
        ProofState { frames: vec![frame], history: Vec::new(), result: None }
    }

    /// The goal that `expand` works on next.
    pub fn current(&self) -> Option<&Goal> {
        self.frames.last().and_then(Frame::current)
    }

    /// Subgoals still open, the current one first.
    pub fn open_goals(&self) -> Vec<&Goal> {
        let mut out = Vec::new();
        for (i, f) in self.frames.iter().rev().enumerate() {
            // Below the top, the current subgoal is the one being expanded.
            let skip = f.proved.len() + usize::from(i > 0);
            out.extend(f.subgoals.iter().skip(skip));
        }
        out
    }

    /// The theorem proved for the original goal, once no subgoals remain.
    pub fn theorem(&self) -> Option<&Thm> {
        self.result.as_ref()
    }

    /// Applies `tac` to the current goal and returns the new subgoals.
    pub fn expand(&mut self, tac: &Tactic) -> Result<Vec<Goal>> {
        let g = self.current().cloned().ok_or_else(|| Error::failure("no goals"))?;
        let (subs, just) = tac.apply(&g)?;
        let saved = self.frames.clone();
        if subs.is_empty() {
            let th = just(&[])?;
            if !g.achieved_by(&th) {
                return Err(Error::failure("invalid tactic"));
            }
            self.frames.last_mut().expect("frame").proved.push(th);
            if let Err(e) = self.collapse() {
                self.frames = saved;
                self.result = None;
                return Err(e);
            }
        } else {
            self.frames.push(Frame { goal: g, subgoals: subs.clone(), proved: Vec::new(), just });
        }
        self.history.push(saved);
        Ok(subs)
    }

    fn collapse(&mut self) -> Result<()> {
        while let Some(top) = self.frames.last() {
            if top.proved.len() < top.subgoals.len() {
                return Ok(());
            }
            let th = (top.just)(&top.proved)?;
            if !top.goal.achieved_by(&th) {
                return Err(Error::failure("invalid tactic"));
            }
            if self.frames.len() == 1 {
                self.result = Some(th);
                self.frames[0].proved = vec![self.result.clone().expect("set")];
                return Ok(());
            }
            self.frames.pop();
            self.frames.last_mut().expect("parent").proved.push(th);
        }
        Ok(())
    }

    /// Undoes the last successful `expand`.
    pub fn backup(&mut self) -> Result<()> {
        let prev = self.history.pop().ok_or_else(|| Error::failure("backup"))?;
        self.frames = prev;
        self.result = None;
        Ok(())
    }
}
