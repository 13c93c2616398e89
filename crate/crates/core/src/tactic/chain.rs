//! Backwards chaining through curried implications.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::{solved, Goal, Tactic};
use crate::error::{Error, Result};
use crate::kernel::{self, Thm};
use crate::matching::{form_match_fixing, spec_all};
use crate::syntax::print::print_form;
use crate::syntax::{alpha_eq_form, Formula};

pub const DEFAULT_SEARCH_DEPTH: usize = 50;

/// One node of a successful search: the goal, how it was closed, and the
/// nodes for the instantiated antecedents.
#[derive(Clone, Debug)]
pub struct SearchNode {
    pub goal: Formula,
    /// `None` when an assumption closed the goal, otherwise the theorem used.
    pub by: Option<Thm>,
    pub children: Vec<SearchNode>,
}

impl SearchNode {
    /// Printed goals of the nodes without children.
    pub fn leaves(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut BTreeSet<String>) {
        if self.children.is_empty() {
            out.insert(print_form(&self.goal));
        }
        for c in &self.children {
            c.collect_leaves(out);
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, indent: usize) -> fmt::Result {
        write!(f, "{:width$}{}", "", print_form(&self.goal), width = indent)?;
        if self.by.is_none() {
            write!(f, "  [assumption]")?;
        }
        for c in &self.children {
            writeln!(f)?;
            c.write(f, indent + 2)?;
        }
        Ok(())
    }
}

impl fmt::Display for SearchNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

/// A theorem body with outer quantifiers stripped, and its consequents
/// after stripping 0, 1, ... antecedents. A consequent of `FALSITY()` is
/// left out, so `~A` is never used to prove `FALSITY()`.
struct Rule {
    body: Thm,
    consequents: Vec<Formula>,
}

impl Rule {
    fn new(th: &Thm) -> Result<Rule> {
        let body = spec_all(th)?;
        let mut consequents = vec![body.concl().clone()];
        let mut cur = body.concl().clone();
        while let Formula::Imp(_, b) = &cur {
            let b = (**b).clone();
            if b.is_falsity() {
                break;
            }
            consequents.push(b.clone());
            cur = b;
        }
        Ok(Rule { body, consequents })
    }
}

fn search(rules: &[Rule], asms: &[Formula], target: &Formula, depth: usize) -> Result<(Thm, SearchNode)> {
    if depth == 0 {
        return Err(Error::failure("IMP_SEARCH_TAC"));
    }
    if let Some(a) = asms.iter().find(|a| alpha_eq_form(a, target)) {
        let node = SearchNode { goal: target.clone(), by: None, children: Vec::new() };
        return Ok((kernel::assume(a)?, node));
    }
    for r in rules {
        for (k, c) in r.consequents.iter().enumerate() {
            let m = match form_match_fixing(r.body.hyps(), c, target) {
                Ok(m) => m,
                Err(e) if e.is_recoverable() => continue,
                Err(e) => return Err(e),
            };
            match prove_antecedents(rules, asms, &m.inst(&r.body)?, k, depth) {
                Ok((th, children)) => {
                    let node = SearchNode { goal: target.clone(), by: Some(r.body.clone()), children };
                    return Ok((th, node));
                }
                Err(e) if e.is_recoverable() => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Err(Error::failure("IMP_SEARCH_TAC"))
}

fn prove_antecedents(
    rules: &[Rule],
    asms: &[Formula],
    th: &Thm,
    k: usize,
    depth: usize,
) -> Result<(Thm, Vec<SearchNode>)> {
    let mut th = th.clone();
    let mut children = Vec::new();
    for _ in 0..k {
        let a = th.concl().dest_imp()?.0.clone();
        let (ath, node) = search(rules, asms, &a, depth - 1)?;
        th = kernel::mp(&th, &ath)?;
        children.push(node);
    }
    Ok((th, children))
}

/// Proves `goal` by depth-first chaining, returning the theorem and the
/// search tree. Fails with `IMP_SEARCH_TAC`.
pub fn imp_search(thms: &[Thm], goal: &Goal, depth: usize) -> Result<(Thm, SearchNode)> {
    let rules = thms.iter().map(Rule::new).collect::<Result<Vec<_>>>()?;
    search(&rules, &goal.asms, &goal.target, depth)
}

pub fn imp_search_tac(thms: &[Thm]) -> Tactic {
    imp_search_tac_depth(thms, DEFAULT_SEARCH_DEPTH)
}

pub fn imp_search_tac_depth(thms: &[Thm], depth: usize) -> Tactic {
    let rules: Arc<Result<Vec<Rule>>> = Arc::new(thms.iter().map(Rule::new).collect());
    Tactic::new(move |g| {
        let rules = rules.as_ref().as_ref().map_err(Clone::clone)?;
        let (th, _) = search(rules, &g.asms, &g.target, depth)?;
        Ok(solved(th))
    })
}
