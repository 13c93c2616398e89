//! Implicative rewriting and the rewriting tactics.

use std::sync::Arc;

use super::canon::{fconv_canon, imp_canon};
use super::chain::imp_search_tac;
use super::{prove_goal, solved, Goal, Justification, Tactic};
use crate::conv::{beta_conv, first_conv, orelsec, Conv};
use crate::derived::truth;
use crate::error::{Error, Result};
use crate::fconv::{basic_fconv, first_fconv, FConv};
use crate::kernel::{self, Theory, Thm};
use crate::matching::{form_match_fixing, spec_all, term_match_fixing};
use crate::syntax::Formula;

/// `A1 ==> ... ==> An ==> C` as `([A1, ..., An], C)`.
fn strip_imps(f: &Formula) -> (Vec<Formula>, Formula) {
    let mut ants = Vec::new();
    let mut cur = f;
    while let Formula::Imp(a, b) = cur {
        ants.push((**a).clone());
        cur = b;
    }
    (ants, cur.clone())
}

/// Proves each antecedent of the instantiated theorem with `tac` and
/// discharges it by modus ponens.
fn discharge(tac: &Tactic, th: Thm, n: usize, token: &str) -> Result<Thm> {
    let mut th = th;
    for _ in 0..n {
        let a = th.concl().dest_imp()?.0.clone();
        let ath = prove_goal(tac, &Goal::new(Vec::new(), a)).map_err(|e| {
            if e.is_recoverable() {
                Error::failure(token)
            } else {
                e
            }
        })?;
        th = kernel::mp(&th, &ath)?;
    }
    Ok(th)
}

/// Rewrites with `A1 ==> ... ==> An ==> t == u`, proving the instantiated
/// antecedents with `tac`.
pub fn imp_rew_conv(tac: &Tactic, th: &Thm) -> Result<Conv> {
    let body = spec_all(th)?;
    let (ants, c) = strip_imps(body.concl());
    let lhs = c.dest_equiv().map_err(|_| Error::failure("IMP_REW_CONV"))?.0.clone();
    let n = ants.len();
    let tac = tac.clone();
    Ok(Conv::new(move |t| {
        let m = term_match_fixing(body.hyps(), &lhs, t)?;
        discharge(&tac, m.inst(&body)?, n, "IMP_REW_CONV")
    }))
}

/// The formula analogue of [`imp_rew_conv`], for `A1 ==> ... ==> An ==> (B <=> C)`.
pub fn imp_rew_fconv(tac: &Tactic, th: &Thm) -> Result<FConv> {
    let body = spec_all(th)?;
    let (ants, c) = strip_imps(body.concl());
    let lhs = c.dest_iff().map_err(|_| Error::failure("IMP_REW_FCONV"))?.0.clone();
    let n = ants.len();
    let tac = tac.clone();
    Ok(FConv::new(move |a| {
        let m = form_match_fixing(body.hyps(), &lhs, a)?;
        discharge(&tac, m.inst(&body)?, n, "IMP_REW_FCONV")
    }))
}

/// Converts the target `A` to `B`; when `B` is `TRUTH()` the goal is solved.
pub fn fconv_tac(f: &FConv) -> Tactic {
    let f = f.clone();
    Tactic::new(move |g| {
        let th = f.apply(&g.target)?;
        let b = th.concl().dest_iff()?.1.clone();
        if b.is_truth() {
            return Ok(solved(kernel::iff_mpr(&th, &truth())?));
        }
        let j: Justification = Arc::new(move |ths: &[Thm]| match ths {
            [thb] => kernel::iff_mpr(&th, thb),
            _ => Err(Error::failure("FCONV_TAC")),
        });
        Ok((vec![Goal::new(g.asms.clone(), b)], j))
    })
}

fn build_rewrite(thl: &[Thm]) -> Result<Tactic> {
    let mut thms = Vec::new();
    for th in thl {
        thms.extend(imp_canon(th)?);
    }
    let mut chain_thms = vec![Theory::pplambda().axiom("EQ_REFL")?];
    chain_thms.extend(thms.iter().cloned());
    let chain = imp_search_tac(&chain_thms);
    let convs: Vec<Conv> = thms.iter().filter_map(|th| imp_rew_conv(&chain, th).ok()).collect();
    let conv = orelsec(&first_conv(&convs), &beta_conv());
    let fconvs: Vec<FConv> = thms
        .iter()
        .filter_map(|th| fconv_canon(th).and_then(|c| imp_rew_fconv(&chain, &c)).ok())
        .collect();
    Ok(fconv_tac(&basic_fconv(&conv, &first_fconv(&fconvs))))
}

/// Rewrites the target with the theorems and the built-in simplifications,
/// solving antecedents by chaining.
pub fn rewrite_tac(thl: &[Thm]) -> Tactic {
    match build_rewrite(thl) {
        Ok(t) => t,
        Err(e) => Tactic::new(move |_| Err(e.clone())),
    }
}

/// [`rewrite_tac`] with the goal's assumptions placed before `thl`.
pub fn asm_rewrite_tac(thl: &[Thm]) -> Tactic {
    let thl = thl.to_vec();
    Tactic::new(move |g| {
        let mut all = g.asms.iter().map(kernel::assume).collect::<Result<Vec<_>>>()?;
        all.extend(thl.iter().cloned());
        rewrite_tac(&all).apply(g)
    })
}
