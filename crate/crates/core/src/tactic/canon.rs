//! Canonical forms: curried implication lists and formula rewrites.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::derived::truth;
use crate::error::{Error, Result};
use crate::kernel::{self, Thm};
use crate::syntax::formula::subst_form_unchecked;
use crate::syntax::term::{variant, Term, Var};
use crate::syntax::Formula;

fn names_of(th: &Thm) -> BTreeSet<Arc<str>> {
    let mut avoid = BTreeSet::new();
    for h in th.hyps() {
        h.all_var_names(&mut avoid);
    }
    th.concl().all_var_names(&mut avoid);
    avoid
}

fn free_in_hyps(th: &Thm, x: &Var) -> bool {
    th.hyps().iter().any(|h| h.has_free(x))
}

/// Splits a theorem into curried implications `A1 ==> ... ==> An ==> B`
/// with outer quantifiers stripped. Hypotheses pass through unchanged.
pub fn imp_canon(th: &Thm) -> Result<Vec<Thm>> {
    let mut out = Vec::new();
    canon(th, &mut out)?;
    Ok(out)
}

fn canon(th: &Thm, out: &mut Vec<Thm>) -> Result<()> {
    match th.concl() {
        Formula::Conj(..) => {
            canon(&kernel::conjunct1(th)?, out)?;
            canon(&kernel::conjunct2(th)?, out)
        }
        Formula::Forall(x, _) => {
            let y = if free_in_hyps(th, x) { variant(x, &names_of(th)) } else { x.clone() };
            canon(&kernel::spec(&Term::var(y), th)?, out)
        }
        Formula::Imp(a, b) => match &**a {
            Formula::Exists(x, body) => {
                let y = if free_in_hyps(th, x) || b.has_free(x) {
                    variant(x, &names_of(th))
                } else {
                    x.clone()
                };
                let a2 = subst_form_unchecked(body, &[(Term::var(y.clone()), x.clone())]);
                let ex = kernel::exists_intro(a, &Term::var(y), &kernel::assume(&a2)?)?;
                canon(&kernel::disch(&a2, &kernel::mp(th, &ex)?)?, out)
            }
            Formula::Conj(p, q) => {
                let pq = kernel::conj(&kernel::assume(p)?, &kernel::assume(q)?)?;
                let r = kernel::mp(th, &pq)?;
                canon(&kernel::disch(p, &kernel::disch(q, &r)?)?, out)
            }
            Formula::Disj(p, q) => {
                let l = kernel::mp(th, &kernel::disj1(&kernel::assume(p)?, q)?)?;
                canon(&kernel::disch(p, &l)?, out)?;
                let r = kernel::mp(th, &kernel::disj2(p, &kernel::assume(q)?)?)?;
                canon(&kernel::disch(q, &r)?, out)
            }
            _ => {
                let mut inner = Vec::new();
                canon(&kernel::mp(th, &kernel::assume(a)?)?, &mut inner)?;
                for t in inner {
                    out.push(kernel::disch(a, &t)?);
                }
                Ok(())
            }
        },
        _ => {
            out.push(th.clone());
            Ok(())
        }
    }
}

fn is_plain_pred(f: &Formula) -> bool {
    matches!(f, Formula::Pred(..)) && !f.is_truth() && !f.is_falsity()
}

/// Turns the consequent of a curried implication into an equivalence:
/// `P` becomes `P <=> TRUTH()`, `~P` becomes `P <=> FALSITY()`, and an
/// equivalence is kept. A bare `t == u` is a term rewrite and fails.
pub fn fconv_canon(th: &Thm) -> Result<Thm> {
    let c = th.concl();
    match c {
        Formula::Iff(..) => Ok(th.clone()),
        Formula::Imp(p, f) if f.is_falsity() && is_plain_pred(p) => {
            let ff = kernel::assume(f)?;
            kernel::iff_intro(th, &kernel::disch(f, &kernel::contr(p, &ff)?)?)
        }
        Formula::Pred(..) if is_plain_pred(c) && !c.is_equiv() => {
            let t = Formula::truth();
            kernel::iff_intro(&kernel::disch(c, &truth())?, &kernel::disch(&t, th)?)
        }
        Formula::Imp(a, _) => {
            let inner = fconv_canon(&kernel::mp(th, &kernel::assume(a)?)?)?;
            kernel::disch(a, &inner)
        }
        _ => Err(Error::failure("FCONV_CANON")),
    }
}
