//! Inference rules derived from the kernel's primitives.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::kernel::{self, Theory, Thm};
use crate::syntax::formula::subst_form_unchecked;
use crate::syntax::term::{variant, Term, Var};
use crate::syntax::Formula;

/// `|- TRUTH()`
pub fn truth() -> Thm {
    Theory::pplambda().axiom("TRUTH_INTRO").expect("builtin axiom")
}

/// `|- A <=> A`
pub fn iff_refl(a: &Formula) -> Result<Thm> {
    let d = kernel::disch(a, &kernel::assume(a)?)?;
    kernel::iff_intro(&d, &d)
}

/// From `|- A <=> B` infer `|- B <=> A`.
pub fn iff_sym(th: &Thm) -> Result<Thm> {
    let (a, b) = th.concl().dest_iff()?;
    let fwd = kernel::disch(b, &kernel::iff_mpr(th, &kernel::assume(b)?)?)?;
    let bwd = kernel::disch(a, &kernel::iff_mp(th, &kernel::assume(a)?)?)?;
    kernel::iff_intro(&fwd, &bwd)
}

/// From `|- A <=> B` and `|- B <=> C` infer `|- A <=> C`.
pub fn iff_trans(ab: &Thm, bc: &Thm) -> Result<Thm> {
    let (a, _) = ab.concl().dest_iff()?;
    let (_, c) = bc.concl().dest_iff()?;
    let fwd = kernel::iff_mp(bc, &kernel::iff_mp(ab, &kernel::assume(a)?)?)?;
    let bwd = kernel::iff_mpr(ab, &kernel::iff_mpr(bc, &kernel::assume(c)?)?)?;
    kernel::iff_intro(&kernel::disch(a, &fwd)?, &kernel::disch(c, &bwd)?)
}

/// Proves `A <=> B` from `[A] |- B` and `[B] |- A`.
pub fn iff_by(a: &Formula, b: &Formula, fwd: &Thm, bwd: &Thm) -> Result<Thm> {
    kernel::iff_intro(&kernel::disch(a, fwd)?, &kernel::disch(b, bwd)?)
}

fn sides(th: &Thm) -> Result<(Formula, Formula)> {
    let (a, b) = th.concl().dest_iff()?;
    Ok((a.clone(), b.clone()))
}

/// From `A <=> A2` and `B <=> B2` infer `A /\ B <=> A2 /\ B2`.
pub fn conj_cong(aa: &Thm, bb: &Thm) -> Result<Thm> {
    let ((a, a2), (b, b2)) = (sides(aa)?, sides(bb)?);
    let l = Formula::conj(a, b);
    let r = Formula::conj(a2, b2);
    let hl = kernel::assume(&l)?;
    let fwd = kernel::conj(
        &kernel::iff_mp(aa, &kernel::conjunct1(&hl)?)?,
        &kernel::iff_mp(bb, &kernel::conjunct2(&hl)?)?,
    )?;
    let hr = kernel::assume(&r)?;
    let bwd = kernel::conj(
        &kernel::iff_mpr(aa, &kernel::conjunct1(&hr)?)?,
        &kernel::iff_mpr(bb, &kernel::conjunct2(&hr)?)?,
    )?;
    iff_by(&l, &r, &fwd, &bwd)
}

/// From `A <=> A2` and `B <=> B2` infer `A \/ B <=> A2 \/ B2`.
pub fn disj_cong(aa: &Thm, bb: &Thm) -> Result<Thm> {
    let ((a, a2), (b, b2)) = (sides(aa)?, sides(bb)?);
    let l = Formula::disj(a.clone(), b.clone());
    let r = Formula::disj(a2.clone(), b2.clone());
    let fwd = kernel::disj_cases(
        &kernel::assume(&l)?,
        &kernel::disj1(&kernel::iff_mp(aa, &kernel::assume(&a)?)?, &b2)?,
        &kernel::disj2(&a2, &kernel::iff_mp(bb, &kernel::assume(&b)?)?)?,
    )?;
    let bwd = kernel::disj_cases(
        &kernel::assume(&r)?,
        &kernel::disj1(&kernel::iff_mpr(aa, &kernel::assume(&a2)?)?, &b)?,
        &kernel::disj2(&a, &kernel::iff_mpr(bb, &kernel::assume(&b2)?)?)?,
    )?;
    iff_by(&l, &r, &fwd, &bwd)
}

/// From `A <=> A2` and `B <=> B2` infer `(A ==> B) <=> (A2 ==> B2)`.
pub fn imp_cong(aa: &Thm, bb: &Thm) -> Result<Thm> {
    let ((a, a2), (b, b2)) = (sides(aa)?, sides(bb)?);
    let l = Formula::imp(a.clone(), b);
    let r = Formula::imp(a2.clone(), b2);
    let fwd = kernel::disch(
        &a2,
        &kernel::iff_mp(
            bb,
            &kernel::mp(&kernel::assume(&l)?, &kernel::iff_mpr(aa, &kernel::assume(&a2)?)?)?,
        )?,
    )?;
    let bwd = kernel::disch(
        &a,
        &kernel::iff_mpr(
            bb,
            &kernel::mp(&kernel::assume(&r)?, &kernel::iff_mp(aa, &kernel::assume(&a)?)?)?,
        )?,
    )?;
    iff_by(&l, &r, &fwd, &bwd)
}

/// From `A <=> A2` and `B <=> B2` infer `(A <=> B) <=> (A2 <=> B2)`.
pub fn iff_cong(aa: &Thm, bb: &Thm) -> Result<Thm> {
    let ((a, a2), (b, b2)) = (sides(aa)?, sides(bb)?);
    let l = Formula::iff(a, b);
    let r = Formula::iff(a2, b2);
    let fwd = iff_trans(&iff_sym(aa)?, &iff_trans(&kernel::assume(&l)?, bb)?)?;
    let bwd = iff_trans(aa, &iff_trans(&kernel::assume(&r)?, &iff_sym(bb)?)?)?;
    iff_by(&l, &r, &fwd, &bwd)
}

/// From `G |- A <=> A2` infer `G |- (!x.A) <=> (!x.A2)`; `x` must not be
/// free in `G`.
pub fn forall_cong(x: &Var, th: &Thm) -> Result<Thm> {
    let (a, a2) = sides(th)?;
    let l = Formula::forall(x.clone(), a);
    let r = Formula::forall(x.clone(), a2);
    let xt = Term::var(x.clone());
    let fwd = kernel::gen(x, &kernel::iff_mp(th, &kernel::spec(&xt, &kernel::assume(&l)?)?)?)?;
    let bwd = kernel::gen(x, &kernel::iff_mpr(th, &kernel::spec(&xt, &kernel::assume(&r)?)?)?)?;
    iff_by(&l, &r, &fwd, &bwd)
}

/// From `G |- A <=> A2` infer `G |- (?x.A) <=> (?x.A2)`; `x` must not be
/// free in `G`.
pub fn exists_cong(x: &Var, th: &Thm) -> Result<Thm> {
    let (a, a2) = sides(th)?;
    let l = Formula::exists(x.clone(), a.clone());
    let r = Formula::exists(x.clone(), a2.clone());
    let xt = Term::var(x.clone());
    let fwd = kernel::exists_elim(
        &kernel::assume(&l)?,
        x,
        &kernel::exists_intro(&r, &xt, &kernel::iff_mp(th, &kernel::assume(&a)?)?)?,
    )?;
    let bwd = kernel::exists_elim(
        &kernel::assume(&r)?,
        x,
        &kernel::exists_intro(&l, &xt, &kernel::iff_mpr(th, &kernel::assume(&a2)?)?)?,
    )?;
    iff_by(&l, &r, &fwd, &bwd)
}

/// Runs `prove` on the body of a binder. When the resulting theorem has the
/// bound variable free in its hypotheses, the body is renamed apart first.
/// Returns the variable actually used together with the theorem.
pub fn under_binder(
    x: &Var,
    body: &Formula,
    prove: impl Fn(&Formula) -> Result<Thm>,
) -> Result<(Var, Thm)> {
    let th = prove(body)?;
    if !th.hyps().iter().any(|h| h.has_free(x)) {
        return Ok((x.clone(), th));
    }
    let mut avoid = BTreeSet::new();
    body.all_var_names(&mut avoid);
    for h in th.hyps() {
        h.all_var_names(&mut avoid);
    }
    th.concl().all_var_names(&mut avoid);
    let y = variant(x, &avoid);
    let renamed = subst_form_unchecked(body, &[(Term::var(y.clone()), x.clone())]);
    let th = prove(&renamed)?;
    if th.hyps().iter().any(|h| h.has_free(&y)) {
        return Err(Error::VarFreeInHyps { rule: "under_binder", var: y.name.to_string() });
    }
    Ok((y, th))
}
