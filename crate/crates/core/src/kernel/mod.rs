//! The trusted core.
//!
//! [`Thm`] values can only be produced by the rules in this module, so
//! every theorem is a consequence of the axioms. The constructor is private:
//!
//! ```compile_fail,E0423
//! use convkit::kernel::Thm;
//! let forged = Thm(std::sync::Arc::new(todo!()));
//! ```

mod audit;
mod budget;
pub mod mutation;
pub mod theory;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::syntax::formula::{alpha_eq_form, inst_type_form, subst_form_unchecked, Formula};
use crate::syntax::print::print_sequent;
use crate::syntax::term::{alpha_eq, subst_unchecked, Term, TermKind, TermSubst, Var};
use crate::syntax::types::TypeSubst;

pub use audit::{audit_enabled, replay, set_audit, with_audit};
pub use budget::{set_step_limit, steps_used, with_step_limit};
pub use theory::{Theory, TheoryItem};

use mutation::{mutated, Mutation};

/// The justification recorded for a theorem when auditing is on.
#[derive(Clone, Debug)]
pub enum Proof {
    Axiom,
    Assume(Formula),
    Refl(Term),
    Trans(Thm, Thm),
    Sym(Thm),
    MkComb(Thm, Thm),
    Abs(Var, Thm),
    Beta(Term),
    Mp(Thm, Thm),
    Disch(Formula, Thm),
    Gen(Var, Thm),
    Spec(Term, Thm),
    Conj(Thm, Thm),
    Conjunct1(Thm),
    Conjunct2(Thm),
    Disj1(Thm, Formula),
    Disj2(Formula, Thm),
    DisjCases(Thm, Thm, Thm),
    ExistsIntro(Formula, Term, Thm),
    ExistsElim(Thm, Var, Thm),
    IffIntro(Thm, Thm),
    IffMp(Thm, Thm),
    IffMpr(Thm, Thm),
    Contr(Formula, Thm),
    PredCong(Arc<str>, Thm),
    Inst(TermSubst, TypeSubst, Thm),
}

struct ThmInner {
    hyps: Vec<Formula>,
    concl: Formula,
    proof: Option<Proof>,
}

/// A sequent `hyps |- concl` proved by the kernel.
#[derive(Clone)]
pub struct Thm(Arc<ThmInner>);

impl fmt::Display for Thm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_sequent(&self.0.hyps, &self.0.concl))
    }
}

impl fmt::Debug for Thm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn contains_alpha(hs: &[Formula], a: &Formula) -> bool {
    hs.iter().any(|h| alpha_eq_form(h, a))
}

fn union(a: &[Formula], b: &[Formula]) -> Vec<Formula> {
    let mut out = a.to_vec();
    for h in b {
        if !contains_alpha(&out, h) {
            out.push(h.clone());
        }
    }
    out
}

fn remove(hs: &[Formula], a: &Formula) -> Vec<Formula> {
    hs.iter().filter(|h| !alpha_eq_form(h, a)).cloned().collect()
}

fn free_in_hyps(hs: &[Formula], v: &Var) -> bool {
    hs.iter().any(|h| h.has_free(v))
}

fn dest_eq<'a>(rule: &'static str, th: &'a Thm) -> Result<(&'a Term, &'a Term)> {
    th.concl()
        .dest_equiv()
        .map_err(|_| Error::rule(rule, format!("{} is not an equivalence", th.concl())))
}

fn equiv(t: Term, u: Term) -> Result<Formula> {
    Formula::mk_equiv(t, u)
}

impl Thm {
    fn make(hyps: Vec<Formula>, concl: Formula, proof: impl FnOnce() -> Proof) -> Result<Thm> {
        budget::tick()?;
        let proof = if audit_enabled() { Some(proof()) } else { None };
        Ok(Thm(Arc::new(ThmInner { hyps, concl, proof })))
    }

    pub fn hyps(&self) -> &[Formula] {
        &self.0.hyps
    }

    pub fn concl(&self) -> &Formula {
        &self.0.concl
    }

    pub fn proof(&self) -> Option<&Proof> {
        self.0.proof.as_ref()
    }

    pub(crate) fn ptr(&self) -> *const () {
        Arc::as_ptr(&self.0) as *const ()
    }

    /// Same conclusion up to alpha and the same hypotheses as a set.
    pub fn same(&self, other: &Thm) -> bool {
        alpha_eq_form(self.concl(), other.concl())
            && self.hyps().len() == other.hyps().len()
            && self.hyps().iter().all(|h| contains_alpha(other.hyps(), h))
    }

    /// Axioms enter only through the theory store. They always carry their
    /// proof tag and cost no steps.
    pub(crate) fn axiom(concl: Formula) -> Result<Thm> {
        concl.check()?;
        Ok(Thm(Arc::new(ThmInner { hyps: Vec::new(), concl, proof: Some(Proof::Axiom) })))
    }
}

/// `[A] |- A`
pub fn assume(a: &Formula) -> Result<Thm> {
    a.check()?;
    Thm::make(vec![a.clone()], a.clone(), || Proof::Assume(a.clone()))
}

/// `|- t == t`
pub fn refl(t: &Term) -> Result<Thm> {
    Thm::make(Vec::new(), equiv(t.clone(), t.clone())?, || Proof::Refl(t.clone()))
}

/// From `|- t == t1` and `|- t1 == t2` infer `|- t == t2`.
pub fn trans(ab: &Thm, bc: &Thm) -> Result<Thm> {
    let (a, b) = dest_eq("TRANS", ab)?;
    let (b2, c) = dest_eq("TRANS", bc)?;
    if !mutated(Mutation::TransMiddle) && !alpha_eq(b, b2) {
        return Err(Error::rule("TRANS", format!("middle terms {b} and {b2} differ")));
    }
    if a.ty() != c.ty() {
        return Err(Error::rule("TRANS", "types of the outer terms differ"));
    }
    Thm::make(
        union(ab.hyps(), bc.hyps()),
        equiv(a.clone(), c.clone())?,
        || Proof::Trans(ab.clone(), bc.clone()),
    )
}

/// From `|- t == u` infer `|- u == t`.
pub fn sym(th: &Thm) -> Result<Thm> {
    let (a, b) = dest_eq("SYM", th)?;
    Thm::make(th.hyps().to_vec(), equiv(b.clone(), a.clone())?, || Proof::Sym(th.clone()))
}

/// From `|- f == g` and `|- t == u` infer `|- f t == g u`.
pub fn mk_comb(fg: &Thm, tu: &Thm) -> Result<Thm> {
    let (f, g) = dest_eq("MK_COMB", fg)?;
    let (t, u) = dest_eq("MK_COMB", tu)?;
    let l = Term::comb(f.clone(), t.clone())?;
    let r = Term::comb(g.clone(), u.clone())?;
    Thm::make(union(fg.hyps(), tu.hyps()), equiv(l, r)?, || {
        Proof::MkComb(fg.clone(), tu.clone())
    })
}

/// From `|- t == u` infer `|- \x.t == \x.u`, provided `x` is not free in
/// the hypotheses.
pub fn abs_rule(x: &Var, th: &Thm) -> Result<Thm> {
    let (t, u) = dest_eq("ABS_RULE", th)?;
    if !mutated(Mutation::AbsFreeness) && free_in_hyps(th.hyps(), x) {
        return Err(Error::VarFreeInHyps { rule: "ABS_RULE", var: x.name.to_string() });
    }
    let l = Term::abs(x.clone(), t.clone());
    let r = Term::abs(x.clone(), u.clone());
    Thm::make(th.hyps().to_vec(), equiv(l, r)?, || Proof::Abs(x.clone(), th.clone()))
}

/// `|- (\x.u)v == u[v/x]`; fails with `BETA_CONV` on anything else.
pub fn beta(t: &Term) -> Result<Thm> {
    let (f, v) = t.dest_comb().map_err(|_| Error::failure("BETA_CONV"))?;
    let (x, u) = f.dest_abs().map_err(|_| Error::failure("BETA_CONV"))?;
    let r = subst_unchecked(u, &[(v.clone(), x.clone())]);
    Thm::make(Vec::new(), equiv(t.clone(), r)?, || Proof::Beta(t.clone()))
}

/// Modus ponens.
pub fn mp(imp: &Thm, ant: &Thm) -> Result<Thm> {
    let (a, b) = imp
        .concl()
        .dest_imp()
        .map_err(|_| Error::rule("MP", format!("{} is not an implication", imp.concl())))?;
    if !mutated(Mutation::MpAntecedent) && !alpha_eq_form(a, ant.concl()) {
        return Err(Error::rule("MP", format!("antecedent {a} does not match {}", ant.concl())));
    }
    Thm::make(union(imp.hyps(), ant.hyps()), b.clone(), || {
        Proof::Mp(imp.clone(), ant.clone())
    })
}

/// From `G |- B` infer `G - {A} |- A ==> B`.
pub fn disch(a: &Formula, th: &Thm) -> Result<Thm> {
    a.check()?;
    Thm::make(
        remove(th.hyps(), a),
        Formula::imp(a.clone(), th.concl().clone()),
        || Proof::Disch(a.clone(), th.clone()),
    )
}

/// From `G |- A` infer `G |- !x.A`, provided `x` is not free in `G`.
pub fn gen(x: &Var, th: &Thm) -> Result<Thm> {
    if !mutated(Mutation::GenFreeness) && free_in_hyps(th.hyps(), x) {
        return Err(Error::VarFreeInHyps { rule: "GEN", var: x.name.to_string() });
    }
    Thm::make(
        th.hyps().to_vec(),
        Formula::forall(x.clone(), th.concl().clone()),
        || Proof::Gen(x.clone(), th.clone()),
    )
}

/// From `G |- !x.A` infer `G |- A[t/x]`.
pub fn spec(t: &Term, th: &Thm) -> Result<Thm> {
    let (x, body) = th
        .concl()
        .dest_forall()
        .map_err(|_| Error::rule("SPEC", format!("{} is not universally quantified", th.concl())))?;
    if t.ty() != &x.ty {
        return Err(Error::TypeMismatch(format!(
            "SPEC: {t} : {} for {} : {}",
            t.ty(),
            x.name,
            x.ty
        )));
    }
    Thm::make(
        th.hyps().to_vec(),
        subst_form_unchecked(body, &[(t.clone(), x.clone())]),
        || Proof::Spec(t.clone(), th.clone()),
    )
}

pub fn conj(a: &Thm, b: &Thm) -> Result<Thm> {
    Thm::make(
        union(a.hyps(), b.hyps()),
        Formula::conj(a.concl().clone(), b.concl().clone()),
        || Proof::Conj(a.clone(), b.clone()),
    )
}

pub fn conjunct1(th: &Thm) -> Result<Thm> {
    let (a, _) = th.concl().dest_conj().map_err(|_| Error::rule("CONJUNCT1", "not a conjunction"))?;
    Thm::make(th.hyps().to_vec(), a.clone(), || Proof::Conjunct1(th.clone()))
}

pub fn conjunct2(th: &Thm) -> Result<Thm> {
    let (_, b) = th.concl().dest_conj().map_err(|_| Error::rule("CONJUNCT2", "not a conjunction"))?;
    Thm::make(th.hyps().to_vec(), b.clone(), || Proof::Conjunct2(th.clone()))
}

/// From `G |- A` infer `G |- A \/ B`.
pub fn disj1(th: &Thm, b: &Formula) -> Result<Thm> {
    b.check()?;
    Thm::make(
        th.hyps().to_vec(),
        Formula::disj(th.concl().clone(), b.clone()),
        || Proof::Disj1(th.clone(), b.clone()),
    )
}

/// From `G |- B` infer `G |- A \/ B`.
pub fn disj2(a: &Formula, th: &Thm) -> Result<Thm> {
    a.check()?;
    Thm::make(
        th.hyps().to_vec(),
        Formula::disj(a.clone(), th.concl().clone()),
        || Proof::Disj2(a.clone(), th.clone()),
    )
}

/// From `G |- A \/ B`, `G1, A |- C` and `G2, B |- C` infer `G, G1, G2 |- C`.
pub fn disj_cases(ab: &Thm, ac: &Thm, bc: &Thm) -> Result<Thm> {
    let (a, b) = ab
        .concl()
        .dest_disj()
        .map_err(|_| Error::rule("DISJ_CASES", "not a disjunction"))?;
    if !alpha_eq_form(ac.concl(), bc.concl()) {
        return Err(Error::rule("DISJ_CASES", "the two cases prove different conclusions"));
    }
    let hyps = union(&union(ab.hyps(), &remove(ac.hyps(), a)), &remove(bc.hyps(), b));
    Thm::make(hyps, ac.concl().clone(), || {
        Proof::DisjCases(ab.clone(), ac.clone(), bc.clone())
    })
}

/// From `G |- A[t/x]` infer `G |- ?x.A`.
pub fn exists_intro(ex: &Formula, t: &Term, th: &Thm) -> Result<Thm> {
    let (x, body) = ex
        .dest_exists()
        .map_err(|_| Error::rule("EXISTS", format!("{ex} is not existential")))?;
    if t.ty() != &x.ty {
        return Err(Error::TypeMismatch(format!("EXISTS: {t} for {}", x.name)));
    }
    let inst = subst_form_unchecked(body, &[(t.clone(), x.clone())]);
    if !alpha_eq_form(&inst, th.concl()) {
        return Err(Error::rule("EXISTS", format!("{} is not {inst}", th.concl())));
    }
    ex.check()?;
    Thm::make(th.hyps().to_vec(), ex.clone(), || {
        Proof::ExistsIntro(ex.clone(), t.clone(), th.clone())
    })
}

/// From `G1 |- ?x.A` and `G2, A[y/x] |- B` infer `G1, G2 |- B`, where `y`
/// is not free in `?x.A`, `B` or `G2`.
pub fn exists_elim(ex: &Thm, y: &Var, th: &Thm) -> Result<Thm> {
    let (x, body) = ex
        .concl()
        .dest_exists()
        .map_err(|_| Error::rule("CHOOSE", "not an existential"))?;
    if y.ty != x.ty {
        return Err(Error::TypeMismatch(format!("CHOOSE: {} for {}", y.name, x.name)));
    }
    let inst = subst_form_unchecked(body, &[(Term::var(y.clone()), x.clone())]);
    let rest = remove(th.hyps(), &inst);
    if ex.concl().has_free(y) || th.concl().has_free(y) || free_in_hyps(&rest, y) {
        return Err(Error::VarFreeInHyps { rule: "CHOOSE", var: y.name.to_string() });
    }
    Thm::make(union(ex.hyps(), &rest), th.concl().clone(), || {
        Proof::ExistsElim(ex.clone(), y.clone(), th.clone())
    })
}

/// From `|- A ==> B` and `|- B ==> A` infer `|- A <=> B`.
pub fn iff_intro(ab: &Thm, ba: &Thm) -> Result<Thm> {
    let (a, b) = ab.concl().dest_imp().map_err(|_| Error::rule("IFF_INTRO", "not an implication"))?;
    let (b2, a2) = ba.concl().dest_imp().map_err(|_| Error::rule("IFF_INTRO", "not an implication"))?;
    if !alpha_eq_form(a, a2) || !alpha_eq_form(b, b2) {
        return Err(Error::rule("IFF_INTRO", "implications are not converse"));
    }
    Thm::make(
        union(ab.hyps(), ba.hyps()),
        Formula::iff(a.clone(), b.clone()),
        || Proof::IffIntro(ab.clone(), ba.clone()),
    )
}

/// From `|- A <=> B` and `|- A` infer `|- B`.
pub fn iff_mp(iff: &Thm, th: &Thm) -> Result<Thm> {
    let (a, b) = iff.concl().dest_iff().map_err(|_| Error::rule("IFF_MP", "not an iff"))?;
    if !mutated(Mutation::MpAntecedent) && !alpha_eq_form(a, th.concl()) {
        return Err(Error::rule("IFF_MP", format!("{} does not match {a}", th.concl())));
    }
    Thm::make(union(iff.hyps(), th.hyps()), b.clone(), || {
        Proof::IffMp(iff.clone(), th.clone())
    })
}

/// From `|- A <=> B` and `|- B` infer `|- A`.
pub fn iff_mpr(iff: &Thm, th: &Thm) -> Result<Thm> {
    let (a, b) = iff.concl().dest_iff().map_err(|_| Error::rule("IFF_MPR", "not an iff"))?;
    if !mutated(Mutation::MpAntecedent) && !alpha_eq_form(b, th.concl()) {
        return Err(Error::rule("IFF_MPR", format!("{} does not match {b}", th.concl())));
    }
    Thm::make(union(iff.hyps(), th.hyps()), a.clone(), || {
        Proof::IffMpr(iff.clone(), th.clone())
    })
}

/// From `G |- FALSITY()` infer `G |- A`.
pub fn contr(a: &Formula, th: &Thm) -> Result<Thm> {
    if !th.concl().is_falsity() {
        return Err(Error::rule("CONTR", format!("{} is not FALSITY()", th.concl())));
    }
    a.check()?;
    Thm::make(th.hyps().to_vec(), a.clone(), || Proof::Contr(a.clone(), th.clone()))
}

/// From `G |- t == u` infer `G |- P t <=> P u`.
pub fn pred_cong(p: &str, th: &Thm) -> Result<Thm> {
    let (t, u) = dest_eq("PRED_CONG", th)?;
    let l = Formula::pred(p, t.clone());
    let r = Formula::pred(p, u.clone());
    l.check()?;
    r.check()?;
    Thm::make(th.hyps().to_vec(), Formula::iff(l, r), || {
        Proof::PredCong(p.into(), th.clone())
    })
}

/// Instantiates types, then term variables, in the conclusion. Nothing
/// instantiated may occur free in the hypotheses.
pub fn inst(tm: &[(Term, Var)], ty: &TypeSubst, th: &Thm) -> Result<Thm> {
    if !mutated(Mutation::InstHyps) {
        for (_, v) in tm {
            if free_in_hyps(th.hyps(), v) {
                return Err(Error::VarFreeInHyps { rule: "INST", var: v.name.to_string() });
            }
        }
        let mut tvs = Vec::new();
        for h in th.hyps() {
            h.type_vars(&mut tvs);
        }
        if let Some(a) = ty.keys().find(|a| tvs.contains(a)) {
            return Err(Error::VarFreeInHyps { rule: "INST", var: format!(":{a}") });
        }
    }
    for (t, v) in tm {
        if t.ty() != &v.ty {
            return Err(Error::TypeMismatch(format!(
                "INST: {t} : {} for {} : {}",
                t.ty(),
                v.name,
                v.ty
            )));
        }
    }
    let c = subst_form_unchecked(&inst_type_form(th.concl(), ty), tm);
    c.check()?;
    Thm::make(th.hyps().to_vec(), c, || Proof::Inst(tm.to_vec(), ty.clone(), th.clone()))
}

/// The left side `t` of a conclusion `t == u`.
pub fn lhs(th: &Thm) -> Result<&Term> {
    Ok(dest_eq("lhs", th)?.0)
}

pub fn rhs(th: &Thm) -> Result<&Term> {
    Ok(dest_eq("rhs", th)?.1)
}

/// True when `t` is a beta-redex.
pub fn is_beta_redex(t: &Term) -> bool {
    matches!(t.kind(), TermKind::Comb(f, _) if f.is_abs())
}

#[cfg(test)]
mod tests;
