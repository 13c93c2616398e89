//! Formula conversions: functions from `A` to `|- A' <=> B`.

use std::fmt;
use std::sync::Arc;

use crate::conv::{or_else, top_depth_conv, Conv};
use crate::derived::{self, iff_by, iff_refl, iff_trans, truth, under_binder};
use crate::error::{Error, Result};
use crate::kernel::{self, Theory, Thm};
use crate::matching::{part_fmatch, parts};
use crate::syntax::term::alpha_eq;
use crate::syntax::{alpha_eq_form, Formula};

#[derive(Clone)]
pub struct FConv(Arc<dyn Fn(&Formula) -> Result<Thm> + Send + Sync>);

impl fmt::Debug for FConv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "- : fconv")
    }
}

impl FConv {
    pub fn new(f: impl Fn(&Formula) -> Result<Thm> + Send + Sync + 'static) -> FConv {
        FConv(Arc::new(f))
    }

    pub fn apply(&self, a: &Formula) -> Result<Thm> {
        (self.0)(a)
    }

    pub fn thenfc(&self, other: &FConv) -> FConv {
        thenfc(self, other)
    }

    pub fn orelsefc(&self, other: &FConv) -> FConv {
        orelsefc(self, other)
    }
}

fn result(th: &Thm) -> Result<Formula> {
    Ok(th.concl().dest_iff()?.1.clone())
}

/// Rewrites instances of `A` to `B` for `|- !x1...xn. A <=> B`.
pub fn rewrite_fconv(th: &Thm) -> Result<FConv> {
    let m = part_fmatch(parts::iff_lhs, th)?;
    Ok(FConv::new(move |a| m(a)))
}

pub fn all_fconv() -> FConv {
    FConv::new(iff_refl)
}

pub fn no_fconv() -> FConv {
    FConv::new(|_| Err(Error::failure("NO_FCONV")))
}

pub fn thenfc(f1: &FConv, f2: &FConv) -> FConv {
    let (f1, f2) = (f1.clone(), f2.clone());
    FConv::new(move |a| {
        let x = f1.apply(a)?;
        let y = f2.apply(&result(&x)?)?;
        iff_trans(&x, &y)
    })
}

pub fn orelsefc(f1: &FConv, f2: &FConv) -> FConv {
    let (f1, f2) = (f1.clone(), f2.clone());
    FConv::new(move |a| or_else(f1.apply(a), || f2.apply(a)))
}

pub fn first_fconv(fs: &[FConv]) -> FConv {
    let fs = fs.to_vec();
    FConv::new(move |a| {
        for f in &fs {
            match f.apply(a) {
                Err(e) if e.is_recoverable() => continue,
                other => return other,
            }
        }
        Err(Error::failure("FIRST_FCONV"))
    })
}

pub fn repeatfc(f: &FConv) -> FConv {
    let f = f.clone();
    FConv::new(move |a| repeat(&f, a))
}

fn repeat(f: &FConv, a: &Formula) -> Result<Thm> {
    let mut steps = Vec::new();
    let mut cur = a.clone();
    loop {
        match f.apply(&cur) {
            Ok(th) => {
                cur = result(&th)?;
                steps.push(th);
            }
            Err(e) if e.is_recoverable() => break,
            Err(e) => return Err(e),
        }
    }
    let mut acc = iff_refl(&cur)?;
    for th in steps.iter().rev() {
        acc = iff_trans(th, &acc)?;
    }
    Ok(acc)
}

/// Converts the argument of a predicate: `|- P t <=> P u` from `|- t == u`.
pub fn pred_fconv(c: &Conv) -> FConv {
    let c = c.clone();
    FConv::new(move |a| pred(&c, a))
}

fn pred(c: &Conv, a: &Formula) -> Result<Thm> {
    let (p, t) = a.dest_pred().map_err(|_| Error::failure("PRED_FCONV"))?;
    kernel::pred_cong(p, &c.apply(t)?)
}

fn binary(
    a: &Formula,
    token: &'static str,
    f: &FConv,
    dest: fn(&Formula) -> Result<(&Formula, &Formula)>,
    cong: fn(&Thm, &Thm) -> Result<Thm>,
) -> Result<Thm> {
    let (l, r) = dest(a).map_err(|_| Error::failure(token))?;
    cong(&f.apply(l)?, &f.apply(r)?)
}

fn conj(f: &FConv, a: &Formula) -> Result<Thm> {
    binary(a, "CONJ_FCONV", f, Formula::dest_conj, derived::conj_cong)
}

fn disj(f: &FConv, a: &Formula) -> Result<Thm> {
    binary(a, "DISJ_FCONV", f, Formula::dest_disj, derived::disj_cong)
}

fn imp(f: &FConv, a: &Formula) -> Result<Thm> {
    binary(a, "IMP_FCONV", f, Formula::dest_imp, derived::imp_cong)
}

fn iff(f: &FConv, a: &Formula) -> Result<Thm> {
    binary(a, "IFF_FCONV", f, Formula::dest_iff, derived::iff_cong)
}

fn forall(f: &FConv, a: &Formula) -> Result<Thm> {
    let (x, body) = a.dest_forall().map_err(|_| Error::failure("FORALL_FCONV"))?;
    let (y, th) = under_binder(x, body, |b| f.apply(b))?;
    derived::forall_cong(&y, &th)
}

fn exists(f: &FConv, a: &Formula) -> Result<Thm> {
    let (x, body) = a.dest_exists().map_err(|_| Error::failure("EXISTS_FCONV"))?;
    let (y, th) = under_binder(x, body, |b| f.apply(b))?;
    derived::exists_cong(&y, &th)
}

macro_rules! congruence {
    ($(#[$m:meta])* $name:ident, $imp:ident) => {
        $(#[$m])*
        pub fn $name(f: &FConv) -> FConv {
            let f = f.clone();
            FConv::new(move |a| $imp(&f, a))
        }
    };
}

congruence!(conj_fconv, conj);
congruence!(disj_fconv, disj);
congruence!(imp_fconv, imp);
congruence!(iff_fconv, iff);
congruence!(
    /// Renames the bound variable if it is free in the hypotheses of the
    /// body's theorem.
    forall_fconv,
    forall
);
congruence!(exists_fconv, exists);

/// `FIRST_FCONV [CONJ_FCONV f; DISJ_FCONV f; IMP_FCONV f; IFF_FCONV f;
/// FORALL_FCONV f; EXISTS_FCONV f; PRED_FCONV c]`
pub fn sub_fconv(c: &Conv, f: &FConv) -> FConv {
    let (c, f) = (c.clone(), f.clone());
    FConv::new(move |a| sub(&c, &f, a))
}

fn sub(c: &Conv, f: &FConv, a: &Formula) -> Result<Thm> {
    let r = match a {
        Formula::Conj(..) => conj(f, a),
        Formula::Disj(..) => disj(f, a),
        Formula::Imp(..) => imp(f, a),
        Formula::Iff(..) => iff(f, a),
        Formula::Forall(..) => forall(f, a),
        Formula::Exists(..) => exists(f, a),
        Formula::Pred(..) => pred(c, a),
    };
    or_else(r, || Err(Error::failure("FIRST_FCONV")))
}

fn seq(a: Thm, f: impl FnOnce(&Formula) -> Result<Thm>) -> Result<Thm> {
    let b = f(&result(&a)?)?;
    iff_trans(&a, &b)
}

fn rec(c: &Conv, f: &FConv, go: fn(&Conv, &FConv, &Formula) -> Result<Thm>) -> FConv {
    let (c, f) = (c.clone(), f.clone());
    FConv::new(move |a| go(&c, &f, a))
}

/// `SUB_FCONV c (DEPTH_FCONV c f) THENFC REPEATFC f`
pub fn depth_fconv(c: &Conv, f: &FConv) -> FConv {
    rec(c, f, depth)
}

fn depth(c: &Conv, f: &FConv, a: &Formula) -> Result<Thm> {
    seq(sub(c, &rec(c, f, depth), a)?, |b| repeat(f, b))
}

/// `SUB_FCONV c (REDEPTH_FCONV c f) THENFC
/// ((f THENFC REDEPTH_FCONV c f) ORELSEFC ALL_FCONV)`
pub fn redepth_fconv(c: &Conv, f: &FConv) -> FConv {
    rec(c, f, redepth)
}

fn redepth(c: &Conv, f: &FConv, a: &Formula) -> Result<Thm> {
    seq(sub(c, &rec(c, f, redepth), a)?, |b| {
        or_else(f.apply(b).and_then(|x| seq(x, |d| redepth(c, f, d))), || iff_refl(b))
    })
}

/// `REPEATFC f THENFC SUB_FCONV c (TOP_DEPTH_FCONV c f) THENFC
/// ((f THENFC TOP_DEPTH_FCONV c f) ORELSEFC ALL_FCONV)`
pub fn top_depth_fconv(c: &Conv, f: &FConv) -> FConv {
    rec(c, f, top_depth)
}

fn top_depth(c: &Conv, f: &FConv, a: &Formula) -> Result<Thm> {
    let x = seq(repeat(f, a)?, |b| sub(c, &rec(c, f, top_depth), b))?;
    seq(x, |b| {
        or_else(f.apply(b).and_then(|y| seq(y, |d| top_depth(c, f, d))), || iff_refl(b))
    })
}

// Tautologies. Each table is tried in order; the first matching case wins.

fn assume(a: &Formula) -> Result<Thm> {
    kernel::assume(a)
}

fn taut_conj(a: &Formula) -> Result<Thm> {
    let fail = || Error::failure("TAUT_CONJ_FCONV");
    let (l, r) = a.dest_conj().map_err(|_| fail())?;
    let h = assume(a)?;
    if l.is_truth() {
        iff_by(a, r, &kernel::conjunct2(&h)?, &kernel::conj(&truth(), &assume(r)?)?)
    } else if r.is_truth() {
        iff_by(a, l, &kernel::conjunct1(&h)?, &kernel::conj(&assume(l)?, &truth())?)
    } else if l.is_falsity() {
        iff_by(a, l, &kernel::conjunct1(&h)?, &kernel::contr(a, &assume(l)?)?)
    } else if r.is_falsity() {
        iff_by(a, r, &kernel::conjunct2(&h)?, &kernel::contr(a, &assume(r)?)?)
    } else {
        Err(fail())
    }
}

fn taut_disj(a: &Formula) -> Result<Thm> {
    let fail = || Error::failure("TAUT_DISJ_FCONV");
    let (l, r) = a.dest_disj().map_err(|_| fail())?;
    let h = assume(a)?;
    if l.is_falsity() {
        let fwd = kernel::disj_cases(&h, &kernel::contr(r, &assume(l)?)?, &assume(r)?)?;
        iff_by(a, r, &fwd, &kernel::disj2(l, &assume(r)?)?)
    } else if r.is_falsity() {
        let fwd = kernel::disj_cases(&h, &assume(l)?, &kernel::contr(l, &assume(r)?)?)?;
        iff_by(a, l, &fwd, &kernel::disj1(&assume(l)?, r)?)
    } else if l.is_truth() {
        iff_by(a, l, &truth(), &kernel::disj1(&assume(l)?, r)?)
    } else if r.is_truth() {
        iff_by(a, r, &truth(), &kernel::disj2(l, &assume(r)?)?)
    } else {
        Err(fail())
    }
}

fn taut_imp(a: &Formula) -> Result<Thm> {
    let fail = || Error::failure("TAUT_IMP_FCONV");
    let (l, r) = a.dest_imp().map_err(|_| fail())?;
    let t = Formula::truth();
    if l.is_truth() {
        iff_by(a, r, &kernel::mp(&assume(a)?, &truth())?, &kernel::disch(l, &assume(r)?)?)
    } else if r.is_truth() {
        iff_by(a, &t, &truth(), &kernel::disch(l, &assume(r)?)?)
    } else if l.is_falsity() {
        iff_by(a, &t, &truth(), &kernel::disch(l, &kernel::contr(r, &assume(l)?)?)?)
    } else if alpha_eq_form(l, r) {
        iff_by(a, &t, &truth(), &kernel::disch(l, &assume(l)?)?)
    } else {
        Err(fail())
    }
}

fn taut_iff(a: &Formula) -> Result<Thm> {
    let fail = || Error::failure("TAUT_IFF_FCONV");
    let (l, r) = a.dest_iff().map_err(|_| fail())?;
    let t = Formula::truth();
    // [B] |- B <=> TRUTH() and [B] |- TRUTH() <=> B
    let with_truth = |b: &Formula, truth_first: bool| -> Result<Thm> {
        let to_t = kernel::disch(b, &truth())?;
        let from_t = kernel::disch(&t, &assume(b)?)?;
        if truth_first {
            kernel::iff_intro(&from_t, &to_t)
        } else {
            kernel::iff_intro(&to_t, &from_t)
        }
    };
    if r.is_truth() {
        iff_by(a, l, &kernel::iff_mpr(&assume(a)?, &truth())?, &with_truth(l, false)?)
    } else if l.is_truth() {
        iff_by(a, r, &kernel::iff_mp(&assume(a)?, &truth())?, &with_truth(r, true)?)
    } else if alpha_eq_form(l, r) {
        iff_by(a, &t, &truth(), &iff_refl(l)?)
    } else {
        Err(fail())
    }
}

fn axiom(label: &str) -> Thm {
    Theory::pplambda().axiom(label).expect("builtin axiom")
}

fn rewrite_with(labels: &[&str], a: &Formula, token: &'static str) -> Result<Thm> {
    for l in labels {
        match rewrite_fconv(&axiom(l))?.apply(a) {
            Err(e) if e.is_recoverable() => continue,
            other => return other,
        }
    }
    Err(Error::failure(token))
}

fn taut_forall(a: &Formula) -> Result<Thm> {
    rewrite_with(&["FORALL_TRUTH", "FORALL_FALSITY"], a, "TAUT_FORALL_FCONV")
}

fn taut_exists(a: &Formula) -> Result<Thm> {
    rewrite_with(&["EXISTS_TRUTH", "EXISTS_FALSITY"], a, "TAUT_EXISTS_FCONV")
}

fn taut_pred(a: &Formula) -> Result<Thm> {
    let fail = || Error::failure("TAUT_PRED_FCONV");
    let (t, u) = a.dest_equiv().map_err(|_| fail())?;
    if alpha_eq(t, u) {
        return iff_by(a, &Formula::truth(), &truth(), &kernel::refl(t)?);
    }
    rewrite_with(&["TT_UU", "UU_TT", "FF_UU", "UU_FF", "TT_FF", "FF_TT"], a, "TAUT_PRED_FCONV")
}

macro_rules! taut {
    ($name:ident, $imp:ident) => {
        pub fn $name() -> FConv {
            FConv::new($imp)
        }
    };
}

taut!(taut_conj_fconv, taut_conj);
taut!(taut_disj_fconv, taut_disj);
taut!(taut_imp_fconv, taut_imp);
taut!(taut_iff_fconv, taut_iff);
taut!(taut_forall_fconv, taut_forall);
taut!(taut_exists_fconv, taut_exists);
taut!(taut_pred_fconv, taut_pred);

pub fn basic_taut_fconv() -> FConv {
    first_fconv(&[
        taut_conj_fconv(),
        taut_disj_fconv(),
        taut_imp_fconv(),
        taut_iff_fconv(),
        taut_forall_fconv(),
        taut_exists_fconv(),
        taut_pred_fconv(),
    ])
}

/// `TOP_DEPTH_FCONV (TOP_DEPTH_CONV c) (f ORELSEFC BASIC_TAUT_FCONV)`
pub fn basic_fconv(c: &Conv, f: &FConv) -> FConv {
    top_depth_fconv(&top_depth_conv(c), &orelsefc(f, &basic_taut_fconv()))
}
