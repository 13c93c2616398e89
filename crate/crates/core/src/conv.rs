//! Term conversions and the operators that combine them.
//!
//! A conversion maps a term `t` to a theorem `|- t' == u` where `t'` is
//! alpha-equivalent to `t`, or fails with a recoverable token.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::{self, Thm};
use crate::matching::{part_tmatch, parts};
use crate::syntax::term::{variant, Term, TermKind};

#[derive(Clone)]
pub struct Conv(Arc<dyn Fn(&Term) -> Result<Thm> + Send + Sync>);

impl fmt::Debug for Conv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "- : conv")
    }
}

impl Conv {
    pub fn new(f: impl Fn(&Term) -> Result<Thm> + Send + Sync + 'static) -> Conv {
        Conv(Arc::new(f))
    }

    pub fn apply(&self, t: &Term) -> Result<Thm> {
        (self.0)(t)
    }

    pub fn thenc(&self, other: &Conv) -> Conv {
        thenc(self, other)
    }

    pub fn orelsec(&self, other: &Conv) -> Conv {
        orelsec(self, other)
    }
}

/// The result term `u` of a conversion theorem `|- t == u`.
pub fn result_term(th: &Thm) -> Result<Term> {
    Ok(kernel::rhs(th)?.clone())
}

/// One beta-reduction at the top of the term.
pub fn beta_conv() -> Conv {
    Conv::new(kernel::beta)
}

/// Rewrites instances of `t` to `u` for a theorem `|- !x1...xn. t == u`.
pub fn rewrite_conv(th: &Thm) -> Result<Conv> {
    let m = part_tmatch(parts::lhs, th)?;
    Ok(Conv::new(move |t| m(t)))
}

pub fn all_conv() -> Conv {
    Conv::new(kernel::refl)
}

pub fn no_conv() -> Conv {
    Conv::new(|_| Err(Error::failure("NO_CONV")))
}

pub fn thenc(c1: &Conv, c2: &Conv) -> Conv {
    let (c1, c2) = (c1.clone(), c2.clone());
    Conv::new(move |t| {
        let a = c1.apply(t)?;
        let b = c2.apply(kernel::rhs(&a)?)?;
        kernel::trans(&a, &b)
    })
}

/// Catches recoverable failures of `r` and runs `alt` instead.
pub(crate) fn or_else<T>(r: Result<T>, alt: impl FnOnce() -> Result<T>) -> Result<T> {
    match r {
        Err(e) if e.is_recoverable() => alt(),
        other => other,
    }
}

pub fn orelsec(c1: &Conv, c2: &Conv) -> Conv {
    let (c1, c2) = (c1.clone(), c2.clone());
    Conv::new(move |t| or_else(c1.apply(t), || c2.apply(t)))
}

/// `c1 ORELSEC ... ORELSEC cn ORELSEC NO_CONV`, failing with `FIRST_CONV`.
pub fn first_conv(cs: &[Conv]) -> Conv {
    let cs = cs.to_vec();
    Conv::new(move |t| {
        for c in &cs {
            match c.apply(t) {
                Err(e) if e.is_recoverable() => continue,
                other => return other,
            }
        }
        Err(Error::failure("FIRST_CONV"))
    })
}

/// Applies `c` until it fails. Never fails itself.
pub fn repeatc(c: &Conv) -> Conv {
    let c = c.clone();
    Conv::new(move |t| repeat(&c, t))
}

fn repeat(c: &Conv, t: &Term) -> Result<Thm> {
    // Same theorem as `(c THENC REPEATC c) ORELSEC ALL_CONV`, without the
    // recursion depth.
    let mut steps = Vec::new();
    let mut cur = t.clone();
    loop {
        match c.apply(&cur) {
            Ok(th) => {
                cur = result_term(&th)?;
                steps.push(th);
            }
            Err(e) if e.is_recoverable() => break,
            Err(e) => return Err(e),
        }
    }
    let mut acc = kernel::refl(&cur)?;
    for th in steps.iter().rev() {
        acc = kernel::trans(th, &acc)?;
    }
    Ok(acc)
}

/// Converts both the function and the argument of a combination.
pub fn comb_conv(c: &Conv) -> Conv {
    let c = c.clone();
    Conv::new(move |t| comb(&c, t))
}

fn comb(c: &Conv, t: &Term) -> Result<Thm> {
    let (f, x) = t.dest_comb().map_err(|_| Error::failure("COMB_CONV"))?;
    kernel::mk_comb(&c.apply(f)?, &c.apply(x)?)
}

/// Converts the body of an abstraction, renaming the bound variable if
/// the body's theorem has it free in its hypotheses.
pub fn abs_conv(c: &Conv) -> Conv {
    let c = c.clone();
    Conv::new(move |t| abs(&c, t))
}

fn abs(c: &Conv, t: &Term) -> Result<Thm> {
    let (x, body) = t.dest_abs().map_err(|_| Error::failure("ABS_CONV"))?;
    let th = c.apply(body)?;
    if !th.hyps().iter().any(|h| h.has_free(x)) {
        return kernel::abs_rule(x, &th);
    }
    let mut avoid = std::collections::BTreeSet::new();
    t.all_var_names(&mut avoid);
    for h in th.hyps() {
        h.all_var_names(&mut avoid);
    }
    th.concl().all_var_names(&mut avoid);
    let y = variant(x, &avoid);
    let body2 = crate::syntax::term::subst_unchecked(body, &[(Term::var(y.clone()), x.clone())]);
    kernel::abs_rule(&y, &c.apply(&body2)?)
}

/// `FIRST_CONV [COMB_CONV c; ABS_CONV c; ALL_CONV]`
pub fn sub_conv(c: &Conv) -> Conv {
    let c = c.clone();
    Conv::new(move |t| sub(&c, t))
}

fn sub(c: &Conv, t: &Term) -> Result<Thm> {
    let r = match t.kind() {
        TermKind::Comb(..) => comb(c, t),
        TermKind::Abs(..) => abs(c, t),
        _ => Err(Error::failure("SUB_CONV")),
    };
    or_else(r, || kernel::refl(t))
}

fn seq(a: Thm, f: impl FnOnce(&Term) -> Result<Thm>) -> Result<Thm> {
    let b = f(kernel::rhs(&a)?)?;
    kernel::trans(&a, &b)
}

/// Bottom-up, one pass: `SUB_CONV (DEPTH_CONV c) THENC REPEATC c`.
pub fn depth_conv(c: &Conv) -> Conv {
    let c = c.clone();
    Conv::new(move |t| depth(&c, t))
}

fn depth(c: &Conv, t: &Term) -> Result<Thm> {
    let inner = Conv::new({
        let c = c.clone();
        move |u| depth(&c, u)
    });
    seq(sub(&inner, t)?, |u| repeat(c, u))
}

/// Bottom-up, resimplifying every result:
/// `SUB_CONV (REDEPTH_CONV c) THENC ((c THENC REDEPTH_CONV c) ORELSEC ALL_CONV)`.
pub fn redepth_conv(c: &Conv) -> Conv {
    let c = c.clone();
    Conv::new(move |t| redepth(&c, t))
}

fn redepth(c: &Conv, t: &Term) -> Result<Thm> {
    let inner = Conv::new({
        let c = c.clone();
        move |u| redepth(&c, u)
    });
    seq(sub(&inner, t)?, |u| {
        or_else(c.apply(u).and_then(|a| seq(a, |v| redepth(c, v))), || kernel::refl(u))
    })
}

/// Top-down: `REPEATC c THENC SUB_CONV (TOP_DEPTH_CONV c) THENC
/// ((c THENC TOP_DEPTH_CONV c) ORELSEC ALL_CONV)`.
pub fn top_depth_conv(c: &Conv) -> Conv {
    let c = c.clone();
    Conv::new(move |t| top_depth(&c, t))
}

fn top_depth(c: &Conv, t: &Term) -> Result<Thm> {
    let inner = Conv::new({
        let c = c.clone();
        move |u| top_depth(&c, u)
    });
    let a = seq(repeat(c, t)?, |u| sub(&inner, u))?;
    seq(a, |u| {
        or_else(c.apply(u).and_then(|a| seq(a, |v| top_depth(c, v))), || kernel::refl(u))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Theory;
    use crate::syntax::parse::parse_term;

    fn tm(s: &str) -> Term {
        parse_term(&*Theory::pplambda(), s).unwrap()
    }

    fn rw(label: &str) -> Conv {
        rewrite_conv(&Theory::pplambda().axiom(label).unwrap()).unwrap()
    }

    fn many() -> Conv {
        let rws: Vec<Conv> = [
            "COND_UU", "COND_TT", "COND_FF", "MIN_COMB", "MIN_ABS", "MK_PAIR", "FST_PAIR",
            "SND_PAIR",
        ]
        .iter()
        .map(|l| rw(l))
        .collect();
        orelsec(&first_conv(&rws), &beta_conv())
    }

    const ABS1: &str = "(\\fun.(fun(TT,FF) => x | y))FST";
    const ABS2: &str = "(\\t.(\\u.t,u)FF)TT";

    #[test]
    fn sequencing_and_alternation() {
        let bb = thenc(&beta_conv(), &beta_conv());
        assert_eq!(bb.apply(&tm(ABS2)).unwrap().to_string(), "|-(\\t.(\\u.t,u)FF)TT == TT,FF");
        assert_eq!(bb.apply(&tm(ABS1)).unwrap_err().token(), "BETA_CONV");
        let tf = orelsec(&rw("COND_TT"), &rw("COND_FF"));
        assert_eq!(
            tf.apply(&tm("FF => f x | f y")).unwrap().to_string(),
            "|-(FF => f x | f y) == f y"
        );
        assert_eq!(tf.apply(&tm("FST(TT,FF) => x | y")).unwrap_err().token(), "term_match");
        let cc = first_conv(&[rw("COND_TT"), rw("COND_FF"), rw("COND_UU")]);
        assert_eq!(cc.apply(&tm("FST(TT,FF) => x | y")).unwrap_err().token(), "FIRST_CONV");
    }

    #[test]
    fn traversals() {
        let d = depth_conv(&many());
        assert_eq!(
            d.apply(&tm(ABS1)).unwrap().to_string(),
            "|-(\\fun.(fun(TT,FF) => x | y))FST == (FST(TT,FF) => x | y)"
        );
        assert_eq!(
            d.apply(&tm("FST(TT,FF) => x | y")).unwrap().to_string(),
            "|-(FST(TT,FF) => x | y) == x"
        );
        let rd = redepth_conv(&many());
        assert_eq!(
            rd.apply(&tm(ABS1)).unwrap().to_string(),
            "|-(\\fun.(fun(TT,FF) => x | y))FST == x"
        );
        let td = top_depth_conv(&many());
        assert_eq!(kernel::rhs(&td.apply(&tm(ABS1)).unwrap()).unwrap().to_string(), "x");
    }

    #[test]
    fn repeat_never_fails() {
        let r = repeatc(&beta_conv());
        assert_eq!(
            r.apply(&tm("TT => x | y")).unwrap().to_string(),
            "|-(TT => x | y) == (TT => x | y)"
        );
        assert_eq!(r.apply(&tm(ABS2)).unwrap().to_string(), "|-(\\t.(\\u.t,u)FF)TT == TT,FF");
    }
}
