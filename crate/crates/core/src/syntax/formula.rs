use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::term::{
    alpha_eq_env, alpha_var, check_subst, inst_type, lookup, subst_unchecked, variant, AlphaEnv,
    Term, TermSubst, Var,
};
use super::types::{Type, TypeSubst};
use crate::error::{Error, Result};

pub const EQUIV: &str = "equiv";
pub const INEQUIV: &str = "inequiv";
pub const TRUTH: &str = "TRUTH";
pub const FALSITY: &str = "FALSITY";

/// The seven syntax classes of formulas. Negation, `==` and `<<` are
/// sugar: `~A` is `A ==> FALSITY()`, `t == u` is `equiv(t,u)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Forall(Var, Arc<Formula>),
    Exists(Var, Arc<Formula>),
    Conj(Arc<Formula>, Arc<Formula>),
    Disj(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
    Iff(Arc<Formula>, Arc<Formula>),
    Pred(Arc<str>, Term),
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print::print_form(self))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print::print_form(self))
    }
}

impl Formula {
    pub fn forall(v: Var, body: Formula) -> Formula {
        Formula::Forall(v, Arc::new(body))
    }

    pub fn exists(v: Var, body: Formula) -> Formula {
        Formula::Exists(v, Arc::new(body))
    }

    pub fn conj(a: Formula, b: Formula) -> Formula {
        Formula::Conj(Arc::new(a), Arc::new(b))
    }

    pub fn disj(a: Formula, b: Formula) -> Formula {
        Formula::Disj(Arc::new(a), Arc::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Arc::new(a), Arc::new(b))
    }

    pub fn pred(name: &str, arg: Term) -> Formula {
        Formula::Pred(name.into(), arg)
    }

    pub fn truth() -> Formula {
        Formula::pred(TRUTH, Term::unit())
    }

    pub fn falsity() -> Formula {
        Formula::pred(FALSITY, Term::unit())
    }

    pub fn neg(a: Formula) -> Formula {
        Formula::imp(a, Formula::falsity())
    }

    pub fn mk_equiv(t: Term, u: Term) -> Result<Formula> {
        if t.ty() != u.ty() {
            return Err(Error::IllTyped(format!(
                "{t} : {} and {u} : {} differ in type",
                t.ty(),
                u.ty()
            )));
        }
        Ok(Formula::pred(EQUIV, Term::mk_pair(t, u)))
    }

    pub fn mk_inequiv(t: Term, u: Term) -> Result<Formula> {
        if t.ty() != u.ty() {
            return Err(Error::IllTyped(format!(
                "{t} : {} and {u} : {} differ in type",
                t.ty(),
                u.ty()
            )));
        }
        Ok(Formula::pred(INEQUIV, Term::mk_pair(t, u)))
    }

    /// Builds `Qx1 ... xn. body` with the first variable outermost.
    pub fn list_forall(vars: &[Var], body: Formula) -> Formula {
        vars.iter()
            .rev()
            .fold(body, |acc, v| Formula::forall(v.clone(), acc))
    }

    pub fn is_truth(&self) -> bool {
        matches!(self, Formula::Pred(n, a) if &**n == TRUTH && a.is_unit())
    }

    pub fn is_falsity(&self) -> bool {
        matches!(self, Formula::Pred(n, a) if &**n == FALSITY && a.is_unit())
    }

    pub fn is_neg(&self) -> bool {
        matches!(self, Formula::Imp(_, b) if b.is_falsity())
    }

    pub fn dest_neg(&self) -> Result<&Formula> {
        match self {
            Formula::Imp(a, b) if b.is_falsity() => Ok(a),
            _ => Err(Error::failure("dest_neg")),
        }
    }

    pub fn dest_pred(&self) -> Result<(&str, &Term)> {
        match self {
            Formula::Pred(n, a) => Ok((n, a)),
            _ => Err(Error::failure("dest_pred")),
        }
    }

    pub fn dest_equiv(&self) -> Result<(&Term, &Term)> {
        match self {
            Formula::Pred(n, a) if &**n == EQUIV => {
                a.dest_pair().map_err(|_| Error::failure("dest_equiv"))
            }
            _ => Err(Error::failure("dest_equiv")),
        }
    }

    pub fn is_equiv(&self) -> bool {
        self.dest_equiv().is_ok()
    }

    pub fn dest_inequiv(&self) -> Result<(&Term, &Term)> {
        match self {
            Formula::Pred(n, a) if &**n == INEQUIV => {
                a.dest_pair().map_err(|_| Error::failure("dest_inequiv"))
            }
            _ => Err(Error::failure("dest_inequiv")),
        }
    }

    pub fn dest_conj(&self) -> Result<(&Formula, &Formula)> {
        match self {
            Formula::Conj(a, b) => Ok((a, b)),
            _ => Err(Error::failure("dest_conj")),
        }
    }

    pub fn dest_disj(&self) -> Result<(&Formula, &Formula)> {
        match self {
            Formula::Disj(a, b) => Ok((a, b)),
            _ => Err(Error::failure("dest_disj")),
        }
    }

    pub fn dest_imp(&self) -> Result<(&Formula, &Formula)> {
        match self {
            Formula::Imp(a, b) => Ok((a, b)),
            _ => Err(Error::failure("dest_imp")),
        }
    }

    pub fn dest_iff(&self) -> Result<(&Formula, &Formula)> {
        match self {
            Formula::Iff(a, b) => Ok((a, b)),
            _ => Err(Error::failure("dest_iff")),
        }
    }

    pub fn dest_forall(&self) -> Result<(&Var, &Formula)> {
        match self {
            Formula::Forall(v, b) => Ok((v, b)),
            _ => Err(Error::failure("dest_forall")),
        }
    }

    pub fn dest_exists(&self) -> Result<(&Var, &Formula)> {
        match self {
            Formula::Exists(v, b) => Ok((v, b)),
            _ => Err(Error::failure("dest_exists")),
        }
    }

    /// Removes all outer universal quantifiers.
    pub fn strip_forall(&self) -> (Vec<Var>, &Formula) {
        let mut vars = Vec::new();
        let mut f = self;
        while let Formula::Forall(v, b) = f {
            vars.push(v.clone());
            f = b;
        }
        (vars, f)
    }

    pub fn free_vars_ordered(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        self.free_vars_ordered().into_iter().collect()
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut Vec<Var>) {
        match self {
            Formula::Forall(v, b) | Formula::Exists(v, b) => {
                bound.push(v.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            Formula::Conj(a, b) | Formula::Disj(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Pred(_, t) => {
                for v in t.free_vars_ordered() {
                    if !bound.contains(&v) && !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
        }
    }

    pub fn has_free(&self, v: &Var) -> bool {
        match self {
            Formula::Forall(w, b) | Formula::Exists(w, b) => w != v && b.has_free(v),
            Formula::Conj(a, b) | Formula::Disj(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.has_free(v) || b.has_free(v)
            }
            Formula::Pred(_, t) => t.has_free(v),
        }
    }

    pub fn all_var_names(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Forall(w, b) | Formula::Exists(w, b) => {
                out.insert(w.name.clone());
                b.all_var_names(out);
            }
            Formula::Conj(a, b) | Formula::Disj(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.all_var_names(out);
                b.all_var_names(out);
            }
            Formula::Pred(_, t) => t.all_var_names(out),
        }
    }

    pub fn type_vars(&self, out: &mut Vec<Arc<str>>) {
        match self {
            Formula::Forall(w, b) | Formula::Exists(w, b) => {
                w.ty.type_vars(out);
                b.type_vars(out);
            }
            Formula::Conj(a, b) | Formula::Disj(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.type_vars(out);
                b.type_vars(out);
            }
            Formula::Pred(_, t) => t.type_vars(out),
        }
    }

    /// Checks the typing constraints the term layer cannot see: the sides of
    /// `==` and `<<` agree in type and TRUTH/FALSITY take `()`.
    pub fn check(&self) -> Result<()> {
        match self {
            Formula::Forall(_, b) | Formula::Exists(_, b) => b.check(),
            Formula::Conj(a, b) | Formula::Disj(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.check()?;
                b.check()
            }
            Formula::Pred(n, t) => match &**n {
                EQUIV | INEQUIV => match t.dest_pair() {
                    Ok((l, r)) if l.ty() == r.ty() => Ok(()),
                    _ => Err(Error::IllTyped(format!(
                        "{n} needs a pair of terms of one type, got {t}"
                    ))),
                },
                TRUTH | FALSITY if !t.is_unit() => {
                    Err(Error::IllTyped(format!("{n} takes the argument ()")))
                }
                _ => Ok(()),
            },
        }
    }
}

pub(crate) fn alpha_eq_form_env(env: &mut AlphaEnv, a: &Formula, b: &Formula) -> bool {
    match (a, b) {
        (Formula::Forall(x, p), Formula::Forall(y, q))
        | (Formula::Exists(x, p), Formula::Exists(y, q)) => {
            if x.ty != y.ty {
                return false;
            }
            env.push((x.clone(), y.clone()));
            let r = alpha_eq_form_env(env, p, q);
            env.pop();
            r
        }
        (Formula::Conj(a1, a2), Formula::Conj(b1, b2))
        | (Formula::Disj(a1, a2), Formula::Disj(b1, b2))
        | (Formula::Imp(a1, a2), Formula::Imp(b1, b2))
        | (Formula::Iff(a1, a2), Formula::Iff(b1, b2)) => {
            alpha_eq_form_env(env, a1, b1) && alpha_eq_form_env(env, a2, b2)
        }
        (Formula::Pred(n, t), Formula::Pred(m, u)) => n == m && alpha_eq_env(env, t, u),
        _ => false,
    }
}

/// Equality of formulas up to renaming of bound variables.
pub fn alpha_eq_form(a: &Formula, b: &Formula) -> bool {
    alpha_eq_form_env(&mut Vec::new(), a, b)
}

#[allow(dead_code)]
pub(crate) fn alpha_var_form(env: &AlphaEnv, a: &Var, b: &Var) -> bool {
    alpha_var(env, a, b)
}

/// Simultaneous capture-avoiding substitution into a formula.
pub fn subst_form(f: &Formula, theta: &[(Term, Var)]) -> Result<Formula> {
    check_subst(theta)?;
    Ok(subst_form_unchecked(f, theta))
}

pub(crate) fn subst_form_unchecked(f: &Formula, theta: &[(Term, Var)]) -> Formula {
    if theta.is_empty() {
        return f.clone();
    }
    match f {
        Formula::Forall(v, b) | Formula::Exists(v, b) => {
            let inner: TermSubst = theta
                .iter()
                .filter(|(_, w)| w != v && b.has_free(w))
                .cloned()
                .collect();
            if inner.is_empty() {
                return f.clone();
            }
            let (v2, body) = if inner.iter().any(|(r, _)| r.has_free(v)) {
                let mut avoid = BTreeSet::new();
                b.all_var_names(&mut avoid);
                for (r, _) in &inner {
                    r.all_var_names(&mut avoid);
                }
                let fresh = variant(v, &avoid);
                let mut inner = inner;
                inner.push((Term::var(fresh.clone()), v.clone()));
                (fresh, subst_form_unchecked(b, &inner))
            } else {
                (v.clone(), subst_form_unchecked(b, &inner))
            };
            match f {
                Formula::Forall(..) => Formula::forall(v2, body),
                _ => Formula::exists(v2, body),
            }
        }
        Formula::Conj(a, b) => Formula::conj(subst_form_unchecked(a, theta), subst_form_unchecked(b, theta)),
        Formula::Disj(a, b) => Formula::disj(subst_form_unchecked(a, theta), subst_form_unchecked(b, theta)),
        Formula::Imp(a, b) => Formula::imp(subst_form_unchecked(a, theta), subst_form_unchecked(b, theta)),
        Formula::Iff(a, b) => Formula::iff(subst_form_unchecked(a, theta), subst_form_unchecked(b, theta)),
        Formula::Pred(n, t) => Formula::Pred(n.clone(), subst_unchecked(t, theta)),
    }
}

/// Instantiates type variables throughout a formula.
pub fn inst_type_form(f: &Formula, theta: &TypeSubst) -> Formula {
    if theta.is_empty() {
        return f.clone();
    }
    match f {
        Formula::Forall(v, b) | Formula::Exists(v, b) => {
            let v2 = v.subst_type(theta);
            let clash = b
                .free_vars_ordered()
                .iter()
                .any(|w| w != v && w.subst_type(theta) == v2);
            let (v, body) = if clash {
                let mut avoid = BTreeSet::new();
                b.all_var_names(&mut avoid);
                let fresh = variant(v, &avoid);
                let renamed = subst_form_unchecked(b, &[(Term::var(fresh.clone()), v.clone())]);
                (fresh.subst_type(theta), inst_type_form(&renamed, theta))
            } else {
                (v2, inst_type_form(b, theta))
            };
            match f {
                Formula::Forall(..) => Formula::forall(v, body),
                _ => Formula::exists(v, body),
            }
        }
        Formula::Conj(a, b) => Formula::conj(inst_type_form(a, theta), inst_type_form(b, theta)),
        Formula::Disj(a, b) => Formula::disj(inst_type_form(a, theta), inst_type_form(b, theta)),
        Formula::Imp(a, b) => Formula::imp(inst_type_form(a, theta), inst_type_form(b, theta)),
        Formula::Iff(a, b) => Formula::iff(inst_type_form(a, theta), inst_type_form(b, theta)),
        Formula::Pred(n, t) => Formula::Pred(n.clone(), inst_type(t, theta)),
    }
}

/// Looks up a variable in a substitution (used by the kernel).
#[allow(dead_code)]
pub(crate) fn lookup_var<'a>(theta: &'a [(Term, Var)], v: &Var) -> Option<&'a Term> {
    lookup(theta, v)
}

/// A variable of type `ty` whose name is `base` primed until it avoids
/// every name in `avoid`.
pub fn fresh_var(base: &str, ty: Type, avoid: &BTreeSet<Arc<str>>) -> Var {
    variant(&Var::new(base, ty), avoid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Var {
        Var::new(n, Type::var("*"))
    }

    #[test]
    fn negation_is_sugar() {
        let x = Term::var(v("x"));
        let uu = Term::constant("UU", Type::var("*"));
        let a = Formula::mk_equiv(x, uu).unwrap();
        let n = Formula::neg(a.clone());
        assert!(n.is_neg());
        assert_eq!(n.dest_neg().unwrap(), &a);
        assert_eq!(n.dest_imp().unwrap().1, &Formula::falsity());
    }

    #[test]
    fn equiv_requires_matching_types() {
        let x = Term::var(v("x"));
        assert!(Formula::mk_equiv(x, Term::unit()).is_err());
    }

    #[test]
    fn quantifier_substitution_renames() {
        // (!y. x == y)[y/x]  ->  !y'. y == y'
        let x = v("x");
        let y = v("y");
        let body = Formula::mk_equiv(Term::var(x.clone()), Term::var(y.clone())).unwrap();
        let f = Formula::forall(y.clone(), body);
        let r = subst_form(&f, &[(Term::var(y.clone()), x)]).unwrap();
        let (bv, _) = r.dest_forall().unwrap();
        assert_eq!(&*bv.name, "y'");
        assert!(r.has_free(&y));
    }

    #[test]
    fn alpha_equivalence_of_quantifiers() {
        let x = v("x");
        let y = v("y");
        let z = v("z");
        let mk = |b: &Var| {
            Formula::forall(
                b.clone(),
                Formula::mk_equiv(Term::var(b.clone()), Term::var(z.clone())).unwrap(),
            )
        };
        assert!(alpha_eq_form(&mk(&x), &mk(&y)));
        let other = Formula::exists(
            x.clone(),
            Formula::mk_equiv(Term::var(x.clone()), Term::var(z.clone())).unwrap(),
        );
        assert!(!alpha_eq_form(&mk(&x), &other));
    }
}
