//! One-sided structural matching, and rules that instantiate theorems by it.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::{self, Thm};
use crate::syntax::print::{print_term, print_type};
use crate::syntax::term::{alpha_eq, Term, TermKind, Var};
use crate::syntax::types::{Type, TypeSubst};
use crate::syntax::Formula;

/// Bindings found by a match. Both lists are in reverse order of discovery.
/// Term bindings name the pattern variable at its instantiated type.
#[derive(Clone, Debug, Default)]
pub struct MatchResult {
    pub terms: Vec<(Term, Var)>,
    pub types: Vec<(Type, Arc<str>)>,
}

impl MatchResult {
    pub fn type_subst(&self) -> TypeSubst {
        self.types.iter().map(|(t, a)| (a.clone(), t.clone())).collect()
    }

    /// Applies the bindings to a theorem with `INST`.
    pub fn inst(&self, th: &Thm) -> Result<Thm> {
        if self.terms.is_empty() && self.types.is_empty() {
            return Ok(th.clone());
        }
        kernel::inst(&self.terms, &self.type_subst(), th)
    }
}

impl fmt::Display for MatchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tms: Vec<String> = self
            .terms
            .iter()
            .map(|(t, v)| format!("\"{}\",\"{}\"", print_term(t), v.name))
            .collect();
        let tys: Vec<String> = self
            .types
            .iter()
            .map(|(t, a)| format!("\":{}\",\":{}\"", print_type(t), a))
            .collect();
        writeln!(f, "[{}],", tms.join("; "))?;
        writeln!(f, "[{}]", tys.join("; "))?;
        write!(f, ": ((term # term) list # (type # type) list)")
    }
}

struct Matcher {
    /// Pattern variable, as written, with the object it stands for.
    terms: Vec<(Var, Term)>,
    types: Vec<(Arc<str>, Type)>,
    /// Bound variable pairs, innermost last.
    env: Vec<(Var, Var)>,
    /// Variables and type variables that may only match themselves.
    fixed: Vec<Var>,
    fixed_tys: Vec<Arc<str>>,
}

impl Matcher {
    fn new() -> Matcher {
        Matcher {
            terms: Vec::new(),
            types: Vec::new(),
            env: Vec::new(),
            fixed: Vec::new(),
            fixed_tys: Vec::new(),
        }
    }

    /// A matcher that treats everything free in `hyps` as constant.
    fn fixing(hyps: &[Formula]) -> Matcher {
        let mut m = Matcher::new();
        for h in hyps {
            for v in h.free_vars_ordered() {
                if !m.fixed.contains(&v) {
                    m.fixed.push(v);
                }
            }
            h.type_vars(&mut m.fixed_tys);
        }
        m
    }

    fn ty(&mut self, p: &Type, o: &Type) -> bool {
        match (p, o) {
            (Type::Var(a), _) if self.fixed_tys.contains(a) => p == o,
            (Type::Var(a), _) => match self.types.iter().find(|(b, _)| b == a) {
                Some((_, t)) => t == o,
                None => {
                    self.types.push((a.clone(), o.clone()));
                    true
                }
            },
            (Type::Atom(a), Type::Atom(b)) => a == b,
            (Type::Fun(a, b), Type::Fun(c, d)) | (Type::Prod(a, b), Type::Prod(c, d)) => {
                std::mem::discriminant(p) == std::mem::discriminant(o)
                    && self.ty(a, c)
                    && self.ty(b, d)
            }
            _ => false,
        }
    }

    fn term(&mut self, p: &Term, o: &Term) -> bool {
        match (p.kind(), o.kind()) {
            (TermKind::Var(v), _) => {
                if let Some((_, ov)) = self.env.iter().rev().find(|(pv, _)| pv == v) {
                    return matches!(o.kind(), TermKind::Var(w) if w == ov);
                }
                if self.fixed.contains(v) {
                    return matches!(o.kind(), TermKind::Var(w) if w == v);
                }
                if self.env.iter().any(|(_, ov)| o.has_free(ov)) {
                    return false;
                }
                if !self.ty(&v.ty, o.ty()) {
                    return false;
                }
                match self.terms.iter().find(|(pv, _)| pv == v) {
                    Some((_, t)) => alpha_eq(t, o),
                    None => {
                        self.terms.push((v.clone(), o.clone()));
                        true
                    }
                }
            }
            (TermKind::Const(a, ta), TermKind::Const(b, tb)) => a == b && self.ty(ta, tb),
            (TermKind::Abs(x, b), TermKind::Abs(y, c)) => {
                if !self.ty(&x.ty, &y.ty) {
                    return false;
                }
                self.env.push((x.clone(), y.clone()));
                let ok = self.term(b, c);
                self.env.pop();
                ok
            }
            (TermKind::Comb(f, x), TermKind::Comb(g, y)) => self.term(f, g) && self.term(x, y),
            _ => false,
        }
    }

    fn form(&mut self, p: &Formula, o: &Formula) -> bool {
        use Formula::*;
        match (p, o) {
            (Forall(x, a), Forall(y, b)) | (Exists(x, a), Exists(y, b)) => {
                if std::mem::discriminant(p) != std::mem::discriminant(o) || !self.ty(&x.ty, &y.ty) {
                    return false;
                }
                self.env.push((x.clone(), y.clone()));
                let ok = self.form(a, b);
                self.env.pop();
                ok
            }
            (Conj(a, b), Conj(c, d))
            | (Disj(a, b), Disj(c, d))
            | (Imp(a, b), Imp(c, d))
            | (Iff(a, b), Iff(c, d)) => {
                std::mem::discriminant(p) == std::mem::discriminant(o)
                    && self.form(a, c)
                    && self.form(b, d)
            }
            (Pred(a, s), Pred(b, t)) => a == b && self.term(s, t),
            _ => false,
        }
    }

    fn finish(self) -> Option<MatchResult> {
        let theta: TypeSubst = self.types.iter().map(|(a, t)| (a.clone(), t.clone())).collect();
        let mut terms: Vec<(Term, Var)> = Vec::new();
        for (v, t) in &self.terms {
            let v = v.subst_type(&theta);
            if matches!(t.kind(), TermKind::Var(w) if *w == v) {
                continue;
            }
            match terms.iter().find(|(_, w)| *w == v) {
                Some((u, _)) if !alpha_eq(u, t) => return None,
                Some(_) => {}
                None => terms.push((t.clone(), v)),
            }
        }
        terms.reverse();
        let mut types: Vec<(Type, Arc<str>)> = self
            .types
            .into_iter()
            .filter(|(a, t)| !matches!(t, Type::Var(b) if b == a))
            .map(|(a, t)| (t, a))
            .collect();
        types.reverse();
        Some(MatchResult { terms, types })
    }
}

/// Expresses `object` as an instance of `pattern`; fails with `term_match`.
pub fn term_match(pattern: &Term, object: &Term) -> Result<MatchResult> {
    term_match_fixing(&[], pattern, object)
}

/// As [`term_match`], but variables free in `hyps` only match themselves.
pub fn term_match_fixing(hyps: &[Formula], pattern: &Term, object: &Term) -> Result<MatchResult> {
    let mut m = Matcher::fixing(hyps);
    if m.term(pattern, object) {
        if let Some(r) = m.finish() {
            return Ok(r);
        }
    }
    Err(Error::failure("term_match"))
}

/// Expresses `object` as an instance of `pattern`; fails with `form_match`.
pub fn form_match(pattern: &Formula, object: &Formula) -> Result<MatchResult> {
    form_match_fixing(&[], pattern, object)
}

/// As [`form_match`], but variables free in `hyps` only match themselves.
pub fn form_match_fixing(
    hyps: &[Formula],
    pattern: &Formula,
    object: &Formula,
) -> Result<MatchResult> {
    let mut m = Matcher::fixing(hyps);
    if m.form(pattern, object) {
        if let Some(r) = m.finish() {
            return Ok(r);
        }
    }
    Err(Error::failure("form_match"))
}

/// Strips the outer universal quantifiers of a theorem with `SPEC`, keeping
/// the bound names.
pub fn spec_all(th: &Thm) -> Result<Thm> {
    let (vars, _) = th.concl().strip_forall();
    let mut out = th.clone();
    for v in vars {
        let v = if th.hyps().iter().any(|h| h.has_free(&v)) {
            let mut avoid = std::collections::BTreeSet::new();
            for h in th.hyps() {
                h.all_var_names(&mut avoid);
            }
            th.concl().all_var_names(&mut avoid);
            crate::syntax::term::variant(&v, &avoid)
        } else {
            v
        };
        out = kernel::spec(&Term::var(v), &out)?;
    }
    Ok(out)
}

pub type TermRule = Box<dyn Fn(&Term) -> Result<Thm> + Send + Sync>;
pub type FormRule = Box<dyn Fn(&Formula) -> Result<Thm> + Send + Sync>;

/// Selects a part of a quantifier-free conclusion.
pub type TermPart = fn(&Formula) -> Result<Term>;
pub type FormPart = fn(&Formula) -> Result<Formula>;

/// `PART_TMATCH partfn th`: the part is computed once; the returned rule
/// instantiates `th` so that its part becomes the given term.
pub fn part_tmatch(partfn: impl Fn(&Formula) -> Result<Term>, th: &Thm) -> Result<TermRule> {
    let body = spec_all(th)?;
    let part = partfn(body.concl())?;
    Ok(Box::new(move |t: &Term| term_match_fixing(body.hyps(), &part, t)?.inst(&body)))
}

/// `PART_FMATCH partfn th`, the formula analogue of [`part_tmatch`].
pub fn part_fmatch(partfn: impl Fn(&Formula) -> Result<Formula>, th: &Thm) -> Result<FormRule> {
    let body = spec_all(th)?;
    let part = partfn(body.concl())?;
    Ok(Box::new(move |a: &Formula| form_match_fixing(body.hyps(), &part, a)?.inst(&body)))
}

/// Modus ponens that first matches the antecedent of `impth`.
pub fn match_mp(impth: &Thm) -> Result<Box<dyn Fn(&Thm) -> Result<Thm> + Send + Sync>> {
    let m = part_fmatch(|f| Ok(f.dest_imp()?.0.clone()), impth)?;
    Ok(Box::new(move |th: &Thm| kernel::mp(&m(th.concl())?, th)))
}

/// `snd o dest_inequiv` and friends, as used with the part matchers.
pub mod parts {
    use super::*;

    pub fn lhs(f: &Formula) -> Result<Term> {
        Ok(f.dest_equiv()?.0.clone())
    }

    pub fn rhs(f: &Formula) -> Result<Term> {
        Ok(f.dest_equiv()?.1.clone())
    }

    pub fn inequiv_rhs(f: &Formula) -> Result<Term> {
        Ok(f.dest_inequiv()?.1.clone())
    }

    pub fn iff_lhs(f: &Formula) -> Result<Formula> {
        Ok(f.dest_iff()?.0.clone())
    }

    pub fn antecedent(f: &Formula) -> Result<Formula> {
        Ok(f.dest_imp()?.0.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Theory;
    use crate::syntax::parse::{parse_form, parse_term};

    fn tm(s: &str) -> Term {
        parse_term(&*Theory::pplambda(), s).unwrap()
    }

    fn fm(s: &str) -> Formula {
        parse_form(&*Theory::pplambda(), s).unwrap()
    }

    #[test]
    fn conditional_pattern() {
        let obj = tm("TT=> (FF,TT) | (TT,FF)");
        let r = term_match(&tm("p=>x|y"), &obj).unwrap();
        assert_eq!(
            r.to_string(),
            "[\"TT,FF\",\"y\"; \"FF,TT\",\"x\"; \"TT\",\"p\"],\n[\":tr # tr\",\":*\"]\n\
             : ((term # term) list # (type # type) list)"
        );
        assert!(term_match(&tm("p=>FF|y"), &obj).is_err());
        assert!(term_match(&tm("\\p.p"), &obj).is_err());
    }

    #[test]
    fn bound_variables_are_positional() {
        let obj = fm("!x. (x,TT) == UU");
        assert!(form_match(&fm("!y. (x,y) == UU"), &obj).is_err());
        assert!(form_match(&fm("?x. (x,TT) == UU"), &obj).is_err());
        let r = form_match(&fm("!y. (y,z) == UU"), &obj).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert_eq!(print_term(&r.terms[0].0), "TT");
        assert_eq!(&*r.terms[0].1.name, "z");
    }

    #[test]
    fn repeated_variable_must_agree() {
        assert!(term_match(&tm("(x,x)"), &tm("(TT,FF)")).is_err());
        assert!(term_match(&tm("(x,x)"), &tm("(TT,TT)")).is_ok());
    }

    #[test]
    fn minimal_instance() {
        let min = part_tmatch(parts::inequiv_rhs, &Theory::pplambda().axiom("MINIMAL").unwrap())
            .unwrap();
        assert_eq!(min(&tm("f x")).unwrap().to_string(), "|-UU << f x");
        let fst = part_tmatch(parts::lhs, &Theory::pplambda().axiom("FST_PAIR").unwrap()).unwrap();
        assert_eq!(fst(&tm("FST(TT,FF)")).unwrap().to_string(), "|-FST(TT,FF) == TT");
        assert_eq!(fst(&tm("SND(TT,FF)")).unwrap_err().token(), "term_match");
    }
}
