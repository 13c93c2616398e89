//! Canonical printer for types, terms, formulas and theorems.

use super::formula::{Formula, EQUIV, INEQUIV};
use super::infix::is_infix;
use super::term::{Term, TermKind};
use super::types::Type;

// Term contexts, loosest first.
const T_PAIR: u8 = 0;
const T_COND: u8 = 1;
const T_INFIX: u8 = 2;
const T_APP: u8 = 3;
const T_ATOM: u8 = 4;

// Formula contexts, loosest first.
const F_IFF: u8 = 0;
const F_IMP: u8 = 1;
const F_DISJ: u8 = 2;
const F_CONJ: u8 = 3;
const F_UNARY: u8 = 4;

pub fn print_type(ty: &Type) -> String {
    ty.to_string()
}

pub fn print_term(t: &Term) -> String {
    term_at(t, T_PAIR)
}

pub fn print_form(f: &Formula) -> String {
    form_at(f, F_IFF)
}

fn paren(s: String, yes: bool) -> String {
    if yes {
        format!("({s})")
    } else {
        s
    }
}

fn infix_parts(t: &Term) -> Option<(&str, &Term, &Term)> {
    let (head, args) = t.strip_comb();
    match head.kind() {
        TermKind::Const(n, _) if args.len() == 2 && is_infix(n) => Some((n, args[0], args[1])),
        _ => None,
    }
}

fn term_at(t: &Term, ctx: u8) -> String {
    if let Ok((p, a, b)) = t.dest_cond() {
        return format!(
            "({} => {} | {})",
            term_at(p, T_COND),
            term_at(a, T_COND),
            term_at(b, T_COND)
        );
    }
    if let Ok((a, b)) = t.dest_pair() {
        let sep = if a.is_cond() || b.is_cond() { ", " } else { "," };
        let s = format!("{}{sep}{}", term_at(a, T_COND), term_at(b, T_PAIR));
        return paren(s, ctx > T_PAIR);
    }
    if let Some((op, a, b)) = infix_parts(t) {
        let s = format!("{} {op} {}", infix_operand(a), infix_operand(b));
        return paren(s, ctx > T_INFIX);
    }
    match t.kind() {
        TermKind::Const(n, _) => n.to_string(),
        TermKind::Var(v) => v.name.to_string(),
        TermKind::Abs(v, body) => paren(format!("\\{}.{}", v.name, term_at(body, T_PAIR)), ctx > T_PAIR),
        TermKind::Comb(f, x) => {
            let fs = term_at(f, T_APP);
            let xs = term_at(x, T_ATOM);
            let s = if fs.ends_with(')') || xs.starts_with('(') {
                format!("{fs}{xs}")
            } else {
                format!("{fs} {xs}")
            };
            paren(s, ctx > T_APP)
        }
    }
}

fn infix_operand(t: &Term) -> String {
    let bare = t.is_var() || t.is_const() || t.is_cond();
    if bare {
        term_at(t, T_ATOM)
    } else {
        format!("({})", term_at(t, T_PAIR))
    }
}

fn quantifier_run<'a>(f: &'a Formula, exists: bool) -> (Vec<&'a str>, &'a Formula) {
    let mut names = Vec::new();
    let mut cur = f;
    loop {
        match (cur, exists) {
            (Formula::Forall(v, b), false) | (Formula::Exists(v, b), true) => {
                names.push(&*v.name);
                cur = b;
            }
            _ => return (names, cur),
        }
    }
}

fn form_at(f: &Formula, ctx: u8) -> String {
    match f {
        Formula::Forall(..) | Formula::Exists(..) => {
            let exists = matches!(f, Formula::Exists(..));
            let (names, body) = quantifier_run(f, exists);
            let q = if exists { '?' } else { '!' };
            let s = format!("{q}{}. {}", names.join(" "), form_at(body, F_IFF));
            paren(s, ctx > F_IFF)
        }
        Formula::Imp(a, b) if b.is_falsity() => format!("~ {}", form_at(a, F_UNARY)),
        Formula::Imp(a, b) => paren(
            format!("{} ==> {}", form_at(a, F_DISJ), form_at(b, F_IMP)),
            ctx > F_IMP,
        ),
        Formula::Iff(a, b) => paren(
            format!("{} <=> {}", form_at(a, F_IMP), form_at(b, F_IMP)),
            ctx > F_IFF,
        ),
        Formula::Disj(a, b) => paren(
            format!("{} \\/ {}", form_at(a, F_CONJ), form_at(b, F_DISJ)),
            ctx > F_DISJ,
        ),
        Formula::Conj(a, b) => paren(
            format!("{} ^ {}", form_at(a, F_UNARY), form_at(b, F_CONJ)),
            ctx > F_CONJ,
        ),
        Formula::Pred(n, arg) => {
            let rel = match &**n {
                EQUIV => Some("=="),
                INEQUIV => Some("<<"),
                _ => None,
            };
            if let (Some(op), Ok((l, r))) = (rel, arg.dest_pair()) {
                return format!("{} {op} {}", term_at(l, T_COND), term_at(r, T_PAIR));
            }
            if arg.is_unit() {
                format!("{n}()")
            } else {
                format!("{n} {}", term_at(arg, T_APP))
            }
        }
    }
}

/// Prints a sequent: `|-C`, or `[h1; h2] |- C` when there are hypotheses.
pub fn print_sequent(hyps: &[Formula], concl: &Formula) -> String {
    if hyps.is_empty() {
        format!("|-{}", print_form(concl))
    } else {
        let hs: Vec<String> = hyps.iter().map(print_form).collect();
        format!("[{}] |- {}", hs.join("; "), print_form(concl))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::term::Var;

    fn c(n: &str, ty: Type) -> Term {
        Term::constant(n, ty)
    }

    #[test]
    fn conditional_and_pairs() {
        let tr = Type::tr();
        let tt = c("TT", tr.clone());
        let ff = c("FF", tr.clone());
        let t = Term::mk_cond(
            tt.clone(),
            Term::mk_pair(ff.clone(), tt.clone()),
            Term::mk_pair(tt.clone(), ff.clone()),
        )
        .unwrap();
        assert_eq!(print_term(&t), "(TT => (FF,TT) | (TT,FF))");
        let (f, _) = t.dest_comb().unwrap();
        assert_eq!(print_term(f), "COND TT(FF,TT)");
    }

    #[test]
    fn nested_beta_redex() {
        let tr = Type::tr();
        let t = Var::new("t", tr.clone());
        let u = Var::new("u", tr.clone());
        let inner = Term::abs(
            u.clone(),
            Term::mk_pair(Term::var(t.clone()), Term::var(u.clone())),
        );
        let body = Term::comb(inner, c("FF", tr.clone())).unwrap();
        let abs2 = Term::comb(Term::abs(t, body), c("TT", tr)).unwrap();
        assert_eq!(print_term(&abs2), "(\\t.(\\u.t,u)FF)TT");
    }

    #[test]
    fn negation_and_equivalence() {
        let a = Type::var("*");
        let x = Term::mk_var("x", a.clone());
        let eq = Formula::mk_equiv(x, c("UU", a)).unwrap();
        assert_eq!(print_form(&Formula::neg(eq.clone())), "~ x == UU");
        let imp = Formula::imp(Formula::neg(eq.clone()), Formula::neg(eq.clone()));
        assert_eq!(print_form(&imp), "~ x == UU ==> ~ x == UU");
        assert_eq!(print_form(&Formula::truth()), "TRUTH()");
        let iff = Formula::iff(eq.clone(), Formula::falsity());
        assert_eq!(
            print_form(&Formula::imp(eq, iff)),
            "x == UU ==> (x == UU <=> FALSITY())"
        );
    }
}
