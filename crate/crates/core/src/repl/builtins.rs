//! The functions and constants the command language starts with.
//!
//! Every entry has the upper-case name used in ML sessions and, where the
//! strategy grammar has one, a short lower-case alias.

use std::fmt;

use super::value::Value;
use crate::conv::{self, Conv};
use crate::error::{Error, Result};
use crate::fconv::{self, FConv};
use crate::kernel::{self, Theory, Thm};
use crate::matching::{self, form_match, term_match};
use crate::syntax::{Formula, Term};
use crate::tactic::{self, Tactic};

type Impl = fn(&Theory, Vec<Value>) -> Result<Value>;

pub struct BuiltinDef {
    pub names: &'static [&'static str],
    pub arity: usize,
    pub ty: &'static str,
    run: Impl,
}

#[derive(Clone, Copy)]
pub struct Builtin(&'static BuiltinDef);

impl fmt::Debug for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.names[0])
    }
}

impl Builtin {
    pub fn lookup(name: &str) -> Option<Builtin> {
        TABLE.iter().find(|d| d.names.contains(&name)).map(Builtin)
    }

    pub fn is_reserved(name: &str) -> bool {
        Builtin::lookup(name).is_some()
    }

    pub fn name(&self) -> &'static str {
        self.0.names[0]
    }

    pub fn arity(&self) -> usize {
        self.0.arity
    }

    pub fn type_name(&self) -> &'static str {
        self.0.ty
    }

    pub fn call(&self, thy: &Theory, args: Vec<Value>) -> Result<Value> {
        (self.0.run)(thy, args)
    }
}

fn expected(what: &str, got: &Value) -> Error {
    Error::TypeMismatch(format!("expected a {what}, got a {}", got.type_name()))
}

pub fn as_thm(v: &Value) -> Result<Thm> {
    match v {
        Value::Thm(t) => Ok(t.clone()),
        _ => Err(expected("thm", v)),
    }
}

pub fn as_term(v: &Value) -> Result<Term> {
    match v {
        Value::Term(t) => Ok(t.clone()),
        _ => Err(expected("term", v)),
    }
}

pub fn as_form(v: &Value) -> Result<Formula> {
    match v {
        Value::Form(f) => Ok(f.clone()),
        _ => Err(expected("form", v)),
    }
}

pub fn as_conv(v: &Value) -> Result<Conv> {
    match v {
        Value::Conv(c) => Ok(c.clone()),
        _ => Err(expected("conv", v)),
    }
}

pub fn as_fconv(v: &Value) -> Result<FConv> {
    match v {
        Value::FConv(f) => Ok(f.clone()),
        _ => Err(expected("fconv", v)),
    }
}

pub fn as_tactic(v: &Value) -> Result<Tactic> {
    match v {
        Value::Tactic(t) => Ok(t.clone()),
        _ => Err(expected("tactic", v)),
    }
}

fn as_list(v: &Value) -> Result<&[Value]> {
    match v {
        Value::List(vs) => Ok(vs),
        _ => Err(expected("list", v)),
    }
}

fn as_token(v: &Value) -> Result<&str> {
    match v {
        Value::Token(s) => Ok(s),
        _ => Err(expected("token", v)),
    }
}

fn thms(v: &Value) -> Result<Vec<Thm>> {
    as_list(v)?.iter().map(as_thm).collect()
}

fn thm_list(ths: Vec<Thm>) -> Value {
    Value::List(ths.into_iter().map(Value::Thm).collect())
}

/// Applies a function value to one argument.
pub fn apply(thy: &Theory, f: Value, arg: Value) -> Result<Value> {
    match f {
        Value::Func(b, mut args) => {
            match arg {
                Value::Tuple(items) if args.is_empty() && b.arity() >= 2 && items.len() == b.arity() => {
                    args = items;
                }
                other => args.push(other),
            }
            if args.len() == b.arity() {
                b.call(thy, args)
            } else {
                Ok(Value::Func(b, args))
            }
        }
        Value::Conv(c) => Ok(Value::Thm(c.apply(&as_term(&arg)?)?)),
        Value::FConv(c) => Ok(Value::Thm(c.apply(&as_form(&arg)?)?)),
        other => Err(Error::TypeMismatch(format!("a {} is not a function", other.type_name()))),
    }
}

/// The value a builtin name denotes: its result for a constant, otherwise
/// the unapplied function.
pub fn value_of(thy: &Theory, b: Builtin) -> Result<Value> {
    if b.arity() == 0 {
        b.call(thy, Vec::new())
    } else {
        Ok(Value::Func(b, Vec::new()))
    }
}

fn c0(c: Conv) -> Result<Value> {
    Ok(Value::Conv(c))
}

fn f0(f: FConv) -> Result<Value> {
    Ok(Value::FConv(f))
}

fn t0(t: Tactic) -> Result<Value> {
    Ok(Value::Tactic(t))
}

fn matcher(a: &[Value]) -> Result<Value> {
    match (&a[0], &a[1]) {
        (Value::Term(p), Value::Term(o)) => Ok(Value::Match(term_match(p, o)?)),
        (Value::Form(p), Value::Form(o)) => Ok(Value::Match(form_match(p, o)?)),
        (p, o) => Err(Error::TypeMismatch(format!(
            "cannot match a {} against a {}",
            p.type_name(),
            o.type_name()
        ))),
    }
}

fn fact(thy: &Theory, a: &[Value]) -> Result<Value> {
    let (name, label) = (as_token(&a[0])?, as_token(&a[1])?);
    let t = if thy.name() == name {
        thy
    } else {
        thy.ancestor(name).ok_or_else(|| Error::UnknownLabel(name.to_string()))?
    };
    Ok(Value::Thm(t.fact(label)?))
}

/// The terms bound to abs1, abs2, condu, condt, condf and condfst.
const EXAMPLE_TERMS: [&str; 6] = [
    "(\\fun.(fun(TT,FF) => x | y))FST",
    "(\\t.(\\u.t,u)FF)TT",
    "UU => (TT,FF,p) | (q,TT,q)",
    "TT => x | y",
    "FF => f x | f y",
    "FST(TT,FF) => x | y",
];

const EXAMPLE_REWRITES: [&str; 8] =
    ["COND_UU", "COND_TT", "COND_FF", "MIN_COMB", "MIN_ABS", "MK_PAIR", "FST_PAIR", "SND_PAIR"];

/// The formulas bound to imp1, conj1 and equiv1; they need the predicates
/// `P` and `Q` of the formula-rewrite examples theory.
const EXAMPLE_FORMS: [&str; 3] = [
    "!x y. P ((TT => y | z), SND(y,y)) ==> Q ((\\p.(p => v | y))FF)",
    "?x. x << UU TT \\/ SND(x,TT) == (UU => TT | FF)",
    "!x. ?p. (FST(p,p) => x | UU) == (p => (\\z.SND(x,z))x | (\\r.r)UU)",
];

fn example_forms(thy: &Theory) -> Result<Value> {
    let fs = EXAMPLE_FORMS
        .iter()
        .map(|s| crate::syntax::parse_form(thy, s).map(Value::Form))
        .collect::<Result<_>>()?;
    Ok(Value::List(fs))
}

fn example_frewrites(thy: &Theory) -> Result<Value> {
    let ths = ["P_Q", "LESS_UU"].iter().map(|l| thy.fact(l).map(Value::Thm)).collect::<Result<_>>()?;
    Ok(Value::List(ths))
}

fn example_terms(thy: &Theory) -> Result<Value> {
    let ts = EXAMPLE_TERMS
        .iter()
        .map(|s| crate::syntax::parse_term(thy, s).map(Value::Term))
        .collect::<Result<_>>()?;
    Ok(Value::List(ts))
}

fn example_rewrites(thy: &Theory) -> Result<Value> {
    let ths = EXAMPLE_REWRITES.iter().map(|l| thy.axiom(l).map(Value::Thm)).collect::<Result<_>>()?;
    Ok(Value::List(ths))
}

macro_rules! def {
    ($names:expr, $arity:expr, $ty:expr, |$thy:ident, $a:ident| $body:expr) => {
        BuiltinDef {
            names: $names,
            arity: $arity,
            ty: $ty,
            run: {
                #[allow(unused_variables)]
                fn run($thy: &Theory, $a: Vec<Value>) -> Result<Value> {
                    $body
                }
                run
            },
        }
    };
}

static TABLE: &[BuiltinDef] = &[
    // Matching and rules.
    def!(&["term_match"], 2, "term -> term -> match", |t, a| {
        Ok(Value::Match(term_match(&as_term(&a[0])?, &as_term(&a[1])?)?))
    }),
    def!(&["form_match"], 2, "form -> form -> match", |t, a| {
        Ok(Value::Match(form_match(&as_form(&a[0])?, &as_form(&a[1])?)?))
    }),
    def!(&["match"], 2, "quotation -> quotation -> match", |t, a| matcher(&a)),
    def!(&["ASSUME"], 1, "form -> thm", |t, a| Ok(Value::Thm(kernel::assume(&as_form(&a[0])?)?))),
    def!(&["REFL"], 1, "term -> thm", |t, a| Ok(Value::Thm(kernel::refl(&as_term(&a[0])?)?))),
    def!(&["SPEC_ALL"], 1, "thm -> thm", |t, a| Ok(Value::Thm(matching::spec_all(&as_thm(&a[0])?)?))),
    def!(&["MATCH_MP"], 2, "thm -> thm -> thm", |t, a| {
        Ok(Value::Thm(matching::match_mp(&as_thm(&a[0])?)?(&as_thm(&a[1])?)?))
    }),
    def!(&["IMP_CANON"], 1, "thm -> thm list", |t, a| Ok(thm_list(tactic::imp_canon(&as_thm(&a[0])?)?))),
    def!(&["FCONV_CANON"], 1, "thm -> thm", |t, a| Ok(Value::Thm(tactic::fconv_canon(&as_thm(&a[0])?)?))),
    def!(&["example_terms"], 0, "term list", |t, a| example_terms(t)),
    def!(&["example_rewrites"], 0, "thm list", |t, a| example_rewrites(t)),
    def!(&["example_forms"], 0, "form list", |t, a| example_forms(t)),
    def!(&["example_frewrites"], 0, "thm list", |t, a| example_frewrites(t)),
    def!(&["theorem", "axiom"], 2, "tok -> tok -> thm", |t, a| fact(t, &a)),
    def!(&["map"], 2, "(* -> **) -> * list -> ** list", |t, a| {
        let out = as_list(&a[1])?
            .iter()
            .map(|x| apply(t, a[0].clone(), x.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Value::List(out))
    }),
    def!(&["conv"], 2, "conv -> term -> thm", |t, a| Ok(Value::Thm(as_conv(&a[0])?.apply(&as_term(&a[1])?)?))),
    def!(&["fconv"], 2, "fconv -> form -> thm", |t, a| {
        Ok(Value::Thm(as_fconv(&a[0])?.apply(&as_form(&a[1])?)?))
    }),
    // Term conversions.
    def!(&["BETA_CONV", "beta"], 0, "conv", |t, a| c0(conv::beta_conv())),
    def!(&["ALL_CONV", "all"], 0, "conv", |t, a| c0(conv::all_conv())),
    def!(&["NO_CONV", "no"], 0, "conv", |t, a| c0(conv::no_conv())),
    def!(&["REWRITE_CONV", "rw"], 1, "thm -> conv", |t, a| c0(conv::rewrite_conv(&as_thm(&a[0])?)?)),
    def!(&["THENC", "thenc"], 2, "conv -> conv -> conv", |t, a| {
        c0(conv::thenc(&as_conv(&a[0])?, &as_conv(&a[1])?))
    }),
    def!(&["ORELSEC", "orelsec"], 2, "conv -> conv -> conv", |t, a| {
        c0(conv::orelsec(&as_conv(&a[0])?, &as_conv(&a[1])?))
    }),
    def!(&["FIRST_CONV", "first"], 1, "conv list -> conv", |t, a| {
        c0(conv::first_conv(&as_list(&a[0])?.iter().map(as_conv).collect::<Result<Vec<_>>>()?))
    }),
    def!(&["REPEATC", "repeatc"], 1, "conv -> conv", |t, a| c0(conv::repeatc(&as_conv(&a[0])?))),
    def!(&["COMB_CONV"], 1, "conv -> conv", |t, a| c0(conv::comb_conv(&as_conv(&a[0])?))),
    def!(&["ABS_CONV"], 1, "conv -> conv", |t, a| c0(conv::abs_conv(&as_conv(&a[0])?))),
    def!(&["SUB_CONV", "sub"], 1, "conv -> conv", |t, a| c0(conv::sub_conv(&as_conv(&a[0])?))),
    def!(&["DEPTH_CONV", "depth"], 1, "conv -> conv", |t, a| c0(conv::depth_conv(&as_conv(&a[0])?))),
    def!(&["REDEPTH_CONV", "redepth"], 1, "conv -> conv", |t, a| c0(conv::redepth_conv(&as_conv(&a[0])?))),
    def!(&["TOP_DEPTH_CONV", "topdepth"], 1, "conv -> conv", |t, a| {
        c0(conv::top_depth_conv(&as_conv(&a[0])?))
    }),
    // Formula conversions.
    def!(&["REWRITE_FCONV", "frw"], 1, "thm -> fconv", |t, a| f0(fconv::rewrite_fconv(&as_thm(&a[0])?)?)),
    def!(&["ALL_FCONV", "fall"], 0, "fconv", |t, a| f0(fconv::all_fconv())),
    def!(&["NO_FCONV", "fno"], 0, "fconv", |t, a| f0(fconv::no_fconv())),
    def!(&["THENFC", "thenfc"], 2, "fconv -> fconv -> fconv", |t, a| {
        f0(fconv::thenfc(&as_fconv(&a[0])?, &as_fconv(&a[1])?))
    }),
    def!(&["ORELSEFC", "orelsefc"], 2, "fconv -> fconv -> fconv", |t, a| {
        f0(fconv::orelsefc(&as_fconv(&a[0])?, &as_fconv(&a[1])?))
    }),
    def!(&["FIRST_FCONV", "ffirst"], 1, "fconv list -> fconv", |t, a| {
        f0(fconv::first_fconv(&as_list(&a[0])?.iter().map(as_fconv).collect::<Result<Vec<_>>>()?))
    }),
    def!(&["REPEATFC", "frepeat"], 1, "fconv -> fconv", |t, a| f0(fconv::repeatfc(&as_fconv(&a[0])?))),
    def!(&["PRED_FCONV", "pred"], 1, "conv -> fconv", |t, a| f0(fconv::pred_fconv(&as_conv(&a[0])?))),
    def!(&["SUB_FCONV", "fsub"], 2, "conv -> fconv -> fconv", |t, a| {
        f0(fconv::sub_fconv(&as_conv(&a[0])?, &as_fconv(&a[1])?))
    }),
    def!(&["DEPTH_FCONV", "fdepth"], 2, "conv -> fconv -> fconv", |t, a| {
        f0(fconv::depth_fconv(&as_conv(&a[0])?, &as_fconv(&a[1])?))
    }),
    def!(&["REDEPTH_FCONV", "fredepth"], 2, "conv -> fconv -> fconv", |t, a| {
        f0(fconv::redepth_fconv(&as_conv(&a[0])?, &as_fconv(&a[1])?))
    }),
    def!(&["TOP_DEPTH_FCONV", "ftopdepth"], 2, "conv -> fconv -> fconv", |t, a| {
        f0(fconv::top_depth_fconv(&as_conv(&a[0])?, &as_fconv(&a[1])?))
    }),
    def!(&["BASIC_TAUT_FCONV", "taut"], 0, "fconv", |t, a| f0(fconv::basic_taut_fconv())),
    def!(&["BASIC_FCONV", "basic"], 2, "conv -> fconv -> fconv", |t, a| {
        f0(fconv::basic_fconv(&as_conv(&a[0])?, &as_fconv(&a[1])?))
    }),
    // Tactics.
    def!(&["IMP_REW_CONV"], 2, "tactic -> thm -> conv", |t, a| {
        c0(tactic::imp_rew_conv(&as_tactic(&a[0])?, &as_thm(&a[1])?)?)
    }),
    def!(&["IMP_REW_FCONV"], 2, "tactic -> thm -> fconv", |t, a| {
        f0(tactic::imp_rew_fconv(&as_tactic(&a[0])?, &as_thm(&a[1])?)?)
    }),
    def!(&["FCONV_TAC", "fconv_tac"], 1, "fconv -> tactic", |t, a| t0(tactic::fconv_tac(&as_fconv(&a[0])?))),
    def!(&["REWRITE_TAC", "rewrite_tac"], 1, "thm list -> tactic", |t, a| {
        t0(tactic::rewrite_tac(&thms(&a[0])?))
    }),
    def!(&["ASM_REWRITE_TAC", "asm_rewrite_tac"], 1, "thm list -> tactic", |t, a| {
        t0(tactic::asm_rewrite_tac(&thms(&a[0])?))
    }),
    def!(&["IMP_SEARCH_TAC", "imp_search_tac"], 1, "thm list -> tactic", |t, a| {
        t0(tactic::imp_search_tac(&thms(&a[0])?))
    }),
    def!(&["THEN", "then"], 2, "tactic -> tactic -> tactic", |t, a| {
        t0(tactic::then(&as_tactic(&a[0])?, &as_tactic(&a[1])?))
    }),
    def!(&["ORELSE", "orelse"], 2, "tactic -> tactic -> tactic", |t, a| {
        t0(tactic::orelse(&as_tactic(&a[0])?, &as_tactic(&a[1])?))
    }),
    def!(&["REPEAT", "repeat"], 1, "tactic -> tactic", |t, a| t0(tactic::repeat(&as_tactic(&a[0])?))),
    def!(&["ACCEPT_TAC", "accept_tac"], 1, "thm -> tactic", |t, a| t0(tactic::accept_tac(&as_thm(&a[0])?))),
    def!(&["CONJ_TAC", "conj_tac"], 0, "tactic", |t, a| t0(tactic::conj_tac())),
    def!(&["ALL_TAC", "all_tac"], 0, "tactic", |t, a| t0(tactic::all_tac())),
    def!(&["NO_TAC", "no_tac"], 0, "tactic", |t, a| t0(tactic::no_tac())),
];
