//! Values of the command language and how they are displayed.

use std::fmt::Write as _;

use super::builtins::Builtin;
use crate::conv::Conv;
use crate::fconv::FConv;
use crate::kernel::Thm;
use crate::matching::MatchResult;
use crate::syntax::{print_form, print_sequent, print_term, Formula, Term};
use crate::tactic::Tactic;

#[derive(Clone, Debug)]
pub enum Value {
    Term(Term),
    Form(Formula),
    Thm(Thm),
    /// A quoted token such as `'VARS_OF'`.
    Token(String),
    List(Vec<Value>),
    Tuple(Vec<Value>),
    Conv(Conv),
    FConv(FConv),
    Tactic(Tactic),
    Match(MatchResult),
    /// A builtin applied to fewer arguments than it takes.
    Func(Builtin, Vec<Value>),
}

impl Value {
    pub fn type_name(&self) -> String {
        match self {
            Value::Term(_) => "term".into(),
            Value::Form(_) => "form".into(),
            Value::Thm(_) => "thm".into(),
            Value::Token(_) => "tok".into(),
            Value::List(vs) => match vs.first() {
                Some(v) => format!("{} list", v.type_name()),
                None => "* list".into(),
            },
            Value::Tuple(vs) => {
                let ts: Vec<String> = vs.iter().map(Value::type_name).collect();
                ts.join(" # ")
            }
            Value::Conv(_) => "conv".into(),
            Value::FConv(_) => "fconv".into(),
            Value::Tactic(_) => "tactic".into(),
            Value::Match(_) => "((term # term) list # (type # type) list)".into(),
            Value::Func(b, _) => b.type_name().into(),
        }
    }

    fn text(&self, in_list: bool) -> String {
        match self {
            Value::Term(t) => format!("\"{}\"", print_term(t)),
            Value::Form(f) => format!("\"{}\"", print_form(f)),
            Value::Thm(th) if in_list => format!("|- \"{}\"", print_form(th.concl())),
            Value::Thm(th) => format!("\"{}\"", print_sequent(th.hyps(), th.concl())),
            Value::Token(s) => format!("'{s}'"),
            Value::List(vs) => {
                let parts: Vec<String> = vs.iter().map(|v| v.text(true)).collect();
                format!("[{}]", parts.join("; "))
            }
            Value::Tuple(vs) => {
                let parts: Vec<String> = vs.iter().map(|v| v.text(in_list)).collect();
                format!("({})", parts.join(", "))
            }
            Value::Conv(_) | Value::FConv(_) | Value::Tactic(_) | Value::Func(..) => "-".into(),
            Value::Match(m) => m.to_string(),
        }
    }

    /// `VALUE : type`, or for a match result the three-line layout that
    /// already ends with its type.
    pub fn display(&self) -> String {
        match self {
            Value::Match(m) => m.to_string(),
            _ => {
                let mut s = self.text(false);
                let _ = write!(s, " : {}", self.type_name());
                s
            }
        }
    }
}
