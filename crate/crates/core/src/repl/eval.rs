//! Evaluation of command-language expressions.

use std::collections::BTreeMap;

use super::builtins::{apply, as_tactic, value_of, Builtin};
use super::expr::{Expr, Parser};
use super::value::Value;
use crate::error::{Error, Result};
use crate::kernel::{Theory, Thm};
use crate::syntax::{parse_quotation, Antiquote, Formula, Quotation, Signature, Type};
use crate::tactic::{prove_goal, Goal, Tactic};

/// The names visible to an expression.
pub struct Scope<'a> {
    pub theory: &'a Theory,
    pub bindings: &'a BTreeMap<String, Value>,
}

impl Signature for Scope<'_> {
    fn constant_type(&self, name: &str) -> Option<Type> {
        self.theory.constant_type(name)
    }

    fn predicate_type(&self, name: &str) -> Option<Type> {
        self.theory.predicate_type(name)
    }

    fn antiquote(&self, name: &str) -> Option<Antiquote> {
        match self.bindings.get(name)? {
            Value::Term(t) => Some(Antiquote::Term(t.clone())),
            Value::Form(f) => Some(Antiquote::Form(f.clone())),
            _ => None,
        }
    }
}

impl Scope<'_> {
    pub fn quote(&self, text: &str) -> Result<Value> {
        Ok(match parse_quotation(self, text)? {
            Quotation::Term(t) => Value::Term(t),
            Quotation::Form(f) => Value::Form(f),
        })
    }

    /// Bindings, then builtins, then axioms and theorems of the theory.
    pub fn name(&self, n: &str) -> Result<Value> {
        if let Some(v) = self.bindings.get(n) {
            return Ok(v.clone());
        }
        if let Some(b) = Builtin::lookup(n) {
            return value_of(self.theory, b);
        }
        match self.theory.fact(n) {
            Ok(th) => Ok(Value::Thm(th)),
            Err(_) => Err(Error::UnknownLabel(n.to_string())),
        }
    }

    pub fn eval(&self, e: &Expr) -> Result<Value> {
        match e {
            Expr::Name(n) => self.name(n),
            Expr::Quote(q) => self.quote(q),
            Expr::Token(t) => Ok(Value::Token(t.clone())),
            Expr::App(f, x) => {
                let f = self.eval(f)?;
                let x = self.eval(x)?;
                apply(self.theory, f, x)
            }
            Expr::Tuple(xs) => Ok(Value::Tuple(xs.iter().map(|x| self.eval(x)).collect::<Result<_>>()?)),
            Expr::List(xs) => Ok(Value::List(xs.iter().map(|x| self.eval(x)).collect::<Result<_>>()?)),
            Expr::Infix(op, l, r) => {
                let b = Builtin::lookup(op).ok_or_else(|| Error::UnknownLabel(op.clone()))?;
                let f = apply(self.theory, Value::Func(b, Vec::new()), self.eval(l)?)?;
                apply(self.theory, f, self.eval(r)?)
            }
        }
    }

    /// Parses and evaluates a whole expression.
    pub fn eval_text(&self, text: &str) -> Result<Value> {
        let mut p = Parser::new(text)?;
        let e = p.expr()?;
        p.expect_end()?;
        self.eval(&e)
    }

    pub fn tactic(&self, text: &str) -> Result<Tactic> {
        as_tactic(&self.eval_text(text)?)
    }
}

/// Proves a closed statement with a tactic written in the command language,
/// as `theorem ... by TACTIC` lines in theory files require.
pub fn prove_by(theory: &Theory, stmt: &Formula, tactic: &str) -> Result<Thm> {
    let bindings = BTreeMap::new();
    let scope = Scope { theory, bindings: &bindings };
    let tac = scope.tactic(tactic)?;
    prove_goal(&tac, &Goal::new(Vec::new(), stmt.clone()))
}
