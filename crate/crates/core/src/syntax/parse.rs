//! Tokenizer, grammar and type inference for quotations.
//!
//! Parsing happens in two passes. The first builds an untyped tree and
//! never looks at types. The second assigns every node a type with
//! unification metas (`?n`), then turns metas that are still unresolved
//! into canonical type variables `*`, `**`, ... in order of first
//! appearance. Type variables written by the user and types of antiquoted
//! terms are rigid.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::formula::{Formula, EQUIV, INEQUIV};
use super::infix::{is_infix, symbolic_infixes};
use super::term::{Term, Var, COND, PAIR, UNIT};
use super::types::{star_name, Type, TypeSubst};
use crate::error::{Error, Result};

/// Antiquoted values that may be spliced into a quotation with `^name`.
#[derive(Clone, Debug)]
pub enum Antiquote {
    Term(Term),
    Form(Formula),
}

/// What the parser needs to know about the current theory.
pub trait Signature {
    /// Type scheme of a constant; its type variables are generic.
    fn constant_type(&self, name: &str) -> Option<Type>;
    /// Argument type scheme of a predicate.
    fn predicate_type(&self, name: &str) -> Option<Type>;
    fn antiquote(&self, _name: &str) -> Option<Antiquote> {
        None
    }
}

/// The result of parsing a quotation whose class is not known in advance.
#[derive(Clone, Debug)]
pub enum Quotation {
    Term(Term),
    Form(Formula),
}

pub fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

const FIXED_SYMBOLS: &[&str] = &[
    "==>", "<=>", "==", "<<", "=>", "->", "/\\", "\\/", "(", ")", ",", "\\", ".", "|", "!", "?",
    "~", "^", ":", "#", ";", "[", "]",
];

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Stars(String),
    Sym(String),
    Anti(String),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) | Tok::Stars(s) | Tok::Sym(s) => format!("`{s}`"),
        Tok::Anti(s) => format!("`^{s}`"),
        Tok::Eof => "end of input".into(),
    }
}

fn tokenize(text: &str, sig: &dyn Signature) -> Result<Vec<Token>> {
    let mut symbols: Vec<String> = FIXED_SYMBOLS.iter().map(|s| s.to_string()).collect();
    symbols.extend(symbolic_infixes());
    symbols.sort_by_key(|s| std::cmp::Reverse(s.len()));

    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start_col = col;
        if is_ident_char(c) {
            let mut s = String::new();
            while i < chars.len() && is_ident_char(chars[i]) {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            out.push(Token { tok: Tok::Ident(s), line, col: start_col });
            continue;
        }
        if c == '*' {
            let mut s = String::new();
            while i < chars.len() && chars[i] == '*' {
                s.push('*');
                i += 1;
                col += 1;
            }
            out.push(Token { tok: Tok::Stars(s), line, col: start_col });
            continue;
        }
        if c == '^' && i + 1 < chars.len() && is_ident_char(chars[i + 1]) {
            let mut j = i + 1;
            let mut name = String::new();
            while j < chars.len() && is_ident_char(chars[j]) {
                name.push(chars[j]);
                j += 1;
            }
            if sig.antiquote(&name).is_some() {
                col += j - i;
                i = j;
                out.push(Token { tok: Tok::Anti(name), line, col: start_col });
                continue;
            }
        }
        let rest: String = chars[i..chars.len().min(i + 8)].iter().collect();
        match symbols.iter().find(|s| rest.starts_with(s.as_str())) {
            Some(s) => {
                let n = s.chars().count();
                i += n;
                col += n;
                out.push(Token { tok: Tok::Sym(s.clone()), line, col: start_col });
            }
            None => {
                return Err(Error::Parse {
                    line,
                    column: start_col,
                    expected: vec!["a token".into()],
                    found: format!("`{c}`"),
                })
            }
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

// ---------------------------------------------------------------------
// Untyped trees

#[derive(Clone, Debug)]
enum PTerm {
    Ident(String),
    Unit,
    Abs(String, Option<Type>, Box<PTerm>),
    Comb(Box<PTerm>, Box<PTerm>),
    Infix(String, Box<PTerm>, Box<PTerm>),
    Cond(Box<PTerm>, Box<PTerm>, Box<PTerm>),
    Pair(Box<PTerm>, Box<PTerm>),
    Annot(Box<PTerm>, Type),
    Quote(Term),
}

#[derive(Clone, Debug)]
enum PForm {
    Quant(bool, String, Option<Type>, Box<PForm>),
    Conj(Box<PForm>, Box<PForm>),
    Disj(Box<PForm>, Box<PForm>),
    Imp(Box<PForm>, Box<PForm>),
    Iff(Box<PForm>, Box<PForm>),
    Neg(Box<PForm>),
    Pred(String, PTerm),
    Rel(&'static str, PTerm, PTerm),
    Quote(Formula),
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    sig: &'a dyn Signature,
}

impl<'a> Parser<'a> {
    fn new(text: &str, sig: &'a dyn Signature) -> Result<Self> {
        Ok(Parser { toks: tokenize(text, sig)?, pos: 0, sig })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, expected: &[&str]) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Parse {
            line: t.line,
            column: t.col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: describe(&t.tok),
        })
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if x == s)
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(&[&format!("`{s}`")])
        }
    }

    fn expect_eof(&self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.err(&["end of input"])
        }
    }

    // types

    fn ty(&mut self) -> Result<Type> {
        let left = self.ty_prod()?;
        if self.eat("->") {
            Ok(Type::fun(left, self.ty()?))
        } else {
            Ok(left)
        }
    }

    fn ty_prod(&mut self) -> Result<Type> {
        let left = self.ty_atom()?;
        if self.eat("#") {
            Ok(Type::prod(left, self.ty_prod()?))
        } else {
            Ok(left)
        }
    }

    fn ty_atom(&mut self) -> Result<Type> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(Type::atom(&s))
            }
            Tok::Stars(s) => {
                self.bump();
                Ok(Type::var(&s))
            }
            Tok::Sym(s) if s == "(" => {
                self.bump();
                let t = self.ty()?;
                self.expect(")")?;
                Ok(t)
            }
            _ => self.err(&["type"]),
        }
    }

    // terms

    fn term(&mut self) -> Result<PTerm> {
        let left = self.cond()?;
        if self.eat(",") {
            Ok(PTerm::Pair(Box::new(left), Box::new(self.term()?)))
        } else {
            Ok(left)
        }
    }

    fn cond(&mut self) -> Result<PTerm> {
        let p = self.infix()?;
        if self.eat("=>") {
            let a = self.cond()?;
            self.expect("|")?;
            let b = self.cond()?;
            Ok(PTerm::Cond(Box::new(p), Box::new(a), Box::new(b)))
        } else {
            Ok(p)
        }
    }

    fn infix_op(&self) -> Option<String> {
        match self.peek() {
            Tok::Ident(s) | Tok::Sym(s) if is_infix(s) => Some(s.clone()),
            _ => None,
        }
    }

    fn infix(&mut self) -> Result<PTerm> {
        let mut left = self.app()?;
        while let Some(op) = self.infix_op() {
            self.bump();
            let right = self.app()?;
            left = PTerm::Infix(op, Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => !is_infix(s),
            Tok::Sym(s) => s == "(" || s == "\\",
            Tok::Anti(n) => matches!(self.sig.antiquote(n), Some(Antiquote::Term(_))),
            _ => false,
        }
    }

    fn app(&mut self) -> Result<PTerm> {
        let mut t = self.atom()?;
        while self.starts_atom() {
            let x = self.atom()?;
            t = PTerm::Comb(Box::new(t), Box::new(x));
        }
        Ok(t)
    }

    fn binder(&mut self) -> Result<(String, Option<Type>)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok((s, None))
            }
            Tok::Sym(s) if s == "(" => {
                self.bump();
                let name = match self.bump() {
                    Tok::Ident(s) => s,
                    _ => return self.err(&["variable"]),
                };
                self.expect(":")?;
                let ty = self.ty()?;
                self.expect(")")?;
                Ok((name, Some(ty)))
            }
            _ => self.err(&["variable"]),
        }
    }

    fn binders(&mut self) -> Result<Vec<(String, Option<Type>)>> {
        let mut out = vec![self.binder()?];
        while !self.is_sym(".") {
            out.push(self.binder()?);
        }
        self.expect(".")?;
        Ok(out)
    }

    fn atom(&mut self) -> Result<PTerm> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_infix(&s) => {
                self.bump();
                Ok(PTerm::Ident(s))
            }
            Tok::Anti(n) => match self.sig.antiquote(&n) {
                Some(Antiquote::Term(t)) => {
                    self.bump();
                    Ok(PTerm::Quote(t))
                }
                _ => self.err(&["term"]),
            },
            Tok::Sym(s) if s == "\\" => {
                self.bump();
                let bs = self.binders()?;
                let body = self.term()?;
                Ok(bs
                    .into_iter()
                    .rev()
                    .fold(body, |acc, (n, ty)| PTerm::Abs(n, ty, Box::new(acc))))
            }
            Tok::Sym(s) if s == "(" => {
                self.bump();
                if self.eat(")") {
                    return Ok(PTerm::Unit);
                }
                let t = self.term()?;
                if self.eat(":") {
                    let ty = self.ty()?;
                    self.expect(")")?;
                    return Ok(PTerm::Annot(Box::new(t), ty));
                }
                self.expect(")")?;
                Ok(t)
            }
            _ => self.err(&["term"]),
        }
    }

    // formulas

    fn form(&mut self) -> Result<PForm> {
        let left = self.imp()?;
        if self.eat("<=>") {
            Ok(PForm::Iff(Box::new(left), Box::new(self.imp()?)))
        } else {
            Ok(left)
        }
    }

    fn imp(&mut self) -> Result<PForm> {
        let left = self.disj()?;
        if self.eat("==>") {
            Ok(PForm::Imp(Box::new(left), Box::new(self.imp()?)))
        } else {
            Ok(left)
        }
    }

    fn disj(&mut self) -> Result<PForm> {
        let left = self.conj()?;
        if self.eat("\\/") {
            Ok(PForm::Disj(Box::new(left), Box::new(self.disj()?)))
        } else {
            Ok(left)
        }
    }

    fn conj(&mut self) -> Result<PForm> {
        let left = self.unary()?;
        if self.eat("^") || self.eat("/\\") {
            Ok(PForm::Conj(Box::new(left), Box::new(self.conj()?)))
        } else {
            Ok(left)
        }
    }

    fn unary(&mut self) -> Result<PForm> {
        if self.eat("~") {
            return Ok(PForm::Neg(Box::new(self.unary()?)));
        }
        if self.is_sym("!") || self.is_sym("?") {
            let exists = self.is_sym("?");
            self.bump();
            let bs = self.binders()?;
            let body = self.form()?;
            return Ok(bs
                .into_iter()
                .rev()
                .fold(body, |acc, (n, ty)| PForm::Quant(exists, n, ty, Box::new(acc))));
        }
        if let Tok::Anti(n) = self.peek().clone() {
            if let Some(Antiquote::Form(f)) = self.sig.antiquote(&n) {
                self.bump();
                return Ok(PForm::Quote(f));
            }
        }
        if self.is_sym("(") {
            let save = self.pos;
            self.bump();
            if let Ok(f) = self.form() {
                if self.eat(")") {
                    return Ok(f);
                }
            }
            self.pos = save;
        }
        self.atomic_form()
    }

    fn atomic_form(&mut self) -> Result<PForm> {
        if let Tok::Ident(p) = self.peek().clone() {
            if self.sig.predicate_type(&p).is_some() && self.sig.constant_type(&p).is_none() {
                self.bump();
                let arg = self.app()?;
                return Ok(PForm::Pred(p, arg));
            }
        }
        let l = self.term()?;
        let op = if self.eat("==") {
            EQUIV
        } else if self.eat("<<") {
            INEQUIV
        } else {
            return self.err(&["`==`", "`<<`"]);
        };
        let r = self.term()?;
        Ok(PForm::Rel(op, l, r))
    }
}

// ---------------------------------------------------------------------
// Type inference

#[derive(Clone, Debug)]
enum ITerm {
    Const(String, Type),
    Var(String, Type),
    Abs(String, Type, Box<ITerm>),
    Comb(Box<ITerm>, Box<ITerm>),
    Quote(Term),
}

#[derive(Clone, Debug)]
enum IForm {
    Quant(bool, String, Type, Box<IForm>),
    Conj(Box<IForm>, Box<IForm>),
    Disj(Box<IForm>, Box<IForm>),
    Imp(Box<IForm>, Box<IForm>),
    Iff(Box<IForm>, Box<IForm>),
    Pred(String, ITerm),
    Quote(Formula),
}

fn is_meta(name: &str) -> bool {
    name.starts_with('?')
}

struct Infer<'a> {
    sig: &'a dyn Signature,
    metas: TypeSubst,
    next: usize,
    free: BTreeMap<String, Type>,
}

impl<'a> Infer<'a> {
    fn new(sig: &'a dyn Signature) -> Self {
        Infer { sig, metas: TypeSubst::new(), next: 0, free: BTreeMap::new() }
    }

    fn fresh(&mut self) -> Type {
        self.next += 1;
        Type::var(&format!("?{}", self.next))
    }

    fn instantiate(&mut self, scheme: &Type) -> Type {
        let mut vars = Vec::new();
        scheme.type_vars(&mut vars);
        let mut th = TypeSubst::new();
        for v in vars {
            let m = self.fresh();
            th.insert(v, m);
        }
        scheme.subst(&th)
    }

    fn resolve(&self, t: &Type) -> Type {
        match t {
            Type::Var(v) if is_meta(v) => match self.metas.get(v) {
                Some(u) => self.resolve(u),
                None => t.clone(),
            },
            Type::Var(_) | Type::Atom(_) => t.clone(),
            Type::Fun(a, b) => Type::fun(self.resolve(a), self.resolve(b)),
            Type::Prod(a, b) => Type::prod(self.resolve(a), self.resolve(b)),
        }
    }

    fn unify(&mut self, a: &Type, b: &Type) -> Result<()> {
        let a = self.resolve(a);
        let b = self.resolve(b);
        match (&a, &b) {
            _ if a == b => Ok(()),
            (Type::Var(v), other) | (other, Type::Var(v)) if is_meta(v) => {
                if other.occurs(v) {
                    return Err(Error::IllTyped(format!("cannot construct infinite type {a} = {b}")));
                }
                self.metas.insert(v.clone(), other.clone());
                Ok(())
            }
            (Type::Fun(a1, a2), Type::Fun(b1, b2)) | (Type::Prod(a1, a2), Type::Prod(b1, b2)) => {
                self.unify(a1, b1)?;
                self.unify(a2, b2)
            }
            _ => Err(Error::IllTyped(format!("cannot unify {a} with {b}"))),
        }
    }

    fn constant(&mut self, name: &str) -> Result<ITerm> {
        let scheme = self
            .sig
            .constant_type(name)
            .ok_or_else(|| Error::IllTyped(format!("unknown constant {name}")))?;
        Ok(ITerm::Const(name.into(), self.instantiate(&scheme)))
    }

    fn type_of(&self, t: &ITerm) -> Type {
        match t {
            ITerm::Const(_, ty) | ITerm::Var(_, ty) => ty.clone(),
            ITerm::Abs(_, ty, b) => Type::fun(ty.clone(), self.type_of(b)),
            ITerm::Comb(f, _) => match self.resolve(&self.type_of(f)) {
                Type::Fun(_, c) => (*c).clone(),
                _ => unreachable!("application typed during inference"),
            },
            ITerm::Quote(t) => t.ty().clone(),
        }
    }

    fn comb(&mut self, f: ITerm, x: ITerm) -> Result<ITerm> {
        let tf = self.type_of(&f);
        let tx = self.type_of(&x);
        let r = self.fresh();
        self.unify(&tf, &Type::fun(tx, r)).map_err(|e| match e {
            Error::IllTyped(m) => Error::IllTyped(format!("in application: {m}")),
            e => e,
        })?;
        Ok(ITerm::Comb(Box::new(f), Box::new(x)))
    }

    fn term(&mut self, t: &PTerm, env: &mut Vec<(String, Type)>) -> Result<ITerm> {
        match t {
            PTerm::Ident(n) => {
                if let Some((_, ty)) = env.iter().rev().find(|(m, _)| m == n) {
                    return Ok(ITerm::Var(n.clone(), ty.clone()));
                }
                if self.sig.constant_type(n).is_some() {
                    return self.constant(n);
                }
                let ty = match self.free.get(n) {
                    Some(ty) => ty.clone(),
                    None => {
                        let ty = self.fresh();
                        self.free.insert(n.clone(), ty.clone());
                        ty
                    }
                };
                Ok(ITerm::Var(n.clone(), ty))
            }
            PTerm::Unit => Ok(ITerm::Const(UNIT.into(), Type::void())),
            PTerm::Abs(n, ann, body) => {
                let ty = match ann {
                    Some(t) => t.clone(),
                    None => self.fresh(),
                };
                env.push((n.clone(), ty.clone()));
                let b = self.term(body, env);
                env.pop();
                Ok(ITerm::Abs(n.clone(), ty, Box::new(b?)))
            }
            PTerm::Comb(f, x) => {
                let f = self.term(f, env)?;
                let x = self.term(x, env)?;
                self.comb(f, x)
            }
            PTerm::Infix(op, a, b) => {
                let c = self.constant(op)?;
                let a = self.term(a, env)?;
                let b = self.term(b, env)?;
                let ca = self.comb(c, a)?;
                self.comb(ca, b)
            }
            PTerm::Cond(p, a, b) => {
                let tr = Type::tr();
                let v = self.fresh();
                let cty = Type::fun(tr.clone(), Type::fun(v.clone(), Type::fun(v.clone(), v)));
                let c = ITerm::Const(COND.into(), cty);
                let p = self.term(p, env)?;
                let a = self.term(a, env)?;
                let b = self.term(b, env)?;
                let cp = self.comb(c, p)?;
                let cpa = self.comb(cp, a)?;
                self.comb(cpa, b)
            }
            PTerm::Pair(a, b) => {
                let (x, y) = (self.fresh(), self.fresh());
                let pty = Type::fun(x.clone(), Type::fun(y.clone(), Type::prod(x, y)));
                let c = ITerm::Const(PAIR.into(), pty);
                let a = self.term(a, env)?;
                let b = self.term(b, env)?;
                let ca = self.comb(c, a)?;
                self.comb(ca, b)
            }
            PTerm::Annot(t, ty) => {
                let it = self.term(t, env)?;
                let tt = self.type_of(&it);
                self.unify(&tt, ty)?;
                Ok(it)
            }
            PTerm::Quote(t) => Ok(ITerm::Quote(t.clone())),
        }
    }

    fn form(&mut self, f: &PForm, env: &mut Vec<(String, Type)>) -> Result<IForm> {
        Ok(match f {
            PForm::Quant(ex, n, ann, body) => {
                let ty = match ann {
                    Some(t) => t.clone(),
                    None => self.fresh(),
                };
                env.push((n.clone(), ty.clone()));
                let b = self.form(body, env);
                env.pop();
                IForm::Quant(*ex, n.clone(), ty, Box::new(b?))
            }
            PForm::Conj(a, b) => IForm::Conj(Box::new(self.form(a, env)?), Box::new(self.form(b, env)?)),
            PForm::Disj(a, b) => IForm::Disj(Box::new(self.form(a, env)?), Box::new(self.form(b, env)?)),
            PForm::Imp(a, b) => IForm::Imp(Box::new(self.form(a, env)?), Box::new(self.form(b, env)?)),
            PForm::Iff(a, b) => IForm::Iff(Box::new(self.form(a, env)?), Box::new(self.form(b, env)?)),
            PForm::Neg(a) => IForm::Imp(
                Box::new(self.form(a, env)?),
                Box::new(IForm::Quote(Formula::falsity())),
            ),
            PForm::Pred(p, arg) => {
                let scheme = self
                    .sig
                    .predicate_type(p)
                    .ok_or_else(|| Error::UnknownPredicate(p.clone()))?;
                let want = self.instantiate(&scheme);
                let a = self.term(arg, env)?;
                let got = self.type_of(&a);
                self.unify(&got, &want)
                    .map_err(|e| Error::IllTyped(format!("argument of {p}: {e}")))?;
                IForm::Pred(p.clone(), a)
            }
            PForm::Rel(op, l, r) => {
                let l = self.term(l, env)?;
                let r = self.term(r, env)?;
                let (tl, tr) = (self.type_of(&l), self.type_of(&r));
                self.unify(&tl, &tr)
                    .map_err(|e| Error::IllTyped(format!("sides of {op}: {e}")))?;
                let (x, y) = (self.fresh(), self.fresh());
                let pty = Type::fun(x.clone(), Type::fun(y.clone(), Type::prod(x, y)));
                let c = ITerm::Const(PAIR.into(), pty);
                let cl = self.comb(c, l)?;
                IForm::Pred((*op).into(), self.comb(cl, r)?)
            }
            PForm::Quote(f) => IForm::Quote(f.clone()),
        })
    }
}

// ---------------------------------------------------------------------
// Finalisation: name leftover metas and build real terms.

struct Namer {
    order: Vec<Arc<str>>,
    rigid: BTreeSet<Arc<str>>,
}

impl Namer {
    fn see(&mut self, ty: &Type) {
        let mut vs = Vec::new();
        ty.type_vars(&mut vs);
        for v in vs {
            if is_meta(&v) {
                if !self.order.contains(&v) {
                    self.order.push(v);
                }
            } else {
                self.rigid.insert(v);
            }
        }
    }

    fn see_term(&mut self, inf: &Infer, t: &ITerm) {
        match t {
            ITerm::Const(_, ty) | ITerm::Var(_, ty) => self.see(&inf.resolve(ty)),
            ITerm::Abs(_, ty, b) => {
                self.see(&inf.resolve(ty));
                self.see_term(inf, b);
            }
            ITerm::Comb(f, x) => {
                self.see_term(inf, f);
                self.see_term(inf, x);
            }
            ITerm::Quote(t) => {
                let mut vs = Vec::new();
                t.type_vars(&mut vs);
                self.rigid.extend(vs);
            }
        }
    }

    fn see_form(&mut self, inf: &Infer, f: &IForm) {
        match f {
            IForm::Quant(_, _, ty, b) => {
                self.see(&inf.resolve(ty));
                self.see_form(inf, b);
            }
            IForm::Conj(a, b) | IForm::Disj(a, b) | IForm::Imp(a, b) | IForm::Iff(a, b) => {
                self.see_form(inf, a);
                self.see_form(inf, b);
            }
            IForm::Pred(_, t) => self.see_term(inf, t),
            IForm::Quote(f) => {
                let mut vs = Vec::new();
                f.type_vars(&mut vs);
                self.rigid.extend(vs);
            }
        }
    }

    fn naming(&self) -> TypeSubst {
        let mut th = TypeSubst::new();
        let mut k = 0;
        for m in &self.order {
            let name = loop {
                let n = star_name(k);
                k += 1;
                if !self.rigid.contains(n.as_str()) {
                    break n;
                }
            };
            th.insert(m.clone(), Type::var(&name));
        }
        th
    }
}

struct Builder<'a> {
    inf: &'a Infer<'a>,
    names: TypeSubst,
}

impl Builder<'_> {
    fn ty(&self, t: &Type) -> Type {
        self.inf.resolve(t).subst(&self.names)
    }

    fn term(&self, t: &ITerm) -> Result<Term> {
        Ok(match t {
            ITerm::Const(n, ty) => Term::constant(n, self.ty(ty)),
            ITerm::Var(n, ty) => Term::mk_var(n, self.ty(ty)),
            ITerm::Abs(n, ty, b) => Term::abs(Var::new(n, self.ty(ty)), self.term(b)?),
            ITerm::Comb(f, x) => Term::comb(self.term(f)?, self.term(x)?)?,
            ITerm::Quote(t) => t.clone(),
        })
    }

    fn form(&self, f: &IForm) -> Result<Formula> {
        Ok(match f {
            IForm::Quant(ex, n, ty, b) => {
                let v = Var::new(n, self.ty(ty));
                if *ex {
                    Formula::exists(v, self.form(b)?)
                } else {
                    Formula::forall(v, self.form(b)?)
                }
            }
            IForm::Conj(a, b) => Formula::conj(self.form(a)?, self.form(b)?),
            IForm::Disj(a, b) => Formula::disj(self.form(a)?, self.form(b)?),
            IForm::Imp(a, b) => Formula::imp(self.form(a)?, self.form(b)?),
            IForm::Iff(a, b) => Formula::iff(self.form(a)?, self.form(b)?),
            IForm::Pred(p, t) => Formula::Pred(p.as_str().into(), self.term(t)?),
            IForm::Quote(f) => f.clone(),
        })
    }
}

// ---------------------------------------------------------------------
// Public entry points

pub fn parse_type(text: &str) -> Result<Type> {
    struct NoSig;
    impl Signature for NoSig {
        fn constant_type(&self, _: &str) -> Option<Type> {
            None
        }
        fn predicate_type(&self, _: &str) -> Option<Type> {
            None
        }
    }
    let mut p = Parser::new(text, &NoSig)?;
    p.eat(":");
    let t = p.ty()?;
    p.expect_eof()?;
    Ok(t)
}

fn pre_term(sig: &dyn Signature, text: &str) -> Result<PTerm> {
    let mut p = Parser::new(text, sig)?;
    let t = p.term()?;
    p.expect_eof()?;
    Ok(t)
}

fn pre_form(sig: &dyn Signature, text: &str) -> Result<PForm> {
    let mut p = Parser::new(text, sig)?;
    let f = p.form()?;
    p.expect_eof()?;
    Ok(f)
}

pub fn parse_term(sig: &dyn Signature, text: &str) -> Result<Term> {
    let pt = pre_term(sig, text)?;
    let mut inf = Infer::new(sig);
    let it = inf.term(&pt, &mut Vec::new())?;
    let mut namer = Namer { order: Vec::new(), rigid: BTreeSet::new() };
    namer.see_term(&inf, &it);
    let b = Builder { inf: &inf, names: namer.naming() };
    b.term(&it)
}

pub fn parse_form(sig: &dyn Signature, text: &str) -> Result<Formula> {
    Ok(parse_forms_jointly(sig, &[text])?.remove(0))
}

/// Parses several formulas that share their free variables, as the target
/// and assumptions of a goal do.
pub fn parse_forms_jointly(sig: &dyn Signature, texts: &[&str]) -> Result<Vec<Formula>> {
    let pre = texts
        .iter()
        .map(|t| pre_form(sig, t))
        .collect::<Result<Vec<_>>>()?;
    let mut inf = Infer::new(sig);
    let mut typed = Vec::new();
    for p in &pre {
        typed.push(inf.form(p, &mut Vec::new())?);
    }
    let mut namer = Namer { order: Vec::new(), rigid: BTreeSet::new() };
    for f in &typed {
        namer.see_form(&inf, f);
    }
    let b = Builder { inf: &inf, names: namer.naming() };
    let out = typed.iter().map(|f| b.form(f)).collect::<Result<Vec<_>>>()?;
    for f in &out {
        f.check()?;
    }
    Ok(out)
}

fn err_pos(e: &Error) -> (usize, usize) {
    match e {
        Error::Parse { line, column, .. } => (*line, *column),
        _ => (usize::MAX, usize::MAX),
    }
}

/// Parses a quotation as a formula if possible, otherwise as a term.
pub fn parse_quotation(sig: &dyn Signature, text: &str) -> Result<Quotation> {
    match parse_form(sig, text) {
        Ok(f) => Ok(Quotation::Form(f)),
        Err(fe) => match parse_term(sig, text) {
            Ok(t) => Ok(Quotation::Term(t)),
            Err(te) => Err(if err_pos(&te) >= err_pos(&fe) { te } else { fe }),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::print::{print_form, print_term};

    struct Demo;
    impl Signature for Demo {
        fn constant_type(&self, name: &str) -> Option<Type> {
            let a = Type::var("*");
            let b = Type::var("**");
            Some(match name {
                "UU" => a,
                "TT" | "FF" => Type::tr(),
                "FST" => Type::fun(Type::prod(a.clone(), b), a),
                "SND" => Type::fun(Type::prod(a, b.clone()), b),
                _ => return None,
            })
        }
        fn predicate_type(&self, name: &str) -> Option<Type> {
            match name {
                "P" => Some(Type::prod(Type::var("*"), Type::var("**"))),
                "Q" => Some(Type::var("*")),
                "TRUTH" | "FALSITY" => Some(Type::void()),
                _ => None,
            }
        }
    }

    #[test]
    fn conditional_round_trip() {
        let t = parse_term(&Demo, "TT=> (FF,TT) | (TT,FF)").unwrap();
        assert!(t.is_cond());
        assert_eq!(print_term(&t), "(TT => (FF,TT) | (TT,FF))");
        assert_eq!(t.ty().to_string(), "tr # tr");
    }

    #[test]
    fn formula_round_trip() {
        let f = parse_form(&Demo, "!x. (x,TT) == UU").unwrap();
        assert_eq!(print_form(&f), "!x. (x,TT) == UU");
        let (x, _) = f.dest_forall().unwrap();
        assert_eq!(x.ty, Type::var("*"));
    }

    #[test]
    fn free_variable_types_default_in_order() {
        let t = parse_term(&Demo, "f x").unwrap();
        let (f, x) = t.dest_comb().unwrap();
        assert_eq!(f.ty().to_string(), "* -> **");
        assert_eq!(x.ty().to_string(), "*");
    }

    #[test]
    fn negation_and_predicates() {
        let f = parse_form(&Demo, "~ x==UU ^ ~ y==UU ==> ~ P(x,y)").unwrap();
        assert_eq!(print_form(&f), "~ x == UU ^ ~ y == UU ==> ~ P (x,y)");
        let g = parse_form(&Demo, "TRUTH() <=> FALSITY()").unwrap();
        assert_eq!(print_form(&g), "TRUTH() <=> FALSITY()");
    }

    #[test]
    fn abstraction_and_application() {
        let t = parse_term(&Demo, "(\\t.(\\u.t,u)FF)TT").unwrap();
        assert_eq!(print_term(&t), "(\\t.(\\u.t,u)FF)TT");
        let u = parse_term(&Demo, "\\x.UU").unwrap();
        assert!(u.is_abs());
    }

    #[test]
    fn type_errors_are_reported() {
        assert!(parse_term(&Demo, "TT TT").is_err());
        assert!(parse_form(&Demo, "TT == (TT,FF)").is_err());
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_term(&Demo, "(TT,") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 5)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn joint_parse_shares_free_variables() {
        let fs = parse_forms_jointly(&Demo, &["Q x", "x == TT"]).unwrap();
        let (_, a) = fs[0].dest_pred().unwrap();
        assert_eq!(a.ty(), &Type::tr());
    }

    #[test]
    fn types_parse_and_print() {
        for s in ["tr # tr -> *", "(* -> **) # tr", "tr"] {
            assert_eq!(parse_type(s).unwrap().to_string(), s);
        }
        assert_eq!(parse_type(":*").unwrap(), Type::var("*"));
    }
}
