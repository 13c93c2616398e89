use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::types::{Type, TypeSubst};
use crate::error::{Error, Result};

/// A typed variable. Two variables are the same only if both the name
/// and the type agree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var {
    pub name: Arc<str>,
    pub ty: Type,
}

impl Var {
    pub fn new(name: &str, ty: Type) -> Var {
        Var {
            name: name.into(),
            ty,
        }
    }

    pub fn with_name(&self, name: &str) -> Var {
        Var::new(name, self.ty.clone())
    }

    pub fn subst_type(&self, theta: &TypeSubst) -> Var {
        Var {
            name: self.name.clone(),
            ty: self.ty.subst(theta),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// The four syntax classes of terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum TermKind {
    Const(Arc<str>, Type),
    Var(Var),
    Abs(Var, Term),
    Comb(Term, Term),
}

struct TermNode {
    kind: TermKind,
    ty: Type,
}

/// A well-typed term. The only ways to build one check the typing of
/// applications, so every `Term` value is well-typed.
#[derive(Clone)]
pub struct Term(Arc<TermNode>);

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.kind.hash(state)
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.kind.cmp(&other.0.kind)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print::print_term(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print::print_term(self))
    }
}

pub const COND: &str = "COND";
pub const PAIR: &str = "PAIR";
pub const UNIT: &str = "()";

impl Term {
    fn node(kind: TermKind, ty: Type) -> Term {
        Term(Arc::new(TermNode { kind, ty }))
    }

    pub fn constant(name: &str, ty: Type) -> Term {
        Term::node(TermKind::Const(name.into(), ty.clone()), ty)
    }

    pub fn var(v: Var) -> Term {
        let ty = v.ty.clone();
        Term::node(TermKind::Var(v), ty)
    }

    pub fn mk_var(name: &str, ty: Type) -> Term {
        Term::var(Var::new(name, ty))
    }

    pub fn abs(v: Var, body: Term) -> Term {
        let ty = Type::fun(v.ty.clone(), body.ty().clone());
        Term::node(TermKind::Abs(v, body), ty)
    }

    pub fn comb(f: Term, x: Term) -> Result<Term> {
        let ty = match f.ty().dest_fun() {
            Some((dom, cod)) if dom == x.ty() => cod.clone(),
            Some((dom, _)) => {
                return Err(Error::IllTyped(format!(
                    "cannot apply {f} : {} to {x} : {} (expected argument of type {dom})",
                    f.ty(),
                    x.ty()
                )))
            }
            None => {
                return Err(Error::IllTyped(format!(
                    "{f} : {} is not a function",
                    f.ty()
                )))
            }
        };
        Ok(Term::node(TermKind::Comb(f, x), ty))
    }

    /// Application whose typing is already known to be correct. Only used by
    /// type-preserving traversals inside the crate.
    pub(crate) fn comb_unchecked(f: Term, x: Term) -> Term {
        let ty = f
            .ty()
            .dest_fun()
            .map(|(_, c)| c.clone())
            .expect("comb_unchecked on a non-function");
        Term::node(TermKind::Comb(f, x), ty)
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    pub fn ty(&self) -> &Type {
        &self.0.ty
    }

    pub fn ptr_eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn unit() -> Term {
        Term::constant(UNIT, Type::void())
    }

    pub fn mk_pair(a: Term, b: Term) -> Term {
        let pty = Type::fun(
            a.ty().clone(),
            Type::fun(b.ty().clone(), Type::prod(a.ty().clone(), b.ty().clone())),
        );
        let pair = Term::constant(PAIR, pty);
        Term::comb_unchecked(Term::comb_unchecked(pair, a), b)
    }

    pub fn mk_cond(p: Term, t: Term, u: Term) -> Result<Term> {
        if p.ty() != &Type::tr() {
            return Err(Error::IllTyped(format!("condition {p} is not of type tr")));
        }
        if t.ty() != u.ty() {
            return Err(Error::IllTyped(format!(
                "branches {t} and {u} have different types"
            )));
        }
        let ty = t.ty().clone();
        let cty = Type::fun(Type::tr(), Type::fun(ty.clone(), Type::fun(ty.clone(), ty)));
        let c = Term::constant(COND, cty);
        Ok(Term::comb_unchecked(
            Term::comb_unchecked(Term::comb_unchecked(c, p), t),
            u,
        ))
    }

    pub fn is_var(&self) -> bool {
        matches!(self.kind(), TermKind::Var(_))
    }

    pub fn is_const(&self) -> bool {
        matches!(self.kind(), TermKind::Const(..))
    }

    pub fn is_abs(&self) -> bool {
        matches!(self.kind(), TermKind::Abs(..))
    }

    pub fn is_comb(&self) -> bool {
        matches!(self.kind(), TermKind::Comb(..))
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.kind(), TermKind::Const(n, _) if &**n == UNIT)
    }

    pub fn const_name(&self) -> Option<&str> {
        match self.kind() {
            TermKind::Const(n, _) => Some(n),
            _ => None,
        }
    }

    pub fn dest_var(&self) -> Result<&Var> {
        match self.kind() {
            TermKind::Var(v) => Ok(v),
            _ => Err(Error::failure("dest_var")),
        }
    }

    pub fn dest_const(&self) -> Result<(&str, &Type)> {
        match self.kind() {
            TermKind::Const(n, ty) => Ok((n, ty)),
            _ => Err(Error::failure("dest_const")),
        }
    }

    pub fn dest_abs(&self) -> Result<(&Var, &Term)> {
        match self.kind() {
            TermKind::Abs(v, b) => Ok((v, b)),
            _ => Err(Error::failure("dest_abs")),
        }
    }

    pub fn dest_comb(&self) -> Result<(&Term, &Term)> {
        match self.kind() {
            TermKind::Comb(f, x) => Ok((f, x)),
            _ => Err(Error::failure("dest_comb")),
        }
    }

    /// Splits `C a1 ... an` into the head and its arguments.
    pub fn strip_comb(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut t = self;
        while let TermKind::Comb(f, x) = t.kind() {
            args.push(x);
            t = f;
        }
        args.reverse();
        (t, args)
    }

    fn dest_binary_const(&self, name: &str) -> Option<(&Term, &Term)> {
        let (head, args) = self.strip_comb();
        if args.len() == 2 && head.const_name() == Some(name) {
            Some((args[0], args[1]))
        } else {
            None
        }
    }

    pub fn dest_pair(&self) -> Result<(&Term, &Term)> {
        self.dest_binary_const(PAIR)
            .ok_or_else(|| Error::failure("dest_pair"))
    }

    pub fn is_pair(&self) -> bool {
        self.dest_binary_const(PAIR).is_some()
    }

    pub fn dest_cond(&self) -> Result<(&Term, &Term, &Term)> {
        let (head, args) = self.strip_comb();
        if args.len() == 3 && head.const_name() == Some(COND) {
            Ok((args[0], args[1], args[2]))
        } else {
            Err(Error::failure("dest_cond"))
        }
    }

    pub fn is_cond(&self) -> bool {
        self.dest_cond().is_ok()
    }

    /// Binary application of the named constant, `a OP b`.
    pub fn dest_infix(&self, name: &str) -> Option<(&Term, &Term)> {
        self.dest_binary_const(name)
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars_ordered(&self) -> Vec<Var> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        collect_free(self, &mut bound, &mut out);
        out
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        self.free_vars_ordered().into_iter().collect()
    }

    pub fn has_free(&self, v: &Var) -> bool {
        match self.kind() {
            TermKind::Var(w) => w == v,
            TermKind::Const(..) => false,
            TermKind::Abs(w, b) => w != v && b.has_free(v),
            TermKind::Comb(f, x) => f.has_free(v) || x.has_free(v),
        }
    }

    /// Collects the names of all variables, free or bound.
    pub fn all_var_names(&self, out: &mut BTreeSet<Arc<str>>) {
        match self.kind() {
            TermKind::Var(v) => {
                out.insert(v.name.clone());
            }
            TermKind::Const(..) => {}
            TermKind::Abs(v, b) => {
                out.insert(v.name.clone());
                b.all_var_names(out);
            }
            TermKind::Comb(f, x) => {
                f.all_var_names(out);
                x.all_var_names(out);
            }
        }
    }

    pub fn type_vars(&self, out: &mut Vec<Arc<str>>) {
        match self.kind() {
            TermKind::Var(v) => v.ty.type_vars(out),
            TermKind::Const(_, ty) => ty.type_vars(out),
            TermKind::Abs(v, b) => {
                v.ty.type_vars(out);
                b.type_vars(out);
            }
            TermKind::Comb(f, x) => {
                f.type_vars(out);
                x.type_vars(out);
            }
        }
    }

    pub fn size(&self) -> usize {
        match self.kind() {
            TermKind::Var(_) | TermKind::Const(..) => 1,
            TermKind::Abs(_, b) => 1 + b.size(),
            TermKind::Comb(f, x) => 1 + f.size() + x.size(),
        }
    }
}

fn collect_free(t: &Term, bound: &mut Vec<Var>, out: &mut Vec<Var>) {
    match t.kind() {
        TermKind::Var(v) => {
            if !bound.contains(v) && !out.contains(v) {
                out.push(v.clone());
            }
        }
        TermKind::Const(..) => {}
        TermKind::Abs(v, b) => {
            bound.push(v.clone());
            collect_free(b, bound, out);
            bound.pop();
        }
        TermKind::Comb(f, x) => {
            collect_free(f, bound, out);
            collect_free(x, bound, out);
        }
    }
}

/// Binder correspondence used by alpha-equivalence: pairs of bound
/// variables, innermost last.
pub(crate) type AlphaEnv = Vec<(Var, Var)>;

pub(crate) fn alpha_var(env: &AlphaEnv, a: &Var, b: &Var) -> bool {
    for (x, y) in env.iter().rev() {
        match (x == a, y == b) {
            (true, true) => return true,
            (false, false) => continue,
            _ => return false,
        }
    }
    a == b
}

pub(crate) fn alpha_eq_env(env: &mut AlphaEnv, t: &Term, u: &Term) -> bool {
    if env.is_empty() && t.ptr_eq(u) {
        return true;
    }
    match (t.kind(), u.kind()) {
        (TermKind::Var(a), TermKind::Var(b)) => alpha_var(env, a, b),
        (TermKind::Const(n, ty), TermKind::Const(m, uy)) => n == m && ty == uy,
        (TermKind::Comb(f, x), TermKind::Comb(g, y)) => {
            alpha_eq_env(env, f, g) && alpha_eq_env(env, x, y)
        }
        (TermKind::Abs(a, b), TermKind::Abs(c, d)) => {
            if a.ty != c.ty {
                return false;
            }
            env.push((a.clone(), c.clone()));
            let r = alpha_eq_env(env, b, d);
            env.pop();
            r
        }
        _ => false,
    }
}

/// Equality up to consistent renaming of bound variables.
pub fn alpha_eq(t: &Term, u: &Term) -> bool {
    alpha_eq_env(&mut Vec::new(), t, u)
}

/// Appends primes to `name` until it is not in `avoid`.
pub fn variant_name(name: &str, avoid: &BTreeSet<Arc<str>>) -> String {
    let mut n = name.to_string();
    while avoid.contains(n.as_str()) {
        n.push('\'');
    }
    n
}

/// A variant of `v` whose name clashes with nothing in `avoid`.
pub fn variant(v: &Var, avoid: &BTreeSet<Arc<str>>) -> Var {
    v.with_name(&variant_name(&v.name, avoid))
}

/// A simultaneous substitution: replacement terms paired with the
/// variables they replace.
pub type TermSubst = Vec<(Term, Var)>;

pub(crate) fn check_subst(theta: &[(Term, Var)]) -> Result<()> {
    for (t, v) in theta {
        if t.ty() != &v.ty {
            return Err(Error::TypeMismatch(format!(
                "cannot substitute {t} : {} for {} : {}",
                t.ty(),
                v.name,
                v.ty
            )));
        }
    }
    Ok(())
}

/// Simultaneous, capture-avoiding substitution `t[t1/x1, ..., tn/xn]`.
pub fn subst_term(t: &Term, theta: &[(Term, Var)]) -> Result<Term> {
    check_subst(theta)?;
    Ok(subst_unchecked(t, theta))
}

pub(crate) fn lookup<'a>(theta: &'a [(Term, Var)], v: &Var) -> Option<&'a Term> {
    theta.iter().rev().find(|(_, w)| w == v).map(|(t, _)| t)
}

pub(crate) fn subst_unchecked(t: &Term, theta: &[(Term, Var)]) -> Term {
    if theta.is_empty() {
        return t.clone();
    }
    match t.kind() {
        TermKind::Var(v) => lookup(theta, v).cloned().unwrap_or_else(|| t.clone()),
        TermKind::Const(..) => t.clone(),
        TermKind::Comb(f, x) => {
            let f2 = subst_unchecked(f, theta);
            let x2 = subst_unchecked(x, theta);
            if f2.ptr_eq(f) && x2.ptr_eq(x) {
                t.clone()
            } else {
                Term::comb_unchecked(f2, x2)
            }
        }
        TermKind::Abs(v, body) => {
            let inner: TermSubst = theta
                .iter()
                .filter(|(_, w)| w != v && body.has_free(w))
                .cloned()
                .collect();
            if inner.is_empty() {
                return t.clone();
            }
            let captures = inner.iter().any(|(r, _)| r.has_free(v));
            if captures {
                let mut avoid = BTreeSet::new();
                body.all_var_names(&mut avoid);
                for (r, _) in &inner {
                    r.all_var_names(&mut avoid);
                }
                let fresh = variant(v, &avoid);
                let mut inner = inner;
                inner.push((Term::var(fresh.clone()), v.clone()));
                Term::abs(fresh, subst_unchecked(body, &inner))
            } else {
                Term::abs(v.clone(), subst_unchecked(body, &inner))
            }
        }
    }
}

/// Instantiates type variables throughout a term, renaming bound variables
/// where instantiation would otherwise make them capture a free variable.
pub fn inst_type(t: &Term, theta: &TypeSubst) -> Term {
    if theta.is_empty() {
        return t.clone();
    }
    match t.kind() {
        TermKind::Var(v) => Term::var(v.subst_type(theta)),
        TermKind::Const(n, ty) => Term::constant(n, ty.subst(theta)),
        TermKind::Comb(f, x) => Term::comb_unchecked(inst_type(f, theta), inst_type(x, theta)),
        TermKind::Abs(v, body) => {
            let v2 = v.subst_type(theta);
            let clash = body
                .free_vars_ordered()
                .iter()
                .any(|w| w != v && w.subst_type(theta) == v2);
            if clash {
                let mut avoid = BTreeSet::new();
                body.all_var_names(&mut avoid);
                let fresh = variant(v, &avoid);
                let body = subst_unchecked(body, &[(Term::var(fresh.clone()), v.clone())]);
                Term::abs(fresh.subst_type(theta), inst_type(&body, theta))
            } else {
                Term::abs(v2, inst_type(body, theta))
            }
        }
    }
}

/// Whether every application in `t` is well-typed. Always true for terms
/// built through the public constructors; kept as an audit check.
pub fn well_typed(t: &Term) -> bool {
    match t.kind() {
        TermKind::Var(_) | TermKind::Const(..) => true,
        TermKind::Abs(_, b) => well_typed(b),
        TermKind::Comb(f, x) => {
            matches!(f.ty().dest_fun(), Some((d, _)) if d == x.ty())
                && well_typed(f)
                && well_typed(x)
        }
    }
}
