//! Theories: signatures, axioms and saved theorems, plus the text format.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use super::Thm;
use crate::error::{Error, Result};
use crate::syntax::infix::register_infix;
use crate::syntax::parse::{parse_form, parse_type, Signature};
use crate::syntax::print::{print_form, print_type};
use crate::syntax::{Formula, Type};

/// One declaration, in the order it was made.
#[derive(Clone, Debug)]
pub enum TheoryItem {
    Constant(String, Type),
    Infix(String, Type),
    Predicate(String, Type),
    Axiom(String),
    Theorem(String),
}

#[derive(Clone)]
pub struct Theory {
    name: String,
    parents: Vec<Arc<Theory>>,
    items: Vec<TheoryItem>,
    constants: BTreeMap<String, Type>,
    predicates: BTreeMap<String, Type>,
    axioms: BTreeMap<String, Thm>,
    theorems: BTreeMap<String, (Thm, Option<String>)>,
}

/// Proves a stored theorem again while a theory file is loaded. Receives
/// the theory built so far, the statement and the tactic text.
pub type Prover<'a> = dyn FnMut(&Theory, &Formula, &str) -> Result<Thm> + 'a;

impl Signature for Theory {
    fn constant_type(&self, name: &str) -> Option<Type> {
        self.find(|t| t.constants.get(name).cloned())
    }

    fn predicate_type(&self, name: &str) -> Option<Type> {
        self.find(|t| t.predicates.get(name).cloned())
    }
}

impl Theory {
    pub fn new(name: &str, parents: Vec<Arc<Theory>>) -> Theory {
        Theory {
            name: name.to_string(),
            parents,
            items: Vec::new(),
            constants: BTreeMap::new(),
            predicates: BTreeMap::new(),
            axioms: BTreeMap::new(),
            theorems: BTreeMap::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn parents(&self) -> &[Arc<Theory>] {
        &self.parents
    }

    pub fn items(&self) -> &[TheoryItem] {
        &self.items
    }

    /// Depth-first search through this theory and its ancestors.
    fn find<T>(&self, f: impl Fn(&Theory) -> Option<T> + Copy) -> Option<T> {
        f(self).or_else(|| self.parents.iter().find_map(|p| p.find(f)))
    }

    /// Adds a parent unless a theory of that name is already an ancestor.
    pub fn add_parent(&mut self, p: Arc<Theory>) {
        if self.ancestor(p.name()).is_none() {
            self.parents.push(p);
        }
    }

    /// Finds a theory by name among this one and its ancestors.
    pub fn ancestor(&self, name: &str) -> Option<&Theory> {
        if self.name == name {
            return Some(self);
        }
        self.parents.iter().find_map(|p| p.ancestor(name))
    }

    fn label_used(&self, label: &str) -> bool {
        self.find(|t| {
            (t.axioms.contains_key(label) || t.theorems.contains_key(label)).then_some(())
        })
        .is_some()
    }

    pub fn declare_constant(&mut self, name: &str, ty: Type) -> Result<()> {
        if self.constant_type(name).is_some() {
            return Err(Error::DuplicateLabel(name.to_string()));
        }
        self.constants.insert(name.to_string(), ty.clone());
        self.items.push(TheoryItem::Constant(name.to_string(), ty));
        Ok(())
    }

    /// Declares a constant written between its two arguments.
    pub fn declare_infix(&mut self, name: &str, ty: Type) -> Result<()> {
        let binary = matches!(ty.dest_fun(), Some((_, c)) if c.dest_fun().is_some());
        if !binary {
            return Err(Error::Theory(format!("infix {name} must take two arguments")));
        }
        if self.constant_type(name).is_some() {
            return Err(Error::DuplicateLabel(name.to_string()));
        }
        register_infix(name);
        self.constants.insert(name.to_string(), ty.clone());
        self.items.push(TheoryItem::Infix(name.to_string(), ty));
        Ok(())
    }

    pub fn declare_predicate(&mut self, name: &str, ty: Type) -> Result<()> {
        if self.predicate_type(name).is_some() {
            return Err(Error::DuplicateLabel(name.to_string()));
        }
        self.predicates.insert(name.to_string(), ty.clone());
        self.items.push(TheoryItem::Predicate(name.to_string(), ty));
        Ok(())
    }

    /// Asserts `|- A`. `A` must be closed.
    pub fn new_axiom(&mut self, label: &str, a: &Formula) -> Result<Thm> {
        if let Some(v) = a.free_vars_ordered().first() {
            return Err(Error::Theory(format!(
                "axiom {label} has the free variable {}",
                v.name
            )));
        }
        self.add_axiom(label, a)
    }

    fn add_axiom(&mut self, label: &str, a: &Formula) -> Result<Thm> {
        if self.label_used(label) {
            return Err(Error::DuplicateLabel(label.to_string()));
        }
        let th = Thm::axiom(a.clone())?;
        self.axioms.insert(label.to_string(), th.clone());
        self.items.push(TheoryItem::Axiom(label.to_string()));
        Ok(th)
    }

    /// Stores a theorem. `by` is the tactic that proves it, used to check
    /// it again when the theory is loaded.
    pub fn save_theorem(&mut self, label: &str, th: &Thm, by: Option<&str>) -> Result<()> {
        if !th.hyps().is_empty() {
            return Err(Error::OpenHypotheses(label.to_string()));
        }
        if self.label_used(label) {
            return Err(Error::DuplicateLabel(label.to_string()));
        }
        self.theorems
            .insert(label.to_string(), (th.clone(), by.map(str::to_string)));
        self.items.push(TheoryItem::Theorem(label.to_string()));
        Ok(())
    }

    pub fn axiom(&self, label: &str) -> Result<Thm> {
        self.find(|t| t.axioms.get(label).cloned())
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn theorem(&self, label: &str) -> Result<Thm> {
        self.find(|t| t.theorems.get(label).map(|(th, _)| th.clone()))
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// An axiom or a theorem.
    pub fn fact(&self, label: &str) -> Result<Thm> {
        self.axiom(label).or_else(|_| self.theorem(label))
    }

    /// All axiom and theorem labels reachable from this theory.
    pub fn labels(&self) -> Vec<String> {
        let mut out: Vec<String> = self.axioms.keys().chain(self.theorems.keys()).cloned().collect();
        for p in &self.parents {
            for l in p.labels() {
                if !out.contains(&l) {
                    out.push(l);
                }
            }
        }
        out
    }

    /// The root theory with the builtin constants, predicates and axioms.
    pub fn pplambda() -> Arc<Theory> {
        static ROOT: OnceLock<Arc<Theory>> = OnceLock::new();
        ROOT.get_or_init(|| Arc::new(build_pplambda().expect("builtin theory is well formed")))
            .clone()
    }

    /// Writes the declarations of this theory (not its parents).
    pub fn to_text(&self) -> String {
        let mut s = format!("theory {}\n", self.name);
        for p in &self.parents {
            let _ = writeln!(s, "parent {}", p.name);
        }
        for item in &self.items {
            let _ = match item {
                TheoryItem::Constant(n, ty) => writeln!(s, "constant {n} : {}", print_type(ty)),
                TheoryItem::Infix(n, ty) => writeln!(s, "infix {n} : {}", print_type(ty)),
                TheoryItem::Predicate(n, ty) => writeln!(s, "predicate {n} : {}", print_type(ty)),
                TheoryItem::Axiom(l) => {
                    writeln!(s, "axiom {l} : {}", print_form(self.axioms[l].concl()))
                }
                TheoryItem::Theorem(l) => {
                    let (th, by) = &self.theorems[l];
                    match by {
                        Some(tac) => writeln!(s, "theorem {l} : {} by {tac}", print_form(th.concl())),
                        None => writeln!(s, "theorem {l} : {}", print_form(th.concl())),
                    }
                }
            };
        }
        s
    }

    /// Reads a theory file. `parent` resolves parent names; `prove` checks
    /// `theorem` lines unless `trust` is set.
    pub fn from_text(
        text: &str,
        parent: &mut dyn FnMut(&str) -> Result<Arc<Theory>>,
        prove: &mut Prover<'_>,
        trust: bool,
    ) -> Result<Theory> {
        let lines = logical_lines(text);
        let mut thy: Option<Theory> = None;
        for (n, line) in lines {
            let at = |e: Error| relocate(e, n);
            let (kw, rest) = line
                .split_once(char::is_whitespace)
                .map(|(k, r)| (k, r.trim()))
                .unwrap_or((line.as_str(), ""));
            if kw == "theory" {
                if thy.is_some() {
                    return Err(at(Error::Theory("second `theory` line".into())));
                }
                thy = Some(Theory::new(rest, Vec::new()));
                continue;
            }
            let t = thy
                .as_mut()
                .ok_or_else(|| at(Error::Theory("the file must start with `theory NAME`".into())))?;
            match kw {
                "parent" => {
                    if !t.items.is_empty() {
                        return Err(at(Error::Theory("`parent` must precede declarations".into())));
                    }
                    let p = parent(rest).map_err(at)?;
                    t.parents.push(p);
                }
                "constant" | "infix" | "predicate" => {
                    let (name, ty) = split_decl(rest).map_err(at)?;
                    let ty = parse_type(ty).map_err(at)?;
                    match kw {
                        "constant" => t.declare_constant(name, ty),
                        "infix" => t.declare_infix(name, ty),
                        _ => t.declare_predicate(name, ty),
                    }
                    .map_err(at)?;
                }
                "axiom" => {
                    let (label, body) = split_decl(rest).map_err(at)?;
                    let f = parse_form(t, body).map_err(at)?;
                    t.new_axiom(label, &f).map_err(at)?;
                }
                "theorem" => {
                    let (label, body) = split_decl(rest).map_err(at)?;
                    let (stmt, by) = match body.rfind(" by ") {
                        Some(i) => (&body[..i], Some(body[i + 4..].trim())),
                        None => (body, None),
                    };
                    let f = parse_form(t, stmt).map_err(at)?;
                    let th = if trust {
                        Thm::axiom(f.clone()).map_err(at)?
                    } else {
                        let tac = by.ok_or_else(|| {
                            at(Error::Theory(format!(
                                "theorem {label} has no `by` clause; load with --trust-store"
                            )))
                        })?;
                        prove(t, &f, tac).map_err(at)?
                    };
                    if !super::super::syntax::alpha_eq_form(th.concl(), &f) {
                        return Err(at(Error::Theory(format!(
                            "theorem {label}: the tactic proved {th}"
                        ))));
                    }
                    t.save_theorem(label, &th, by).map_err(at)?;
                }
                other => return Err(at(Error::Theory(format!("unknown keyword `{other}`")))),
            }
        }
        thy.ok_or_else(|| Error::Theory("empty theory file".into()))
    }
}

/// Joins continuation lines (those starting with whitespace) and drops
/// comments and blank lines. Returns each logical line with its first
/// physical line number.
fn logical_lines(text: &str) -> Vec<(usize, String)> {
    let mut out: Vec<(usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = match raw.find("--") {
            Some(k) => &raw[..k],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let cont = line.starts_with(char::is_whitespace);
        match out.last_mut() {
            Some((_, prev)) if cont => {
                prev.push('\n');
                prev.push_str(line);
            }
            _ => out.push((i + 1, line.trim_end().to_string())),
        }
    }
    out
}

fn split_decl(rest: &str) -> Result<(&str, &str)> {
    let (name, body) = rest
        .split_once(':')
        .ok_or_else(|| Error::Theory("expected `NAME : ...`".into()))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(Error::Theory("missing name".into()));
    }
    Ok((name, body.trim()))
}

fn relocate(e: Error, line: usize) -> Error {
    match e {
        Error::Parse { line: l, column, expected, found } => Error::Parse {
            line: line + l - 1,
            column,
            expected,
            found,
        },
        Error::Theory(m) => Error::Theory(format!("line {line}: {m}")),
        other => Error::Theory(format!("line {line}: {other}")),
    }
}

const BUILTIN_AXIOMS: &[(&str, &str)] = &[
    ("MINIMAL", "!x. UU << x"),
    ("EQ_REFL", "!x. x == x"),
    ("COND_UU", "(UU => x | y) == UU"),
    ("COND_TT", "(TT => x | y) == x"),
    ("COND_FF", "(FF => x | y) == y"),
    ("MIN_COMB", "UU x == UU"),
    ("MIN_ABS", "(\\x.UU) == UU"),
    ("MK_PAIR", "(FST x,SND x) == x"),
    ("FST_PAIR", "FST(x,y) == x"),
    ("SND_PAIR", "SND(x,y) == y"),
    ("FORALL_TRUTH", "(!x. TRUTH()) <=> TRUTH()"),
    ("FORALL_FALSITY", "(!x. FALSITY()) <=> FALSITY()"),
    ("EXISTS_TRUTH", "(?x. TRUTH()) <=> TRUTH()"),
    ("EXISTS_FALSITY", "(?x. FALSITY()) <=> FALSITY()"),
    ("TRUTH_INTRO", "TRUTH()"),
    ("TT_UU", "TT == UU <=> FALSITY()"),
    ("UU_TT", "UU == TT <=> FALSITY()"),
    ("FF_UU", "FF == UU <=> FALSITY()"),
    ("UU_FF", "UU == FF <=> FALSITY()"),
    ("TT_FF", "TT == FF <=> FALSITY()"),
    ("FF_TT", "FF == TT <=> FALSITY()"),
];

fn build_pplambda() -> Result<Theory> {
    let mut t = Theory::new("PPLAMBDA", Vec::new());
    let a = || Type::var("*");
    let b = || Type::var("**");
    t.declare_constant("UU", a())?;
    t.declare_constant("TT", Type::tr())?;
    t.declare_constant("FF", Type::tr())?;
    t.declare_constant("FST", Type::fun(Type::prod(a(), b()), a()))?;
    t.declare_constant("SND", Type::fun(Type::prod(a(), b()), b()))?;
    t.declare_constant("COND", Type::fun(Type::tr(), Type::fun(a(), Type::fun(a(), a()))))?;
    t.declare_constant("PAIR", Type::fun(a(), Type::fun(b(), Type::prod(a(), b()))))?;
    t.declare_constant("()", Type::void())?;
    t.declare_predicate("TRUTH", Type::void())?;
    t.declare_predicate("FALSITY", Type::void())?;
    t.declare_predicate("equiv", Type::prod(a(), a()))?;
    t.declare_predicate("inequiv", Type::prod(a(), a()))?;
    for (label, text) in BUILTIN_AXIOMS {
        let f = parse_form(&t, text)?;
        t.add_axiom(label, &f)?;
    }
    Ok(t)
}
