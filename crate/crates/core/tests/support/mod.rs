//! Generators, independent oracles and runners shared by the acceptance
//! criteria.

use std::path::{Path, PathBuf};

use convkit::conv::{beta_conv, first_conv, orelsec, rewrite_conv, Conv};
use convkit::kernel::{self, Theory, Thm};
use convkit::repl::{run_script, Options, ScriptReport, Session};
use convkit::syntax::{Formula, Term, TermKind, Type, Var};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub const CASES: u32 = 1000;
pub const NAMES: [&str; 3] = ["x", "y", "z"];
pub const REWRITES: [&str; 8] =
    ["COND_UU", "COND_TT", "COND_FF", "MIN_COMB", "MIN_ABS", "MK_PAIR", "FST_PAIR", "SND_PAIR"];

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

// ---- terms of type tr -------------------------------------------------

pub fn tr() -> Type {
    Type::tr()
}

pub fn cnst(name: &str, ty: Type) -> Term {
    Term::constant(name, ty)
}

pub fn var(name: &str) -> Term {
    Term::mk_var(name, tr())
}

pub fn app(f: Term, x: Term) -> Term {
    Term::comb(f, x).expect("generated terms are well typed")
}

fn fst_of(a: Type, b: Type) -> Term {
    cnst("FST", Type::fun(Type::prod(a.clone(), b), a))
}

fn snd_of(a: Type, b: Type) -> Term {
    cnst("SND", Type::fun(Type::prod(a, b.clone()), b))
}

/// Terms of type `tr` built from TT, FF, UU, variables, conditionals,
/// projections of pairs, beta-redexes and strict application of UU.
pub fn tr_term() -> BoxedStrategy<Term> {
    let leaf = prop_oneof![
        Just(cnst("TT", tr())),
        Just(cnst("FF", tr())),
        Just(cnst("UU", tr())),
        prop::sample::select(&NAMES[..]).prop_map(var),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        let name = prop::sample::select(&NAMES[..]);
        prop_oneof![
            (inner.clone(), inner.clone(), inner.clone())
                .prop_map(|(p, a, b)| Term::mk_cond(p, a, b).expect("tr conditional")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| app(fst_of(tr(), tr()), Term::mk_pair(a, b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| app(snd_of(tr(), tr()), Term::mk_pair(a, b))),
            (name.clone(), inner.clone(), inner.clone())
                .prop_map(|(v, body, arg)| app(Term::abs(Var::new(v, tr()), body), arg)),
            // FST(\v.body, b) arg: a redex that only appears after rewriting.
            (name, inner.clone(), inner.clone(), inner.clone()).prop_map(|(v, body, b, arg)| {
                let f = Term::abs(Var::new(v, tr()), body);
                let ft = Type::fun(tr(), tr());
                app(app(fst_of(ft, tr()), Term::mk_pair(f, b)), arg)
            }),
            inner.prop_map(|a| app(cnst("UU", Type::fun(tr(), tr())), a)),
        ]
    })
    .boxed()
}

/// Formulas over `tr` terms with every connective and both quantifiers.
pub fn formula() -> BoxedStrategy<Formula> {
    let atom = prop_oneof![
        (tr_term(), tr_term()).prop_map(|(a, b)| Formula::mk_equiv(a, b).expect("same type")),
        (tr_term(), tr_term()).prop_map(|(a, b)| Formula::mk_inequiv(a, b).expect("same type")),
        Just(Formula::truth()),
        Just(Formula::falsity()),
    ];
    atom.prop_recursive(3, 12, 2, |inner| {
        let name = prop::sample::select(&NAMES[..]);
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::conj(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::disj(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
            inner.clone().prop_map(Formula::neg),
            (name.clone(), inner.clone()).prop_map(|(v, a)| Formula::forall(Var::new(v, tr()), a)),
            (name, inner).prop_map(|(v, a)| Formula::exists(Var::new(v, tr()), a)),
        ]
    })
    .boxed()
}

// ---- conversions --------------------------------------------------------

pub fn rewrite(label: &str) -> Conv {
    rewrite_conv(&Theory::pplambda().axiom(label).expect("builtin axiom")).expect("term rewrite")
}

/// The rewrites of the conversion sessions, then beta.
pub fn many_conv() -> Conv {
    let rws: Vec<Conv> = REWRITES.iter().map(|l| rewrite(l)).collect();
    orelsec(&first_conv(&rws), &beta_conv())
}

/// The outcome of a conversion: the conclusion, or `None` on a recoverable
/// failure.
pub fn outcome(c: &Conv, t: &Term) -> Result<Option<Formula>, String> {
    match c.apply(t) {
        Ok(th) => Ok(Some(th.concl().clone())),
        Err(e) if e.is_recoverable() => Ok(None),
        Err(e) => Err(format!("unrecoverable failure {e} on {t}")),
    }
}

pub fn same_outcome(a: &Option<Formula>, b: &Option<Formula>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => convkit::syntax::alpha_eq_form(x, y),
        (None, None) => true,
        _ => false,
    }
}

pub fn result_term(th: &Thm) -> Term {
    th.concl().dest_equiv().expect("conversion result").1.clone()
}

/// Replays a theorem through the kernel and checks it reproduces itself.
pub fn replays(th: &Thm) -> Result<(), String> {
    let again = kernel::replay(th).map_err(|e| format!("replay of {th} failed: {e}"))?;
    if again.same(th) {
        Ok(())
    } else {
        Err(format!("replay of {th} gave {again}"))
    }
}

// ---- property runner --------------------------------------------------

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

/// Runs `test` on `cases` generated values, with a fixed seed. Every
/// theorem built inside runs with auditing on.
pub fn check<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), String>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases)
        .run(&strategy, |v| kernel::with_audit(|| test(v)).map_err(TestCaseError::fail))
        .map_err(|e| format!("{name}: {e}"))
}

/// Draws `cases` values and returns those on which `holds` is false.
pub fn counterexamples<S: Strategy>(cases: u32, strategy: S, holds: impl Fn(&S::Value) -> bool) -> Vec<S::Value> {
    let mut r = runner(cases);
    (0..cases)
        .map(|_| strategy.new_tree(&mut r).expect("generator").current())
        .filter(|v| !holds(v))
        .collect()
}

// ---- substitution oracle -------------------------------------------

/// Nameless terms: bound variables are de Bruijn indices, free ones keep
/// their name and type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Db {
    Free(String, String),
    Bound(usize),
    Const(String, String),
    App(Box<Db>, Box<Db>),
    Lam(String, Box<Db>),
}

pub fn to_db(t: &Term) -> Db {
    fn go(t: &Term, env: &mut Vec<Var>) -> Db {
        match t.kind() {
            TermKind::Const(n, ty) => Db::Const(n.to_string(), ty.to_string()),
            TermKind::Var(v) => match env.iter().rev().position(|b| b == v) {
                Some(i) => Db::Bound(i),
                None => Db::Free(v.name.to_string(), v.ty.to_string()),
            },
            TermKind::Abs(v, body) => {
                env.push(v.clone());
                let b = go(body, env);
                env.pop();
                Db::Lam(v.ty.to_string(), Box::new(b))
            }
            TermKind::Comb(f, x) => Db::App(Box::new(go(f, env)), Box::new(go(x, env))),
        }
    }
    go(t, &mut Vec::new())
}

/// Replaces the free variable `x` by `s`. `s` has no loose indices, so no
/// shifting is needed and capture cannot happen.
pub fn db_subst(d: &Db, x: &(String, String), s: &Db) -> Db {
    match d {
        Db::Free(n, ty) if (n, ty) == (&x.0, &x.1) => s.clone(),
        Db::App(f, a) => Db::App(Box::new(db_subst(f, x, s)), Box::new(db_subst(a, x, s))),
        Db::Lam(ty, b) => Db::Lam(ty.clone(), Box::new(db_subst(b, x, s))),
        other => other.clone(),
    }
}

// ---- fixtures -----------------------------------------------------------

/// Runs a fixture script with auditing on, so every printed theorem is
/// replayed by the kernel.
pub fn run_fixture(name: &str) -> Result<ScriptReport, String> {
    let path = manifest_dir().join("fixtures").join(name);
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut s = Session::new(Options { audit: true, ..Options::default() });
    s.set_base_dir(path.parent().unwrap_or(Path::new(".")));
    let rep = run_script(&mut s, &text);
    if rep.passed() && rep.expects > 0 {
        Ok(rep)
    } else if rep.expects == 0 {
        Err(format!("{name}: no expectations"))
    } else {
        Err(format!("{name}:\n{}", rep.failures.join("\n")))
    }
}
