//! Acceptance criteria 1 to 9. One line per criterion is written straight
//! to stdout; the test fails if any criterion does.

mod support;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::Command;

use convkit::conv::{
    all_conv, beta_conv, depth_conv, no_conv, orelsec, redepth_conv, repeatc, sub_conv, thenc,
    top_depth_conv, Conv,
};
use convkit::fconv::{
    basic_fconv, basic_taut_fconv, depth_fconv, no_fconv, pred_fconv, redepth_fconv, sub_fconv,
    top_depth_fconv, FConv,
};
use convkit::kernel::mutation::{with_mutation, Mutation};
use convkit::kernel::{self, Theory, Thm};
use convkit::matching::{form_match, term_match};
use convkit::repl::Store;
use convkit::syntax::{alpha_eq, alpha_eq_form, parse_forms_jointly, subst_term, Formula, Term, Var};
use convkit::tactic::{imp_search, Goal, DEFAULT_SEARCH_DEPTH};
use proptest::prelude::*;
use support::*;

type Outcome = Result<String, String>;

fn say(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

fn fixture(name: &str) -> Outcome {
    run_fixture(name).map(|r| format!("{name}: {} expectations", r.expects))
}

fn c1() -> Outcome {
    fixture("matching.script")
}

fn c2() -> Outcome {
    fixture("match_mp.script")
}

fn c3() -> Outcome {
    fixture("conversions.script")
}

fn c4() -> Outcome {
    fixture("formula_conversions.script")
}

fn c5() -> Outcome {
    fixture("canonical_forms.script")
}

fn c6() -> Outcome {
    let script = fixture("chaining.script")?;
    let thy = Store::new(false)
        .load_file(&manifest_dir().join("theories/lists.thy"))
        .map_err(|e| e.to_string())?;
    let fs = parse_forms_jointly(
        &*thy,
        &["~ (CONS t l) APP (CONS t (CONS u NIL)) == UU", "~ t == UU", "~ l == UU", "~ u == UU"],
    )
    .map_err(|e| e.to_string())?;
    let goal = Goal::new(fs[1..].to_vec(), fs[0].clone());
    let rules = ["NIL_DEFINED", "CONS_DEFINED", "APP_DEFINED"]
        .iter()
        .map(|l| thy.fact(l))
        .collect::<convkit::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let (th, tree) = kernel::with_audit(|| imp_search(&rules, &goal, DEFAULT_SEARCH_DEPTH)).map_err(|e| e.to_string())?;
    replays(&th)?;
    if !goal.achieved_by(&th) {
        return Err(format!("{th} does not achieve the goal"));
    }
    let want: std::collections::BTreeSet<String> =
        ["~ t == UU", "~ l == UU", "~ u == UU", "~ NIL == UU"].iter().map(|s| s.to_string()).collect();
    if tree.leaves() != want {
        return Err(format!("leaves {:?}", tree.leaves()));
    }
    Ok(format!("{script}; leaf set {:?}", want))
}

fn c7() -> Outcome {
    fixture("occs.script")
}

// ---- criterion 8 ----------------------------------------------------------

/// Conversions for the contract and algebra properties, by name.
fn conv_pool() -> Vec<(&'static str, Conv)> {
    let many = many_conv();
    let mut pool = vec![
        ("ALL_CONV", all_conv()),
        ("NO_CONV", no_conv()),
        ("BETA_CONV", beta_conv()),
        ("MANY_CONV", many.clone()),
        ("SUB_CONV BETA_CONV", sub_conv(&beta_conv())),
        ("DEPTH_CONV MANY_CONV", depth_conv(&many)),
        ("REDEPTH_CONV MANY_CONV", redepth_conv(&many)),
        ("TOP_DEPTH_CONV MANY_CONV", top_depth_conv(&many)),
        ("REPEATC MANY_CONV", repeatc(&many)),
    ];
    for l in REWRITES {
        pool.push((l, rewrite(l)));
    }
    pool
}

/// Conversions that fail when there is nothing to do; REPEATC of these
/// stops.
fn reducing_pool() -> Vec<(&'static str, Conv)> {
    let mut pool = vec![("BETA_CONV", beta_conv()), ("MANY_CONV", many_conv()), ("NO_CONV", no_conv())];
    for l in REWRITES {
        pool.push((l, rewrite(l)));
    }
    pool
}

fn fconv_pool() -> Vec<(&'static str, FConv)> {
    let many = many_conv();
    let taut = basic_taut_fconv();
    vec![
        ("BASIC_TAUT_FCONV", taut.clone()),
        ("PRED_FCONV MANY_CONV", pred_fconv(&many)),
        ("SUB_FCONV", sub_fconv(&many, &taut)),
        ("DEPTH_FCONV", depth_fconv(&many, &taut)),
        ("REDEPTH_FCONV", redepth_fconv(&many, &taut)),
        ("TOP_DEPTH_FCONV", top_depth_fconv(&many, &taut)),
        ("BASIC_FCONV", basic_fconv(&many, &no_fconv())),
    ]
}

fn check_conv_thm(name: &str, t: &Term, th: &Thm) -> Result<(), String> {
    if !th.hyps().is_empty() {
        return Err(format!("{name} on {t}: hypotheses in {th}"));
    }
    let (l, _) = th.concl().dest_equiv().map_err(|_| format!("{name} on {t}: not an equivalence: {th}"))?;
    if !alpha_eq(l, t) {
        return Err(format!("{name} on {t}: left side of {th}"));
    }
    replays(th)
}

fn conv_contract() -> Result<(), String> {
    let pool = conv_pool();
    check("conversion contract", CASES, (0..pool.len(), tr_term()), |(i, t)| {
        let (name, c) = &pool[i];
        match c.apply(&t) {
            Ok(th) => check_conv_thm(name, &t, &th),
            Err(e) if e.is_recoverable() => Ok(()),
            Err(e) => Err(format!("{name} on {t}: {e}")),
        }
    })
}

fn fconv_contract() -> Result<(), String> {
    let pool = fconv_pool();
    check("formula conversion contract", CASES, (0..pool.len(), formula()), |(i, a)| {
        let (name, f) = &pool[i];
        match f.apply(&a) {
            Ok(th) => {
                if !th.hyps().is_empty() {
                    return Err(format!("{name} on {a}: hypotheses in {th}"));
                }
                let (l, _) = th.concl().dest_iff().map_err(|_| format!("{name} on {a}: not an iff: {th}"))?;
                if !alpha_eq_form(l, &a) {
                    return Err(format!("{name} on {a}: left side of {th}"));
                }
                replays(&th)
            }
            Err(e) if e.is_recoverable() => Ok(()),
            Err(e) => Err(format!("{name} on {a}: {e}")),
        }
    })
}

/// `(lhs, rhs)` expressions over the pool indices a, b, c.
type Law = fn(&Conv, &Conv, &Conv) -> (Conv, Conv);

fn laws() -> Vec<(&'static str, Law)> {
    vec![
        ("1.a = a", |a, _, _| (thenc(&all_conv(), a), a.clone())),
        ("a.1 = a", |a, _, _| (thenc(a, &all_conv()), a.clone())),
        ("0+a = a", |a, _, _| (orelsec(&no_conv(), a), a.clone())),
        ("a+0 = a", |a, _, _| (orelsec(a, &no_conv()), a.clone())),
        ("(a.b).c = a.(b.c)", |a, b, c| (thenc(&thenc(a, b), c), thenc(a, &thenc(b, c)))),
        ("(a+b)+c = a+(b+c)", |a, b, c| (orelsec(&orelsec(a, b), c), orelsec(a, &orelsec(b, c)))),
        ("a+a = a", |a, _, _| (orelsec(a, a), a.clone())),
        ("0.a = 0", |a, _, _| (thenc(&no_conv(), a), no_conv())),
        ("a.0 = 0", |a, _, _| (thenc(a, &no_conv()), no_conv())),
        ("a.(b+c) = a.b+a.c", |a, b, c| (thenc(a, &orelsec(b, c)), orelsec(&thenc(a, b), &thenc(a, c)))),
    ]
}

fn law_holds(law: Law, pool: &[(&str, Conv)], (i, j, k, t): &(usize, usize, usize, Term)) -> Result<bool, String> {
    let (l, r) = law(&pool[*i].1, &pool[*j].1, &pool[*k].1);
    Ok(same_outcome(&outcome(&l, t)?, &outcome(&r, t)?))
}

fn algebra() -> Result<(), String> {
    let pool = conv_pool();
    let n = pool.len();
    for (name, law) in laws() {
        check(name, CASES, (0..n, 0..n, 0..n, tr_term()), |case| {
            if law_holds(law, &pool, &case)? {
                Ok(())
            } else {
                let (i, j, k, t) = case;
                Err(format!("a={} b={} c={} t={t}", pool[i].0, pool[j].0, pool[k].0))
            }
        })?;
    }
    Ok(())
}

/// Laws that do not hold: each must have a counterexample among the
/// generated cases. Returns a record per law.
fn expected_failures() -> Result<Vec<String>, String> {
    let pool = conv_pool();
    let n = pool.len();
    let failing: [(&str, Law); 2] = [
        ("a+b = b+a", |a, b, _| (orelsec(a, b), orelsec(b, a))),
        ("(b+c).a = b.a+c.a", |a, b, c| (thenc(&orelsec(b, c), a), orelsec(&thenc(b, a), &thenc(c, a)))),
    ];
    let mut records = Vec::new();
    for (name, law) in failing {
        let bad = counterexamples(CASES, (0..n, 0..n, 0..n, tr_term()), |case| {
            law_holds(law, &pool, case).unwrap_or(true)
        });
        let Some((i, j, k, t)) = bad.first() else {
            return Err(format!("{name}: expected to fail, but held on {CASES} cases"));
        };
        records.push(format!(
            "{name} fails on {} of {CASES}, e.g. a={} b={} c={} t={t}",
            bad.len(),
            pool[*i].0,
            pool[*j].0,
            pool[*k].0
        ));
    }
    Ok(records)
}

fn repeatc_irreducible() -> Result<(), String> {
    let pool = reducing_pool();
    check("REPEATC irreducibility", CASES, (0..pool.len(), tr_term()), |(i, t)| {
        let (name, c) = &pool[i];
        let th = repeatc(c).apply(&t).map_err(|e| format!("REPEATC {name} failed on {t}: {e}"))?;
        check_conv_thm(name, &t, &th)?;
        let r = result_term(&th);
        match c.apply(&r) {
            Err(e) if e.is_recoverable() => Ok(()),
            Err(e) => Err(format!("{name} on {r}: {e}")),
            Ok(more) => Err(format!("REPEATC {name} stopped at {r}, but {more}")),
        }
    })
}

fn traversal_agreement() -> Result<(), String> {
    let many = many_conv();
    let strategies = [
        ("DEPTH.DEPTH", thenc(&depth_conv(&many), &depth_conv(&many))),
        ("REDEPTH", redepth_conv(&many)),
        ("TOP_DEPTH", top_depth_conv(&many)),
    ];
    check("traversal agreement", CASES, tr_term(), |t| {
        let mut results = Vec::new();
        for (name, c) in &strategies {
            let th = c.apply(&t).map_err(|e| format!("{name} failed on {t}: {e}"))?;
            check_conv_thm(name, &t, &th)?;
            results.push((name, result_term(&th)));
        }
        let (n0, r0) = &results[0];
        for (n, r) in &results[1..] {
            if !alpha_eq(r0, r) {
                return Err(format!("on {t}: {n0} gives {r0}, {n} gives {r}"));
            }
        }
        Ok(())
    })
}

fn instance() -> impl Strategy<Value = (Term, Vec<(Term, Var)>)> {
    let theta = prop::collection::vec((tr_term(), prop::sample::select(&NAMES[..])), 0..3).prop_map(|v| {
        let mut out: Vec<(Term, Var)> = Vec::new();
        for (t, n) in v {
            if !out.iter().any(|(_, x)| &*x.name == n) {
                out.push((t, Var::new(n, tr())));
            }
        }
        out
    });
    (tr_term(), theta)
}

fn matching_round_trip() -> Result<(), String> {
    // Constructed instances must match, and the bindings must rebuild them.
    check("term_match round trip", CASES, instance(), |(p, theta)| {
        let obj = subst_term(&p, &theta).map_err(|e| e.to_string())?;
        let m = term_match(&p, &obj).map_err(|e| format!("{p} does not match its instance {obj}: {e}"))?;
        let th = m.inst(&kernel::refl(&p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let (l, r) = th.concl().dest_equiv().map_err(|e| e.to_string())?;
        if !(alpha_eq(l, &obj) && alpha_eq(r, &obj)) {
            return Err(format!("{p} against {obj} rebuilt {th}"));
        }
        replays(&th)
    })?;
    // Any successful match is sound.
    check("term_match soundness", CASES, (tr_term(), tr_term()), |(p, obj)| {
        let Ok(m) = term_match(&p, &obj) else { return Ok(()) };
        let th = m.inst(&kernel::refl(&p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let (l, _) = th.concl().dest_equiv().map_err(|e| e.to_string())?;
        if alpha_eq(l, &obj) {
            replays(&th)
        } else {
            Err(format!("{p} against {obj} rebuilt {th}"))
        }
    })?;
    check("form_match round trip", CASES, (formula(), formula()), |(p, obj)| {
        let Ok(m) = form_match(&p, &obj) else { return Ok(()) };
        let pp = kernel::disch(&p, &kernel::assume(&p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let th = m.inst(&pp).map_err(|e| e.to_string())?;
        let (l, _) = th.concl().dest_imp().map_err(|e| e.to_string())?;
        if alpha_eq_form(l, &obj) {
            replays(&th)
        } else {
            Err(format!("{p} against {obj} rebuilt {th}"))
        }
    })?;
    check("form_match self", CASES, formula(), |a| {
        form_match(&a, &a).map(|_| ()).map_err(|e| format!("{a} does not match itself: {e}"))
    })
}

fn substitution_oracle() -> Result<(), String> {
    check("substitution against de Bruijn", CASES, (tr_term(), tr_term(), prop::sample::select(&NAMES[..])), |(t, s, x)| {
        let got = subst_term(&t, &[(s.clone(), Var::new(x, tr()))]).map_err(|e| e.to_string())?;
        let want = db_subst(&to_db(&t), &(x.to_string(), tr().to_string()), &to_db(&s));
        if to_db(&got) == want {
            Ok(())
        } else {
            Err(format!("{t}[{s}/{x}] gave {got}"))
        }
    })
}

fn c8() -> Outcome {
    conv_contract()?;
    fconv_contract()?;
    algebra()?;
    let records = expected_failures()?;
    repeatc_irreducible()?;
    traversal_agreement()?;
    matching_round_trip()?;
    substitution_oracle()?;
    Ok(format!("every property held on {CASES} cases; expected failures: {}", records.join("; ")))
}

// ---- criterion 9 ------------------------------------------------------------

fn f(text: &str) -> Formula {
    convkit::syntax::parse_form(&*Theory::pplambda(), text).expect("probe formula")
}

fn t(text: &str) -> Term {
    convkit::syntax::parse_term(&*Theory::pplambda(), text).expect("probe term")
}

fn rejected(what: &str, r: convkit::Result<Thm>) -> Result<(), String> {
    match r {
        Err(e) if e.is_recoverable() => Ok(()),
        Err(e) => Err(format!("{what}: unexpected {e}")),
        Ok(th) => Err(format!("{what} was accepted: {th}")),
    }
}

/// Misuses of the rules, each of which the kernel must reject.
fn probes() -> Vec<(&'static str, fn() -> Result<(), String>)> {
    vec![
        ("ABS_RULE with the variable free in a hypothesis", || {
            let th = kernel::assume(&f("x == TT")).map_err(|e| e.to_string())?;
            rejected("abs", kernel::abs_rule(&Var::new("x", tr()), &th))
        }),
        ("TRANS with different middle terms", || {
            let a = kernel::refl(&t("TT")).map_err(|e| e.to_string())?;
            let b = kernel::refl(&t("FF")).map_err(|e| e.to_string())?;
            rejected("trans", kernel::trans(&a, &b))
        }),
        ("MP with the wrong antecedent", || {
            let imp = kernel::assume(&f("TT == TT ==> FF == TT")).map_err(|e| e.to_string())?;
            let ant = kernel::refl(&t("FF")).map_err(|e| e.to_string())?;
            rejected("mp", kernel::mp(&imp, &ant))
        }),
        ("GEN over a variable free in a hypothesis", || {
            let th = kernel::assume(&f("x == TT")).map_err(|e| e.to_string())?;
            rejected("gen", kernel::gen(&Var::new("x", tr()), &th))
        }),
        ("INST of a variable free in a hypothesis", || {
            let th = kernel::assume(&f("x == TT")).map_err(|e| e.to_string())?;
            rejected("inst", kernel::inst(&[(t("FF"), Var::new("x", tr()))], &Default::default(), &th))
        }),
    ]
}

fn run_probes() -> Vec<String> {
    probes().into_iter().filter_map(|(name, p)| p().err().map(|e| format!("{name}: {e}"))).collect()
}

/// The rlib of this crate next to the test binary, and the deps directory.
fn rlibs() -> Result<(PathBuf, Vec<PathBuf>), String> {
    let exe = std::env::current_exe().map_err(|e| e.to_string())?;
    let deps = exe.parent().ok_or("no deps directory")?.to_path_buf();
    let mut libs: Vec<PathBuf> = std::fs::read_dir(&deps)
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            let n = p.file_name().and_then(|n| n.to_str()).unwrap_or("");
            n.starts_with("libconvkit-") && n.ends_with(".rlib")
        })
        .collect();
    libs.sort_by_key(|p| std::fs::metadata(p).and_then(|m| m.modified()).ok());
    libs.reverse();
    Ok((deps, libs))
}

fn compiles(deps: &PathBuf, lib: &PathBuf, src: &str, out: &std::path::Path) -> Result<(bool, String), String> {
    let file = out.join("probe.rs");
    std::fs::write(&file, src).map_err(|e| e.to_string())?;
    let rustc = std::env::var("RUSTC").unwrap_or_else(|_| "rustc".into());
    let o = Command::new(rustc)
        .args(["--edition", "2021", "--crate-type", "lib", "--emit", "metadata"])
        .arg("-L")
        .arg(format!("dependency={}", deps.display()))
        .arg("--extern")
        .arg(format!("convkit={}", lib.display()))
        .arg("--out-dir")
        .arg(out)
        .arg(&file)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((o.status.success(), String::from_utf8_lossy(&o.stderr).into_owned()))
}

/// Forging a theorem outside the kernel must not compile, while the same
/// code through the public rules does.
fn forgery_does_not_compile() -> Result<String, String> {
    const CONTROL: &str = "pub fn ok(t: &convkit::syntax::Term) -> convkit::kernel::Thm { convkit::kernel::refl(t).unwrap() }\n";
    const FORGERIES: [(&str, &str); 2] = [
        ("tuple constructor", "pub fn forged() -> convkit::kernel::Thm { convkit::kernel::Thm(std::sync::Arc::new(todo!())) }\n"),
        (
            "axiom constructor",
            "pub fn forged(f: convkit::syntax::Formula) -> convkit::kernel::Thm { convkit::kernel::Thm::axiom(f).unwrap() }\n",
        ),
    ];
    let (deps, libs) = rlibs()?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let lib = libs
        .iter()
        .find(|l| matches!(compiles(&deps, l, CONTROL, dir.path()), Ok((true, _))))
        .ok_or("no convkit rlib compiles the control snippet")?;
    for (name, src) in FORGERIES {
        let (ok, stderr) = compiles(&deps, lib, src, dir.path())?;
        if ok {
            return Err(format!("forgery by {name} compiled"));
        }
        if !stderr.contains("private") {
            return Err(format!("forgery by {name} failed for another reason:\n{stderr}"));
        }
    }
    Ok("forgeries rejected by the compiler".into())
}

fn c9() -> Outcome {
    let failed = run_probes();
    if !failed.is_empty() {
        return Err(failed.join("; "));
    }
    let mut caught = Vec::new();
    for m in Mutation::ALL {
        let failed = with_mutation(m, run_probes);
        if failed.is_empty() {
            return Err(format!("mutation {m:?} went unnoticed"));
        }
        caught.push(format!("{m:?} ({})", failed.len()));
    }
    let compiled = forgery_does_not_compile()?;
    Ok(format!("{compiled}; mutations caught: {}", caught.join(", ")))
}

#[test]
fn acceptance() {
    let criteria: [(u32, fn() -> Outcome); 9] =
        [(1, c1), (2, c2), (3, c3), (4, c4), (5, c5), (6, c6), (7, c7), (8, c8), (9, c9)];
    let mut failed = Vec::new();
    for (n, c) in criteria {
        match c() {
            Ok(msg) => say(&format!("criterion {n}: PASS ({msg})")),
            Err(e) => {
                say(&format!("criterion {n}: FAIL\n{e}"));
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
