use super::*;
use crate::syntax::parse::{parse_form, parse_term};
use crate::syntax::types::Type;

fn thy() -> Arc<Theory> {
    Theory::pplambda()
}

fn tm(s: &str) -> Term {
    parse_term(&*thy(), s).unwrap()
}

fn fm(s: &str) -> Formula {
    parse_form(&*thy(), s).unwrap()
}

fn ax(label: &str) -> Thm {
    thy().axiom(label).unwrap()
}

fn at_tr(th: &Thm) -> Thm {
    let mut ty = TypeSubst::new();
    ty.insert("*".into(), Type::tr());
    inst(&[], &ty, th).unwrap()
}

#[test]
fn assume_and_refl() {
    assert_eq!(assume(&fm("x==UU")).unwrap().to_string(), "[x == UU] |- x == UU");
    assert_eq!(assume(&fm("TRUTH()")).unwrap().to_string(), "[TRUTH()] |- TRUTH()");
    assert_eq!(refl(&tm("UU")).unwrap().to_string(), "|-UU == UU");
    assert_eq!(refl(&tm("FST(TT,FF)")).unwrap().to_string(), "|-FST(TT,FF) == FST(TT,FF)");
}

#[test]
fn trans_checks_middle() {
    let a = assume(&fm("x == (y:tr)")).unwrap();
    let b = assume(&fm("y == (z:tr)")).unwrap();
    let c = trans(&a, &b).unwrap();
    assert!(c.concl().to_string() == "x == z");
    assert_eq!(c.hyps().len(), 2);
    assert!(trans(&b, &a).is_err());
    assert!(sym(&sym(&a).unwrap()).unwrap().same(&a));
}

#[test]
fn abs_rule_side_condition() {
    let h = assume(&fm("x == UU")).unwrap();
    assert!(matches!(
        abs_rule(&Var::new("x", h.concl().dest_equiv().unwrap().0.ty().clone()), &h),
        Err(Error::VarFreeInHyps { .. })
    ));
    let x = tm("(x:tr)").dest_var().unwrap().clone();
    let r = abs_rule(&x, &refl(&tm("(x:tr)")).unwrap()).unwrap();
    assert_eq!(r.to_string(), "|-(\\x.x) == \\x.x");
}

#[test]
fn beta_examples() {
    let abs1 = tm("(\\fun.(fun(TT,FF) => x | y))FST");
    assert_eq!(
        beta(&abs1).unwrap().to_string(),
        "|-(\\fun.(fun(TT,FF) => x | y))FST == (FST(TT,FF) => x | y)"
    );
    let abs2 = tm("(\\t.(\\u.t,u)FF)TT");
    assert_eq!(beta(&abs2).unwrap().to_string(), "|-(\\t.(\\u.t,u)FF)TT == (\\u.TT,u)FF");
    let e = beta(&tm("TT => x | y")).unwrap_err();
    assert_eq!(e.token(), "BETA_CONV");
}

#[test]
fn mp_and_disch() {
    let a = fm("x == UU");
    let b = fm("y == UU");
    let ab = disch(&a, &assume(&b).unwrap()).unwrap();
    assert_eq!(ab.hyps().len(), 1);
    let th = mp(&assume(&Formula::imp(a.clone(), b.clone())).unwrap(), &assume(&a).unwrap()).unwrap();
    assert!(alpha_eq_form(th.concl(), &b));
    assert!(mp(&ab, &assume(&b).unwrap()).is_err());
    let d = disch(&a, &assume(&a).unwrap()).unwrap();
    assert!(d.hyps().is_empty());
}

#[test]
fn gen_spec() {
    let r = spec(&tm("(UU:tr)"), &at_tr(&ax("EQ_REFL"))).unwrap();
    assert_eq!(r.to_string(), "|-UU == UU");
    let x = Var::new("x", Type::tr());
    let th = refl(&Term::var(x.clone())).unwrap();
    let back = spec(&Term::var(x.clone()), &gen(&x, &th).unwrap()).unwrap();
    assert!(back.same(&th));
    let h = assume(&fm("(x:tr) == UU")).unwrap();
    assert!(gen(&x, &h).is_err());
    assert!(matches!(spec(&tm("TT"), &gen(&Var::new("x", Type::void()), &refl(&tm("(x:void)")).unwrap()).unwrap()), Err(Error::TypeMismatch(_))));
}

#[test]
fn structural_rules() {
    let a = assume(&fm("x == UU")).unwrap();
    let b = assume(&fm("y == UU")).unwrap();
    let ab = conj(&a, &b).unwrap();
    assert!(conjunct1(&ab).unwrap().concl().to_string() == "x == UU");
    assert!(conjunct2(&ab).unwrap().concl().to_string() == "y == UU");
    let aa = disch(a.concl(), &a).unwrap();
    let iff = iff_intro(&aa, &aa).unwrap();
    assert_eq!(iff.to_string(), "|-x == UU <=> x == UU");
    assert!(iff_mp(&iff, &a).unwrap().same(&a));
    assert!(iff_mpr(&iff, &a).unwrap().same(&a));
}

#[test]
fn disj_and_exists() {
    let a = fm("x == (UU:tr)");
    let b = fm("y == (UU:tr)");
    let ab = assume(&Formula::disj(a.clone(), b.clone())).unwrap();
    let c = fm("TRUTH()");
    let t = ax("TRUTH_INTRO");
    let r = disj_cases(&ab, &t, &t).unwrap();
    assert_eq!(r.hyps().len(), 1);
    let left = disj1(&assume(&a).unwrap(), &b).unwrap();
    assert_eq!(left.concl().to_string(), "x == UU \\/ y == UU");
    let _ = c;

    let ex = fm("?z. z == (UU:tr)");
    let w = exists_intro(&ex, &tm("(UU:tr)"), &refl(&tm("(UU:tr)")).unwrap()).unwrap();
    assert_eq!(w.to_string(), "|-?z. z == UU");
    let y = Var::new("y", Type::tr());
    let body = assume(&fm("y == (UU:tr)")).unwrap();
    let tr = contr(&fm("TRUTH()"), &assume(&Formula::falsity()).unwrap()).unwrap();
    let got = exists_elim(&assume(&ex).unwrap(), &y, &t).unwrap();
    assert_eq!(got.hyps().len(), 1);
    assert!(exists_elim(&w, &y, &body).is_err());
    assert_eq!(tr.concl().to_string(), "TRUTH()");
}

#[test]
fn pred_cong_and_inst() {
    let th = spec(&tm("FST(TT,FF)"), &at_tr(&ax("EQ_REFL"))).unwrap();
    let p = pred_cong("TRUTH", &refl(&tm("()")).unwrap()).unwrap();
    assert_eq!(p.to_string(), "|-TRUTH() <=> TRUTH()");
    assert!(pred_cong("equiv", &th).is_err());

    let min = ax("MINIMAL");
    let x = min.concl().dest_forall().unwrap().0.clone();
    let body = spec(&Term::var(x.clone()), &min).unwrap();
    let t = Var::new("t", x.ty.clone());
    let r = inst(&[(Term::var(t), x.clone())], &TypeSubst::new(), &body).unwrap();
    assert_eq!(r.to_string(), "|-UU << t");
    let mut ty = TypeSubst::new();
    ty.insert("*".into(), Type::prod(Type::tr(), Type::tr()));
    let r2 = inst(&[], &ty, &min).unwrap();
    assert_eq!(r2.concl().dest_forall().unwrap().0.ty.to_string(), "tr # tr");
    assert!(inst(&[], &TypeSubst::new(), &body).unwrap().same(&body));
    let h = assume(&fm("x == (UU:tr)")).unwrap();
    let hx = h.concl().dest_equiv().unwrap().0.dest_var().unwrap().clone();
    assert!(inst(&[(tm("TT"), hx)], &TypeSubst::new(), &h).is_err());
}

#[test]
fn theory_store() {
    let mut t = Theory::new("T", vec![thy()]);
    t.declare_constant("NIL", Type::var("*")).unwrap();
    let f = parse_form(&t, "!x. x == x").unwrap();
    let th = t.new_axiom("MY_REFL", &f).unwrap();
    assert!(t.axiom("MY_REFL").unwrap().same(&th));
    assert!(matches!(t.axiom("NOPE"), Err(Error::UnknownLabel(_))));
    assert!(matches!(t.new_axiom("MY_REFL", &f), Err(Error::DuplicateLabel(_))));
    assert!(t.new_axiom("OPEN", &fm("x == UU")).is_err());
    let h = assume(&fm("x == UU")).unwrap();
    assert!(matches!(t.save_theorem("H", &h, None), Err(Error::OpenHypotheses(_))));
    t.save_theorem("R", &refl(&tm("TT")).unwrap(), None).unwrap();
    assert!(t.theorem("R").is_ok());
    assert!(t.axiom("MINIMAL").is_ok());
}

#[test]
fn theory_text_round_trip() {
    let src = "theory T\nparent PPLAMBDA\n-- a comment\nconstant NIL : *\npredicate DEF : *\naxiom A1 : !x. DEF x ==>\n   x == x\n";
    let mut parent = |n: &str| {
        if n == "PPLAMBDA" { Ok(Theory::pplambda()) } else { Err(Error::Theory(n.into())) }
    };
    let mut prove = |_: &Theory, _: &Formula, _: &str| Err(Error::failure("no"));
    let t = Theory::from_text(src, &mut parent, &mut prove, false).unwrap();
    assert_eq!(t.axiom("A1").unwrap().to_string(), "|-!x. DEF x ==> x == x");
    let text = t.to_text();
    let t2 = Theory::from_text(&text, &mut parent, &mut prove, false).unwrap();
    assert!(t2.axiom("A1").unwrap().same(&t.axiom("A1").unwrap()));
    let bad = Theory::from_text("theory T\naxiom A : x ==", &mut parent, &mut prove, false);
    assert!(matches!(bad, Err(Error::Parse { line: 2, .. })));
}

#[test]
fn builtin_axioms_print() {
    assert_eq!(ax("MINIMAL").to_string(), "|-!x. UU << x");
    assert_eq!(ax("MK_PAIR").to_string(), "|-(FST x,SND x) == x");
    assert_eq!(ax("MIN_ABS").to_string(), "|-(\\x.UU) == UU");
    assert_eq!(ax("COND_TT").to_string(), "|-(TT => x | y) == x");
    assert_eq!(ax("TT_UU").to_string(), "|-TT == UU <=> FALSITY()");
}

#[test]
fn step_limit_and_replay() {
    let r = with_step_limit(Some(3), || {
        let a = refl(&tm("TT"))?;
        let b = sym(&a)?;
        let c = trans(&a, &b)?;
        trans(&c, &a)
    });
    assert!(matches!(r, Err(Error::StepLimit(3))));
    let th = with_audit(|| {
        let a = assume(&fm("x == UU")).unwrap();
        let d = disch(a.concl(), &a).unwrap();
        iff_intro(&d, &d).unwrap()
    });
    assert!(replay(&th).unwrap().same(&th));
}
