use super::*;

fn session() -> Session {
    Session::new(Options::default())
}

fn run(s: &mut Session, lines: &[&str]) -> Vec<String> {
    lines.iter().map(|l| s.eval(l)).collect()
}

#[test]
fn term_match_session() {
    let mut s = session();
    let out = run(
        &mut s,
        &[
            "#let tm_obj = \"TT=> (FF,TT) | (TT,FF)\";;",
            "#term_match \"x\" tm_obj;;",
            "#term_match \"p=>x|y\" tm_obj;;",
            "#term_match \"f x\" tm_obj;;",
            "#term_match \"p=>FF|y\" tm_obj;;",
            "#term_match \"\\p.p\" tm_obj;;",
        ],
    );
    assert_eq!(out[0], "tm_obj = \"(TT => (FF,TT) | (TT,FF))\" : term");
    assert_eq!(
        out[2],
        "[\"TT,FF\",\"y\"; \"FF,TT\",\"x\"; \"TT\",\"p\"],\n[\":tr # tr\",\":*\"]\n: ((term # term) list # (type # type) list)"
    );
    assert!(out[3].starts_with("[\"TT,FF\",\"x\"; \"COND TT(FF,TT)\",\"f\"],"), "{}", out[3]);
    assert_eq!(out[4], "evaluation failed term_match");
    assert_eq!(out[5], "evaluation failed term_match");
}

#[test]
fn form_match_session() {
    let mut s = session();
    let out = run(
        &mut s,
        &[
            "let fm_obj = \"!x. (x,TT) == UU\"",
            "form_match \"!y. (x,y) == UU\" fm_obj",
            "form_match \"?x. (x,TT) == UU\" fm_obj",
            "form_match \"!y. (y,z) == UU\" fm_obj",
        ],
    );
    assert_eq!(out[0], "fm_obj = \"!x. (x,TT) == UU\" : form");
    assert_eq!(out[1], "evaluation failed form_match");
    assert_eq!(out[2], "evaluation failed form_match");
    assert_eq!(out[3], "[\"TT\",\"z\"],\n[\":tr\",\":**\"]\n: ((term # term) list # (type # type) list)");
}

#[test]
fn failures_leave_bindings() {
    let mut s = session();
    s.eval("let a = \"TT\"");
    assert!(s.eval("let a = nonsense_name").starts_with("error:"));
    assert_eq!(s.eval("a"), "\"TT\" : term");
    assert!(s.eval("let BETA_CONV = \"TT\"").starts_with("error:"));
}

#[test]
fn parse_error_has_column() {
    let mut s = session();
    let out = s.eval("term_match \"x\" (");
    assert!(out.starts_with("error:") && out.contains("column"), "{out}");
}

#[test]
fn declarations_and_axioms() {
    let mut s = session();
    assert_eq!(s.eval("constant ZERO : num"), "");
    assert_eq!(s.eval("axiom Z_DEF : ~ ZERO == UU"), "Z_DEF = \"|-~ ZERO == UU\" : thm");
    assert_eq!(s.eval("Z_DEF"), "\"|-~ ZERO == UU\" : thm");
}

#[test]
fn goal_expand_backup() {
    let mut s = session();
    s.eval("constant ZERO : num");
    s.eval("axiom Z_DEF : ~ ZERO == UU");
    let g = s.eval("goal \"~ ZERO == UU /\\ ~ ZERO == UU\"");
    assert_eq!(g, "\"~ ZERO == UU ^ ~ ZERO == UU\"");
    let out = s.eval("expand CONJ_TAC");
    assert!(out.starts_with("OK..\n2 subgoals"), "{out}");
    s.eval("backup");
    let out = s.eval("expand CONJ_TAC THEN ACCEPT_TAC Z_DEF");
    assert_eq!(out, "OK..\ngoal proved\n\"|-~ ZERO == UU ^ ~ ZERO == UU\" : thm");
    assert_eq!(s.eval("save_top TWICE"), "TWICE = \"|-~ ZERO == UU ^ ~ ZERO == UU\" : thm");
    assert!(s.theory().theorem("TWICE").is_ok());
}

#[test]
fn step_budget_reports_failure() {
    let mut s = Session::new(Options { max_steps: Some(3), ..Options::default() });
    let out = s.eval("conv (repeatc beta) \"(\\x.(\\y.(\\z.z) y) x) TT\"");
    assert_eq!(out, "evaluation failed step_limit");
}

#[test]
fn trace_prints_steps() {
    let mut s = Session::new(Options { trace: true, ..Options::default() });
    let out = s.eval("conv beta \"(\\x.x) TT\"");
    let last = out.lines().last().unwrap();
    assert!(last.starts_with('[') && last.ends_with("inferences]"), "{out}");
}

#[test]
fn audit_replays() {
    let mut s = Session::new(Options { audit: true, ..Options::default() });
    let out = s.eval("let th = conv beta \"(\\x.x) TT\"");
    assert_eq!(out, "th = \"|-(\\x.x)TT == TT\" : thm");
    assert_eq!(s.eval("audit th"), "audit ok (1 theorems)");
}

#[test]
fn scripts_check_expectations() {
    let text = "\
let a = \"TT\"   -- a comment
expect: a = \"TT\" : term
term_match \"p=>x|y\"
    \"TT => (FF,TT) | (TT,FF)\"
expect: [\"TT,FF\",\"y\"; \"FF,TT\",\"x\"; \"TT\",\"p\"],
expect: [\":tr # tr\",\":*\"]
";
    let rep = run_script(&mut session(), text);
    assert!(rep.passed(), "{:?}", rep.failures);
    assert_eq!(rep.expects, 3);
    assert!(rep.transcript.starts_with("#let a = \"TT\"\n"));

    let rep = run_script(&mut session(), "let a = \"TT\"\nexpect: a = \"FF\" : term\n");
    assert_eq!(rep.failures.len(), 1);
    assert!(rep.failures[0].contains("expected: a = \"FF\" : term"));

    assert!(run_script(&mut session(), "").passed());
}

#[test]
fn transcripts_are_deterministic() {
    let text = "let t = \"(\\x.(\\y.y,x) FF) TT\"\nconv (depth beta) t\nconv (redepth beta) t\n";
    let a = run_script(&mut session(), text).transcript;
    let b = run_script(&mut session(), text).transcript;
    assert_eq!(a, b);
}

#[test]
fn theory_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nums.thy");
    let mut s = session();
    s.eval("new_theory nums");
    s.eval("constant ZERO : num");
    s.eval("axiom Z_DEF : ~ ZERO == UU");
    let out = s.eval("prove_thm Z2 \"~ ZERO == UU\" ACCEPT_TAC Z_DEF");
    assert_eq!(out, "Z2 = \"|-~ ZERO == UU\" : thm");
    assert_eq!(s.eval(&format!("save \"{}\"", path.display())), "theory nums saved");

    let mut t = session();
    assert_eq!(t.eval(&format!("load \"{}\"", path.display())), "theory nums loaded");
    assert_eq!(t.eval("Z2"), "\"|-~ ZERO == UU\" : thm");
}
