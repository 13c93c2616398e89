//! The command language: an interactive session, scripts with expected
//! output, and theory files on disk.
//!
//! Results print as `VALUE : type` and failures as
//! `evaluation failed TOKEN`.

mod builtins;
mod eval;
mod expr;
mod script;
mod store;
mod value;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

pub use builtins::Builtin;
pub use eval::{prove_by, Scope};
pub use script::{run_script, split_commands, ScriptReport};
pub use store::Store;
pub use value::Value;

use expr::{Expr, Parser};

use crate::error::{Error, Result};
use crate::kernel::{self, Theory, Thm};
use crate::syntax::{parse_forms_jointly, parse_type, Formula};
use crate::tactic::{prove_goal, Goal, ProofState};

pub const DEFAULT_MAX_STEPS: u64 = 100_000;

#[derive(Clone, Debug)]
pub struct Options {
    /// Print the number of inferences each command took.
    pub trace: bool,
    /// Inference budget per command; `None` is unlimited.
    pub max_steps: Option<u64>,
    /// Record derivations and replay every theorem that is printed.
    pub audit: bool,
    /// Accept `theorem` lines of theory files without proving them.
    pub trust_store: bool,
}

impl Default for Options {
    fn default() -> Options {
        Options { trace: false, max_steps: Some(DEFAULT_MAX_STEPS), audit: false, trust_store: false }
    }
}

pub struct Session {
    theory: Theory,
    store: Store,
    bindings: BTreeMap<String, Value>,
    proof: Option<ProofState>,
    opts: Options,
    base_dir: Option<PathBuf>,
}

const HELP: &str = "\
commands:
  EXPR                       evaluate and print
  let NAME = EXPR            bind (also let [A; B] = LIST)
  goal \"F\" [\"A1\"; ...]       start a proof
  expand TACTIC              apply a tactic to the current goal
  backup                     undo the last expand
  top                        print the open goals
  save_top LABEL             store the finished proof as a theorem
  prove_thm LABEL \"F\" TACTIC prove and store a theorem
  new_theory NAME            start a theory below the current one
  load \"FILE\"                load a theory file as a parent
  save \"FILE\"                write the current theory
  constant|infix|predicate NAME : TYPE
  axiom LABEL : FORMULA
  audit EXPR                 replay a theorem through the kernel";

fn error_text(e: &Error) -> String {
    match e {
        Error::Failure(_) | Error::RuleMismatch { .. } | Error::VarFreeInHyps { .. } | Error::StepLimit(_) => {
            format!("evaluation failed {}", e.token())
        }
        other => format!("error: {other}"),
    }
}

fn strip_command(line: &str) -> &str {
    let s = line.trim();
    let s = s.strip_prefix('#').unwrap_or(s).trim();
    s.strip_suffix(";;").unwrap_or(s).trim_end()
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

fn collect_thms(v: &Value, out: &mut Vec<Thm>) {
    match v {
        Value::Thm(t) => out.push(t.clone()),
        Value::List(vs) | Value::Tuple(vs) => vs.iter().for_each(|x| collect_thms(x, out)),
        _ => {}
    }
}

impl Session {
    pub fn new(opts: Options) -> Session {
        Session {
            theory: Theory::new("scratch", vec![Theory::pplambda()]),
            store: Store::new(opts.trust_store),
            bindings: BTreeMap::new(),
            proof: None,
            opts,
            base_dir: None,
        }
    }

    pub fn options(&self) -> &Options {
        &self.opts
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    /// Relative paths in `load` and `save` are taken from `dir`, which is
    /// also searched for parent theories.
    pub fn set_base_dir(&mut self, dir: &Path) {
        self.store.add_search_dir(dir);
        self.base_dir = Some(dir.to_path_buf());
    }

    pub fn store_mut(&mut self) -> &mut Store {
        &mut self.store
    }

    pub fn binding(&self, name: &str) -> Option<&Value> {
        self.bindings.get(name)
    }

    pub fn proof(&self) -> Option<&ProofState> {
        self.proof.as_ref()
    }

    fn scope(&self) -> Scope<'_> {
        Scope { theory: &self.theory, bindings: &self.bindings }
    }

    /// Loads a theory file and makes it a parent of the current theory.
    pub fn load_theory(&mut self, path: &Path) -> Result<Arc<Theory>> {
        let thy = self.store.load_file(path)?;
        self.theory.add_parent(thy.clone());
        Ok(thy)
    }

    /// Runs one command and returns what it prints; failures are printed,
    /// not returned, and leave the session as it was.
    pub fn eval(&mut self, line: &str) -> String {
        let cmd = strip_command(line);
        if cmd.is_empty() {
            return String::new();
        }
        let limit = self.opts.max_steps;
        let audit = self.opts.audit;
        let run = |s: &mut Session| {
            kernel::with_step_limit(limit, || {
                let r = s.command(cmd);
                (r, kernel::steps_used())
            })
        };
        let (r, steps) = if audit { kernel::with_audit(|| run(self)) } else { run(self) };
        let mut out = match r {
            Ok(s) => s,
            Err(e) => error_text(&e),
        };
        if self.opts.trace {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&format!("[{steps} inferences]"));
        }
        out
    }

    fn command(&mut self, cmd: &str) -> Result<String> {
        let (head, rest) = cmd
            .split_once(char::is_whitespace)
            .map(|(h, r)| (h, r.trim()))
            .unwrap_or((cmd, ""));
        match head {
            "help" => Ok(HELP.to_string()),
            "let" => self.let_cmd(cmd),
            "goal" => self.goal_cmd(rest),
            "expand" => self.expand_cmd(rest),
            "backup" => {
                self.proof.as_mut().ok_or_else(|| Error::failure("no goal"))?.backup()?;
                self.top_cmd()
            }
            "top" => self.top_cmd(),
            "save_top" => self.save_top_cmd(rest),
            "prove_thm" => self.prove_thm_cmd(rest),
            "new_theory" => self.new_theory_cmd(rest),
            "load" => {
                let path = self.path_arg(rest)?;
                let thy = self.load_theory(&path)?;
                Ok(format!("theory {} loaded", thy.name()))
            }
            "save" => {
                let path = self.path_arg(rest)?;
                std::fs::write(&path, self.theory.to_text())?;
                Ok(format!("theory {} saved", self.theory.name()))
            }
            "constant" | "infix" | "predicate" => {
                let (name, ty) = split_decl(rest)?;
                let ty = parse_type(ty)?;
                match head {
                    "constant" => self.theory.declare_constant(name, ty)?,
                    "infix" => self.theory.declare_infix(name, ty)?,
                    _ => self.theory.declare_predicate(name, ty)?,
                }
                Ok(String::new())
            }
            "axiom" => {
                let (label, body) = split_decl(rest)?;
                let f = crate::syntax::parse_form(&self.scope(), body)?;
                let th = self.theory.new_axiom(label, &f)?;
                Ok(format!("{label} = {}", Value::Thm(th).display()))
            }
            "audit" => {
                let v = self.scope().eval_text(rest)?;
                let mut ths = Vec::new();
                collect_thms(&v, &mut ths);
                if ths.is_empty() {
                    return Err(Error::TypeMismatch("audit expects theorems".into()));
                }
                for th in &ths {
                    let again = kernel::replay(th)?;
                    if !again.same(th) {
                        return Err(Error::failure("audit"));
                    }
                }
                Ok(format!("audit ok ({} theorems)", ths.len()))
            }
            _ => {
                let v = self.scope().eval_text(cmd)?;
                self.show(&[v.display()], &v)
            }
        }
    }

    /// Joins output lines, replaying printed theorems first when auditing.
    fn show(&self, lines: &[String], v: &Value) -> Result<String> {
        if self.opts.audit {
            let mut ths = Vec::new();
            collect_thms(v, &mut ths);
            for th in ths {
                kernel::replay(&th)?;
            }
        }
        Ok(lines.join("\n"))
    }

    fn path_arg(&self, rest: &str) -> Result<PathBuf> {
        let p = rest.trim().trim_matches('"');
        if p.is_empty() {
            return Err(Error::Io("missing file name".into()));
        }
        Ok(match &self.base_dir {
            Some(d) if Path::new(p).is_relative() => d.join(p),
            _ => PathBuf::from(p),
        })
    }

    fn let_cmd(&mut self, cmd: &str) -> Result<String> {
        let mut p = Parser::new(cmd)?;
        p.name()?;
        let names = p.binder()?;
        p.expect('=')?;
        let e = p.expr()?;
        p.expect_end()?;
        for n in &names {
            if Builtin::is_reserved(n) {
                return Err(Error::Theory(format!("{n} is a builtin name")));
            }
        }
        let v = self.scope().eval(&e)?;
        let pairs: Vec<(String, Value)> = if names.len() == 1 {
            vec![(names[0].clone(), v.clone())]
        } else {
            match &v {
                Value::List(vs) if vs.len() == names.len() => names.iter().cloned().zip(vs.iter().cloned()).collect(),
                _ => {
                    return Err(Error::TypeMismatch(format!(
                        "cannot bind {} names to a {}",
                        names.len(),
                        v.type_name()
                    )))
                }
            }
        };
        let lines: Vec<String> = pairs.iter().map(|(n, x)| format!("{n} = {}", x.display())).collect();
        let out = self.show(&lines, &v)?;
        self.bindings.extend(pairs);
        Ok(out)
    }

    fn goal_cmd(&mut self, rest: &str) -> Result<String> {
        let mut p = Parser::new(rest)?;
        let mut texts = Vec::new();
        match p.atom()? {
            Expr::Quote(q) => texts.push(q),
            _ => return Err(Error::TypeMismatch("goal expects a quoted formula".into())),
        }
        if !p.at_end() {
            match p.atom()? {
                Expr::List(items) => {
                    for it in items {
                        match it {
                            Expr::Quote(q) => texts.push(q),
                            _ => return Err(Error::TypeMismatch("assumptions must be quoted".into())),
                        }
                    }
                }
                _ => return Err(Error::TypeMismatch("goal expects a list of assumptions".into())),
            }
        }
        p.expect_end()?;
        let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
        let mut fs = parse_forms_jointly(&self.scope(), &refs)?;
        let target = fs.remove(0);
        let g = Goal::new(fs, target);
        let out = g.to_string();
        self.proof = Some(ProofState::new(g));
        Ok(out)
    }

    fn expand_cmd(&mut self, rest: &str) -> Result<String> {
        let tac = self.scope().tactic(rest)?;
        let ps = self.proof.as_mut().ok_or_else(|| Error::failure("no goal"))?;
        let subs = ps.expand(&tac)?;
        let mut out = vec!["OK..".to_string()];
        match subs.len() {
            0 => {
                out.push("goal proved".to_string());
                match ps.theorem() {
                    Some(th) => out.push(Value::Thm(th.clone()).display()),
                    None => {
                        out.push(String::new());
                        out.push(ps.current().expect("open goal").to_string());
                    }
                }
            }
            1 => out.push(subs[0].to_string()),
            n => {
                out.push(format!("{n} subgoals"));
                let gs: Vec<String> = subs.iter().map(|g| g.to_string()).collect();
                out.push(gs.join("\n\n"));
            }
        }
        Ok(out.join("\n"))
    }

    fn top_cmd(&self) -> Result<String> {
        let ps = self.proof.as_ref().ok_or_else(|| Error::failure("no goal"))?;
        if let Some(th) = ps.theorem() {
            return Ok(format!("goal proved\n{}", Value::Thm(th.clone()).display()));
        }
        let gs: Vec<String> = ps.open_goals().iter().map(|g| g.to_string()).collect();
        Ok(gs.join("\n\n"))
    }

    fn save_top_cmd(&mut self, rest: &str) -> Result<String> {
        let label = rest.trim();
        let th = self
            .proof
            .as_ref()
            .and_then(ProofState::theorem)
            .cloned()
            .ok_or_else(|| Error::failure("no finished proof"))?;
        self.theory.save_theorem(label, &th, None)?;
        Ok(format!("{label} = {}", Value::Thm(th).display()))
    }

    /// `prove_thm LABEL "F" TACTIC`; the tactic text is stored with the
    /// theorem so the theory file can prove it again.
    fn prove_thm_cmd(&mut self, rest: &str) -> Result<String> {
        let (label, body) = rest
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Theory("expected LABEL \"FORMULA\" TACTIC".into()))?;
        let body = body.trim_start();
        let after = body
            .strip_prefix('"')
            .ok_or_else(|| Error::Theory("expected a quoted formula".into()))?;
        let end = after.find('"').ok_or_else(|| Error::Theory("unterminated quotation".into()))?;
        let stmt_text = &after[..end];
        let tac_text = after[end + 1..].trim();
        let stmt: Formula = crate::syntax::parse_form(&self.scope(), stmt_text)?;
        let tac = self.scope().tactic(tac_text)?;
        let th = prove_goal(&tac, &Goal::new(Vec::new(), stmt.clone()))?;
        if !crate::syntax::alpha_eq_form(th.concl(), &stmt) {
            return Err(Error::failure("prove_thm"));
        }
        self.theory.save_theorem(label, &th, Some(tac_text))?;
        Ok(format!("{label} = {}", Value::Thm(th).display()))
    }

    fn new_theory_cmd(&mut self, rest: &str) -> Result<String> {
        let name = rest.trim();
        if name.is_empty() || !name.chars().all(expr::is_name_char) {
            return Err(Error::Theory(format!("bad theory name `{name}`")));
        }
        let parents = if self.theory.items().is_empty() {
            self.theory.parents().to_vec()
        } else {
            let old = Arc::new(self.theory.clone());
            self.store.insert(old.clone());
            vec![old]
        };
        self.theory = Theory::new(name, parents);
        Ok(format!("theory {name} started"))
    }
}

#[cfg(test)]
mod tests;
