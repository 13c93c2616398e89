//! Declaring a theory, proving a theorem by a tactic, writing the theory
//! file and loading it back, which proves the theorem again.

use convkit::repl::{Options, Session, Store};

fn main() -> convkit::Result<()> {
    let dir = tempfile::tempdir()?;
    let path = dir.path().join("nums.thy");

    let mut s = Session::new(Options::default());
    for cmd in [
        "new_theory nums",
        "constant ZERO : num",
        "constant SUC : num -> num",
        "axiom ZERO_DEF : ~ ZERO == UU",
        "axiom SUC_DEF : !n. ~ n == UU ==> ~ SUC n == UU",
        "prove_thm ONE_DEF \"~ SUC ZERO == UU\" IMP_SEARCH_TAC [ZERO_DEF; SUC_DEF]",
        &format!("save \"{}\"", path.display()),
    ] {
        println!("#{cmd}");
        let out = s.eval(cmd);
        if !out.is_empty() {
            println!("{out}");
        }
    }
    println!("{}", std::fs::read_to_string(&path)?);

    let thy = Store::new(false).load_file(&path)?;
    println!("reloaded {}: ONE_DEF = {}", thy.name(), thy.theorem("ONE_DEF")?);
    Ok(())
}
