//! ASM_REWRITE_TAC on the four induction cases of the transitivity of OCCS.
//! Three are solved outright; the COMB case is reduced to an OR formula.

use std::path::Path;

use convkit::repl::Store;
use convkit::syntax::parse_forms_jointly;
use convkit::tactic::{asm_rewrite_tac, Goal};

const CASES: [&[&str]; 4] = [
    &["u OCCS UU == TT ==> t OCCS UU == TT", "~ t == UU", "t OCCS u == TT"],
    &["u OCCS (CONST c) == TT ==> t OCCS (CONST c) == TT", "~ t == UU", "t OCCS u == TT", "~ c == UU"],
    &["u OCCS (VAR v) == TT ==> t OCCS (VAR v) == TT", "~ t == UU", "t OCCS u == TT", "~ v == UU"],
    &[
        "u OCCS (COMB t1 t2) == TT ==> t OCCS (COMB t1 t2) == TT",
        "~ t == UU",
        "t OCCS u == TT",
        "u OCCS t1 == TT ==> t OCCS t1 == TT",
        "u OCCS t2 == TT ==> t OCCS t2 == TT",
        "~ t1 == UU",
        "~ t2 == UU",
    ],
];

fn main() -> convkit::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("theories");
    let thy = Store::new(false).load_file(&dir.join("occs.thy"))?;
    let tac = asm_rewrite_tac(&[thy.fact("OCCS_CLAUSES")?, thy.fact("OCCS_EQ")?]);
    for case in CASES {
        let mut fs = parse_forms_jointly(&*thy, case)?;
        let target = fs.remove(0);
        let goal = Goal::new(fs, target);
        let (subs, just) = tac.apply(&goal)?;
        if subs.is_empty() {
            println!("solved: {}", just(&[])?);
        } else {
            for g in subs {
                println!("remaining:\n{g}");
            }
        }
    }
    Ok(())
}
