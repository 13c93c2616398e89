//! Matching a pattern against a term, then instantiating theorems by
//! matching: PART_TMATCH and the MATCH_MP chain over totality theorems.

use std::path::Path;

use convkit::kernel::Theory;
use convkit::matching::{self, form_match, match_mp, part_tmatch, term_match};
use convkit::repl::Store;
use convkit::syntax::{parse_form, parse_term};

fn main() -> convkit::Result<()> {
    let root = Theory::pplambda();
    let tm_obj = parse_term(&*root, "TT => (FF,TT) | (TT,FF)")?;
    for pat in ["x", "p=>x|y", "f x", "p=>FF|y"] {
        match term_match(&parse_term(&*root, pat)?, &tm_obj) {
            Ok(m) => println!("{pat}:\n{m}"),
            Err(e) => println!("{pat}: failed {}", e.token()),
        }
    }
    let fm_obj = parse_form(&*root, "!x. (x,TT) == UU")?;
    println!("{}", form_match(&parse_form(&*root, "!y. (y,z) == UU")?, &fm_obj)?);

    // MINIMAL is |-!x. UU << x; matching its right side gives |-UU << t.
    let min = part_tmatch(matching::parts::inequiv_rhs, &root.axiom("MINIMAL")?)?;
    println!("{}", min(&parse_term(&*root, "f x")?)?);

    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("theories");
    let thy = Store::new(false).load_file(&dir.join("VARS_OF.thy"))?;
    let step = match_mp(&thy.fact("MAP_TOTAL")?)?;
    let mut th = thy.fact("VARS_OF_TOTAL")?;
    for i in 1..=3 {
        th = step(&th)?;
        println!("TOTAL{i} = {th}");
    }
    Ok(())
}
