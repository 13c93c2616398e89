//! IMP_CANON and FCONV_CANON on the list theory, then a backwards-chaining
//! search that proves a list is defined, printed as its goal tree.

use std::path::Path;

use convkit::kernel::assume;
use convkit::repl::Store;
use convkit::syntax::{parse_form, parse_forms_jointly};
use convkit::tactic::{fconv_canon, imp_canon, imp_search, Goal, DEFAULT_SEARCH_DEPTH};

fn main() -> convkit::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("theories");
    let thy = Store::new(false).load_file(&dir.join("lists.thy"))?;

    let a = parse_form(&*thy, "(~ x==UU /\\ ~ y==UU) ==> !f g. ~ f x y ==UU /\\ ~ g x y == UU")?;
    for th in imp_canon(&assume(&a)?)? {
        println!("{th}");
    }
    for label in ["NIL_DEFINED", "CONS_DEFINED", "APP_DEFINED"] {
        for th in imp_canon(&thy.fact(label)?)? {
            println!("{label}: {}", fconv_canon(&th)?);
        }
    }

    let fs = parse_forms_jointly(
        &*thy,
        &["~ (CONS t l) APP (CONS t (CONS u NIL)) == UU", "~ t == UU", "~ l == UU", "~ u == UU"],
    )?;
    let goal = Goal::new(fs[1..].to_vec(), fs[0].clone());
    let rules = ["NIL_DEFINED", "CONS_DEFINED", "APP_DEFINED"]
        .iter()
        .map(|l| thy.fact(l))
        .collect::<convkit::Result<Vec<_>>>()?;
    let (th, tree) = imp_search(&rules, &goal, DEFAULT_SEARCH_DEPTH)?;
    println!("{tree}");
    println!("leaves: {}", tree.leaves().len());
    println!("{th}");
    Ok(())
}
