//! The kernel's primitive rules, replaying a recorded derivation, and the
//! inference budget that stops a runaway conversion.

use convkit::conv::{beta_conv, redepth_conv, repeatc};
use convkit::kernel::{self, Theory};
use convkit::syntax::{parse_form, parse_term};

fn main() -> convkit::Result<()> {
    let root = Theory::pplambda();
    let a = parse_form(&*root, "~ x == UU")?;
    let th = kernel::disch(&a, &kernel::assume(&a)?)?;
    println!("DISCH of ASSUME: {th}");

    let t = parse_term(&*root, "(\\x.(\\y.(\\z.z,y) x) FF) TT")?;
    let th = kernel::with_audit(|| redepth_conv(&beta_conv()).apply(&t))?;
    println!("{th}");
    let again = kernel::replay(&th)?;
    println!("replayed: {}", again.same(&th));

    for limit in [100, 3] {
        let r = kernel::with_step_limit(Some(limit), || repeatc(&beta_conv()).apply(&t));
        match r {
            Ok(th) => println!("limit {limit}: {th}"),
            Err(e) => println!("limit {limit}: {e}"),
        }
    }
    Ok(())
}
