//! Building term conversions from BETA_CONV and rewrites, and the
//! difference between the three traversal strategies.

use convkit::conv::{
    beta_conv, depth_conv, first_conv, orelsec, redepth_conv, repeatc, rewrite_conv, thenc, top_depth_conv,
    Conv,
};
use convkit::kernel::Theory;
use convkit::syntax::parse_term;

const REWRITES: [&str; 8] =
    ["COND_UU", "COND_TT", "COND_FF", "MIN_COMB", "MIN_ABS", "MK_PAIR", "FST_PAIR", "SND_PAIR"];

fn show(name: &str, c: &Conv, t: &convkit::syntax::Term) {
    match c.apply(t) {
        Ok(th) => println!("{name}: {th}"),
        Err(e) => println!("{name}: evaluation failed {}", e.token()),
    }
}

fn main() -> convkit::Result<()> {
    let root = Theory::pplambda();
    let abs1 = parse_term(&*root, "(\\fun.(fun(TT,FF) => x | y))FST")?;
    let abs2 = parse_term(&*root, "(\\t.(\\u.t,u)FF)TT")?;
    let condfst = parse_term(&*root, "FST(TT,FF) => x | y")?;

    show("BETA_CONV abs2", &beta_conv(), &abs2);
    show("BETA_BETA_CONV abs2", &thenc(&beta_conv(), &beta_conv()), &abs2);
    show("BETA_BETA_CONV abs1", &thenc(&beta_conv(), &beta_conv()), &abs1);
    show("REPEATC BETA_CONV abs2", &repeatc(&beta_conv()), &abs2);

    let rws = REWRITES.iter().map(|l| rewrite_conv(&root.axiom(l)?)).collect::<convkit::Result<Vec<_>>>()?;
    let many = orelsec(&first_conv(&rws), &beta_conv());
    show("COND_TT_CONV condfst", &rewrite_conv(&root.axiom("COND_TT")?)?, &condfst);
    show("DEPTH_CONV MANY_CONV condfst", &depth_conv(&many), &condfst);
    // DEPTH_CONV does not revisit the term produced by beta-reduction.
    show("DEPTH_CONV MANY_CONV abs1", &depth_conv(&many), &abs1);
    show("REDEPTH_CONV MANY_CONV abs1", &redepth_conv(&many), &abs1);
    show("TOP_DEPTH_CONV MANY_CONV abs1", &top_depth_conv(&many), &abs1);
    Ok(())
}
